"""Domination preorders, transvection classes, and the join decomposition.

Three relations on the vertex set:

  v <= w      iff  Lk(v) subset of St(w)
  v <=_s w    iff  St(v) subset of St(w)
  v <=_tau w  iff  the transvection v -> v w^q is a valid automorphism:
                   either #G_v infinite and v <= w, or both orders are powers
                   of the same prime and v <=_s w.

Mutual <=_tau partitions the vertices into classes of three kinds: free
abelian (infinite orders, pairwise commuting), free (infinite orders,
pairwise non-commuting), or finite primary (orders all powers of one prime;
such a class always spans a clique).  The induced partial order on classes
drives the boundedness classifier; its lower cones are exactly the vertex
sets whose retraction kernels are invariant under the pure automorphism
group.

The join decomposition reads a direct-product factorization off the
connected components of the complement graph: an isolated infinite vertex is
a Z factor, an isolated finite vertex a finite factor, a single complement
edge between two order-2 vertices an infinite dihedral factor, and anything
else is flagged OTHER.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .presentation import Presentation, PresentationError, _prime_power_parts

LEQ = "LEQ"
LEQ_S = "LEQ_S"
LEQ_TAU = "LEQ_TAU"

FREE_ABELIAN = "FREE_ABELIAN"
FREE = "FREE"
FINITE_PRIMARY = "FINITE_PRIMARY"

Z_FACTOR = "Z_FACTOR"
DINF_FACTOR = "DINF_FACTOR"
FINITE_FACTOR = "FINITE_FACTOR"
OTHER = "OTHER"


def _prime_of(p: Presentation, v: str) -> int | None:
    n = p.order(v)
    if n is None:
        return None
    parts = _prime_power_parts(n)
    if len(parts) != 1:
        raise PresentationError(f"vertex {v!r} has non-primary order {n}")
    q = parts[0]
    for cand in range(2, q + 1):
        if q % cand == 0:
            return cand
    raise AssertionError


def preorder(p: Presentation, kind: str, v: str, w: str) -> bool:
    """Truth value of v <= w / v <=_s w / v <=_tau w."""
    p.index(v), p.index(w)
    if kind == LEQ:
        return p.link(v) <= p.star(w)
    if kind == LEQ_S:
        return p.star(v) <= p.star(w)
    if kind == LEQ_TAU:
        if v == w:
            return True
        if p.order(v) is None:
            return preorder(p, LEQ, v, w)
        if p.order(w) is None:
            return False
        if _prime_of(p, v) != _prime_of(p, w):
            return False
        return preorder(p, LEQ_S, v, w)
    raise ValueError(f"unknown preorder kind {kind!r}")


@dataclass(frozen=True)
class ClassType:
    kind: str  # FREE_ABELIAN | FREE | FINITE_PRIMARY
    rank: int = 0        # for the two infinite kinds
    order: int = 0       # group order, finite kind only
    prime: int = 0       # finite kind only


@dataclass(frozen=True)
class TauStructure:
    vertices: tuple[str, ...]
    leq: frozenset[tuple[str, str]]
    leq_s: frozenset[tuple[str, str]]
    leq_tau: frozenset[tuple[str, str]]
    classes: tuple[tuple[str, ...], ...]
    class_types: tuple[ClassType, ...]
    class_order: frozenset[tuple[int, int]]  # (i, j) means classes[i] <= classes[j]

    def class_of(self, v: str) -> int:
        for i, cls in enumerate(self.classes):
            if v in cls:
                return i
        raise KeyError(v)

    def maximal_classes(self) -> tuple[int, ...]:
        out = []
        for i in range(len(self.classes)):
            if not any(
                (i, j) in self.class_order and i != j for j in range(len(self.classes))
            ):
                out.append(i)
        return tuple(out)

    def minimal_classes(self) -> tuple[int, ...]:
        out = []
        for i in range(len(self.classes)):
            if not any(
                (j, i) in self.class_order and i != j for j in range(len(self.classes))
            ):
                out.append(i)
        return tuple(out)

    def hasse_edges(self) -> tuple[tuple[int, int], ...]:
        """Transitive reduction of the strict class order."""
        strict = {(i, j) for i, j in self.class_order if i != j}
        edges = []
        for i, j in sorted(strict):
            if not any((i, k) in strict and (k, j) in strict for k in range(len(self.classes))):
                edges.append((i, j))
        return tuple(edges)


def tau_structure(p: Presentation) -> TauStructure:
    """Full preorder/class structure of a primary presentation."""
    if not p.is_primary():
        raise PresentationError("tau structure requires a primary presentation")
    ids = p.vertex_ids
    rel = {LEQ: set(), LEQ_S: set(), LEQ_TAU: set()}
    for v in ids:
        for w in ids:
            for kind in rel:
                if preorder(p, kind, v, w):
                    rel[kind].add((v, w))
    tau = rel[LEQ_TAU]
    # classes: mutual <=_tau, ordered by least declaration index
    assigned: dict[str, int] = {}
    classes: list[tuple[str, ...]] = []
    for v in ids:
        if v in assigned:
            continue
        cls = tuple(
            w for w in ids if (v, w) in tau and (w, v) in tau
        )
        idx = len(classes)
        classes.append(cls)
        for w in cls:
            assigned[w] = idx
    types = []
    for cls in classes:
        orders = [p.order(v) for v in cls]
        if orders[0] is None:
            if any(o is not None for o in orders):
                raise PresentationError(f"mixed class {cls}: infinite and finite orders")
            pairs = [(a, b) for i, a in enumerate(cls) for b in cls[i + 1 :]]
            commuting = [p.has_edge(a, b) for a, b in pairs]
            if pairs and any(commuting) != all(commuting):
                raise PresentationError(f"class {cls}: commutation not class-constant")
            if not pairs or all(commuting):
                types.append(ClassType(FREE_ABELIAN, rank=len(cls)))
            else:
                types.append(ClassType(FREE, rank=len(cls)))
        else:
            primes = {_prime_of(p, v) for v in cls}
            if None in primes or len(primes) != 1:
                raise PresentationError(f"class {cls}: not a single-prime class")
            total = 1
            for o in orders:
                total *= o
            types.append(ClassType(FINITE_PRIMARY, order=total, prime=primes.pop()))
    order = set()
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            if (ci[0], cj[0]) in tau:
                order.add((i, j))
    return TauStructure(
        vertices=ids,
        leq=frozenset(rel[LEQ]),
        leq_s=frozenset(rel[LEQ_S]),
        leq_tau=frozenset(tau),
        classes=tuple(classes),
        class_types=tuple(types),
        class_order=frozenset(order),
    )


def is_lower_cone(p: Presentation, X: Iterable[str]) -> bool:
    """True iff X is downward closed under <=_tau."""
    xs = set(X)
    for x in xs:
        p.index(x)
    for t in xs:
        for s in p.vertex_ids:
            if s not in xs and preorder(p, LEQ_TAU, s, t):
                return False
    return True


def lower_cone_violation(p: Presentation, X: Iterable[str]) -> tuple[str, str] | None:
    """A pair (s, t) with s <=_tau t, t in X, s outside X, or None."""
    xs = set(X)
    for t in sorted(xs, key=p.index):
        for s in p.vertex_ids:
            if s not in xs and preorder(p, LEQ_TAU, s, t):
                return (s, t)
    return None


@dataclass(frozen=True)
class JoinDecomposition:
    components: tuple[tuple[tuple[str, ...], str], ...]  # (vertices, shape)
    n: int                  # number of Z factors
    m: int                  # number of D_inf factors
    finite_part: tuple[str, ...]

    @property
    def has_other(self) -> bool:
        return any(shape == OTHER for _, shape in self.components)


def join_decomposition(p: Presentation) -> JoinDecomposition:
    """Classify the complement-graph components of a primary presentation."""
    if not p.is_primary():
        raise PresentationError("join decomposition requires a primary presentation")
    comps = p.complement_components()
    out = []
    n = m = 0
    finite: list[str] = []
    for comp in comps:
        if len(comp) == 1:
            v = comp[0]
            if p.order(v) is None:
                out.append((comp, Z_FACTOR))
                n += 1
            else:
                out.append((comp, FINITE_FACTOR))
                finite.append(v)
        elif len(comp) == 2 and all(p.order(v) == 2 for v in comp):
            out.append((comp, DINF_FACTOR))
            m += 1
        else:
            out.append((comp, OTHER))
    return JoinDecomposition(tuple(out), n, m, tuple(finite))


def bounded_form_check(p: Presentation) -> bool:
    """Graph-theoretic test for W = Z^n x Dinf^m x F with n != 1, F finite."""
    jd = join_decomposition(p)
    return not jd.has_other and jd.n != 1


def classes_json_obj(p: Presentation) -> dict:
    """JSON-friendly dump of the tau structure for the `classes` CLI."""
    ts = tau_structure(p)
    def mat(rel):
        return {v: [w for w in ts.vertices if (v, w) in rel] for v in ts.vertices}
    jd = join_decomposition(p)
    return {
        "vertices": list(ts.vertices),
        "leq": mat(ts.leq),
        "leq_s": mat(ts.leq_s),
        "leq_tau": mat(ts.leq_tau),
        "classes": [
            {
                "vertices": list(cls),
                "type": t.kind,
                "rank": t.rank,
                "order": t.order,
            }
            for cls, t in zip(ts.classes, ts.class_types)
        ],
        "class_order": sorted([i, j] for i, j in ts.class_order),
        "hasse": [list(e) for e in ts.hasse_edges()],
        "join_decomposition": {
            "components": [
                {"vertices": list(vs), "shape": shape} for vs, shape in jd.components
            ],
            "n": jd.n,
            "m": jd.m,
            "finite_part": list(jd.finite_part),
        },
        "bounded_form": bounded_form_check(p),
    }


def hasse_dot(p: Presentation) -> str:
    ts = tau_structure(p)
    lines = ["digraph classes {"]
    for i, (cls, t) in enumerate(zip(ts.classes, ts.class_types)):
        label = "{" + ",".join(cls) + "} " + t.kind
        lines.append(f'  c{i} [label="{label}"];')
    for i, j in ts.hasse_edges():
        lines.append(f"  c{i} -> c{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"

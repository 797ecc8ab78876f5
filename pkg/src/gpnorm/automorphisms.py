"""Generators of the automorphism group and truncated orbit enumeration.

Four generator families act on a graph product: labelled graph automorphisms
(order-preserving graph symmetries), factor automorphisms v -> v^m with m a
unit mod the vertex order, dominated transvections v -> v w^q available when
v <=_tau w, and partial conjugations conjugating one component of
Gamma - St(v) by v.  The pure automorphism group is generated by the last
three families; it has finite index in the full automorphism group, so norms
computed against it are bi-Lipschitz the Aut-invariant ones.

Orbits of word sets under a generator list are enumerated breadth-first with
canonical-form deduplication, truncated by composition depth and by a cap on
the exponent weight of images.  Truncation only shrinks the orbit, so norms
computed from a truncated orbit are upper bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import classes as cl
from .presentation import Presentation, PresentationError, _prime_power_parts
from .words import NormalWord, Syllable, exponent_weight, normal_form, power

LABELLED_GRAPH = "LABELLED_GRAPH"
FACTOR = "FACTOR"
TRANSVECTION = "TRANSVECTION"
PARTIAL_CONJ = "PARTIAL_CONJ"


@dataclass(frozen=True)
class AutGen:
    kind: str
    vertex: str = ""                                 # FACTOR / TRANSVECTION / PARTIAL_CONJ
    unit: int = 0                                    # FACTOR exponent m
    target: str = ""                                 # TRANSVECTION w
    component: tuple[str, ...] = ()                  # PARTIAL_CONJ K
    permutation: tuple[tuple[str, str], ...] = ()    # LABELLED_GRAPH v -> gamma(v)

    def literal(self) -> str:
        if self.kind == FACTOR:
            return f"factor({self.vertex},{self.unit})"
        if self.kind == TRANSVECTION:
            return f"tv({self.vertex},{self.target})"
        if self.kind == PARTIAL_CONJ:
            return f"pc({self.vertex},{self.component[0]})"
        return "graph(" + ",".join(f"{a}:{b}" for a, b in self.permutation) + ")"


def transvection_exponent(p: Presentation, v: str, w: str) -> int:
    """q = max(1, p^(l-k)) for finite orders p^k, p^l; 1 in the infinite case."""
    nv, nw = p.order(v), p.order(w)
    if nv is None:
        return 1
    if nw is None:
        raise PresentationError(f"transvection {v}->{w}: finite source, infinite target")
    if len(_prime_power_parts(nv)) != 1 or len(_prime_power_parts(nw)) != 1:
        raise PresentationError("transvection exponent requires primary orders")
    prime = cl._prime_of(p, v)
    if cl._prime_of(p, w) != prime:
        raise PresentationError(f"transvection {v}->{w}: different primes")
    # q = max(1, p^(l-k)) = max(1, nw // nv) since nv = p^k, nw = p^l
    return max(1, nw // nv)


def make_generator(p: Presentation, kind: str, **params) -> AutGen:
    """Validated construction of an automorphism generator.

    Raises ValueError when the defining side condition fails: a transvection
    without v <=_tau w, a factor exponent that is not a unit, a partial
    conjugation whose set is not a component of Gamma - St(v), or a labelled
    graph map that is not an order-preserving graph automorphism.
    """
    if kind == FACTOR:
        v, m = params["vertex"], params["unit"]
        n = p.order(v)
        if n is None:
            if m not in (1, -1):
                raise ValueError(f"factor({v},{m}): infinite order needs m = +-1")
        else:
            if math.gcd(m, n) != 1:
                raise ValueError(f"factor({v},{m}): gcd(m, {n}) != 1")
            m %= n
        return AutGen(FACTOR, vertex=v, unit=m)
    if kind == TRANSVECTION:
        v, w = params["vertex"], params["target"]
        if v == w:
            raise ValueError("transvection needs v != w")
        if not cl.preorder(p, cl.LEQ_TAU, v, w):
            raise ValueError(f"tv({v},{w}): not v <=_tau w")
        return AutGen(TRANSVECTION, vertex=v, target=w)
    if kind == PARTIAL_CONJ:
        v, K = params["vertex"], tuple(sorted(params["component"], key=p.index))
        if K not in p.components_minus_star(v):
            raise ValueError(f"pc({v},{K}): not a component of Gamma - St({v})")
        return AutGen(PARTIAL_CONJ, vertex=v, component=K)
    if kind == LABELLED_GRAPH:
        perm = dict(params["permutation"])
        ids = p.vertex_ids
        if sorted(perm) != sorted(ids) or sorted(perm.values()) != sorted(ids):
            raise ValueError("graph map is not a permutation of the vertices")
        for v in ids:
            if p.order(v) != p.order(perm[v]):
                raise ValueError(f"graph map changes order at {v}")
        for a, b in p.edges:
            if not p.has_edge(perm[a], perm[b]):
                raise ValueError(f"graph map does not preserve edge {a}-{b}")
        return AutGen(LABELLED_GRAPH, permutation=tuple((v, perm[v]) for v in ids))
    raise ValueError(f"unknown generator kind {kind!r}")


def parse_generator(p: Presentation, text: str) -> AutGen:
    """Parse the generator literal syntax: ``factor(v,m)``, ``tv(v,w)``,
    ``pc(v,k)`` with k any vertex of the conjugated component, and
    ``graph(a:b,b:a,...)``."""
    text = text.strip()
    if not (text.endswith(")") and "(" in text):
        raise ValueError(f"bad generator literal {text!r}")
    head, _, body = text[:-1].partition("(")
    args = [a.strip() for a in body.split(",")] if body.strip() else []
    if head == "factor":
        if len(args) != 2:
            raise ValueError(f"factor needs 2 arguments: {text!r}")
        return make_generator(p, FACTOR, vertex=args[0], unit=int(args[1]))
    if head == "tv":
        if len(args) != 2:
            raise ValueError(f"tv needs 2 arguments: {text!r}")
        return make_generator(p, TRANSVECTION, vertex=args[0], target=args[1])
    if head == "pc":
        if len(args) != 2:
            raise ValueError(f"pc needs 2 arguments: {text!r}")
        v, k = args
        for K in p.components_minus_star(v):
            if k in K:
                return make_generator(p, PARTIAL_CONJ, vertex=v, component=K)
        raise ValueError(f"pc({v},{k}): {k} not in any component of Gamma - St({v})")
    if head == "graph":
        pairs = []
        for a in args:
            x, sep, y = a.partition(":")
            if not sep:
                raise ValueError(f"graph entries must be v:w pairs: {text!r}")
            pairs.append((x.strip(), y.strip()))
        return make_generator(p, LABELLED_GRAPH, permutation=pairs)
    raise ValueError(f"unknown generator family {head!r}")


def _unit_group_generators(n: int) -> list[int]:
    """Generators of (Z/n)^* for a prime power n: a primitive root for odd
    primes, {-1, 5} for 2^k with k >= 3, {-1} for 4, nothing for 2."""
    prime = None
    for c in range(2, n + 1):
        if n % c == 0:
            prime = c
            break
    if prime == 2:
        if n == 2:
            return []
        if n == 4:
            return [3]
        return [n - 1, 5]
    phi = n - n // prime
    for g in range(2, n):
        if math.gcd(g, n) != 1:
            continue
        order, acc = 1, g % n
        while acc != 1:
            acc = acc * g % n
            order += 1
        if order == phi:
            return [g]
    raise AssertionError(f"no primitive root mod {n}")


def aut0_generators(p: Presentation) -> list[AutGen]:
    """The finite generating set of the pure automorphism group: all factor
    automorphisms (over a generating set of each unit group), all valid
    dominated transvections, and all partial conjugations."""
    if not p.is_primary():
        raise PresentationError("aut0 generators require a primary presentation")
    gens: list[AutGen] = []
    for v in p.vertex_ids:
        n = p.order(v)
        if n is None:
            gens.append(AutGen(FACTOR, vertex=v, unit=-1))
        else:
            for m in _unit_group_generators(n):
                gens.append(AutGen(FACTOR, vertex=v, unit=m % n))
    for v in p.vertex_ids:
        for w in p.vertex_ids:
            if v != w and cl.preorder(p, cl.LEQ_TAU, v, w):
                gens.append(AutGen(TRANSVECTION, vertex=v, target=w))
    for v in p.vertex_ids:
        for K in p.components_minus_star(v):
            gens.append(AutGen(PARTIAL_CONJ, vertex=v, component=K))
    return gens


def _factor_unit(p: Presentation, g: AutGen, inverse: bool) -> int:
    n = p.order(g.vertex)
    if n is None:
        return g.unit  # +-1, self-inverse for -1
    return pow(g.unit, -1, n) if inverse else g.unit


def apply_gen(p: Presentation, g: AutGen, x: NormalWord, inverse: bool = False) -> NormalWord:
    """Image of x under one generator (or its inverse)."""
    if g.kind == FACTOR:
        m = _factor_unit(p, g, inverse)
        out = [
            Syllable(v, e * m) if v == g.vertex else Syllable(v, e)
            for v, e in x.syllables
        ]
        return normal_form(p, out)
    if g.kind == TRANSVECTION:
        q = transvection_exponent(p, g.vertex, g.target)
        if inverse:
            q = -q
        img = normal_form(p, [Syllable(g.vertex, 1), Syllable(g.target, q)])
        out: list[Syllable] = []
        for v, e in x.syllables:
            if v == g.vertex:
                out.extend(power(p, img, e).syllables)
            else:
                out.append(Syllable(v, e))
        return normal_form(p, out)
    if g.kind == PARTIAL_CONJ:
        s = -1 if inverse else 1
        K = set(g.component)
        out = []
        for v, e in x.syllables:
            if v in K:
                out.append(Syllable(g.vertex, s))
                out.append(Syllable(v, e))
                out.append(Syllable(g.vertex, -s))
            else:
                out.append(Syllable(v, e))
        return normal_form(p, out)
    if g.kind == LABELLED_GRAPH:
        perm = dict(g.permutation)
        if inverse:
            perm = {b: a for a, b in perm.items()}
        return normal_form(p, [Syllable(perm[v], e) for v, e in x.syllables])
    raise ValueError(f"unknown generator kind {g.kind!r}")


def apply(p: Presentation, seq, x: NormalWord) -> NormalWord:
    """Apply a sequence of generators in order; items are AutGen or
    (AutGen, -1) for an inverse step.  The empty sequence is the identity."""
    out = x
    for item in seq:
        if isinstance(item, AutGen):
            g, sign = item, 1
        else:
            g, sign = item
        out = apply_gen(p, g, out, inverse=sign < 0)
    return out


@dataclass(frozen=True)
class OrbitSet:
    """Truncated closure of a seed set under generators and their inverses."""

    elements: frozenset[NormalWord]
    frontier_exhausted: bool
    depth_used: int
    length_cap: int

    def sorted_elements(self) -> list[NormalWord]:
        return sorted(self.elements, key=lambda w: (exponent_weight(w), w.syllables))


def orbit(
    p: Presentation,
    seeds: Iterable[NormalWord],
    gens: Sequence[AutGen],
    depth: int,
    length_cap: int,
) -> OrbitSet:
    """BFS closure of the seeds under gens and their inverses.

    Images whose exponent weight exceeds length_cap are discarded (truncation
    is recorded, not an error).  frontier_exhausted is True iff a round added
    no new elements before the depth budget ran out, i.e. the returned set is
    closed under the generators within the cap.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    start = [normal_form(p, s) for s in seeds]
    elements: set[NormalWord] = {s for s in start if exponent_weight(s) <= length_cap}
    frontier = sorted(elements, key=lambda w: (exponent_weight(w), w.syllables))
    exhausted = not frontier
    depth_used = 0
    for _ in range(depth):
        new: list[NormalWord] = []
        for x in frontier:
            for g in gens:
                for inv in (False, True):
                    y = apply_gen(p, g, x, inverse=inv)
                    if y in elements or exponent_weight(y) > length_cap:
                        continue
                    elements.add(y)
                    new.append(y)
        if not new:
            exhausted = True
            break
        depth_used += 1
        frontier = sorted(new, key=lambda w: (exponent_weight(w), w.syllables))
    return OrbitSet(frozenset(elements), exhausted, depth_used, length_cap)

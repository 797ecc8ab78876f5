"""Split quasimorphisms on free-product decompositions.

Given a free-product split W = W_M * W_{V-M}, a pair of bounded odd
functions on the two factors sums over the alternating-block normal form to
a quasimorphism.  Cancelling block pairs contribute zero by oddness, and a
product of two words merges at most one junction block, so the defect is
bounded by 3 * max(sup norms); this analytic constant is re-checked
empirically by ``defect_bound``.  The homogenization has defect at most
twice that, vanishes on conjugates of factor elements, and therefore turns a
nonzero value on a witness into a norm lower bound.

All values are exact rationals so certificates embed and verify without
rounding.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .presentation import Presentation, PresentationError
from .words import (
    IDENTITY,
    NormalWord,
    multiply,
    normal_form,
    parse_word,
    power,
    split_free_product,
    word_literal,
)


@dataclass(frozen=True)
class OddFunction:
    """Bounded odd function on one factor of a free-product split.

    Values come either from a finite table (finite support) or from a sign
    rule f(base^k) = sign(k) on the cyclic subgroup of an infinite-order
    element; everything outside the support is zero.  On a factor isomorphic
    to C_2^k oddness forces the zero function (every element is its own
    inverse), recorded with ``is_zero``.
    """

    side: tuple[str, ...]
    table: tuple[tuple[NormalWord, Fraction], ...] = ()
    power_base: NormalWord | None = None
    sup_norm: Fraction = Fraction(0)

    @property
    def is_zero(self) -> bool:
        return not self.table and self.power_base is None

    def evaluate(self, p: Presentation, x: NormalWord) -> Fraction:
        if not x:
            return Fraction(0)
        for w, val in self.table:
            if w == x:
                return val
        base = self.power_base
        if base is not None:
            k = _power_of(p, base, x)
            if k is not None and k != 0:
                return Fraction(1) if k > 0 else Fraction(-1)
        return Fraction(0)


def _power_of(p: Presentation, base: NormalWord, x: NormalWord) -> int | None:
    """k with x = base^k, or None.  base is a single infinite-order syllable
    or a product of two non-commuting involutions."""
    if not x:
        return 0
    if len(base) == 1 and p.order(base.syllables[0].vertex) is None:
        if len(x) == 1 and x.syllables[0].vertex == base.syllables[0].vertex:
            e = x.syllables[0].exponent
            b = base.syllables[0].exponent
            if e % b == 0:
                return e // b
        return None
    # two-involution base: (vw)^k has 2k syllables and starts with v for
    # k > 0, with w for k < 0
    if len(x) % len(base) != 0:
        return None
    k = len(x) // len(base)
    if x.syllables[0].vertex != base.syllables[0].vertex:
        k = -k
    return k if power(p, base, k) == x else None


def _is_elementary_two(p: Presentation, side: set[str]) -> bool:
    """True iff the standard subgroup on `side` is C_2^k: all orders two and
    the induced subgraph complete."""
    for v in side:
        if p.order(v) != 2:
            return False
    vs = sorted(side, key=p.index)
    for i, a in enumerate(vs):
        for b in vs[i + 1 :]:
            if not p.has_edge(a, b):
                return False
    return True


def default_odd_function(p: Presentation, side: Iterable[str]) -> OddFunction:
    """A canonical nonzero bounded odd function on the side subgroup, or the
    zero function when the subgroup is C_2^k.

    Preference order for the support: the least generator of order != 2
    (sign-like table on its powers, or sign rule if infinite), else the
    product of the least non-commuting pair of involutions (an infinite-order
    element), which exists whenever the side is not C_2^k.
    """
    vs = tuple(sorted(set(side), key=p.index))
    for v in vs:
        p.index(v)
    if not vs or _is_elementary_two(p, set(vs)):
        return OddFunction(side=vs)
    for v in vs:
        n = p.order(v)
        if n is None:
            return OddFunction(
                side=vs,
                power_base=normal_form(p, [(v, 1)]),
                sup_norm=Fraction(1),
            )
        if n != 2:
            table = []
            for k in range(1, n):
                if 2 * k < n:
                    table.append((normal_form(p, [(v, k)]), Fraction(1)))
                elif 2 * k > n:
                    table.append((normal_form(p, [(v, k)]), Fraction(-1)))
                # 2k == n: g^k is an involution, oddness forces 0
            return OddFunction(side=vs, table=tuple(table), sup_norm=Fraction(1))
    # all generators are involutions but the side is not C_2^k: some pair
    # fails to commute and their product has infinite order
    for i, v in enumerate(vs):
        for w in vs[i + 1 :]:
            if not p.has_edge(v, w):
                return OddFunction(
                    side=vs,
                    power_base=normal_form(p, [(v, 1), (w, 1)]),
                    sup_norm=Fraction(1),
                )
    raise AssertionError("non-C_2^k side without odd support")


@dataclass(frozen=True)
class SplitQM:
    """Split quasimorphism attached to a free-product split (M | V - M)."""

    left: tuple[str, ...]
    sigma_left: OddFunction
    sigma_right: OddFunction
    defect: Fraction

    @property
    def homogenized_defect(self) -> Fraction:
        # standard bound: the homogenization of a quasimorphism with defect D
        # has defect at most 2D
        return 2 * self.defect


def make_split_qm(p: Presentation, M: Iterable[str]) -> SplitQM:
    """Build the default split quasimorphism for the split (M | V - M).

    Raises when the split is invalid or both sides are C_2^k (then every odd
    function vanishes and no nonzero split quasimorphism exists).
    """
    left = tuple(sorted(set(M), key=p.index))
    right = tuple(v for v in p.vertex_ids if v not in set(left))
    if not left or not right:
        raise PresentationError("split must have two nonempty sides")
    split_free_product(p, left, IDENTITY)  # validates the split
    s1 = default_odd_function(p, left)
    s2 = default_odd_function(p, right)
    if s1.is_zero and s2.is_zero:
        raise PresentationError("both sides are C_2^k: no nonzero odd function")
    defect = 3 * max(s1.sup_norm, s2.sup_norm)
    return SplitQM(left=left, sigma_left=s1, sigma_right=s2, defect=defect)


def _block_values(p: Presentation, q: SplitQM, x: NormalWord):
    form = split_free_product(p, q.left, x)
    out = []
    for side, block in form.factors:
        sigma = q.sigma_left if side == "L" else q.sigma_right
        out.append((side, block, sigma))
    return out


def split_qm_eval(p: Presentation, q: SplitQM, x: NormalWord) -> Fraction:
    """Sum of the odd functions over the alternating blocks of x."""
    return sum(
        (sigma.evaluate(p, block) for _, block, sigma in _block_values(p, q, x)),
        Fraction(0),
    )


def homogenize(
    p: Presentation, q: SplitQM, x: NormalWord, mode: str = "exact", s: int = 0
) -> tuple[Fraction, Fraction]:
    """Homogenization lim q(x^s)/s, as (value, error_bound).

    exact mode: strip cancelling end blocks, then the block count decides:
    zero or one block means a factor conjugate (value 0); an even count
    concatenates cleanly under powering (value q(core)); an odd count merges
    one junction per power, corrected by
    q(core) - sigma(first) - sigma(last) + sigma(last * first).
    estimate mode: q(x^s)/s with error bound defect/s.
    """
    if mode == "estimate":
        if s <= 0:
            raise ValueError("estimate mode needs s > 0")
        xs = power(p, x, s)
        return split_qm_eval(p, q, xs) / s, q.defect / Fraction(s)
    if mode != "exact":
        raise ValueError(f"unknown homogenization mode {mode!r}")
    blocks = _block_values(p, q, x)
    while len(blocks) >= 2 and blocks[0][0] == blocks[-1][0]:
        merged = multiply(p, blocks[-1][1], blocks[0][1])
        if merged:
            break
        blocks = blocks[1:-1]
    if len(blocks) <= 1:
        return Fraction(0), Fraction(0)
    total = sum((sig.evaluate(p, b) for _, b, sig in blocks), Fraction(0))
    if len(blocks) % 2 == 0:
        return total, Fraction(0)
    _, first_b, sig = blocks[0]
    _, last_b, _ = blocks[-1]
    junction = multiply(p, last_b, first_b)
    value = total - sig.evaluate(p, first_b) - sig.evaluate(p, last_b) + sig.evaluate(p, junction)
    return value, Fraction(0)


def defect_bound(
    p: Presentation, q: SplitQM, empirical_samples: int, seed: int = 0,
    word_pool: list[NormalWord] | None = None,
) -> tuple[Fraction, Fraction]:
    """(analytic, empirical_max) defect of q.

    The empirical maximum of |q(ab) - q(a) - q(b)| over sampled pairs must
    never exceed the analytic constant 3 * max(sup norms).
    """
    analytic = q.defect
    rng = random.Random(seed)
    emp = Fraction(0)
    pool = word_pool
    for _ in range(empirical_samples):
        if pool:
            a = rng.choice(pool)
            b = rng.choice(pool)
        else:
            a = _random_word(p, rng)
            b = _random_word(p, rng)
        d = abs(
            split_qm_eval(p, q, multiply(p, a, b))
            - split_qm_eval(p, q, a)
            - split_qm_eval(p, q, b)
        )
        if d > emp:
            emp = d
    return analytic, emp


def _random_word(p: Presentation, rng: random.Random, max_sylls: int = 8, max_exp: int = 3) -> NormalWord:
    ids = p.vertex_ids
    sylls = []
    for _ in range(rng.randint(0, max_sylls)):
        v = rng.choice(ids)
        e = rng.choice([k for k in range(-max_exp, max_exp + 1) if k != 0])
        sylls.append((v, e))
    return normal_form(p, sylls)


# -- serialization ---------------------------------------------------------


def _frac_str(f: Fraction) -> str:
    return str(f)


def odd_function_to_obj(f: OddFunction) -> dict:
    return {
        "side": list(f.side),
        "table": {word_literal(w): _frac_str(v) for w, v in f.table},
        "power_base": word_literal(f.power_base) if f.power_base is not None else None,
        "sup_norm": _frac_str(f.sup_norm),
        "zero": f.is_zero,
    }


def odd_function_from_obj(p: Presentation, obj: dict) -> OddFunction:
    table = tuple(
        (parse_word(p, lit), Fraction(val)) for lit, val in sorted(obj["table"].items())
    )
    base = obj.get("power_base")
    return OddFunction(
        side=tuple(obj["side"]),
        table=table,
        power_base=parse_word(p, base) if base is not None else None,
        sup_norm=Fraction(obj["sup_norm"]),
    )


def split_qm_to_obj(q: SplitQM) -> dict:
    return {
        "split_left": list(q.left),
        "sigma_left": odd_function_to_obj(q.sigma_left),
        "sigma_right": odd_function_to_obj(q.sigma_right),
        "defect": _frac_str(q.defect),
        "homogenized_defect": _frac_str(q.homogenized_defect),
    }


def split_qm_from_obj(p: Presentation, obj: dict) -> SplitQM:
    return SplitQM(
        left=tuple(obj["split_left"]),
        sigma_left=odd_function_from_obj(p, obj["sigma_left"]),
        sigma_right=odd_function_from_obj(p, obj["sigma_right"]),
        defect=Fraction(obj["defect"]),
    )

"""Exact arithmetic in graph products via a canonical normal form.

Elements are syllable sequences v^e.  A word is reduced when no two
syllables of the same vertex can be brought together by swapping adjacent
commuting syllables; reduced representatives of an element differ only by
such shuffles.  The canonical form is the lexicographically least reduced
representative, ordering syllables by (vertex declaration index, exponent).
Two canonical words are equal as group elements iff they are identical, so
NormalWord is hashable and usable as a set/dict key in orbit and ball
enumeration.

Finite-order exponents are stored in {1, ..., n-1}; infinite-order exponents
are arbitrary nonzero integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .presentation import Presentation, PresentationError


class Syllable(NamedTuple):
    vertex: str
    exponent: int


@dataclass(frozen=True)
class NormalWord:
    """Canonical representative of a group element."""

    syllables: tuple[Syllable, ...] = ()

    def __len__(self) -> int:
        return len(self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def __repr__(self):
        return f"<{word_literal(self) or 'e'}>"


IDENTITY = NormalWord()


def _norm_exp(p: Presentation, v: str, e: int) -> int:
    n = p.order(v)
    if n is None:
        return e
    return e % n


def _reduce(p: Presentation, sylls: list[Syllable]) -> list[Syllable]:
    """Merge same-vertex syllables separated only by commuting syllables and
    drop trivial ones, until no merge applies."""
    s = [Syllable(v, e) for v, e in (
        (v, _norm_exp(p, v, e)) for v, e in sylls) if e != 0]
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(s):
            v = s[i].vertex
            adj = p.adjacent(v)
            j = i + 1
            while j < len(s):
                if s[j].vertex == v:
                    e = _norm_exp(p, v, s[i].exponent + s[j].exponent)
                    del s[j]
                    if e == 0:
                        del s[i]
                    else:
                        s[i] = Syllable(v, e)
                    changed = True
                    break
                if s[j].vertex not in adj:
                    break
                j += 1
            if changed:
                break
            i += 1
    return s


def _canonical_order(p: Presentation, s: list[Syllable]) -> tuple[Syllable, ...]:
    """Lexicographically least linearization of the reduced word's shuffle
    class: greedily pick the least syllable whose predecessors all commute
    with it."""
    out: list[Syllable] = []
    rem = list(s)
    while rem:
        seen: set[str] = set()
        best_j = -1
        best_key: tuple[int, int] | None = None
        for j, syl in enumerate(rem):
            v = syl.vertex
            if v not in seen and seen <= p.adjacent(v):
                key = (p.index(v), syl.exponent)
                if best_key is None or key < best_key:
                    best_key, best_j = key, j
            seen.add(v)
        out.append(rem.pop(best_j))
    return tuple(out)


def normal_form(p: Presentation, word) -> NormalWord:
    """Canonical form of a raw syllable sequence (or NormalWord)."""
    if isinstance(word, NormalWord):
        raw = list(word.syllables)
    else:
        raw = [Syllable(v, e) for v, e in word]
    for syl in raw:
        p.index(syl.vertex)  # raises on unknown vertex
    return NormalWord(_canonical_order(p, _reduce(p, raw)))


def multiply(p: Presentation, x: NormalWord, y: NormalWord) -> NormalWord:
    return normal_form(p, list(x.syllables) + list(y.syllables))


def invert(p: Presentation, x: NormalWord) -> NormalWord:
    return normal_form(p, [Syllable(v, -e) for v, e in reversed(x.syllables)])


def power(p: Presentation, x: NormalWord, n: int) -> NormalWord:
    """x**n by square-and-multiply."""
    if n < 0:
        return power(p, invert(p, x), -n)
    acc = IDENTITY
    base = x
    while n:
        if n & 1:
            acc = multiply(p, acc, base)
        base = multiply(p, base, base)
        n >>= 1
    return acc


def commutator(p: Presentation, x: NormalWord, y: NormalWord) -> NormalWord:
    return multiply(p, multiply(p, x, y), multiply(p, invert(p, x), invert(p, y)))


def generator(p: Presentation, v: str, e: int = 1) -> NormalWord:
    return normal_form(p, [Syllable(v, e)])


def retract(p: Presentation, X: Iterable[str], x: NormalWord) -> NormalWord:
    """Image under the standard retraction killing all generators outside X."""
    keep = set(X)
    for v in keep:
        p.index(v)
    return normal_form(p, [s for s in x.syllables if s.vertex in keep])


def syllable_length(x: NormalWord) -> int:
    return len(x.syllables)


def exponent_weight(x: NormalWord) -> int:
    """Total exponent mass: sum of |e| over syllables (stored exponents)."""
    return sum(abs(e) for _, e in x.syllables)


@dataclass(frozen=True)
class AlternatingForm:
    """Free-product normal form: maximal alternating blocks, LEFT blocks in
    the subgroup generated by M, RIGHT blocks in its complement."""

    factors: tuple[tuple[str, NormalWord], ...]  # side is "L" or "R"


def split_free_product(p: Presentation, M: Iterable[str], x: NormalWord) -> AlternatingForm:
    """Split x along the free-product decomposition W = W_M * W_{V-M}.

    Requires that no edge joins M and V-M.  Concatenating the blocks in
    order recovers x; each block is a nontrivial element of its side.
    """
    left = set(M)
    for v in left:
        p.index(v)
    rest = set(p.vertex_ids) - left
    for a, b in p.edges:
        if (a in left) != (b in left):
            raise PresentationError(
                f"not a free-product split: edge {a}-{b} joins the two sides"
            )
    blocks: list[tuple[str, NormalWord]] = []
    run: list[Syllable] = []
    run_side = ""
    for syl in x.syllables:
        side = "L" if syl.vertex in left else "R"
        if side != run_side and run:
            blocks.append((run_side, normal_form(p, run)))
            run = []
        run_side = side
        run.append(syl)
    if run:
        blocks.append((run_side, normal_form(p, run)))
    _ = rest
    return AlternatingForm(tuple(blocks))


# -- word literals --------------------------------------------------------


def parse_word(p: Presentation, text: str) -> NormalWord:
    """Parse the word literal grammar: whitespace-separated syllables ``v``,
    ``v^3``, ``v^-2``; the empty string is the identity."""
    sylls: list[Syllable] = []
    for token in text.split():
        if "^" in token:
            v, _, es = token.partition("^")
            try:
                e = int(es)
            except ValueError:
                raise ValueError(f"bad exponent in syllable {token!r}") from None
        else:
            v, e = token, 1
        if e == 0:
            raise ValueError(f"zero exponent in syllable {token!r}")
        p.index(v)
        sylls.append(Syllable(v, e))
    return normal_form(p, sylls)


def word_literal(x: NormalWord) -> str:
    return " ".join(v if e == 1 else f"{v}^{e}" for v, e in x.syllables)

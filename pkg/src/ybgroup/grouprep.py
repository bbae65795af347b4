"""Exact arithmetic in the structure group via its faithful image in Sym(X) x| Z^X.

A generator x maps to (f_x^{-1}, t_x).  Products follow

    (alpha, v) (beta, w) = (alpha o beta, beta^{-1} . v + w)

where ``o`` is functional composition (right factor acts first) and a permutation p acts
on vectors by t_x -> t_{p(x)}.  This is the only place the convention is fixed; the
defining relations xy = g_x(y) f_y(x) hold under it and the mirrored order is not even
associative.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import perm as P
from .perm import Perm
from .solution import Solution

Word = tuple[int, ...]  # signed 1-indexed generators; -k is the inverse of x_k


@dataclass(frozen=True, slots=True)
class GroupElement:
    perm: Perm
    vec: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(P.identity(n), (0,) * n)

    @property
    def n(self) -> int:
        return len(self.vec)

    def is_identity(self) -> bool:
        return P.is_identity(self.perm) and not any(self.vec)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def inverse(self) -> "GroupElement":
        return invert(self)

    def act(self, vec: Sequence[int]) -> tuple[int, ...]:
        """The left action a . w on Z^X."""
        return P.act_on_vector(self.perm, vec)


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    if len(a.vec) != len(b.vec):
        raise ValueError(f"dimension mismatch: {len(a.vec)} vs {len(b.vec)}")
    binv = P.inverse(b.perm)
    moved = [0] * len(a.vec)
    for x, v in enumerate(a.vec):
        moved[binv[x]] = v
    return GroupElement(P.compose(a.perm, b.perm), tuple(u + w for u, w in zip(moved, b.vec)))


def invert(a: GroupElement) -> GroupElement:
    return GroupElement(P.inverse(a.perm), tuple(-v for v in P.act_on_vector(a.perm, a.vec)))


def generator(s: Solution, x: int) -> GroupElement:
    """Image of the 0-indexed generator x."""
    t = [0] * s.n
    t[x] = 1
    return GroupElement(P.inverse(s.f[x]), tuple(t))


class Rep:
    """Cached generator images for one solution; evaluation of words."""

    def __init__(self, s: Solution):
        self.solution = s
        self.n = s.n
        self.gens = [generator(s, x) for x in range(s.n)]
        self.inv_gens = [invert(a) for a in self.gens]
        self.one = GroupElement.identity(s.n)

    def letter(self, k: int) -> GroupElement:
        if k == 0 or abs(k) > self.n:
            raise ValueError(f"generator index {k} out of range 1..{self.n}")
        return self.gens[k - 1] if k > 0 else self.inv_gens[-k - 1]

    def evaluate(self, word: Iterable[int]) -> GroupElement:
        a = self.one
        for k in word:
            a = multiply(a, self.letter(k))
        return a


def evaluate(s: Solution, word: Iterable[int]) -> GroupElement:
    return Rep(s).evaluate(word)


def cocycle(a: GroupElement) -> tuple[int, ...]:
    return a.vec


def augmentation(a: GroupElement) -> int:
    return sum(a.vec)


def word_augmentation(word: Iterable[int]) -> int:
    return sum(1 if k > 0 else -1 for k in word)


# -- words ---------------------------------------------------------------------

def inverse_word(w: Sequence[int]) -> Word:
    return tuple(-k for k in reversed(w))


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    """[u, v] = u v u^{-1} v^{-1}."""
    return tuple(u) + tuple(v) + inverse_word(u) + inverse_word(v)


def parse_word(text: str, n: int | None = None) -> Word:
    """Whitespace-separated signed integers, e.g. ``"1 2 -3"``; empty string is the identity."""
    try:
        w = tuple(int(t) for t in text.split())
    except ValueError:
        raise ValueError(f"cannot parse word {text!r}") from None
    for k in w:
        if k == 0 or (n is not None and abs(k) > n):
            raise ValueError(f"generator index {k} out of range in word {text!r}")
    return w


def format_word(w: Sequence[int]) -> str:
    return " ".join(str(k) for k in w)


def pretty_word(w: Sequence[int]) -> str:
    if not w:
        return "1"
    return "".join(f"x_{k}" if k > 0 else f"x_{-k}^-1" for k in w)


# -- presentation ----------------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    n: int
    relations: tuple[tuple[tuple[int, int], tuple[int, int]], ...]  # 1-indexed, smaller word left

    def lines(self) -> list[str]:
        return [f"x_{a} x_{b} = x_{c} x_{d}" for (a, b), (c, d) in self.relations]

    def __str__(self):
        return "\n".join(self.lines())


def emit_presentation(s: Solution) -> Presentation:
    """Relations xy = g_x(y) f_y(x), trivial ones dropped, each normalized with the
    lexicographically smaller side first, deduplicated and sorted."""
    rels = set()
    for x in range(s.n):
        for y in range(s.n):
            u, v = s.S(x, y)
            if (u, v) == (x, y):
                continue
            lhs, rhs = sorted([(x + 1, y + 1), (u + 1, v + 1)])
            rels.add((lhs, rhs))
    return Presentation(s.n, tuple(sorted(rels)))


def check_relations(s: Solution, rep: Rep | None = None) -> list[tuple[int, int]]:
    """Ordered pairs (1-indexed) whose defining relation fails under the representation."""
    rep = rep or Rep(s)
    bad = []
    for x in range(s.n):
        for y in range(s.n):
            u, v = s.S(x, y)
            if multiply(rep.gens[x], rep.gens[y]) != multiply(rep.gens[u], rep.gens[v]):
                bad.append((x + 1, y + 1))
    return bad


# -- balls -------------------------------------------------------------------------

class CapExceeded(RuntimeError):
    pass


def ball(s: Solution, radius: int, cap: int = 1_000_000) -> dict[GroupElement, Word]:
    """All elements of word length <= radius, each with a shortest witnessing word (BFS)."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    rep = Rep(s)
    letters = [k for x in range(1, s.n + 1) for k in (x, -x)]
    found = {rep.one: ()}
    frontier = deque([rep.one])
    for _ in range(radius):
        nxt = deque()
        for a in frontier:
            w = found[a]
            for k in letters:
                b = multiply(a, rep.letter(k))
                if b not in found:
                    found[b] = w + (k,)
                    if len(found) > cap:
                        raise CapExceeded(f"ball of radius {radius} exceeds cap {cap}")
                    nxt.append(b)
        frontier = nxt
    return found

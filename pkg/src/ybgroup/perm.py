"""Small helpers for permutations of {0, .., n-1} stored as tuples in one-line form.

Internally everything is 0-indexed; files, words and printed output are 1-indexed.
Composition is functional: ``compose(p, q)`` applies ``q`` first.
"""
from __future__ import annotations

from math import lcm
from typing import Iterable, Sequence

Perm = tuple[int, ...]


class MalformedPermutation(ValueError):
    pass


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p: Perm) -> bool:
    return all(i == x for i, x in enumerate(p))


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    r = [0] * len(p)
    for i, x in enumerate(p):
        r[x] = i
    return tuple(r)


def power(p: Perm, k: int) -> Perm:
    if k < 0:
        p, k = inverse(p), -k
    r = identity(len(p))
    for _ in range(k):
        r = compose(p, r)
    return r


def order(p: Perm) -> int:
    return lcm(*(len(c) for c in cycles(p))) if p else 1


def cycles(p: Perm) -> list[tuple[int, ...]]:
    """All cycles of ``p`` (fixed points included), each starting at its least element."""
    seen = set()
    out = []
    for start in range(len(p)):
        if start in seen:
            continue
        c = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            c.append(x)
            seen.add(x)
            x = p[x]
        out.append(tuple(c))
    return out


def from_one_line(images: Sequence[int]) -> Perm:
    """Parse 1-indexed one-line notation; raises MalformedPermutation on repeats or range errors."""
    n = len(images)
    p = []
    for v in images:
        if isinstance(v, bool) or not isinstance(v, int):
            raise MalformedPermutation(f"non-integer entry {v!r} in {list(images)}")
        if not 1 <= v <= n:
            raise MalformedPermutation(f"entry {v} out of range 1..{n} in {list(images)}")
        p.append(v - 1)
    if len(set(p)) != n:
        raise MalformedPermutation(f"repeated index in {list(images)}")
    return tuple(p)


def to_one_line(p: Perm) -> list[int]:
    return [x + 1 for x in p]


def from_cycles(n: int, cycs: Iterable[Sequence[int]]) -> Perm:
    """Build a permutation of {1..n} from 1-indexed disjoint cycles, e.g. [(1, 2, 4, 3)]."""
    p = list(range(n))
    touched = set()
    for c in cycs:
        for i, a in enumerate(c):
            if not 1 <= a <= n or a in touched:
                raise MalformedPermutation(f"bad cycle {tuple(c)} for n={n}")
            touched.add(a)
            p[a - 1] = c[(i + 1) % len(c)] - 1
    return tuple(p)


def parse_cycles(n: int, text: str) -> Perm:
    """Parse cycle notation such as ``"(1,2,4,3)(5,6)"`` or ``"()"`` / ``"id"``."""
    text = text.strip()
    if text in ("", "()", "id"):
        return identity(n)
    cycs = []
    for chunk in text.replace(")", ")|").split("|"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise MalformedPermutation(f"cannot parse cycle notation {text!r}")
        body = chunk[1:-1].replace(",", " ").split()
        try:
            cycs.append([int(t) for t in body])
        except ValueError:
            raise MalformedPermutation(f"cannot parse cycle notation {text!r}") from None
    return from_cycles(n, cycs)


def to_cycles(p: Perm) -> str:
    cs = [c for c in cycles(p) if len(c) > 1]
    if not cs:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cs)


def act_on_vector(p: Perm, vec: Sequence[int]) -> tuple[int, ...]:
    """Move coordinate x to coordinate p(x), i.e. t_x -> t_{p(x)}."""
    r = [0] * len(vec)
    for x, v in enumerate(vec):
        r[p[x]] = v
    return tuple(r)

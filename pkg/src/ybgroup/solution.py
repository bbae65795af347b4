"""Finite involutive non-degenerate set-theoretic solutions of the Yang-Baxter equation.

A solution on X = {0..n-1} is given by two families of permutations f, g and the map
S(x, y) = (g_x(y), f_y(x)).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import perm as P
from .perm import MalformedPermutation, Perm

__all__ = [
    "Solution", "Violation", "InvalidSolution", "InternalConsistencyError", "MalformedPermutation",
    "validate", "find_violations", "derive_g_from_f", "retract_step", "retract_tower",
    "RetractTower", "is_decomposable", "are_isomorphic", "relabel", "restrict",
    "trivial_solution", "permutation_solution", "load_solution", "dump_solution",
    "solution_to_dict", "solution_from_dict",
]


class InvalidSolution(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
        super().__init__(f"not a solution: {lines}{more}")


class InternalConsistencyError(RuntimeError):
    """A fact guaranteed by the theory failed at runtime; this indicates a bug."""


@dataclass(frozen=True)
class Violation:
    axiom: str  # "involutive" or "braided"
    witness: tuple[int, ...]  # 1-indexed pair or triple
    detail: str

    def __str__(self):
        return f"{self.axiom} fails at {self.witness}: {self.detail}"


@dataclass(frozen=True)
class Solution:
    """Use :func:`validate` to construct; the bare constructor does not check the axioms."""

    n: int
    f: tuple[Perm, ...]
    g: tuple[Perm, ...]

    def S(self, x: int, y: int) -> tuple[int, int]:
        return self.g[x][y], self.f[y][x]

    def is_trivial(self) -> bool:
        return all(P.is_identity(p) for p in self.f + self.g)

    def tables(self) -> tuple:
        return self.f + self.g

    def __str__(self):
        fs = " ".join(P.to_cycles(p) for p in self.f)
        gs = " ".join(P.to_cycles(p) for p in self.g)
        return f"Solution(n={self.n}; f: {fs}; g: {gs})"


def derive_g_from_f(f: Sequence[Perm]) -> tuple[tuple[int, ...], ...]:
    """g_x(y) = f^{-1}_{f_y(x)}(y), forced by the second coordinate of S(S(x, y)) = (x, y).

    The result need not consist of permutations; run :func:`validate` on it.
    """
    n = len(f)
    finv = [P.inverse(p) for p in f]
    return tuple(tuple(finv[f[y][x]][y] for y in range(n)) for x in range(n))


def _violations(n, f, g, first_only=False):
    out = []
    for x in range(n):
        for y in range(n):
            u, v = g[x][y], f[y][x]
            back = (g[u][v], f[v][u])
            if back != (x, y):
                out.append(Violation("involutive", (x + 1, y + 1),
                                     f"S(S({x + 1},{y + 1})) = ({back[0] + 1},{back[1] + 1})"))
                if first_only:
                    return out
    for x in range(n):
        for y in range(n):
            a, b = g[x][y], f[y][x]
            for z in range(n):
                # S12 S23 S12
                c, d = g[b][z], f[z][b]
                lhs = (g[a][c], f[c][a], d)
                # S23 S12 S23
                p, q = g[y][z], f[z][y]
                r, s = g[x][p], f[p][x]
                rhs = (r, g[s][q], f[q][s])
                if lhs != rhs:
                    out.append(Violation(
                        "braided", (x + 1, y + 1, z + 1),
                        f"S12S23S12 -> {tuple(t + 1 for t in lhs)}, S23S12S23 -> {tuple(t + 1 for t in rhs)}"))
                    if first_only:
                        return out
    return out


def _as_perms(tables, n, name):
    if len(tables) != n:
        raise MalformedPermutation(f"{name}: expected {n} permutations, got {len(tables)}")
    out = []
    for i, row in enumerate(tables):
        if len(row) != n:
            raise MalformedPermutation(f"{name}_{i + 1}: expected {n} entries, got {len(row)}")
        try:
            out.append(P.from_one_line(row))
        except MalformedPermutation as e:
            raise MalformedPermutation(f"{name}_{i + 1}: {e}") from None
    return tuple(out)


def find_violations(f: Sequence[Sequence[int]], g: Sequence[Sequence[int]] | None = None) -> list[Violation]:
    """Every involutivity/braid failure of the 1-indexed tables (empty list = valid).

    Malformed permutations raise MalformedPermutation instead of being reported here.
    """
    n = len(f)
    fp = _as_perms(f, n, "f")
    if g is None:
        gp = _as_perms([P.to_one_line(r) for r in derive_g_from_f(fp)], n, "g (derived)")
    else:
        gp = _as_perms(g, n, "g")
    return _violations(n, fp, gp)


def validate(f: Sequence[Sequence[int]], g: Sequence[Sequence[int]] | None = None) -> Solution:
    """Build a Solution from 1-indexed one-line tables, deriving g from f when g is omitted.

    Raises MalformedPermutation for non-bijective rows and InvalidSolution (carrying every
    violated axiom with a counterexample) when the tables are not a symmetric solution.
    """
    n = len(f)
    fp = _as_perms(f, n, "f")
    if g is None:
        gp = _as_perms([P.to_one_line(r) for r in derive_g_from_f(fp)], n, "g (derived)")
    else:
        gp = _as_perms(g, n, "g")
    bad = _violations(n, fp, gp)
    if bad:
        raise InvalidSolution(bad)
    return Solution(n, fp, gp)


def is_valid(s: Solution) -> bool:
    return not _violations(s.n, s.f, s.g, first_only=True)


def trivial_solution(n: int) -> Solution:
    e = P.identity(n)
    return Solution(n, (e,) * n, (e,) * n)


def permutation_solution(n: int, sigma: Perm | None = None) -> Solution:
    """All f_x equal to ``sigma`` (default the n-cycle x -> x+1)."""
    if sigma is None:
        sigma = tuple((i + 1) % n for i in range(n))
    f = (tuple(sigma),) * n
    return Solution(n, f, derive_g_from_f(f))


# -- retracts ---------------------------------------------------------------

def retract_step(s: Solution) -> tuple[Solution, tuple[int, ...]]:
    """Identify x and y when f_x = f_y; returns the induced solution and the class map."""
    classes: dict[Perm, int] = {}
    cls = []
    for x in range(s.n):
        cls.append(classes.setdefault(s.f[x], len(classes)))
    m = len(classes)
    fc: list[list[int | None]] = [[None] * m for _ in range(m)]
    gc: list[list[int | None]] = [[None] * m for _ in range(m)]
    for x in range(s.n):
        for y in range(s.n):
            for table, src in ((fc, s.f), (gc, s.g)):
                val = cls[src[x][y]]
                old = table[cls[x]][cls[y]]
                if old is None:
                    table[cls[x]][cls[y]] = val
                elif old != val:
                    raise InternalConsistencyError(
                        f"induced map depends on representatives at ({x + 1},{y + 1}) in {s}")
    f_new = tuple(tuple(row) for row in fc)
    g_new = tuple(tuple(row) for row in gc)
    for p in f_new + g_new:
        if sorted(p) != list(range(m)):
            raise InternalConsistencyError(f"induced map is not a permutation for {s}")
    bad = _violations(m, f_new, g_new)
    if bad:
        raise InternalConsistencyError(f"retract of {s} is not a solution: {bad[0]}")
    return Solution(m, f_new, g_new), tuple(cls)


@dataclass(frozen=True)
class RetractTower:
    """levels[0] is the input with class map None; levels[j] carries the map from level j-1."""

    levels: tuple[tuple[Solution, tuple[int, ...] | None], ...]
    retractable: bool
    level: int | None  # multipermutation level when retractable
    stuck_size: int | None  # size of the non-shrinking level otherwise

    @property
    def solutions(self) -> list[Solution]:
        return [s for s, _ in self.levels]

    @property
    def status(self) -> str:
        if self.retractable:
            return f"retractable(level={self.level})"
        return f"non-retractable(stuck-size={self.stuck_size})"


def retract_tower(s: Solution) -> RetractTower:
    levels: list[tuple[Solution, tuple[int, ...] | None]] = [(s, None)]
    cur = s
    while cur.n > 1:
        child, cmap = retract_step(cur)
        if child.n == cur.n:
            return RetractTower(tuple(levels), False, None, cur.n)
        levels.append((child, cmap))
        cur = child
    return RetractTower(tuple(levels), True, len(levels) - 1, None)


# -- decomposability and isomorphism -----------------------------------------

def _is_invariant_nondegenerate(s: Solution, Y: frozenset[int]) -> bool:
    for x in Y:
        for y in Y:
            if s.g[x][y] not in Y or s.f[x][y] not in Y:
                return False
    return True


def restrict(s: Solution, Y) -> Solution:
    """Restriction to an invariant subset, relabeled to 0..|Y|-1 in increasing order."""
    ys = sorted(Y)
    idx = {y: i for i, y in enumerate(ys)}
    f = tuple(tuple(idx[s.f[x][y]] for y in ys) for x in ys)
    g = tuple(tuple(idx[s.g[x][y]] for y in ys) for x in ys)
    return Solution(len(ys), f, g)


def is_decomposable(s: Solution, max_n: int = 20) -> tuple[frozenset[int], frozenset[int]] | None:
    """A witness bipartition (Y, X \\ Y) with 0 in Y, or None if indecomposable."""
    if s.n > max_n:
        raise ValueError(f"exhaustive bipartition scan capped at n={max_n}, got n={s.n}")
    full = frozenset(range(s.n))
    rest = list(range(1, s.n))
    for mask in range(2 ** (s.n - 1) - 1):
        Y = frozenset([0] + [rest[i] for i in range(len(rest)) if mask >> i & 1])
        Z = full - Y
        if not _is_invariant_nondegenerate(s, Y) or not _is_invariant_nondegenerate(s, Z):
            continue
        if is_valid(restrict(s, Y)) and is_valid(restrict(s, Z)):
            return Y, Z
    return None


def relabel(s: Solution, sigma: Perm) -> Solution:
    """The solution transported along x -> sigma(x): f'_{sigma y} = sigma f_y sigma^{-1}."""
    inv = P.inverse(sigma)
    f = [None] * s.n
    g = [None] * s.n
    for y in range(s.n):
        f[sigma[y]] = P.compose(sigma, P.compose(s.f[y], inv))
        g[sigma[y]] = P.compose(sigma, P.compose(s.g[y], inv))
    return Solution(s.n, tuple(f), tuple(g))


def are_isomorphic(s1: Solution, s2: Solution, max_n: int = 8) -> Perm | None:
    """A relabeling sigma with (sigma x sigma) S1 = S2 (sigma x sigma), or None."""
    if s1.n != s2.n:
        return None
    if s1.n > max_n:
        raise ValueError(f"isomorphism search capped at n={max_n}, got n={s1.n}")
    target = s2.tables()
    for sigma in itertools.permutations(range(s1.n)):
        if relabel(s1, sigma).tables() == target:
            return tuple(sigma)
    return None


# -- text format --------------------------------------------------------------

def solution_to_dict(s: Solution) -> dict:
    return {"n": s.n, "f": [P.to_one_line(p) for p in s.f], "g": [P.to_one_line(p) for p in s.g]}


def solution_from_dict(d: dict) -> Solution:
    if not isinstance(d, dict) or "n" not in d or "f" not in d:
        raise ValueError("solution document needs fields 'n' and 'f'")
    n = d["n"]
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"field 'n' must be a positive integer, got {n!r}")
    f = d["f"]
    if len(f) != n:
        raise MalformedPermutation(f"expected {n} f-tables, got {len(f)}")
    return validate(f, d.get("g"))


def dump_solution(s: Solution, path) -> None:
    Path(path).write_text(json.dumps(solution_to_dict(s)) + "\n")


def load_solution(path) -> Solution:
    return solution_from_dict(json.loads(Path(path).read_text()))

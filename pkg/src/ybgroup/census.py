"""Enumeration of small solutions up to isomorphism, with classification."""
from __future__ import annotations

import hashlib
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .frozen import frozen_data
from .grouprep import emit_presentation
from .perm import Perm, inverse
from .solution import (Solution, _violations, is_decomposable, relabel, retract_tower,
                       solution_to_dict, validate)

UNPRUNED_MAX_N = 4
PRUNED_MAX_N = 5


class BudgetExceeded(ValueError):
    pass


def canonical_form(s: Solution, max_n: int = 8) -> Solution:
    """The relabeling of ``s`` whose concatenated (f, g) tables are lexicographically least."""
    if s.n > max_n:
        raise ValueError(f"canonical form capped at n={max_n}, got n={s.n}")
    best = None
    for sigma in itertools.permutations(range(s.n)):
        t = relabel(s, sigma)
        if best is None or t.tables() < best.tables():
            best = t
    return best


def _complete(n, f):
    """Derive g from a full f-family; return a Solution if valid, else None."""
    finv = [inverse(p) for p in f]
    g = []
    for x in range(n):
        row = tuple(finv[f[y][x]][y] for y in range(n))
        if len(set(row)) != n:
            return None
        g.append(row)
    g = tuple(g)
    if _violations(n, f, g, first_only=True):
        return None
    return Solution(n, tuple(f), g)


def _unpruned_shard(n, first):
    perms = list(itertools.permutations(range(n)))
    out = []
    for rest in itertools.product(perms, repeat=n - 1):
        s = _complete(n, (first,) + rest)
        if s is not None:
            out.append(s)
    return out


def _partial_ok(n, f, k):
    """Necessary conditions once f_0..f_{k-1} are fixed (f[j] is None for j >= k)."""
    finv = [inverse(p) if p is not None else None for p in f]
    g = [[None] * n for _ in range(n)]
    for x in range(n):
        seen = set()
        for y in range(k):
            fy = f[y][x]
            if fy < k:
                v = finv[fy][y]
                if v in seen:
                    return False
                seen.add(v)
                g[x][y] = v

    def G(a, b):
        return None if a is None or b is None else g[a][b]

    def F(a, b):
        return None if a is None or b is None or a >= k else f[a][b]

    for x in range(n):
        for y in range(n):
            u, v = G(x, y), F(y, x)
            back = G(u, v)
            if back is not None and back != x:
                return False
    for x in range(n):
        for y in range(n):
            a, b = G(x, y), F(y, x)
            for z in range(n):
                c, d = G(b, z), F(z, b)
                lhs = (G(a, c), F(c, a), d)
                p, q = G(y, z), F(z, y)
                r, s = G(x, p), F(p, x)
                rhs = (r, G(s, q), F(q, s))
                for l, rr in zip(lhs, rhs):
                    if l is not None and rr is not None and l != rr:
                        return False
    return True


def _pruned_shard(n, first):
    perms = list(itertools.permutations(range(n)))
    out = []
    f: list[Perm | None] = [first] + [None] * (n - 1)
    if not _partial_ok(n, f, 1):
        return out

    def dfs(k):
        if k == n:
            s = _complete(n, tuple(f))
            if s is not None:
                out.append(s)
            return
        for p in perms:
            f[k] = p
            if _partial_ok(n, f, k + 1):
                dfs(k + 1)
        f[k] = None

    dfs(1)
    return out


def labeled_solutions(n: int, pruned: bool = True, workers: int = 1, budget: bool = False) -> list[Solution]:
    """Every solution on {0..n-1} (not up to isomorphism), scanning f-families."""
    if n < 1:
        raise ValueError("n must be positive")
    limit = PRUNED_MAX_N if pruned else UNPRUNED_MAX_N
    if n > limit or (n > UNPRUNED_MAX_N and not budget):
        raise BudgetExceeded(f"n={n} is beyond the enumeration budget"
                             + ("" if n > limit else " (pass budget=True / --budget with pruning)"))
    shard = _pruned_shard if pruned else _unpruned_shard
    firsts = list(itertools.permutations(range(n)))
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(shard, [n] * len(firsts), firsts))
    else:
        parts = [shard(n, p) for p in firsts]
    return [s for part in parts for s in part]


@dataclass(frozen=True)
class CensusEntry:
    solution: Solution  # canonical representative
    decomposable: bool
    retractable: bool
    level: int | None
    stuck_size: int | None
    m: int
    digest: str
    orbit_size: int  # number of labeled solutions in the class

    def classification(self) -> dict:
        return {
            "decomposable": self.decomposable,
            "retractable": self.retractable,
            "level": self.level,
            "stuck_size": self.stuck_size,
            "frozen_class_m": self.m,
            "presentation_digest": self.digest,
        }


def presentation_digest(s: Solution) -> str:
    text = str(emit_presentation(s)).encode()
    return hashlib.sha256(text).hexdigest()[:16]


def classify(s: Solution) -> dict:
    """Isomorphism-invariant classification of a solution."""
    c = canonical_form(s)
    tower = retract_tower(c)
    return {
        "decomposable": is_decomposable(c) is not None,
        "retractable": tower.retractable,
        "level": tower.level,
        "stuck_size": tower.stuck_size,
        "frozen_class_m": frozen_data(c).m,
        "presentation_digest": presentation_digest(c),
    }


def enumerate_solutions(n: int, pruned: bool = True, workers: int = 1, budget: bool = False) -> list[CensusEntry]:
    labeled = labeled_solutions(n, pruned=pruned, workers=workers, budget=budget)
    classes: dict[tuple, list] = {}
    for s in labeled:
        c = canonical_form(s)
        classes.setdefault(c.tables(), [c, 0])[1] += 1
    entries = []
    for key in sorted(classes):
        c, size = classes[key]
        cl = classify(c)
        entries.append(CensusEntry(c, cl["decomposable"], cl["retractable"], cl["level"],
                                   cl["stuck_size"], cl["frozen_class_m"], cl["presentation_digest"], size))
    return entries


def census_counts(entries: list[CensusEntry]) -> dict:
    by_level: dict[str, int] = {}
    for e in entries:
        if e.retractable:
            by_level[str(e.level)] = by_level.get(str(e.level), 0) + 1
    return {
        "total": len(entries),
        "decomposable": sum(e.decomposable for e in entries),
        "retractable_by_level": dict(sorted(by_level.items())),
        "non_retractable": sum(not e.retractable for e in entries),
    }


def write_census(entries: list[CensusEntry], outdir, n: int) -> Path:
    """One solution file per entry plus manifest.json; returns the manifest path."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    listing = []
    for i, e in enumerate(entries):
        name = f"n{n}_{i:03d}.json"
        (outdir / name).write_text(json.dumps(solution_to_dict(e.solution)) + "\n")
        listing.append({"file": name, "labeled_count": e.orbit_size, **e.classification()})
    manifest = {"n": n, "counts": census_counts(entries), "entries": listing}
    path = outdir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=1) + "\n")
    return path


def read_census(outdir) -> tuple[dict, list[Solution]]:
    outdir = Path(outdir)
    manifest = json.loads((outdir / "manifest.json").read_text())
    sols = []
    for item in manifest["entries"]:
        d = json.loads((outdir / item["file"]).read_text())
        sols.append(validate(d["f"], d.get("g")))
    return manifest, sols

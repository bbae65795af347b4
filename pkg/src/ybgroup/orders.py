"""A computable left order on the structure group of a retractable solution.

The order comes from the retract tower X = X_0 -> X_1 -> ... -> X_L (|X_L| = 1): a word is
mapped letterwise down the tower, and its sign is decided at the deepest level where its
image is non-trivial.  There the kernel of the next retract acts trivially on X_j, so the
cocycle is a homomorphism on it and a lexicographic order on Z^{X_j} finishes the job.
At the last level the single coordinate is the augmentation.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from . import perm as P
from .grouprep import GroupElement, Rep, Word, format_word, inverse_word, word_augmentation
from .solution import InternalConsistencyError, Solution, retract_tower


class NotRetractable(ValueError):
    pass


def lex_sign(vec: Sequence[int], order: Sequence[int] | None = None, signs: Sequence[int] | None = None) -> int:
    """Sign of the first non-zero coordinate, scanning coordinates in ``order`` (0-indexed)."""
    order = range(len(vec)) if order is None else order
    for j, i in enumerate(order):
        if vec[i]:
            s = 1 if vec[i] > 0 else -1
            return s * (signs[j] if signs is not None else 1)
    return 0


class OrderOracle:
    """sign(word) in {-1, 0, 1}; g < h iff sign(g^{-1} h) = 1.

    ``lex_perm`` (1-indexed coordinate order) and ``lex_signs`` (+1/-1 per position of
    ``lex_perm``) choose the lexicographic order used on the original lattice Z^X; deeper
    levels always use the default order.  Each choice is a different left order.
    """

    def __init__(self, s: Solution, lex_perm: Sequence[int] | None = None, lex_signs: Sequence[int] | None = None):
        tower = retract_tower(s)
        if not tower.retractable:
            raise NotRetractable("non-retractable: order oracle not constructed")
        self.solution = s
        self.tower = tower
        self.reps = [Rep(t) for t in tower.solutions]
        # maps[j] sends 1-indexed generators of level 0 to generators of level j
        self.maps: list[list[int]] = []
        cur = list(range(s.n))
        for j, (_, cmap) in enumerate(tower.levels):
            if cmap is not None:
                cur = [cmap[c] for c in cur]
            self.maps.append(cur)
        if lex_perm is not None:
            lp = [k - 1 for k in lex_perm]
            if sorted(lp) != list(range(s.n)):
                raise ValueError(f"lex_perm must be a permutation of 1..{s.n}")
        else:
            lp = list(range(s.n))
        if lex_signs is not None:
            if len(lex_signs) != s.n or any(x not in (1, -1) for x in lex_signs):
                raise ValueError(f"lex_signs must be {s.n} entries of +1/-1")
            ls = list(lex_signs)
        else:
            ls = [1] * s.n
        self.lex_perm, self.lex_signs = lp, ls

    @property
    def depth(self) -> int:
        return len(self.reps) - 1

    def images(self, word: Sequence[int]) -> list[GroupElement]:
        out = []
        for rep, mp in zip(self.reps, self.maps):
            out.append(rep.evaluate(mp[k - 1] + 1 if k > 0 else -(mp[-k - 1] + 1) for k in word))
        return out

    def sign(self, word: Sequence[int]) -> int:
        for k in word:
            if k == 0 or abs(k) > self.solution.n:
                raise ValueError(f"generator index {k} out of range 1..{self.solution.n}")
        ims = self.images(word)
        for j in range(len(ims) - 1, -1, -1):
            a = ims[j]
            if a.is_identity():
                continue
            # image one level down is trivial here, so the action on X_j must be too
            if not P.is_identity(a.perm):
                raise InternalConsistencyError(
                    f"retract kernel element acts non-trivially at level {j}: {format_word(word)}")
            if j == 0:
                return lex_sign(a.vec, self.lex_perm, self.lex_signs)
            return lex_sign(a.vec)
        return 0

    def compare(self, w1: Sequence[int], w2: Sequence[int]) -> int:
        """-1, 0, 1 as w1 is less than, equal to, greater than w2."""
        return -self.sign(inverse_word(w1) + tuple(w2))

    def is_positive(self, w: Sequence[int]) -> bool:
        return self.sign(w) == 1


def build_oracle(s: Solution, **kw) -> OrderOracle:
    return OrderOracle(s, **kw)


CMP_NAMES = {-1: "less", 0: "equal", 1: "greater"}


def direct_level_one_sign(s: Solution, word: Sequence[int]) -> int:
    """Augmentation first, then lexicographic order of the cocycle on its kernel.

    Only meaningful when all f_x coincide.
    """
    e = word_augmentation(word)
    if e:
        return 1 if e > 0 else -1
    a = Rep(s).evaluate(word)
    if not P.is_identity(a.perm):
        raise InternalConsistencyError("augmentation-zero element acts non-trivially")
    return lex_sign(a.vec)


# -- property testers ---------------------------------------------------------------

@dataclass
class Report:
    name: str
    samples: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "".join(f" {k}={v}" for k, v in self.stats.items())
        return f"{status} {self.name}: samples={self.samples} checks={self.checks} failures={len(self.failures)}{extra}"


def random_word(rng: random.Random, n: int, radius: int, min_len: int = 0) -> Word:
    length = rng.randint(min_len, radius)
    return tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(length))


def _fmt(*words):
    return [format_word(w) for w in words]


def test_left_invariance(o: OrderOracle, samples: int = 1000, radius: int = 6, seed: int = 0) -> Report:
    """Left invariance, trichotomy/antisymmetry and transitivity on random triples."""
    rng = random.Random(seed)
    n = o.solution.n
    rep = o.reps[0]
    r = Report("left-invariance")
    for _ in range(samples):
        f, g, h = (random_word(rng, n, radius) for _ in range(3))
        r.samples += 1
        c = o.compare(g, h)
        r.checks += 3
        if o.compare(h, g) != -c:
            r.failures.append({"check": "antisymmetry", "words": _fmt(g, h)})
        if (c == 0) != (rep.evaluate(g) == rep.evaluate(h)):
            r.failures.append({"check": "equal-iff-same-element", "words": _fmt(g, h)})
        if o.compare(f + g, f + h) != c:
            r.failures.append({"check": "left-invariance", "words": _fmt(f, g, h)})
        # transitivity: no 3-cycle among f, g, h
        trip = (f, g, h)
        for a, b, d in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
            r.checks += 1
            if o.compare(trip[a], trip[b]) < 0 and o.compare(trip[b], trip[d]) < 0 and o.compare(trip[a], trip[d]) >= 0:
                r.failures.append({"check": "transitivity", "words": _fmt(trip[a], trip[b], trip[d])})
    return r


def _positive_nontrivial(o: OrderOracle, rng, radius) -> Word:
    n = o.solution.n
    while True:
        w = random_word(rng, n, radius, min_len=1)
        s = o.sign(w)
        if s:
            return w if s > 0 else inverse_word(w)


def test_conradian(o: OrderOracle, samples: int = 1000, radius: int = 6, n_max: int = 4, seed: int = 0) -> Report:
    """For positive a, b find the least k <= n_max with b < a b^k."""
    rng = random.Random(seed)
    r = Report("conradian")
    hist: Counter = Counter()
    for _ in range(samples):
        a = _positive_nontrivial(o, rng, radius)
        b = _positive_nontrivial(o, rng, radius)
        r.samples += 1
        for k in range(1, n_max + 1):
            r.checks += 1
            if o.compare(b, a + b * k) < 0:
                hist[k] += 1
                break
        else:
            r.failures.append({"check": "conradian", "words": _fmt(a, b), "n_max": n_max})
    r.stats["min_n_histogram"] = dict(sorted(hist.items()))
    r.stats["max_min_n"] = max(hist) if hist else 0
    return r


def test_kernel_convexity(o: OrderOracle, samples: int = 1000, radius: int = 6, seed: int = 0) -> Report:
    """x < y < z with x, z in ker(augmentation) forces y into the kernel."""
    s = o.solution
    if any(p != s.f[0] for p in s.f):
        raise ValueError("kernel convexity test requires all f_x equal")
    rng = random.Random(seed)
    n = s.n
    r = Report("kernel-convexity")

    def in_kernel():
        w = random_word(rng, n, radius)
        e = word_augmentation(w)
        return w + ((-1,) * e if e > 0 else (1,) * -e)

    between = 0
    for _ in range(samples):
        x, z = in_kernel(), in_kernel()
        y = in_kernel() if rng.random() < 0.5 else random_word(rng, n, radius)
        if o.compare(x, z) > 0:
            x, z = z, x
        r.samples += 1
        r.checks += 1
        if o.compare(x, y) < 0 and o.compare(y, z) < 0:
            between += 1
            if word_augmentation(y) != 0:
                r.failures.append({"check": "convexity", "words": _fmt(x, y, z)})
    r.stats["between"] = between
    return r


def test_direct_agreement(o: OrderOracle, samples: int = 1000, radius: int = 6, seed: int = 0) -> Report:
    """For solutions with all f_x equal, the tower oracle equals the direct comparator."""
    s = o.solution
    if any(p != s.f[0] for p in s.f):
        raise ValueError("direct comparator requires all f_x equal")
    rng = random.Random(seed)
    r = Report("direct-agreement")
    for _ in range(samples):
        g, h = random_word(rng, s.n, radius), random_word(rng, s.n, radius)
        w = inverse_word(g) + h
        r.samples += 1
        r.checks += 1
        if o.sign(w) != direct_level_one_sign(s, w):
            r.failures.append({"check": "agreement", "words": _fmt(g, h)})
    return r


def find_right_invariance_violation(o: OrderOracle, samples: int = 10_000, radius: int = 6, seed: int = 0):
    """Search for g < h with not (g f < h f).  Returns (g, h, f) or None (inconclusive)."""
    rng = random.Random(seed)
    n = o.solution.n
    for _ in range(samples):
        f, g, h = (random_word(rng, n, radius) for _ in range(3))
        c = o.compare(g, h)
        if c == 0:
            continue
        if c > 0:
            g, h = h, g
        if o.compare(g + f, h + f) >= 0:
            return g, h, f
    return None


# pytest must not collect the testers when they are imported into test modules
for _fn in (test_left_invariance, test_conradian, test_kernel_convexity, test_direct_agreement):
    _fn.__test__ = False


# -- unique products -------------------------------------------------------------------

@dataclass
class UniqueProductResult:
    witness: tuple[Word, Word] | None  # a unique factorization x = ab, if any
    repeated: list[list[tuple[Word, Word]]]  # factorizations of products hit more than once


def unique_product_check(s: Solution, A: Sequence[Word], B: Sequence[Word]) -> UniqueProductResult:
    if not A or not B:
        raise ValueError("A and B must be non-empty")
    rep = Rep(s)
    ea = {}
    for a in A:
        ea.setdefault(tuple(a), rep.evaluate(a))
    eb = {}
    for b in B:
        eb.setdefault(tuple(b), rep.evaluate(b))
    # distinct words with the same value are one element of the set
    ua = {}
    for w, e in ea.items():
        ua.setdefault(e, w)
    ub = {}
    for w, e in eb.items():
        ub.setdefault(e, w)
    prods: dict[GroupElement, list] = {}
    for x, a in ua.items():
        for y, b in ub.items():
            prods.setdefault(x * y, []).append((a, b))
    witness = next((fs[0] for fs in prods.values() if len(fs) == 1), None)
    repeated = [fs for fs in prods.values() if len(fs) > 1]
    return UniqueProductResult(witness, repeated)

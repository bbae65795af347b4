"""Frozen elements, the finite quotient W = G/N, and generalized-torsion witnesses."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from math import lcm
from pathlib import Path

from . import perm as P
from .grouprep import GroupElement, Rep, Word, commutator, format_word, inverse_word, multiply, parse_word
from .perm import Perm
from .solution import InternalConsistencyError, Solution, solution_from_dict, solution_to_dict


class TrivialSolutionError(ValueError):
    pass


@dataclass(frozen=True)
class FrozenData:
    pred: Perm  # pred[x] is the unique y with S(y, x) = (y, x)
    cycles: tuple[tuple[int, ...], ...]
    m: int
    theta: tuple[Word, ...]  # theta[x] is a 1-indexed word of length m ending with x_{x+1}
    base: int  # lcm of the pred-cycle lengths, the first candidate tried for m


def _group_order(gens: list[Perm], n: int) -> int:
    seen = {P.identity(n)}
    todo = [P.identity(n)]
    while todo:
        p = todo.pop()
        for q in gens:
            r = P.compose(q, p)
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return len(seen)


def theta_word(pred: Perm, x: int, length: int) -> Word:
    chain = [x]
    for _ in range(length - 1):
        chain.append(pred[chain[-1]])
    return tuple(y + 1 for y in reversed(chain))


def frozen_data(s: Solution, rep: Rep | None = None) -> FrozenData:
    rep = rep or Rep(s)
    n = s.n
    pred = tuple(P.inverse(s.f[x])[x] for x in range(n))
    for x, y in enumerate(pred):
        if s.S(y, x) != (y, x):
            raise InternalConsistencyError(f"({y + 1},{x + 1}) is not frozen in {s}")
    if sorted(pred) != list(range(n)):
        raise InternalConsistencyError(f"frozen predecessor map is not a permutation in {s}")
    # every frozen pair must be of this form
    for y in range(n):
        for x in range(n):
            if s.S(y, x) == (y, x) and pred[x] != y:
                raise InternalConsistencyError(f"extra frozen pair ({y + 1},{x + 1}) in {s}")
    cycs = tuple(P.cycles(pred))
    base = lcm(*(len(c) for c in cycs))
    cap = n * _group_order(list(s.f), n) * base
    m = base
    while m <= cap:
        words = [theta_word(pred, x, m) for x in range(n)]
        ok = True
        for x, w in enumerate(words):
            a = rep.evaluate(w)
            if not P.is_identity(a.perm) or a.vec != tuple(m if i == x else 0 for i in range(n)):
                ok = False
                break
        if ok:
            return FrozenData(pred, cycs, m, tuple(words), base)
        m += base
    raise InternalConsistencyError(f"no frozen class m <= {cap} found for {s}")


def conjugation_check(s: Solution, fd: FrozenData | None = None, rep: Rep | None = None) -> dict:
    """For all k, i: x_k theta_i x_k^{-1} equals theta_{f_k^{-1}(i)} under the representation.

    Returns a map (k, i) -> bool with 1-indexed keys.
    """
    rep = rep or Rep(s)
    fd = fd or frozen_data(s, rep)
    thetas = [rep.evaluate(w) for w in fd.theta]
    report = {}
    for k in range(s.n):
        xk, xk_inv = rep.gens[k], rep.inv_gens[k]
        finv = P.inverse(s.f[k])
        for i in range(s.n):
            lhs = multiply(multiply(xk, thetas[i]), xk_inv)
            report[(k + 1, i + 1)] = lhs == thetas[finv[i]]
    return report


def noncommuting_pair(s: Solution) -> tuple[int, int] | None:
    """Smallest 1-indexed (k, i) with f_k^{-1}(i) != i, or None for the trivial solution."""
    for k in range(s.n):
        finv = P.inverse(s.f[k])
        for i in range(s.n):
            if finv[i] != i:
                return k + 1, i + 1
    return None


@dataclass(frozen=True)
class TorsionWitness:
    solution: Solution
    k: int
    i: int
    p: int
    c: Word
    conjugators: tuple[Word, ...]

    def product_word(self) -> Word:
        """prod_j h_j c h_j^{-1}, which equals [x_k^p, theta_i]."""
        w: tuple[int, ...] = ()
        for h in self.conjugators:
            w += h + self.c + inverse_word(h)
        return w

    def to_dict(self) -> dict:
        return {
            "kind": "generalized-torsion",
            "solution": solution_to_dict(self.solution),
            "k": self.k, "i": self.i, "p": self.p,
            "element": format_word(self.c),
            "conjugators": [format_word(h) for h in self.conjugators],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TorsionWitness":
        s = solution_from_dict(d["solution"])
        return cls(s, d["k"], d["i"], d["p"], parse_word(d["element"], s.n),
                   tuple(parse_word(h, s.n) for h in d["conjugators"]))


def verify_witness(wit: TorsionWitness) -> bool:
    """Re-check a certificate from its words alone: c != 1 and prod h_j c h_j^{-1} = 1."""
    rep = Rep(wit.solution)
    if rep.evaluate(wit.c).is_identity():
        return False
    if not wit.conjugators:
        return False
    return rep.evaluate(wit.product_word()).is_identity()


def torsion_witness(s: Solution, rep: Rep | None = None) -> TorsionWitness:
    pair = noncommuting_pair(s)
    if pair is None:
        raise TrivialSolutionError("trivial solution: bi-orderable, no generalized torsion")
    rep = rep or Rep(s)
    fd = frozen_data(s, rep)
    k, i = pair
    p = P.order(s.f[k - 1])
    c = commutator((k,), fd.theta[i - 1])
    conj = tuple((k,) * j for j in range(p - 1, -1, -1))
    wit = TorsionWitness(s, k, i, p, c, conj)
    if not verify_witness(wit):
        raise InternalConsistencyError(f"torsion witness failed verification for {s}")
    return wit


def save_witness(wit: TorsionWitness, path) -> None:
    Path(path).write_text(json.dumps(wit.to_dict(), indent=1) + "\n")


def load_witness(path) -> TorsionWitness:
    return TorsionWitness.from_dict(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class CoxeterLikeQuotient:
    m: int
    order: int
    elements: frozenset = field(repr=False)


class QuotientTooLarge(ValueError):
    pass


def coxeter_like_quotient(s: Solution, cap: int = 65536, fd: FrozenData | None = None) -> CoxeterLikeQuotient:
    """W = G/N as (perm, vec mod m) pairs, by closure under right multiplication by generators."""
    fd = fd or frozen_data(s)
    m, n = fd.m, s.n
    if m ** n > cap:
        raise QuotientTooLarge(f"|W| = {m}^{n} = {m ** n} exceeds cap {cap}")
    rep = Rep(s)
    one = rep.one
    seen = {one}
    todo = deque([one])
    while todo:
        a = todo.popleft()
        for gen in rep.gens:
            b = multiply(a, gen)
            b = GroupElement(b.perm, tuple(v % m for v in b.vec))
            if b not in seen:
                seen.add(b)
                if len(seen) > m ** n:
                    raise InternalConsistencyError(f"W closure exceeds {m}^{n} for {s}")
                todo.append(b)
    if len(seen) != m ** n:
        raise InternalConsistencyError(f"|W| = {len(seen)} != {m}^{n} for {s}")
    return CoxeterLikeQuotient(m, len(seen), frozenset(seen))

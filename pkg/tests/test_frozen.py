import json

import pytest

from ybgroup import perm as P
from ybgroup.frozen import (QuotientTooLarge, TorsionWitness, TrivialSolutionError, conjugation_check,
                            coxeter_like_quotient, frozen_data, load_witness, noncommuting_pair, save_witness,
                            torsion_witness, verify_witness)
from ybgroup.grouprep import GroupElement, Rep, evaluate, multiply
from ybgroup.solution import permutation_solution

from .oracles import kb_inv, kb_in_frozen_subgroup, kb_mul


def frozen_pairs(s):
    return {(y, x) for y in range(s.n) for x in range(s.n) if s.S(y, x) == (y, x)}


def test_klein_frozen(klein):
    assert frozen_pairs(klein) == {(1, 0), (0, 1)}
    fd = frozen_data(klein)
    assert fd.pred == (1, 0)
    assert fd.m == 2
    assert fd.theta[0] == (2, 1)
    assert evaluate(klein, fd.theta[0]) == GroupElement((0, 1), (2, 0))


def test_trivial_frozen(trivial3):
    assert frozen_pairs(trivial3) == {(x, x) for x in range(3)}
    fd = frozen_data(trivial3)
    assert fd.pred == (0, 1, 2) and fd.m == 1
    assert fd.theta == ((1,), (2,), (3,))


def test_nonret4_frozen(nonret4):
    fd = frozen_data(nonret4)
    assert {(fd.pred[x], x) for x in range(4)} == frozen_pairs(nonret4)
    assert len(fd.cycles) == 1 and len(fd.cycles[0]) == 4
    assert fd.m == 4
    assert fd.theta[0] == (4, 2, 3, 1)
    assert evaluate(nonret4, fd.theta[0]) == GroupElement((0, 1, 2, 3), (4, 0, 0, 0))


def test_frozen_invariants_on_census(census_solutions):
    for s in census_solutions:
        fd = frozen_data(s)
        assert sorted(fd.pred) == list(range(s.n))
        assert {(fd.pred[x], x) for x in range(s.n)} == frozen_pairs(s)
        rep = Rep(s)
        thetas = [rep.evaluate(w) for w in fd.theta]
        for x, (w, a) in enumerate(zip(fd.theta, thetas)):
            assert len(w) == fd.m and w[-1] == x + 1
            assert all(s.S(w[j] - 1, w[j + 1] - 1) == (w[j] - 1, w[j + 1] - 1) for j in range(len(w) - 1))
            assert a == GroupElement(P.identity(s.n), tuple(fd.m if i == x else 0 for i in range(s.n)))
        # frozen elements commute pairwise
        for a in thetas:
            for b in thetas:
                assert multiply(a, b) == multiply(b, a)


def test_m_is_multiple_of_cycle_lcm(census_solutions):
    data = [frozen_data(s) for s in census_solutions]
    assert all(fd.m % fd.base == 0 for fd in data)
    # the lcm of the pred-cycle lengths is not always enough
    assert any(fd.m > fd.base for fd in data)


def test_m_exceeds_cycle_lcm_example():
    from ybgroup.solution import validate
    s = validate([[1, 2, 3], [1, 2, 3], [2, 1, 3]])
    fd = frozen_data(s)
    assert fd.base == 1 and fd.m == 2
    # length-1 candidate theta_3 = x_3 acts non-trivially
    assert evaluate(s, (3,)).perm != (0, 1, 2)


def test_conjugation_check_examples(klein, trivial3, nonret4):
    rep = Rep(klein)
    fd = frozen_data(klein)
    lhs = rep.evaluate((1,) + fd.theta[0] + (-1,))
    assert lhs == rep.evaluate(fd.theta[1])
    assert all(conjugation_check(trivial3).values())
    report = conjugation_check(nonret4)
    assert len(report) == 16 and all(report.values())


def test_noncommuting_pair(trivial3, klein, nonret4):
    assert noncommuting_pair(trivial3) is None
    assert noncommuting_pair(klein) == (1, 1)
    assert P.inverse(nonret4.f[0])[1] == 0
    assert noncommuting_pair(nonret4) == (1, 1)  # f_1 moves 1 already


def test_torsion_witness_klein(klein):
    w = torsion_witness(klein)
    assert (w.k, w.i, w.p) == (1, 1, 2)
    assert evaluate(klein, w.c) == GroupElement((0, 1), (-2, 2))
    assert w.conjugators == ((1,), ())
    assert evaluate(klein, (1,) + w.c + (-1,) + w.c).is_identity()


def test_torsion_witness_trivial(trivial3):
    with pytest.raises(TrivialSolutionError):
        torsion_witness(trivial3)


def test_torsion_witness_nonret4(nonret4):
    w = torsion_witness(nonret4)
    assert w.p == 4 and verify_witness(w)


def test_witness_certificate_round_trip(tmp_path, nonret4):
    w = torsion_witness(nonret4)
    path = tmp_path / "cert.json"
    save_witness(w, path)
    assert verify_witness(load_witness(path))
    d = json.loads(path.read_text())
    d["conjugators"] = d["conjugators"][:-1]
    assert not verify_witness(TorsionWitness.from_dict(d))


def test_witness_product_is_commutator_of_power(census_solutions):
    """[x^p, y] = prod_j x^j [x, y] x^{-j}, checked under the representation."""
    for s in census_solutions:
        if s.is_trivial():
            continue
        w = torsion_witness(s)
        rep = Rep(s)
        th = frozen_data(s).theta[w.i - 1]
        xp = (w.k,) * w.p
        comm = xp + th + tuple(-k for k in reversed(xp)) + tuple(-k for k in reversed(th))
        assert rep.evaluate(w.product_word()) == rep.evaluate(comm)


def test_quotient_examples(klein, trivial3, nonret4):
    assert coxeter_like_quotient(klein).order == 4
    assert coxeter_like_quotient(trivial3).order == 1
    W = coxeter_like_quotient(nonret4)
    assert (W.m, W.order) == (4, 256)


def test_klein_quotient_hand_count():
    """Cosets of N in Z x| Z, counted from a hand-derived membership rule."""
    box = [(i, j) for i in range(-4, 5) for j in range(-4, 5)]
    reps = []
    for u in box:
        if not any(kb_in_frozen_subgroup(kb_mul(kb_inv(r), u)) for r in reps):
            reps.append(u)
    assert len(reps) == 4


def test_quotient_cap(nonret4):
    with pytest.raises(QuotientTooLarge):
        coxeter_like_quotient(nonret4, cap=100)


def test_quotient_closed(perm3):
    W = coxeter_like_quotient(perm3)
    rep = Rep(perm3)
    for a in W.elements:
        for g in rep.gens:
            b = multiply(a, g)
            assert GroupElement(b.perm, tuple(v % W.m for v in b.vec)) in W.elements

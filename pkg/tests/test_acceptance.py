"""End-to-end exit criteria.  Each test prints one ``[acceptance] ... PASS/FAIL`` line."""
import contextlib
import json
import random
import time

import pytest

from ybgroup import orders
from ybgroup.census import census_counts, enumerate_solutions, labeled_solutions, BudgetExceeded
from ybgroup.cli import main
from ybgroup.frozen import (QuotientTooLarge, coxeter_like_quotient, conjugation_check, frozen_data,
                            torsion_witness, verify_witness, TorsionWitness)
from ybgroup.grouprep import Rep, check_relations, emit_presentation, invert
from ybgroup.orders import OrderOracle, find_right_invariance_violation, unique_product_check
from ybgroup.solution import are_isomorphic, is_decomposable, retract_tower

from .oracles import brute_force_census

NONRET4_RELATIONS = [
    "x_1 x_1 = x_2 x_2",
    "x_1 x_2 = x_3 x_3",
    "x_2 x_1 = x_4 x_4",
    "x_1 x_3 = x_4 x_1",
    "x_2 x_4 = x_3 x_2",
    "x_3 x_4 = x_4 x_3",
]


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(label):
        t = time.perf_counter()
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"\n[acceptance] {label}: FAIL ({time.perf_counter() - t:.1f}s)")
            raise
        with capsys.disabled():
            print(f"\n[acceptance] {label}: PASS ({time.perf_counter() - t:.1f}s)")
    return run


def test_c1_nonretractable_fixture(criterion, nonret4, tmp_path, capsys):
    with criterion("1 non-retractable n=4 fixture"):
        t = time.perf_counter()
        assert sorted(emit_presentation(nonret4).lines()) == sorted(NONRET4_RELATIONS)
        tower = retract_tower(nonret4)
        assert not tower.retractable and tower.stuck_size == 4
        assert is_decomposable(nonret4) is None
        assert time.perf_counter() - t < 1.0
        p = tmp_path / "nr4.json"
        p.write_text(json.dumps({"n": 4, "f": ["(1,2,4,3)", "(1,3,4,2)", "(2,3)", "(1,4)"],
                                 "g": ["(1,2,3,4)", "(1,4,3,2)", "(1,3)", "(2,4)"]}))
        assert main(["validate", str(p)]) == 0
        assert main(["classify", str(p)]) == 0
        out = capsys.readouterr().out
        assert "non-retractable" in out and "indecomposable" in out


def test_c2_census_counts(criterion, census, nonret4):
    with criterion("2 census counts"):
        t = time.perf_counter()
        fresh = enumerate_solutions(4)
        assert time.perf_counter() - t < 300
        assert len(census[1]) == 1
        assert len(census[2]) == 2
        assert len(fresh) == 23
        # plain scan agrees with the pruned scan
        assert len(labeled_solutions(4, pruned=False)) == sum(e.orbit_size for e in fresh)
        nonret = [e for e in fresh if not e.retractable]
        assert len(nonret) == 2 and all(not e.decomposable for e in nonret)
        assert sum(are_isomorphic(e.solution, nonret4) is not None for e in nonret) == 1
        n3 = len(census[3])
        assert brute_force_census(3)[0] == n3 == 5


def test_c3_representation_soundness(criterion, census_solutions):
    with criterion("3 representation soundness"):
        failures = 0
        for idx, s in enumerate(census_solutions):
            rep = Rep(s)
            failures += len(check_relations(s, rep))
            rng = random.Random(idx)
            for _ in range(1000):
                u = orders.random_word(rng, s.n, 6)
                v = orders.random_word(rng, s.n, 6)
                a1, a2 = rep.evaluate(u), rep.evaluate(v)
                lhs = rep.evaluate(u + v).vec
                rhs = tuple(p + q for p, q in zip(invert(a2).act(a1.vec), a2.vec))
                failures += lhs != rhs
        assert failures == 0


def test_c4_frozen_suite(criterion, census_solutions, klein, nonret4):
    with criterion("4 frozen suite"):
        for s in census_solutions:
            fd = frozen_data(s)
            assert sorted(fd.pred) == list(range(s.n))
            rep = Rep(s)
            for x, w in enumerate(fd.theta):
                a = rep.evaluate(w)
                assert a.perm == tuple(range(s.n))
                assert a.vec == tuple(fd.m if i == x else 0 for i in range(s.n))
            assert all(conjugation_check(s, fd, rep).values())
            if fd.m ** s.n <= 65536:
                assert coxeter_like_quotient(s, cap=65536, fd=fd).order == fd.m ** s.n
        for s, m, order in ((klein, 2, 4), (nonret4, 4, 256)):
            W = coxeter_like_quotient(s)
            assert (W.m, W.order, len(W.elements)) == (m, order, order)


def test_c5_torsion_witnesses(criterion, census_solutions):
    with criterion("5 non-bi-orderability witnesses"):
        count = 0
        for s in census_solutions:
            if s.is_trivial():
                continue
            w = torsion_witness(s)
            # re-verify from the serialized certificate only
            assert verify_witness(TorsionWitness.from_dict(json.loads(json.dumps(w.to_dict()))))
            count += 1
        assert count == len(census_solutions) - 4  # one trivial solution per n


def test_c6_order_oracle(criterion, census, klein):
    with criterion("6 order oracle"):
        for n in (1, 2, 3, 4):
            for e in census[n]:
                if not e.retractable:
                    continue
                o = OrderOracle(e.solution)
                r = orders.test_left_invariance(o, samples=1000, seed=n)
                assert r.passed, r.failures[:3]
                r = orders.test_conradian(o, samples=1000, n_max=2, seed=n)
                assert r.passed, r.failures[:3]
                s = e.solution
                if all(p == s.f[0] for p in s.f):
                    assert orders.test_direct_agreement(o, samples=1000, seed=n).passed
                    assert orders.test_kernel_convexity(o, samples=1000, seed=n).passed
        assert find_right_invariance_violation(OrderOracle(klein), samples=10_000, seed=0) is not None


def test_c7_unique_product(criterion, klein):
    with criterion("7 unique product"):
        r = unique_product_check(klein, [(1,), (2,)], [(1,), (2,)])
        assert r.witness is not None
        assert [((1,), (1,)), ((2,), (2,))] in r.repeated


def test_c8_desk_scale(criterion):
    with criterion("8 desk-scale honesty (n=8 census and LO(G) topology not reproduced)"):
        with pytest.raises(BudgetExceeded):
            labeled_solutions(8, budget=True)
        assert not hasattr(orders, "space_of_orders")

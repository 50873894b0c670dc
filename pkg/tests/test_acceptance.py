"""Acceptance criteria, one test each, with the stated time bounds.

Every test records its status in ``conftest.ACCEPTANCE``; the session
summary prints one line per criterion.
"""

import time
from contextlib import contextmanager

import pytest

from conftest import ACCEPTANCE
from qspringborn.laurent import ONE, LaurentPoly
from qspringborn.markov import check_markov_cf, companion, iter_nodes, markov_fractions, markov_tree
from qspringborn.qrat import Frac, quantize
from qspringborn.springborn import main_theorem_check
from qspringborn.verify import SuiteResult, run_suite

pytestmark = pytest.mark.acceptance


@contextmanager
def criterion(k: int, limit: float):
    """Time the block, record PASS/FAIL and enforce the time bound."""
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        if status == "PASS" and elapsed > limit:
            status = "FAIL"
        ACCEPTANCE[k] = (status, elapsed)
        print(f"criterion {k}: {status} ({elapsed:.2f} s, limit {limit:g} s)")
    assert elapsed <= limit, f"criterion {k} took {elapsed:.1f} s (limit {limit} s)"


def assert_suite(res: SuiteResult) -> None:
    assert res.checked > 0, f"{res.name}: nothing checked"
    assert res.ok, f"{res.name}: {res.failures[0]}"


def poly(text: str) -> LaurentPoly:
    from qspringborn.laurent import parse_poly

    return parse_poly(text)


def test_criterion_01_examples():
    with criterion(1, 1.0):
        assert quantize("1/2", "sharp").ratio == (poly("q"), poly("1 + q"))
        assert quantize("1/2", "flat").ratio == (poly("q^2"), poly("1 + q^2"))
        assert quantize("7/5", "sharp").ratio == (
            poly("q^4 + 2*q^3 + 2*q^2 + q + 1"),
            poly("q^3 + 2*q^2 + q + 1"),
        )
        assert quantize("7/5", "flat").ratio == (
            poly("q^5 + q^4 + 2*q^3 + q^2 + q + 1"),
            poly("q^4 + q^3 + q^2 + q + 1"),
        )
        for n in range(1, 11):
            flat = quantize(Frac(n, 1), "flat")
            want = LaurentPoly({**{k: 1 for k in range(n - 1)}, n: 1})
            assert flat.ratio == (want, ONE), n


def test_criterion_02_duality():
    with criterion(2, 30.0):
        assert_suite(run_suite("duality", max_num=12, max_den=12))


def test_criterion_03_positivity():
    with criterion(3, 60.0):
        res = run_suite("positivity", max_num=12, max_den=12)
        assert_suite(res)


def test_criterion_04_qfarey_duality():
    with criterion(4, 120.0):
        assert_suite(run_suite("qfarey-duality", max_den=8))


def test_criterion_05_special_values():
    with criterion(5, 30.0):
        assert_suite(run_suite("special-values", max_den=20))


def test_criterion_06_qgcd_main_theorem():
    with criterion(6, 300.0):
        assert_suite(run_suite("qgcd", max_den=10))
        assert_suite(run_suite("main-theorem", max_den=10))
        assert main_theorem_check("1/3", "2/9").inner == "exceptional-holds"
        assert main_theorem_check("2/7", "3/7").outer == "exceptional-holds"


def test_criterion_07_regularity():
    with criterion(7, 60.0):
        assert_suite(run_suite("regularity", max_den=12))


def test_criterion_08_markov():
    with criterion(8, 300.0):
        assert [str(x) for x in markov_fractions(3)] == [
            "0/1", "1/2", "2/5", "5/13", "12/29", "13/34", "70/169", "75/194", "179/433",
        ]
        for node in iter_nodes(markov_tree(3)):
            assert check_markov_cf(node), node.triple
            b0, b1, b2 = (x.den for x in node.triple)
            assert b0 * b0 + b1 * b1 + b2 * b2 == 3 * b0 * b1 * b2
        # relations r0..r2 (with flat variants), the fence recursions and eps
        assert_suite(run_suite("markov-q", depth=4))
        assert_suite(run_suite("fence", depth=3))


def test_criterion_09_companions():
    with criterion(9, 10.0):
        got = [str(companion("0", k)) for k in range(1, 8)]
        assert got == ["0/1", "1/3", "3/8", "8/21", "21/55", "55/144", "144/377"]
        assert_suite(run_suite("companions", count=5, max_kl=10, kmax=12))


def test_criterion_10_geometry():
    with criterion(10, 120.0):
        assert_suite(run_suite("geometry", q=0.45, disjoint_den=25, homothety_den=8, gap_den=400))


def test_criterion_11_qfarey_add():
    with criterion(11, 120.0):
        assert_suite(run_suite("qfarey-add", max_den=8))

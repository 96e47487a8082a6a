"""Cross-verification suites: case runner, ordering, determinism."""

import time
from fractions import Fraction

import numpy as np
import pytest

from charderiv.core.errors import CrossCheckError, PreconditionError
from charderiv.core.scalars import ExactScalar
from charderiv.verify import (
    Case,
    CaseResult,
    build_cases,
    check,
    cross_cases,
    cue_cases,
    random_antisymmetric_kernel,
    run_suite,
    verify,
)


def test_exact_case_passes_when_all_routes_agree():
    case = Case(0, "demo", "x", lambda: {"a": Fraction(1, 2), "b": ExactScalar(Fraction(1, 2))})
    result = case.run()
    assert result.passed
    assert result.values == {"a": "1/2", "b": "1/2"}
    assert result.detail == ""


def test_exact_case_fails_with_detail():
    result = Case(3, "demo", "x", lambda: {"a": 1, "b": 2}).run()
    assert not result.passed
    assert result.detail == "a=1, b=2"
    assert result.line().startswith("FAIL   3 demo")


def test_tolerance_case_compares_ratios_to_one():
    assert Case(0, "ratio", "", lambda: {"r": 1.0005}, tolerance=1e-3).run().passed
    assert not Case(0, "ratio", "", lambda: {"r": 1.01}, tolerance=1e-3).run().passed


async def test_run_suite_keeps_case_order():
    def slow(value, delay):
        def compute():
            time.sleep(delay)
            return {"a": value}

        return compute

    cases = [Case(i, "order", str(i), slow(i, 0.02 * (3 - i))) for i in range(4)]
    results = await run_suite(cases, threads=4)
    assert [r.index for r in results] == [0, 1, 2, 3]
    assert [r.values["a"] for r in results] == ["0", "1", "2", "3"]


async def test_run_suite_rejects_zero_threads():
    with pytest.raises(PreconditionError):
        await run_suite([], threads=0)


def test_check_raises_on_any_failure():
    check([CaseResult(0, "k", "l")])
    with pytest.raises(CrossCheckError, match="1 of 2"):
        check([CaseResult(0, "k", "l"), CaseResult(1, "k", "l", passed=False, detail="a=1, b=2")])


def test_cross_cases_are_deterministic_per_seed():
    first = [(c.kind, c.label) for c in cross_cases(5, 10, 3)]
    second = [(c.kind, c.label) for c in cross_cases(5, 10, 3)]
    assert first == second
    assert len({kind for kind, _ in first}) == 5


def test_small_cross_suite_passes():
    results = verify("cross", seed=1, max_k=2, count=10, threads=2, max_degree=4, bound=3)
    assert len(results) == 10
    assert all(r.passed for r in results), [r.line() for r in results if not r.passed]


def test_thread_count_does_not_change_results():
    one = verify("cross", seed=9, max_k=2, count=5, threads=1)
    many = verify("cross", seed=9, max_k=2, count=5, threads=3)
    assert [r.values for r in one] == [r.values for r in many]


def test_ginibre_suite_passes():
    results = verify("ginibre", max_k=2)
    assert results
    assert all(r.passed for r in results)
    assert any(r.kind == "ginibre-top" for r in results)


def test_cue_finite_cases_compare_laguerre_jet_and_oracle():
    finite = [c for c in cue_cases(max_k=2) if c.kind == "cue-finite"]
    assert finite
    for case in finite[:6] + finite[-1:]:
        result = case.run()
        assert result.passed, result.line()
        assert "jet" in result.values


def test_unknown_suite_is_rejected():
    with pytest.raises(PreconditionError):
        build_cases("goe")


def test_random_antisymmetric_kernel_is_antisymmetric():
    rng = np.random.default_rng(0)
    a = random_antisymmetric_kernel(rng, max_degree=4)
    u, v = ExactScalar(Fraction(1, 3)), ExactScalar(2)
    assert a.evaluate({"u": u, "v": v}) == -a.evaluate({"u": v, "v": u})

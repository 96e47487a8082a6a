"""Seeded cross-verification suites.

Every case evaluates one quantity by several independent routes and passes
when the routes agree exactly (or, for large-N checks, within a tolerance).
Cases are independent and run concurrently on worker threads; results come
back in case order.
"""

from __future__ import annotations

import asyncio
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from charderiv.core.errors import CrossCheckError, PreconditionError
from charderiv.core.polys import MultiPoly, Registry
from charderiv.core.scalars import ExactScalar
from charderiv.evaluators import (
    DetProblem,
    PfaffianProblem,
    eval_borel_det,
    eval_det_corollary,
    eval_det_corollary_two_sided,
    eval_det_kostka,
    eval_first_order_multinomial,
    eval_main_theorem,
    eval_pf_kostka,
    oracle_det,
    oracle_det_columns,
    oracle_pf,
)
from charderiv.jets import DerivativeSpec, FunctionJet, KernelJet
from charderiv.rmt import (
    cue_circle_convergence,
    cue_finite_moment,
    cue_inside_disc,
    cue_kernel_polynomial,
    ginibre_moment_first,
    ginibre_moment_from_kernel,
    ginibre_moment_general,
    ginibre_moment_one_higher,
    ginibre_moment_two_higher,
    ginibre_top_coefficient,
)

logger = logging.getLogger(__name__)

UV = Registry.of("u", "v")
X = Registry.of("x")

SUITES = ("cross", "ginibre", "cue")

# Ceiling on |alpha| and |beta| in the cross suite.
MAX_WEIGHT = 4


# -- random data -----------------------------------------------------------------


def random_point(rng: np.random.Generator, bound: int = 3) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))


def random_distinct_points(rng: np.random.Generator, count: int, bound: int = 3) -> tuple[Fraction, ...]:
    points: list[Fraction] = []
    while len(points) < count:
        p = random_point(rng, bound)
        if p not in points:
            points.append(p)
    return tuple(points)


def random_poly(
    rng: np.random.Generator,
    registry: Registry,
    max_degree: int = 6,
    bound: int = 5,
    n_terms: int | None = None,
) -> MultiPoly:
    """Sparse polynomial with small non-zero integer coefficients and total degree <= ``max_degree``."""
    n_terms = int(rng.integers(2, 2 * max_degree + 3)) if n_terms is None else n_terms
    size = len(registry)
    terms: dict[tuple[int, ...], int] = {}
    for _ in range(n_terms):
        degree = int(rng.integers(0, max_degree + 1))
        exps = tuple(int(e) for e in rng.multinomial(degree, [1 / size] * size))
        coeff = int(rng.integers(1, bound + 1)) * (1 if rng.random() < 0.5 else -1)
        terms[exps] = terms.get(exps, 0) + coeff
    poly = MultiPoly(registry, terms)
    return poly if poly else MultiPoly.constant(registry, 1)


def random_kernel(rng: np.random.Generator, max_degree: int = 6, bound: int = 5) -> MultiPoly:
    return random_poly(rng, UV, max_degree, bound)


def random_antisymmetric_kernel(rng: np.random.Generator, max_degree: int = 6, bound: int = 5) -> MultiPoly:
    """``g(u, v) - g(v, u)``; falls back to ``v - u`` when that cancels."""
    g = random_poly(rng, UV, max_degree, bound)
    a = g - g.relabel(UV, {"u": "v", "v": "u"})
    if not a:
        a = MultiPoly.variable(UV, "v") - MultiPoly.variable(UV, "u")
    return a


def random_columns(
    rng: np.random.Generator, count: int, max_degree: int = 6, bound: int = 5
) -> list[MultiPoly]:
    return [random_poly(rng, X, max_degree, bound) for _ in range(count)]


def random_weights(rng: np.random.Generator, length: int, max_total: int = MAX_WEIGHT) -> tuple[int, ...]:
    total = int(rng.integers(0, max_total + 1))
    return tuple(int(w) for w in rng.multinomial(total, [1 / length] * length))


# -- cases ---------------------------------------------------------------------------


@dataclass
class CaseResult:
    index: int
    kind: str
    label: str
    values: dict[str, str] = field(default_factory=dict)
    passed: bool = True
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.index:>3} {self.kind:<14} {self.label}{tail}"


@dataclass(frozen=True)
class Case:
    index: int
    kind: str
    label: str
    compute: Callable[[], dict[str, object]]
    tolerance: float | None = None

    def run(self) -> CaseResult:
        values = self.compute()
        shown = {name: str(v) for name, v in values.items()}
        if self.tolerance is None:
            passed = len({_key(v) for v in values.values()}) == 1
        else:
            passed = all(abs(float(v) - 1.0) < self.tolerance for v in values.values())
        result = CaseResult(self.index, self.kind, self.label, shown, passed)
        if not passed:
            result.detail = ", ".join(f"{name}={text}" for name, text in shown.items())
        return result


def _key(value: object) -> object:
    if isinstance(value, ExactScalar):
        return value
    return ExactScalar.coerce(value) if isinstance(value, (int, Fraction)) else value


def _column_jets(columns: Sequence[MultiPoly], spec: DerivativeSpec) -> list[list[FunctionJet]]:
    return [
        [FunctionJet.of_polynomial(col, "x", spec.points[l], spec.jet_order(l)) for l in range(spec.L)]
        for col in columns
    ]


def _multiplicities(alpha: Sequence[int]) -> tuple[int, ...]:
    h = [0] * (max(alpha) + 1)
    for a in alpha:
        h[a] += 1
    return tuple(h)


def _first_order(alpha: Sequence[int]) -> bool:
    return all(a in (0, 1) for a in alpha)


def _det_two_sided(rng: np.random.Generator, k: int, max_degree: int, bound: int):
    kernel = random_kernel(rng, max_degree, bound)
    chi, xi = random_distinct_points(rng, 2)
    alpha, beta = random_weights(rng, k), random_weights(rng, k)
    label = f"k={k} alpha={alpha} beta={beta} chi={chi} xi={xi}"

    def compute() -> dict[str, object]:
        spec_x, spec_y = DerivativeSpec.single(chi, alpha), DerivativeSpec.single(xi, beta)
        problem = DetProblem.from_polynomial(kernel, k, alpha, beta, chi, xi)
        jets = {(0, 0): KernelJet.of_polynomial(kernel, "u", "v", (chi, xi), spec_x.jet_order(0), spec_y.jet_order(0))}
        values: dict[str, object] = {
            "oracle": oracle_det(kernel, spec_x, spec_y),
            "operator": eval_det_corollary_two_sided(jets, spec_x, spec_y),
            "kostka": eval_det_kostka(problem),
        }
        if _first_order(alpha) and _first_order(beta):
            values["multinomial"] = eval_first_order_multinomial(problem, alpha.count(0), beta.count(0))
        return values

    return "det-two-sided", label, compute


def _det_one_sided(rng: np.random.Generator, k: int, max_degree: int, bound: int):
    columns = random_columns(rng, k, max_degree, bound)
    chi = random_point(rng)
    alpha = random_weights(rng, k)
    label = f"k={k} alpha={alpha} chi={chi}"

    def compute() -> dict[str, object]:
        spec = DerivativeSpec.single(chi, alpha)
        jets = _column_jets(columns, spec)
        problem = DetProblem.from_columns(columns, alpha, chi)
        values: dict[str, object] = {
            "oracle": oracle_det_columns(columns, spec),
            "operator": eval_det_corollary(jets, spec),
            "kostka": eval_det_kostka(problem),
            "borel": eval_borel_det([col[0] for col in jets], _multiplicities(alpha)),
        }
        if _first_order(alpha):
            values["multinomial"] = eval_first_order_multinomial(problem, alpha.count(0))
        return values

    return "det-one-sided", label, compute


def _det_two_point(rng: np.random.Generator, k: int, max_degree: int, bound: int):
    size = max(k, 2)
    split = int(rng.integers(1, size))
    points = random_distinct_points(rng, 2)
    exponents = (random_weights(rng, split, 2), random_weights(rng, size - split, 2))
    columns = random_columns(rng, size, max_degree, bound)
    label = f"P={size} points={tuple(str(p) for p in points)} exponents={exponents}"

    def compute() -> dict[str, object]:
        spec = DerivativeSpec(points, exponents)
        return {
            "oracle": oracle_det_columns(columns, spec),
            "operator": eval_det_corollary(_column_jets(columns, spec), spec),
        }

    return "det-two-point", label, compute


def _pf_one_point(rng: np.random.Generator, k: int, max_degree: int, bound: int):
    half = min(k, 2)
    a = random_antisymmetric_kernel(rng, max_degree, bound)
    chi = random_point(rng)
    alpha = random_weights(rng, 2 * half, 3)
    label = f"2k={2 * half} alpha={alpha} chi={chi}"

    def compute() -> dict[str, object]:
        spec = DerivativeSpec.single(chi, alpha)
        order = sum(alpha) + 2 * half - 1
        jet = KernelJet.of_polynomial(a, "u", "v", (chi, chi), order, antisymmetric=True)
        return {
            "oracle": oracle_pf(a, spec),
            "operator": eval_main_theorem(PfaffianProblem.from_polynomials(spec, a)),
            "kostka": eval_pf_kostka(jet, alpha, half),
        }

    return "pf-one-point", label, compute


def _pf_mixed(rng: np.random.Generator, k: int, max_degree: int, bound: int):
    a = random_antisymmetric_kernel(rng, max_degree, bound)
    points = random_distinct_points(rng, 2)
    exponents = (random_weights(rng, 2, 2), random_weights(rng, 1, 1))
    q = 1
    b = random_columns(rng, q, max_degree, bound)
    label = f"P=3 Q={q} points={tuple(str(p) for p in points)} exponents={exponents}"

    def compute() -> dict[str, object]:
        spec = DerivativeSpec(points, exponents)
        return {
            "oracle": oracle_pf(a, spec, b),
            "operator": eval_main_theorem(PfaffianProblem.from_polynomials(spec, a, b=b)),
        }

    return "pf-mixed", label, compute


_CROSS_BUILDERS = (_det_two_sided, _det_one_sided, _det_two_point, _pf_one_point, _pf_mixed)


def cross_cases(seed: int, count: int, max_k: int, max_degree: int = 6, bound: int = 5) -> list[Case]:
    """``count`` cases cycling through the route families; case ``i`` draws from ``[seed, i]``."""
    if count < 1 or max_k < 1:
        raise PreconditionError(f"need at least one case and max_k >= 1, got {count} and {max_k}")
    cases = []
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        k = int(rng.integers(1, max_k + 1))
        kind, label, compute = _CROSS_BUILDERS[i % len(_CROSS_BUILDERS)](rng, k, max_degree, bound)
        cases.append(Case(i, kind, label, compute))
    return cases


def ginibre_cases(max_k: int = 3) -> list[Case]:
    cases: list[Case] = []

    def add(kind: str, label: str, compute: Callable[[], dict[str, object]]) -> None:
        cases.append(Case(len(cases), kind, label, compute))

    def coeffs(result) -> str:
        return ",".join(str(c) for c in result.coefficients())

    def top(result) -> Fraction:
        coeffs = result.coefficients()
        weight = sum(result.alpha)
        return coeffs[weight] if weight < len(coeffs) else Fraction(0)

    for k in range(1, max_k + 1):
        add("ginibre-none", f"k={k}", lambda k=k: {
            "general": coeffs(ginibre_moment_general(k, ())),
            "first": coeffs(ginibre_moment_first(k, k)),
        })
        for n in range(1, 4):
            alpha = (n,) + (0,) * (k - 1)
            add("ginibre-one", f"k={k} n={n}", lambda k=k, n=n, alpha=alpha: {
                "general": coeffs(ginibre_moment_general(k, alpha)),
                "closed": coeffs(ginibre_moment_one_higher(k, n)),
            })
        if k >= 2:
            for n1 in range(1, 5):
                for n2 in range(1, min(n1, 4 - n1) + 1):
                    alpha = (n1, n2) + (0,) * (k - 2)
                    add("ginibre-two", f"k={k} n1={n1} n2={n2}", lambda k=k, n1=n1, n2=n2, alpha=alpha: {
                        "general": coeffs(ginibre_moment_general(k, alpha)),
                        "closed": coeffs(ginibre_moment_two_higher(k, n1, n2)),
                    })
        for h in range(k):
            alpha = (1,) * (k - h)
            add("ginibre-first", f"k={k} h={h}", lambda k=k, h=h, alpha=alpha: {
                "general": coeffs(ginibre_moment_general(k, alpha)),
                "closed": coeffs(ginibre_moment_first(k, h)),
            })
        for alpha in ((k,), (2,) + (1,) * (k - 1)):
            add("ginibre-top", f"k={k} alpha={alpha}", lambda k=k, alpha=alpha: {
                "top": str(ginibre_top_coefficient(k)),
                "general": str(top(ginibre_moment_general(k, alpha))),
            })
        alpha = (1,) * k
        chi = ExactScalar(Fraction(1, 2), Fraction(1, 3))
        add("ginibre-kernel", f"k={k} alpha={alpha} chi={chi}", lambda k=k, alpha=alpha: {
            "closed": ginibre_moment_general(k, alpha).payload(chi.abs2()),
            "kernel": ginibre_moment_from_kernel(k, alpha, chi).value,
        })
    return cases


def cue_cases(
    max_k: int = 2,
    inside_disc_N: int = 200,
    circle_sizes: Sequence[int] = (40, 80, 160),
    circle_tolerance: float = 2e-2,
    circle_max_k: int = 3,
) -> list[Case]:
    cases: list[Case] = []

    def add(kind: str, label: str, compute, tolerance: float | None = None) -> None:
        cases.append(Case(len(cases), kind, label, compute, tolerance))

    chi = Fraction(1, 2)
    for k in range(1, max_k + 1):
        for N in range(0, 7 - k):
            for h1 in range(min(k, 2) + 1):
                h = (k - h1, h1)

                def finite(N=N, k=k, h1=h1, h=h):
                    spec = DerivativeSpec.from_multiplicities((chi,), (h,))
                    return {
                        "laguerre": cue_finite_moment(N, k, h1, chi=chi),
                        "jet": cue_finite_moment(N, k, h1, chi=chi, route="jet"),
                        "oracle": oracle_det(cue_kernel_polynomial(N + k), spec, spec),
                    }

                add("cue-finite", f"N={N} k={k} h1={h1}", finite)

    def second_derivative():
        spec = DerivativeSpec.from_multiplicities((chi,), ((0, 1, 1),))
        return {
            "hermite": cue_finite_moment(3, 2, 1, 1, chi=chi),
            "jet": cue_finite_moment(3, 2, 1, 1, chi=chi, route="jet"),
            "oracle": oracle_det(cue_kernel_polynomial(5), spec, spec),
        }

    add("cue-finite", "N=3 k=2 h1=1 h2=1", second_derivative)

    for point in (ExactScalar(Fraction(1, 2)), ExactScalar(Fraction(1, 2), Fraction(1, 2))):
        t = float(point.abs2())
        for k in range(1, max_k + 1):
            for h1 in range(min(k, 2) + 1):

                def ratio(point=point, t=t, k=k, h1=h1):
                    value = cue_finite_moment(inside_disc_N, k, h1, chi=point)
                    return {"ratio": float(value) / cue_inside_disc(k, h1).numeric(t)}

                add("cue-disc", f"N={inside_disc_N} t={point.abs2()} k={k} h1={h1}", ratio, tolerance=1e-6)

    for k in range(1, circle_max_k + 1):
        for h1 in range(k + 1):

            def circle(k=k, h1=h1):
                report = cue_circle_convergence(k, h1, sizes=circle_sizes)
                if not report.monotone:
                    return {"richardson": float("inf")}
                return {"richardson": report.richardson / report.limit}

            add("cue-circle", f"k={k} h1={h1} sizes={tuple(circle_sizes)}", circle, tolerance=circle_tolerance)
    return cases


def build_cases(suite: str, seed: int = 7, max_k: int = 3, count: int = 100, **options) -> list[Case]:
    if suite == "cross":
        return cross_cases(seed, count, max_k, options.get("max_degree", 6), options.get("bound", 5))
    if suite == "ginibre":
        return ginibre_cases(max_k)
    if suite == "cue":
        return cue_cases(
            max_k=min(max_k, 2),
            inside_disc_N=options.get("inside_disc_N", 200),
            circle_sizes=options.get("circle_sizes", (40, 80, 160)),
            circle_tolerance=options.get("circle_tolerance", 2e-2),
            circle_max_k=max_k,
        )
    raise PreconditionError(f"unknown verify suite {suite!r}; expected one of {', '.join(SUITES)}")


# -- runner ---------------------------------------------------------------------------


async def run_suite(cases: Iterable[Case], threads: int = 1) -> list[CaseResult]:
    """Run cases on at most ``threads`` worker threads; results keep case order."""
    if threads < 1:
        raise PreconditionError(f"threads must be >= 1, got {threads}")
    semaphore = asyncio.Semaphore(threads)

    async def one(case: Case) -> CaseResult:
        async with semaphore:
            result = await asyncio.to_thread(case.run)
        logger.debug("%s", result.line())
        return result

    return list(await asyncio.gather(*(one(case) for case in cases)))


def check(results: Sequence[CaseResult]) -> None:
    failed = [r for r in results if not r.passed]
    if failed:
        summary = "; ".join(f"case {r.index} {r.kind} {r.label}: {r.detail}" for r in failed[:5])
        raise CrossCheckError(f"{len(failed)} of {len(results)} cases disagree: {summary}")


def verify(suite: str, seed: int = 7, max_k: int = 3, count: int = 100, threads: int = 1, **options) -> list[CaseResult]:
    """Build and run a suite synchronously."""
    cases = build_cases(suite, seed, max_k, count, **options)
    logger.info("running %d %s cases on %d thread(s)", len(cases), suite, threads)
    return asyncio.run(run_suite(cases, threads))

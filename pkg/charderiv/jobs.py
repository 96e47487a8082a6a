"""Job files for ``charderiv eval --job``.

A job names a determinant or Pfaffian problem with exact polynomial entries
and the routes to evaluate it by. Everything is validated when the file is
loaded, before any route runs.

Polynomials are written as ``{"vars": ["u", "v"], "terms": [[[2, 1], "3/2"], ...]}``.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Annotated, Any, Literal, Union

from pydantic import BaseModel, Field, TypeAdapter, ValidationError, field_validator, model_validator

from charderiv.core.errors import CrossCheckError, JobSpecError
from charderiv.core.polys import MultiPoly, Registry
from charderiv.core.scalars import ExactScalar
from charderiv.evaluators import (
    DetProblem,
    PfaffianProblem,
    eval_borel_det,
    eval_borel_det_two_sided,
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

logger = logging.getLogger(__name__)

DetRoute = Literal["oracle", "operator", "kostka", "multinomial", "borel"]
PfRoute = Literal["oracle", "operator", "kostka"]


class PolyModel(BaseModel):
    vars: list[str]
    terms: list[tuple[list[int], str]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_terms(self) -> "PolyModel":
        if len(set(self.vars)) != len(self.vars) or not self.vars:
            raise ValueError(f"variables must be distinct and non-empty, got {self.vars}")
        for exps, coeff in self.terms:
            if len(exps) != len(self.vars) or any(e < 0 for e in exps):
                raise ValueError(f"exponents {exps} do not fit variables {self.vars}")
            ExactScalar.parse(coeff)
        return self

    def to_poly(self) -> MultiPoly:
        terms: dict[tuple[int, ...], ExactScalar] = {}
        for exps, coeff in self.terms:
            key = tuple(exps)
            terms[key] = terms.get(key, ExactScalar(0)) + ExactScalar.parse(coeff)
        return MultiPoly(Registry(tuple(self.vars)), terms)


def _spec(data: dict[str, Any]) -> DerivativeSpec:
    return DerivativeSpec.from_json(data)


class DetJob(BaseModel):
    """``det[B(x_a, y_b)] / (Delta Delta)`` from a kernel, or ``det[B_d(x_a)] / Delta`` from columns."""

    kind: Literal["det"] = "det"
    spec: dict[str, Any]
    spec_y: dict[str, Any] | None = None
    kernel: PolyModel | None = None
    columns: list[PolyModel] = Field(default_factory=list)
    routes: list[DetRoute] = Field(default_factory=lambda: ["oracle", "operator"])

    @field_validator("kernel")
    @classmethod
    def _kernel_vars(cls, kernel: PolyModel | None) -> PolyModel | None:
        if kernel is not None and sorted(kernel.vars) != ["u", "v"]:
            raise ValueError("kernel must be a polynomial in u and v")
        return kernel

    @field_validator("columns")
    @classmethod
    def _column_vars(cls, columns: list[PolyModel]) -> list[PolyModel]:
        for col in columns:
            if col.vars != ["x"]:
                raise ValueError("columns must be polynomials in x")
        return columns

    @model_validator(mode="after")
    def _check_shape(self) -> "DetJob":
        spec = _spec(self.spec)
        if (self.kernel is None) == (not self.columns):
            raise ValueError("give either a kernel or columns")
        if self.kernel is not None:
            if self.spec_y is None:
                raise ValueError("a kernel job needs spec_y")
            spec_y = _spec(self.spec_y)
            if spec_y.P != spec.P:
                raise ValueError(f"x and y sides need equal sizes, got {spec.P} and {spec_y.P}")
            single = spec.L == 1 and spec_y.L == 1
        else:
            if len(self.columns) != spec.P:
                raise ValueError(f"{len(self.columns)} columns for P={spec.P}")
            single = spec.L == 1
        combinatorial = set(self.routes) & {"kostka", "multinomial", "borel"}
        if combinatorial and not single:
            raise ValueError(f"routes {sorted(combinatorial)} need a single point per side")
        if "multinomial" in self.routes:
            exps = spec.exponents[0] + (_spec(self.spec_y).exponents[0] if self.kernel is not None else ())
            if any(e > 1 for e in exps):
                raise ValueError("the multinomial route needs derivative orders 0 and 1 only")
        return self


class PfJob(BaseModel):
    """``Pf[[A(x_a, x_c), B_d(x_a)], [-B_b(x_c), C]] / Delta`` from polynomial entries."""

    kind: Literal["pf"]
    spec: dict[str, Any]
    a: PolyModel | None = None
    b: list[PolyModel] = Field(default_factory=list)
    c: list[list[str]] = Field(default_factory=list)
    routes: list[PfRoute] = Field(default_factory=lambda: ["oracle", "operator"])

    @model_validator(mode="after")
    def _check_shape(self) -> "PfJob":
        spec = _spec(self.spec)
        if (spec.P + len(self.b)) % 2:
            raise ValueError(f"P + Q = {spec.P} + {len(self.b)} must be even")
        q = len(self.b)
        if self.c and (len(self.c) != q or any(len(row) != q for row in self.c)):
            raise ValueError(f"C must be {q}x{q}")
        if "kostka" in self.routes and (spec.L != 1 or self.b or self.a is None):
            raise ValueError("the Kostka route needs one point, Q = 0 and a kernel A")
        return self


JobSpec = Annotated[Union[DetJob, PfJob], Field(discriminator="kind")]
_JOB_ADAPTER = TypeAdapter(JobSpec)


def parse_job(data: Any) -> DetJob | PfJob:
    if isinstance(data, dict) and "kind" not in data:
        data = {**data, "kind": "det"}
    try:
        return _JOB_ADAPTER.validate_python(data)
    except ValidationError as e:
        raise JobSpecError(f"invalid job: {e.errors()[0]['msg']}") from e


def load_job(path: str | Path) -> DetJob | PfJob:
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError:
        raise JobSpecError(f"job file not found: {path}") from None
    except json.JSONDecodeError as e:
        raise JobSpecError(f"job file {path} is not valid JSON: {e}") from e
    return parse_job(data)


def _column_jets(columns: list[MultiPoly], spec: DerivativeSpec) -> list[list[FunctionJet]]:
    return [
        [FunctionJet.of_polynomial(col, "x", spec.points[l], spec.jet_order(l)) for l in range(spec.L)]
        for col in columns
    ]


def _run_det(job: DetJob) -> dict[str, ExactScalar]:
    spec = _spec(job.spec)
    out: dict[str, ExactScalar] = {}
    if job.kernel is not None:
        kernel = job.kernel.to_poly().relabel(Registry.of("u", "v"))
        spec_y = _spec(job.spec_y)
        for route in job.routes:
            if route == "oracle":
                out[route] = oracle_det(kernel, spec, spec_y)
            elif route == "operator":
                jets = {
                    (l, l2): KernelJet.of_polynomial(
                        kernel, "u", "v", (spec.points[l], spec_y.points[l2]), spec.jet_order(l), spec_y.jet_order(l2)
                    )
                    for l in range(spec.L)
                    for l2 in range(spec_y.L)
                }
                out[route] = eval_det_corollary_two_sided(jets, spec, spec_y)
            else:
                alpha, beta = spec.exponents[0], spec_y.exponents[0]
                problem = DetProblem.from_polynomial(kernel, spec.P, alpha, beta, spec.points[0], spec_y.points[0])
                if route == "kostka":
                    out[route] = eval_det_kostka(problem)
                elif route == "multinomial":
                    out[route] = eval_first_order_multinomial(problem, alpha.count(0), beta.count(0))
                else:
                    jet = KernelJet.of_polynomial(
                        kernel, "u", "v", (spec.points[0], spec_y.points[0]), spec.jet_order(0), spec_y.jet_order(0)
                    )
                    out[route] = eval_borel_det_two_sided(jet, spec.multiplicities(0), spec_y.multiplicities(0))
        return out

    columns = [col.to_poly() for col in job.columns]
    jets = _column_jets(columns, spec)
    for route in job.routes:
        if route == "oracle":
            out[route] = oracle_det_columns(columns, spec)
        elif route == "operator":
            out[route] = eval_det_corollary(jets, spec)
        elif route == "borel":
            out[route] = eval_borel_det([col[0] for col in jets], spec.multiplicities(0))
        else:
            alpha = spec.exponents[0]
            problem = DetProblem.from_columns(columns, alpha, spec.points[0])
            if route == "kostka":
                out[route] = eval_det_kostka(problem)
            else:
                out[route] = eval_first_order_multinomial(problem, alpha.count(0))
    return out


def _run_pf(job: PfJob) -> dict[str, ExactScalar]:
    spec = _spec(job.spec)
    a = job.a.to_poly().relabel(Registry.of("u", "v")) if job.a is not None else None
    b = [col.to_poly() for col in job.b]
    c = [[ExactScalar.parse(x) for x in row] for row in job.c]
    out: dict[str, ExactScalar] = {}
    for route in job.routes:
        if route == "oracle":
            out[route] = oracle_pf(a, spec, b, c)
        elif route == "operator":
            out[route] = eval_main_theorem(PfaffianProblem.from_polynomials(spec, a, b=b, c=c))
        else:
            alpha = spec.exponents[0]
            order = sum(alpha) + spec.P - 1
            jet = KernelJet.of_polynomial(a, "u", "v", (spec.points[0], spec.points[0]), order, antisymmetric=True)
            out[route] = eval_pf_kostka(jet, alpha, spec.P // 2)
    return out


def run_job(job: DetJob | PfJob) -> dict[str, ExactScalar]:
    """Evaluate every requested route; disagreeing routes raise ``CrossCheckError``."""
    values = _run_det(job) if isinstance(job, DetJob) else _run_pf(job)
    logger.debug("job %s routes: %s", job.kind, {k: str(v) for k, v in values.items()})
    if len(set(values.values())) > 1:
        shown = ", ".join(f"{k}={v}" for k, v in values.items())
        raise CrossCheckError(f"routes disagree: {shown}")
    return values

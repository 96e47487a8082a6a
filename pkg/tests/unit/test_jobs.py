import json

import pytest

from charderiv.core.errors import JobSpecError
from charderiv.core.scalars import ExactScalar
from charderiv.jobs import DetJob, PfJob, load_job, parse_job, run_job


def _uv(*terms):
    return {"vars": ["u", "v"], "terms": [[list(exps), coeff] for exps, coeff in terms]}


def _x(*terms):
    return {"vars": ["x"], "terms": [[[e], coeff] for e, coeff in terms]}


def test_kind_defaults_to_det():
    job = parse_job({
        "spec": {"points": ["0"], "exponents": [[0]]},
        "spec_y": {"points": ["0"], "exponents": [[0]]},
        "kernel": _uv(((0, 0), "2")),
    })
    assert isinstance(job, DetJob)
    assert run_job(job) == {"oracle": ExactScalar(2), "operator": ExactScalar(2)}


def test_column_job_all_routes_agree():
    # det[x^0, x^1] / Delta = 1 with no derivatives; d/dx of the single column x^2 at 1/2 is 1
    job = parse_job({
        "spec": {"points": ["1/2"], "exponents": [[1]]},
        "columns": [_x((2, "1"))],
        "routes": ["oracle", "operator", "kostka", "multinomial", "borel"],
    })
    values = run_job(job)
    assert set(values.values()) == {ExactScalar(1)}


def test_pf_job_linear_kernel():
    # Pf[[0, x2 - x1], [x1 - x2, 0]] / (x2 - x1) = 1
    job = parse_job({
        "kind": "pf",
        "spec": {"points": ["1/3"], "exponents": [[0, 0]]},
        "a": _uv(((0, 1), "1"), ((1, 0), "-1")),
        "routes": ["oracle", "operator", "kostka"],
    })
    assert isinstance(job, PfJob)
    assert set(run_job(job).values()) == {ExactScalar(1)}


@pytest.mark.parametrize(
    "data, message",
    [
        ({"spec": {"points": ["0"], "exponents": [[0]]}}, "kernel or columns"),
        (
            {
                "spec": {"points": ["0"], "exponents": [[0]]},
                "kernel": _uv(((0, 0), "1")),
            },
            "spec_y",
        ),
        (
            {
                "spec": {"points": ["0"], "exponents": [[2]]},
                "columns": [_x((3, "1"))],
                "routes": ["multinomial"],
            },
            "orders 0 and 1",
        ),
        (
            {
                "kind": "pf",
                "spec": {"points": ["0"], "exponents": [[0]]},
                "a": _uv(((0, 1), "1"), ((1, 0), "-1")),
            },
            "even",
        ),
        (
            {
                "spec": {"points": ["0"], "exponents": [[0]]},
                "columns": [{"vars": ["y"], "terms": []}],
            },
            "polynomials in x",
        ),
    ],
)
def test_invalid_jobs_are_rejected(data, message):
    with pytest.raises(JobSpecError, match=message):
        parse_job(data)


def test_load_job_reports_bad_json(tmp_path):
    path = tmp_path / "job.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(JobSpecError, match="not valid JSON"):
        load_job(path)


def test_load_job_round_trips_through_file(tmp_path):
    path = tmp_path / "job.json"
    path.write_text(
        json.dumps({
            "spec": {"points": ["0"], "exponents": [[1]]},
            "spec_y": {"points": ["1"], "multiplicities": [[0, 1]]},
            "kernel": _uv(((1, 1), "5/2")),
        }),
        encoding="utf-8",
    )
    assert run_job(load_job(path))["oracle"] == ExactScalar.parse("5/2")

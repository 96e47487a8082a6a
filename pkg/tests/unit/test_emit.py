"""Canonical JSON and CSV encodings."""

import json
from fractions import Fraction

import pytest

from charderiv.core.errors import PreconditionError
from charderiv.core.scalars import ExactScalar
from charderiv.emit import emit, emit_csv, emit_json, to_plain
from charderiv.rmt import ginibre_moment_general, ginibre_moment_grid


def test_exact_scalars_are_written_as_fraction_strings():
    assert to_plain(ExactScalar(Fraction(3, 2))) == "3/2"
    assert to_plain(Fraction(-1, 3)) == "-1/3"
    assert to_plain(7) == 7


def test_numeric_mode_writes_doubles():
    assert to_plain(ExactScalar(Fraction(3, 2)), numeric=True) == 1.5
    z = ExactScalar.parse("1/2+1/4*i")
    assert to_plain(z, numeric=True) == {"re": 0.5, "im": 0.25}


def test_json_is_canonical():
    data = emit_json({"b": ExactScalar(Fraction(1, 2)), "a": [1, 2]})
    assert data == b'{"a":[1,2],"b":"1/2"}\n'


def test_moment_json_matches_closed_form_payload():
    data = emit(ginibre_moment_general(2, ()), "json")
    payload = json.loads(data)
    assert payload == {
        "alpha": [0, 0],
        "k": 2,
        "poly_t": [["0", "1/1"]],
        "prefactor": {"exp_coeff": 2, "one_minus_t_power": 0, "pi_power": -2},
    }


def test_moment_grid_csv():
    data = emit(ginibre_moment_grid(1), "csv").decode("utf-8")
    assert data.splitlines() == [
        "k,alpha,h,exp_coeff,pi_power,one_minus_t_power,poly_t",
        "1,1,,1,-1,0,0:1/1;1:1/1",
        "1,0,,1,-1,0,0:1/1",
    ]


def test_output_is_byte_stable():
    first = emit(ginibre_moment_grid(2), "csv")
    second = emit(ginibre_moment_grid(2), "csv")
    assert first == second
    assert emit(ginibre_moment_grid(2), "json") == emit(ginibre_moment_grid(2), "json")


def test_scalar_csv_has_single_value_column():
    assert emit(ExactScalar(Fraction(5, 3)), "csv") == b"value\n5/3\n"


def test_mapping_rows_use_sorted_keys():
    rows = [{"z": 1, "a": ExactScalar(2)}, {"z": 3, "a": ExactScalar(Fraction(1, 4))}]
    assert emit_csv(rows) == b"a,z\n2/1,1\n1/4,3\n"


def test_unknown_format_is_a_precondition_error():
    with pytest.raises(PreconditionError, match="yaml"):
        emit({"a": 1}, "yaml")

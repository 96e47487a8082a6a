import json

import pytest
from pydantic import ValidationError

from charderiv import config as config_module


def _write_json(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")


@pytest.fixture(autouse=True)
def _isolated_env(tmp_path, monkeypatch):
    monkeypatch.delenv(config_module.USER_CONFIG_ENV_VAR, raising=False)
    monkeypatch.delenv(config_module.THREADS_ENV_VAR, raising=False)
    monkeypatch.setattr(
        config_module,
        "DEFAULT_USER_CONFIG_PATH",
        tmp_path / "missing-user-config.json",
    )


def test_bundled_config_loads_with_defaults():
    config = config_module.load_config()

    assert config.threads == 1
    assert config.output_format == "text"
    assert not config.numeric
    assert config.verify.seed == 7
    assert config.verify.cases == 100
    assert config.cue.circle_sizes == [40, 80, 160]


def test_partial_file_falls_back_to_model_defaults(tmp_path):
    config_path = tmp_path / "config.json"
    _write_json(config_path, {"verify": {"seed": 11}})

    config = config_module.load_config(str(config_path))

    assert config.verify.seed == 11
    assert config.verify.max_k == 3
    assert config.cue.inside_disc_N == 200


def test_threads_env_var_overrides_file(tmp_path, monkeypatch):
    config_path = tmp_path / "config.json"
    _write_json(config_path, {"threads": 2})
    monkeypatch.setenv("CHARDERIV_THREADS", "8")

    config = config_module.load_config(str(config_path))

    assert config.threads == 8


@pytest.mark.parametrize("value", ["zero", "0", "-3"])
def test_threads_env_var_must_be_positive_integer(tmp_path, monkeypatch, value):
    config_path = tmp_path / "config.json"
    _write_json(config_path, {})
    monkeypatch.setenv("CHARDERIV_THREADS", value)

    with pytest.raises(ValueError, match="CHARDERIV_THREADS"):
        config_module.load_config(str(config_path))


def test_user_config_is_ignored_unless_requested(tmp_path, monkeypatch):
    config_path = tmp_path / "config.json"
    user_config_path = tmp_path / "user-config.json"
    _write_json(config_path, {"output_format": "text"})
    _write_json(user_config_path, {"output_format": "json"})
    monkeypatch.setenv("CHARDERIV_CLI_CONFIG", str(user_config_path))

    assert config_module.load_config(str(config_path)).output_format == "text"
    assert (
        config_module.load_config(str(config_path), include_user_defaults=True).output_format
        == "json"
    )


def test_user_config_merges_nested_sections(tmp_path, monkeypatch):
    config_path = tmp_path / "config.json"
    user_config_path = tmp_path / "user-config.json"
    _write_json(config_path, {"verify": {"seed": 3, "cases": 20}})
    _write_json(user_config_path, {"verify": {"cases": 5}})
    monkeypatch.setenv("CHARDERIV_CLI_CONFIG", str(user_config_path))

    config = config_module.load_config(str(config_path), include_user_defaults=True)

    assert config.verify.seed == 3
    assert config.verify.cases == 5


def test_default_user_config_path_is_used_when_env_unset(tmp_path, monkeypatch):
    config_path = tmp_path / "config.json"
    default_user = tmp_path / "default-user.json"
    _write_json(config_path, {})
    _write_json(default_user, {"numeric": True})
    monkeypatch.setattr(config_module, "DEFAULT_USER_CONFIG_PATH", default_user)

    config = config_module.load_config(str(config_path), include_user_defaults=True)

    assert config.numeric


def test_missing_user_config_from_env_is_an_error(tmp_path, monkeypatch):
    config_path = tmp_path / "config.json"
    _write_json(config_path, {})
    monkeypatch.setenv("CHARDERIV_CLI_CONFIG", str(tmp_path / "nope.json"))

    with pytest.raises(FileNotFoundError, match="CHARDERIV_CLI_CONFIG"):
        config_module.load_config(str(config_path), include_user_defaults=True)


def test_env_substitution_with_default(tmp_path, monkeypatch):
    config_path = tmp_path / "config.json"
    _write_json(config_path, {"output_format": "${CHARDERIV_TEST_FORMAT:-csv}"})
    monkeypatch.delenv("CHARDERIV_TEST_FORMAT", raising=False)

    assert config_module.load_config(str(config_path)).output_format == "csv"

    monkeypatch.setenv("CHARDERIV_TEST_FORMAT", "json")
    assert config_module.load_config(str(config_path)).output_format == "json"


def test_env_substitution_without_default_requires_variable(monkeypatch):
    monkeypatch.delenv("CHARDERIV_TEST_MISSING", raising=False)

    with pytest.raises(ValueError, match="CHARDERIV_TEST_MISSING"):
        config_module.substitute_env_vars({"x": ["${CHARDERIV_TEST_MISSING}"]})


def test_config_file_must_be_an_object(tmp_path):
    config_path = tmp_path / "config.json"
    _write_json(config_path, [1, 2, 3])

    with pytest.raises(ValueError, match="JSON object"):
        config_module.load_config(str(config_path))


def test_circle_sizes_must_double(tmp_path):
    config_path = tmp_path / "config.json"
    _write_json(config_path, {"cue": {"circle_sizes": [40, 60, 120]}})

    with pytest.raises(ValidationError, match="double"):
        config_module.load_config(str(config_path))


def test_unknown_output_format_is_rejected(tmp_path):
    config_path = tmp_path / "config.json"
    _write_json(config_path, {"output_format": "yaml"})

    with pytest.raises(ValidationError):
        config_module.load_config(str(config_path))


def test_missing_placeholder_message_names_the_variable_and_dotenv(monkeypatch):
    monkeypatch.delenv("CHARDERIV_TEST_MISSING", raising=False)

    with pytest.raises(ValueError, match=r"\$\{CHARDERIV_TEST_MISSING\}.*\.env"):
        config_module.substitute_env_vars("${CHARDERIV_TEST_MISSING}")


def test_empty_default_substitutes_empty_string(monkeypatch):
    monkeypatch.delenv("CHARDERIV_TEST_EMPTY", raising=False)

    assert config_module.substitute_env_vars("a${CHARDERIV_TEST_EMPTY:-}b") == "ab"


def test_user_file_without_env_var_or_default_is_skipped(tmp_path):
    config_path = tmp_path / "config.json"
    _write_json(config_path, {"threads": 3})

    assert config_module.load_config(str(config_path), include_user_defaults=True).threads == 3

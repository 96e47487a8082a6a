import json
import os
import re
from pathlib import Path
from typing import Any, Literal

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator, model_validator

# Project root: two levels up from this file (charderiv/config.py -> project root)
_PROJECT_ROOT = Path(__file__).resolve().parent.parent

DEFAULT_CONFIG_PATH = _PROJECT_ROOT / "configs" / "charderiv_config.json"
USER_CONFIG_ENV_VAR = "CHARDERIV_CLI_CONFIG"
THREADS_ENV_VAR = "CHARDERIV_THREADS"
DEFAULT_USER_CONFIG_PATH = Path.home() / ".config" / "charderiv" / "charderiv_config.json"

OutputFormat = Literal["text", "json", "csv"]


class VerifyConfig(BaseModel):
    seed: int = 7
    max_k: int = 3
    cases: int = 100
    # Random kernels: total degree and |coefficient| ceilings
    max_degree: int = 6
    coefficient_bound: int = 5

    @field_validator("max_k", "cases", "max_degree", "coefficient_bound")
    @classmethod
    def _require_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be >= 1")
        return value


class CueConfig(BaseModel):
    # Finite sizes for the unit-circle stabilization check; each doubles the previous
    circle_sizes: list[int] = Field(default_factory=lambda: [40, 80, 160])
    circle_tolerance: float = 2e-2
    # Matrix size for the inside-disc comparison against closed forms
    inside_disc_N: int = 200

    @field_validator("circle_sizes")
    @classmethod
    def _validate_sizes(cls, sizes: list[int]) -> list[int]:
        if len(sizes) < 2 or any(b != 2 * a for a, b in zip(sizes, sizes[1:])):
            raise ValueError("circle sizes must double at each step")
        return sizes

    @field_validator("circle_tolerance")
    @classmethod
    def _require_positive_tolerance(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("tolerance must be positive")
        return value


class Config(BaseModel):
    """Settings shared by the CLI, the verify suites and the grid script."""

    threads: int = 1  # Worker cap for verify cases and moment grids
    output_format: OutputFormat = "text"
    numeric: bool = False  # Print doubles instead of exact scalars
    verify: VerifyConfig = VerifyConfig()
    cue: CueConfig = CueConfig()

    @model_validator(mode="after")
    def _require_threads(self) -> "Config":
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        return self


def _merge_sections(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    """Overlay a user file on the bundled defaults; ``verify`` and ``cue`` merge key by key."""
    merged = dict(base)
    for key, value in override.items():
        current = merged.get(key)
        merged[key] = (
            _merge_sections(current, value)
            if isinstance(current, dict) and isinstance(value, dict)
            else value
        )
    return merged


def _read_config_file(path: Path) -> dict[str, Any]:
    data = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValueError(
            f"charderiv config {path} must hold a JSON object with threads/verify/cue keys, "
            f"got {type(data).__name__}"
        )
    return data


def _user_config_path() -> Path | None:
    """``$CHARDERIV_CLI_CONFIG`` when set (it must exist), else the per-user default if present."""
    raw_path = os.environ.get(USER_CONFIG_ENV_VAR)
    if raw_path:
        path = Path(raw_path).expanduser()
        if not path.is_file():
            raise FileNotFoundError(f"{USER_CONFIG_ENV_VAR}={raw_path} does not name a config file")
        return path
    return DEFAULT_USER_CONFIG_PATH if DEFAULT_USER_CONFIG_PATH.is_file() else None


def _env_int(name: str) -> int | None:
    value = os.environ.get(name)
    if value is None or not value.strip():
        return None
    try:
        parsed = int(value.strip())
    except ValueError:
        raise ValueError(f"{name} must be a positive integer, got {value!r}") from None
    if parsed < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return parsed


def apply_env_overrides(raw_config: dict[str, Any]) -> dict[str, Any]:
    threads = _env_int(THREADS_ENV_VAR)
    if threads is None:
        return raw_config
    return {**raw_config, "threads": threads}


_PLACEHOLDER = re.compile(r"\$\{([^}:]+)(?::-([^}]*))?\}")


def substitute_env_vars(obj: Any) -> Any:
    """Fill ``${VAR}`` and ``${VAR:-default}`` placeholders in config strings.

    A bare ``${VAR}`` with ``VAR`` unset is an error.
    """
    if isinstance(obj, dict):
        return {key: substitute_env_vars(value) for key, value in obj.items()}
    if isinstance(obj, list):
        return [substitute_env_vars(item) for item in obj]
    if not isinstance(obj, str):
        return obj

    def fill(match: re.Match[str]) -> str:
        name, default = match.group(1), match.group(2)
        value = os.environ.get(name, default)
        if value is None:
            raise ValueError(
                f"charderiv config placeholder ${{{name}}} has no value; "
                f"export {name} or add it to .env at the project root"
            )
        return value

    return _PLACEHOLDER.sub(fill, obj)


def load_config(
    config_path: str | Path = DEFAULT_CONFIG_PATH,
    include_user_defaults: bool = False,
) -> Config:
    """Bundled defaults, then the user file when asked, then placeholders, then ``CHARDERIV_THREADS``.

    ``.env`` at the project root is read first; one in the working directory
    only fills what is still unset.
    """
    load_dotenv(_PROJECT_ROOT / ".env")
    load_dotenv(override=False)

    raw_config = _read_config_file(Path(config_path))
    if include_user_defaults and (user_path := _user_config_path()) is not None:
        raw_config = _merge_sections(raw_config, _read_config_file(user_path))

    return Config.model_validate(apply_env_overrides(substitute_env_vars(raw_config)))

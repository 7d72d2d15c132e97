import hashlib
import math
import os
import re
from pathlib import Path
from typing import Any, Literal, cast

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

THREADS_ENV_VAR = "ELASTIC_BANDS_THREADS"

# Sweep schedule used by the constraint experiments, widest band first.
DEFAULT_SCHEDULE: tuple[float, ...] = (75.0, 50.0, 25.0, 20.0, 15.0, 10.0, 5.0, 1.0, 0.0)

UNCONSTRAINED = "unconstrained"


def format_percent(percent: float | None) -> str:
    """Render a band percentage the way it appears in flags, file names and report columns."""
    if percent is None:
        return UNCONSTRAINED
    if float(percent).is_integer():
        return str(int(percent))
    return repr(float(percent))


class BandSpec(BaseModel):
    """Sakoe-Chiba band given as a percentage of the series length; ``None`` means no band."""

    percent: float | None = None

    model_config = ConfigDict(frozen=True)

    @field_validator("percent")
    def percent_must_be_in_range(cls, v: float | None) -> float | None:  # noqa: N805
        if v is not None and not (0.0 <= v <= 100.0):
            raise ValueError(f"band percent must lie in [0, 100], got {v}")
        return v

    @classmethod
    def unconstrained(cls) -> "BandSpec":
        return cls(percent=None)

    @property
    def is_unconstrained(self) -> bool:
        return self.percent is None

    @property
    def label(self) -> str:
        return format_percent(self.percent)


class GroundCost(BaseModel):
    kind: Literal["squared", "absolute"] = "squared"
    final_root: bool = True

    model_config = ConfigDict(frozen=True)


class MatchSpec(BaseModel):
    """Point matching rule for LCS: relative ``a(1-e) < b < a(1+e)`` or absolute ``|a-b| <= e``."""

    epsilon: float = Field(default=0.1, ge=0.0)
    mode: Literal["relative", "absolute"] = "absolute"

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def epsilon_must_fit_mode(self) -> "MatchSpec":
        if not math.isfinite(self.epsilon):
            raise ValueError("epsilon must be finite")
        if self.mode == "relative" and not (0.0 < self.epsilon < 1.0):
            raise ValueError(f"relative matching requires 0 < epsilon < 1, got {self.epsilon}")
        return self


class MeasureConfig(BaseModel):
    measure: Literal["euclidean", "dtw", "lcs"] = "dtw"
    band: BandSpec = BandSpec()
    cost: GroundCost = GroundCost()
    match: MatchSpec = MatchSpec()

    model_config = ConfigDict(frozen=True)

    @property
    def symmetric(self) -> bool:
        # relative matching compares c_j against bounds built from q_i only
        return not (self.measure == "lcs" and self.match.mode == "relative")

    def with_band(self, band: BandSpec) -> "MeasureConfig":
        return self.model_copy(update={"band": band})

    def fingerprint(self) -> str:
        return _sha256(self.model_dump_json())


class RunConfig(BaseModel):
    command: str = "sweep"
    datasets: list[Path] = Field(default_factory=list)
    measure: MeasureConfig = MeasureConfig()
    percents: list[float] | None = None
    normalize: bool = False
    threads: int | Literal["auto"] = "auto"
    out_dir: Path = Path("output")
    repeat: int = Field(default=1, ge=1)

    model_config = ConfigDict(frozen=True)

    @field_validator("percents")
    def percents_must_be_in_range(cls, v: list[float] | None) -> list[float] | None:  # noqa: N805
        for percent in v or []:
            if not (0.0 <= percent <= 100.0):
                raise ValueError(f"schedule percent must lie in [0, 100], got {percent}")
        return v

    @field_validator("threads")
    def threads_must_be_positive(cls, v: int | str) -> int | str:  # noqa: N805
        if isinstance(v, int) and v < 1:
            raise ValueError(f"threads must be at least 1, got {v}")
        return v

    @property
    def schedule(self) -> tuple[float, ...]:
        return DEFAULT_SCHEDULE if self.percents is None else tuple(self.percents)

    def resolved_threads(self) -> int:
        return resolve_threads(self.threads)

    def config_hash(self) -> str:
        return _sha256(self.model_dump_json())

    @classmethod
    def from_dict(cls, config_dict: dict[str, Any]) -> "RunConfig":
        variables = config_dict.get("variables", {})
        resolved_config = cls.resolve_variables(config_dict, variables)
        resolved_config.pop("variables", None)
        return cls.model_validate(resolved_config)

    @staticmethod
    def resolve_variables(
        config: dict[str, Any], variables: dict[str, str | Path]
    ) -> dict[str, Any]:
        def replace_var(match: re.Match[str]) -> str:
            var_name = match.group(1)
            var_value = variables.get(var_name, match.group(0))
            return str(var_value)

        def process_value(value: Any) -> Any:
            if isinstance(value, str):
                return re.sub(r"\$\{(\w+)\}", replace_var, value)
            elif isinstance(value, dict):
                return {k: process_value(v) for k, v in value.items()}
            elif isinstance(value, list):
                return [process_value(item) for item in value]
            return value

        # variables may reference each other, e.g. output_dir: "${base_dir}/output"
        variables = cast(dict[str, str | Path], process_value(dict(variables)))
        return cast(dict[str, Any], process_value(config))


def resolve_threads(threads: int | str | None) -> int:
    """Turn ``auto``/``None``/an integer into a worker count, honouring the environment default."""
    if threads is None:
        threads = os.environ.get(THREADS_ENV_VAR, "auto")
    if isinstance(threads, str):
        if threads.strip().lower() == "auto":
            return os.cpu_count() or 1
        threads = int(threads)
    if threads < 1:
        raise ValueError(f"threads must be at least 1, got {threads}")
    return threads


def read_config_file(config_path: str | Path) -> dict[str, Any]:
    """Raw YAML mapping of a run file; ``${var}`` references are resolved by ``from_dict``."""
    import yaml

    with open(config_path) as file:
        config_dict = yaml.safe_load(file) or {}

    if not isinstance(config_dict, dict):
        raise ValueError(f"{config_path}: expected a mapping at the top level")
    return config_dict


def load_config(config_path: str | Path) -> RunConfig:
    return RunConfig.from_dict(read_config_file(config_path))


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()

"""
Run settings and command configuration
"""

import os
import re
from typing import Literal

from pydantic import NonNegativeInt, PositiveFloat, PositiveInt, model_validator
from pydantic.dataclasses import dataclass

from qpf_rdm.exceptions import ConfigurationError

THREADS_ENV_VAR = "QPF_RDM_THREADS"
SCHEMA_HEADER = "# qpf-rdm v1"

_POSTSELECT_PATTERN = re.compile(r"^postselect(?::(\d+))?$")


@dataclass(frozen=True)
class Settings:
    """
    Numerical thresholds and capacity limits shared by every module
    Args:
        eps_zero (float): a_z values above this count as a peak
        threads (int): worker processes used by sweeps
        exhaustive_limit (int): largest n accepted by the pattern command
        full_circuit_limit (int): largest n for the two-register simulation
        direct_limit (int): largest n for the closed-form state path
        fast_qft_threshold (int): from this n on the QFT uses the FFT
        compensated_threshold (int): from this n on RDM sums use fsum
        validate_exhaustive_limit (int): domains up to this size are validated on every x
        validate_samples (int): sample count for larger domains
        secant_max_iterations (int): iteration cap of the secant refinement
        secant_step_tolerance (float): secant stops when the step is below this
    """

    eps_zero: PositiveFloat = 1e-6
    threads: PositiveInt = 1
    exhaustive_limit: PositiveInt = 10
    full_circuit_limit: PositiveInt = 13
    direct_limit: PositiveInt = 24
    fast_qft_threshold: PositiveInt = 14
    compensated_threshold: PositiveInt = 16
    validate_exhaustive_limit: PositiveInt = 2**16
    validate_samples: PositiveInt = 1024
    secant_max_iterations: PositiveInt = 50
    secant_step_tolerance: PositiveFloat = 0.5


DEFAULT_SETTINGS = Settings()


def available_threads() -> int:
    """
    Worker count: QPF_RDM_THREADS when set, otherwise the machine parallelism
    """
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None or raw == "":
        return os.cpu_count() or 1

    try:
        threads = int(raw)
    except ValueError:
        raise ConfigurationError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}")

    if threads < 1:
        raise ConfigurationError(f"{THREADS_ENV_VAR} must be positive, got {threads}")

    return threads


def load_settings(**overrides) -> Settings:
    values = {"threads": available_threads()}
    values.update({k: v for k, v in overrides.items() if v is not None})
    return Settings(**values)


@dataclass
class RunConfig:
    """
    Parsed command line of one CLI invocation
    """

    command: Literal["simulate", "pattern", "find-period", "accuracy", "compare", "a0-scan"]
    n: PositiveInt | None = None
    r: PositiveInt | None = None
    oracle: str | None = None
    mode: Literal["direct", "full"] = "direct"
    a0_mode: str = "postselect"
    seed: NonNegativeInt | None = None
    eps_zero: PositiveFloat = 1e-6
    max_extra: NonNegativeInt = 4
    extra: list[NonNegativeInt] | None = None
    qprimes: list[NonNegativeInt] | None = None
    out: str | None = None
    format: Literal["csv", "json"] = "csv"
    full_circuit_limit: PositiveInt = 13

    @model_validator(mode="after")
    def check_consistency(self):
        if self.mode == "full" and self.n is not None and self.n > self.full_circuit_limit:
            raise ValueError(
                f"mode=full supports at most {self.full_circuit_limit} qubits, got n={self.n}"
            )

        if self.a0_mode == "sample":
            if self.seed is None:
                raise ValueError("a0 sampling requires a seed")
        elif _POSTSELECT_PATTERN.match(self.a0_mode) is None:
            raise ValueError(
                f"a0 mode must be 'sample', 'postselect' or 'postselect:<int>', got {self.a0_mode!r}"
            )

        return self

    @property
    def postselect_value(self) -> int | None:
        """Explicit post-selected value; None for sampling or for the default f(0)"""
        match = _POSTSELECT_PATTERN.match(self.a0_mode)
        if match is None or match.group(1) is None:
            return None
        return int(match.group(1))


def parse_int_range(text: str, label: str) -> list[int]:
    """
    Parses '3', '0..6' or '0,2,4' into a list of non-negative integers
    Args:
        text (str): command-line value
        label (str): what the values count, used in the error message
    """
    text = text.strip()
    try:
        if ".." in text:
            start, stop = text.split("..", 1)
            values = list(range(int(start), int(stop) + 1))
        else:
            values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ConfigurationError(f"invalid {label} {text!r}")

    if not values or any(v < 0 for v in values):
        raise ConfigurationError(f"invalid {label} {text!r}")

    return values


def parse_extra_range(text: str) -> list[int]:
    return parse_int_range(text, "extra-qubit range")


def parse_qprimes(text: str) -> list[int]:
    """Qubit offsets q' = n - 1 - q counted from the last qubit"""
    return parse_int_range(text, "q' list")

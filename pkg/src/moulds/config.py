"""Run configuration for the verification front end."""
from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field

from .words import Alphabet

# hard caps: beyond these the run is refused instead of left to grind
MAX_LENGTH_CAP = 6
MAX_DEGREE_CAP = 8
GRT_DEGREE_CAP = 4

SUITE_NAMES = ("ratfun", "words", "mould", "flexion", "ma", "appendix-a", "appendix-b",
               "appendix-c", "braid", "pentagon", "bal", "paj", "dmr", "all")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    max_length: int = 4
    max_degree: int = 6
    gamma: str = "trivial"
    seed: int = 0
    suites: tuple = ("all",)
    output: str | None = None
    format: str = "json"
    strict: bool = False
    timing: bool = False
    workers: int = field(default_factory=lambda: int(os.environ.get("MOULDS_WORKERS", "1") or 1))

    def __post_init__(self):
        if not 0 <= self.max_length <= MAX_LENGTH_CAP:
            raise ConfigError(f"--max-length must lie in [0, {MAX_LENGTH_CAP}]")
        if not 0 <= self.max_degree <= MAX_DEGREE_CAP:
            raise ConfigError(f"--max-degree must lie in [0, {MAX_DEGREE_CAP}]")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("--seed must be a 64-bit unsigned integer")
        try:
            Alphabet.from_name(self.gamma)
        except ValueError as e:
            raise ConfigError(str(e)) from None
        unknown = set(self.suites) - set(SUITE_NAMES)
        if unknown:
            raise ConfigError(f"unknown suite(s): {', '.join(sorted(unknown))}")
        if self.format not in ("json", "text"):
            raise ConfigError("--format is json or text")
        if self.workers < 1:
            raise ConfigError("MOULDS_WORKERS must be positive")

    def to_json(self) -> dict:
        d = asdict(self)
        d["suites"] = list(self.suites)
        # output location and worker count do not change the results
        for k in ("output", "workers", "timing", "format"):
            d.pop(k)
        return d

"""Run configuration with the experiment defaults and every tunable knob.

Values mirror the defaults used throughout the pipeline: relation
thresholds per method, the keyword cutoff (0.3 of the best score, at most
30 words), the 600-snippet retrieval cap, and the toggles for every
behaviour that is a judgement call rather than a hard rule (log base,
delta ranking direction, strict thresholds, URL canonicalization rules).
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError

# Method tags used on scores and edges.
METHOD_SRS = "SRS"
METHOD_USR = "USR"
METHOD_ARS = "ARS"
METHODS = (METHOD_SRS, METHOD_USR, METHOD_ARS)

# Query construction modes for name pairs.
MODE_NOK = "noK"
MODE_K1 = "K1"
MODE_K2 = "K2"
MODE_K1K2 = "K1K2"
MODES = (MODE_NOK, MODE_K1, MODE_K2, MODE_K1K2)

CONFIG_ENV_VAR = "SOCNETKIT_CONFIG"


@dataclass
class CanonicalRules:
    """Individually toggleable URL canonicalization rules."""

    strip_default_port: bool = True
    drop_fragment: bool = True
    drop_user_info: bool = True
    sort_query: bool = True
    percent_decode_unreserved: bool = True
    strip_trailing_slash: bool = True


@dataclass
class RunConfig:
    """All pipeline parameters, with overridable defaults."""

    corpus_path: str | None = None
    seeds_path: str | None = None
    records_path: str | None = None
    method: str = METHOD_SRS
    alpha_srs: float = 0.0001
    alpha_usr: float = 0.01
    alpha_ars: float = 0.0001
    keyword_cutoff_ratio: float = 0.3
    keyword_cap: int = 30
    snippet_cap: int = 600
    query_mode: str = MODE_NOK
    # None means natural log; any other base is applied to idf.
    log_base: float | None = None
    strict_threshold: bool = True
    delta_ascending: bool = True
    ars_keyword: str = ""
    output_path: str | None = None
    output_format: str = "json"
    canonical_rules: CanonicalRules = field(default_factory=CanonicalRules)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        for name in ("alpha_srs", "alpha_usr", "alpha_ars"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0")
        if not 0 < self.keyword_cutoff_ratio <= 1:
            raise ConfigError("keyword_cutoff_ratio must be in (0, 1]")
        if self.keyword_cap < 1:
            raise ConfigError("keyword_cap must be >= 1")
        if self.snippet_cap < 1:
            raise ConfigError("snippet_cap must be >= 1")
        if self.query_mode not in MODES:
            raise ConfigError(
                f"query_mode must be one of {MODES}, got {self.query_mode!r}"
            )
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.log_base is not None and (
            self.log_base <= 0 or self.log_base == 1 or not math.isfinite(self.log_base)
        ):
            raise ConfigError("log_base must be a finite positive number != 1")

    def alpha_for(self, method: str) -> float:
        if method == METHOD_SRS:
            return self.alpha_srs
        if method == METHOD_USR:
            return self.alpha_usr
        if method == METHOD_ARS:
            return self.alpha_ars
        raise ConfigError(f"unknown method {method!r}")

    def to_dict(self) -> dict:
        data = dataclasses.asdict(self)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        data = dict(data)
        rules = data.pop("canonical_rules", None)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**data)
        if rules is not None:
            rule_fields = {f.name for f in dataclasses.fields(CanonicalRules)}
            bad = set(rules) - rule_fields
            if bad:
                raise ConfigError(f"unknown canonical_rules keys: {sorted(bad)}")
            cfg.canonical_rules = CanonicalRules(**rules)
        return cfg


def load_config(path: str | Path | None = None) -> RunConfig:
    """Load a JSON config file; fall back to env var, then defaults."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
    if path is None:
        return RunConfig()
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must contain a JSON object")
    return RunConfig.from_dict(data)


def save_config(cfg: RunConfig, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(cfg.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")

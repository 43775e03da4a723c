"""Service configuration, read from a TOML file with environment overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from .. import _toml
from ..policy import bundled_policy_path

DATA_DIR_ENV = "NORMCASE_DATA_DIR"


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    data_dir: Path = Path("./data")
    port: int = 8800
    spec_path: Path = field(default_factory=bundled_policy_path)
    red_days: int = 7
    yellow_days: int = 21
    decision_period_days: int = 56
    tree_max_depth: int = 4
    tree_max_nodes: int = 10_000
    seed_fixtures: bool = True


def load_config(path: str | Path | None = None) -> Config:
    """Read a config file (every key optional); ``NORMCASE_DATA_DIR`` wins."""
    doc: dict = {}
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"no such config file: {path}")
        try:
            doc = _toml.load(path)
        except _toml.TomlError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    base = Path(path).parent if path is not None else Path(".")

    def resolve(raw: str) -> Path:
        p = Path(raw)
        return p if p.is_absolute() else base / p

    urgency = doc.get("urgency", {})
    cases = doc.get("cases", {})
    sim = doc.get("simulation", {})
    data_dir = resolve(doc["data_dir"]) if "data_dir" in doc else Path("./data")
    if DATA_DIR_ENV in os.environ:
        data_dir = Path(os.environ[DATA_DIR_ENV])
    return Config(
        data_dir=data_dir,
        port=int(doc.get("port", 8800)),
        spec_path=resolve(doc["spec"]) if "spec" in doc else bundled_policy_path(),
        red_days=int(urgency.get("red_days", 7)),
        yellow_days=int(urgency.get("yellow_days", 21)),
        decision_period_days=int(cases.get("decision_period_days", 56)),
        tree_max_depth=int(sim.get("max_depth", 4)),
        tree_max_nodes=int(sim.get("max_nodes", 10_000)),
        seed_fixtures=bool(cases.get("seed_fixtures", True)),
    )

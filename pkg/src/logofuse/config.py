"""Experiment configuration: defaults, key=value config files, CLI overrides.

The config file is a flat text file of ``key = value`` lines; ``#`` starts a
comment and blank lines are skipped. Every key is optional. Recognized keys
(short CLI-style aliases in parentheses):

    corpus_root (corpus)          path to the corpus tree
    canonical_size                square resize target, default 200
    partition_grid                color grid as ROWSxCOLS, default 2x4
    texture_sigma                 Gaussian sigma, default 1.0
    texture_radius                kernel radius, default 3
    shape_n, shape_m              moment order pair, default 4, 2
    train_percentages (train_pcts) comma list, default 20,...,80
    combinations (combos)         comma list from the seven combo names
    split_seed (seed)             integer, default 0
    repeats                       splits per cell, reported as means, default 1

Values supplied later win: built-in defaults < config file < overrides.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

from .errors import ConfigError
from .fusion import COMBO_NAMES

__all__ = [
    "DEFAULT_TRAIN_PERCENTAGES",
    "ExperimentConfig",
    "parse_config_file",
    "load_config",
    "validate_config",
]

DEFAULT_TRAIN_PERCENTAGES = (20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0)

_KEY_ALIASES = {
    "corpus": "corpus_root",
    "train_pcts": "train_percentages",
    "combos": "combinations",
    "seed": "split_seed",
}


@dataclass(frozen=True)
class ExperimentConfig:
    corpus_root: Path | None = None
    canonical_size: int = 200
    partition_rows: int = 2
    partition_cols: int = 4
    texture_sigma: float = 1.0
    texture_radius: int = 3
    shape_n: int = 4
    shape_m: int = 2
    train_percentages: tuple[float, ...] = DEFAULT_TRAIN_PERCENTAGES
    combinations: tuple[str, ...] = COMBO_NAMES
    split_seed: int = 0
    repeats: int = 1


def parse_config_file(path) -> dict[str, str]:
    """Read a key=value file into a raw string map (keys as written)."""
    values: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {raw.strip()!r}")
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return values


def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(key, f"expected an integer, got {value!r}") from None


def _parse_float(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(key, f"expected a number, got {value!r}") from None


def _parse_grid(key: str, value: str) -> tuple[int, int]:
    parts = value.lower().replace("×", "x").split("x")
    if len(parts) != 2:
        raise ConfigError(key, f"expected ROWSxCOLS, got {value!r}")
    return _parse_int(key, parts[0]), _parse_int(key, parts[1])


def _parse_list(value: str) -> list[str]:
    return [token.strip() for token in value.split(",") if token.strip()]


def load_config(path=None, overrides: dict[str, str] | None = None) -> ExperimentConfig:
    """Build a validated config from an optional file plus string overrides.

    Override keys use the same names (or aliases) as the config file;
    validation errors carry the key exactly as the caller supplied it.
    """
    raw: dict[str, str] = {}
    if path is not None:
        raw.update(parse_config_file(path))
    raw.update(overrides or {})

    settings: dict[str, object] = {}
    for given_key, value in raw.items():
        key = _KEY_ALIASES.get(given_key, given_key)
        if key == "corpus_root":
            settings[key] = Path(value)
        elif key in ("canonical_size", "texture_radius", "shape_n", "shape_m",
                     "split_seed", "repeats"):
            settings[key] = _parse_int(given_key, value)
        elif key == "texture_sigma":
            settings[key] = _parse_float(given_key, value)
        elif key == "partition_grid":
            settings["partition_rows"], settings["partition_cols"] = _parse_grid(given_key, value)
        elif key == "train_percentages":
            settings[key] = tuple(_parse_float(given_key, tok) for tok in _parse_list(value))
        elif key == "combinations":
            combos = tuple(_parse_list(value))
            for token in combos:
                if token not in COMBO_NAMES:
                    raise ConfigError(given_key, f"unknown combination '{token}'")
            settings[key] = combos
        elif key in {f.name for f in fields(ExperimentConfig)}:
            raise ConfigError(given_key, "this field cannot be set from a config file")
        else:
            raise ConfigError(given_key, "unknown key")

    return validate_config(ExperimentConfig(**settings))


def validate_config(config: ExperimentConfig) -> ExperimentConfig:
    if config.canonical_size < 1:
        raise ConfigError("canonical_size", "must be at least 1")
    if config.partition_rows * config.partition_cols != 8:
        raise ConfigError("partition_grid", "grid must have exactly 8 blocks "
                          "(the color descriptor is 48-dimensional)")
    if (config.canonical_size % config.partition_rows
            or config.canonical_size % config.partition_cols):
        raise ConfigError("partition_grid",
                          f"canonical size {config.canonical_size} is not divisible "
                          f"by a {config.partition_rows}x{config.partition_cols} grid")
    if config.texture_sigma <= 0:
        raise ConfigError("texture_sigma", "must be positive")
    if config.texture_radius < 1:
        raise ConfigError("texture_radius", "must be at least 1")
    if config.shape_n < 0 or abs(config.shape_m) > config.shape_n:
        raise ConfigError("shape_m", "need shape_n >= |shape_m| >= 0")
    if not config.train_percentages:
        raise ConfigError("train_percentages", "list is empty")
    for pct in config.train_percentages:
        if not 0 < pct < 100:
            raise ConfigError("train_percentages",
                              f"percentage {pct} is outside (0, 100)")
    if not config.combinations:
        raise ConfigError("combinations", "list is empty")
    for combo in config.combinations:
        if combo not in COMBO_NAMES:
            raise ConfigError("combinations", f"unknown combination '{combo}'")
    if config.repeats < 1:
        raise ConfigError("repeats", "must be at least 1")
    return config

"""
Brickyard — Configuration Loader

Lightweight parser that reads brickyard.yaml from the working directory
or from the repository root (../brickyard.yaml relative to this file).

Exports:
  get_settings()  the parsed YAML dictionary (cached)
  get_limits()    typed size caps, with $BRICKYARD_MAX_N and CLI overrides
  set_limits()    apply explicit overrides (CLI flags, worker processes)
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict

log = logging.getLogger("brickyard.config")

# ── Defaults ──────────────────────────────────────────────────────────────────

DEFAULT_MAX_N: int = 16
DEFAULT_MAX_PM_ENUM: int = 16
DEFAULT_LEMMA_MAX_N: int = 10
DEFAULT_BISUBDIVISION_LENGTHS: tuple[int, ...] = (3, 5)

ENV_CONFIG: str = "BRICKYARD_CONFIG"
ENV_MAX_N: str = "BRICKYARD_MAX_N"

_settings_cache: Dict[str, Any] | None = None
_limits_cache: "Limits | None" = None


@dataclass(frozen=True, slots=True)
class Limits:
    """Size caps shared by every exhaustive routine."""
    max_n: int = DEFAULT_MAX_N
    max_pm_enum: int = DEFAULT_MAX_PM_ENUM
    lemma_max_n: int = DEFAULT_LEMMA_MAX_N
    bisubdivision_lengths: tuple[int, ...] = DEFAULT_BISUBDIVISION_LENGTHS


def _locate_config() -> Path:
    """
    Resolve brickyard.yaml location.
    Search order:
      1. $BRICKYARD_CONFIG env var (explicit override)
      2. ./brickyard.yaml (current working directory)
      3. ../brickyard.yaml relative to this file (repository root)
    """
    env_path = os.environ.get(ENV_CONFIG)
    if env_path:
        p = Path(env_path)
        if p.is_file():
            return p

    cwd = Path.cwd() / "brickyard.yaml"
    if cwd.is_file():
        return cwd

    dev = Path(__file__).resolve().parent.parent / "brickyard.yaml"
    if dev.is_file():
        return dev

    raise FileNotFoundError(
        "brickyard.yaml not found. Searched: "
        f"${ENV_CONFIG}={env_path}, {cwd}, {dev}"
    )


def get_settings() -> Dict[str, Any]:
    """
    Parse and return brickyard.yaml as a dictionary.
    Results are cached after the first call.

    Falls back to an empty dict if PyYAML is not installed or the file is
    missing; every consumer has built-in defaults.
    """
    global _settings_cache

    if _settings_cache is not None:
        return _settings_cache

    try:
        import yaml  # type: ignore[import-untyped]
    except ImportError:
        log.warning(
            "> CONFIG: PyYAML not installed — using built-in defaults. "
            "Install with: pip install pyyaml"
        )
        _settings_cache = {}
        return _settings_cache

    try:
        config_path = _locate_config()
        with open(config_path, "r") as f:
            _settings_cache = yaml.safe_load(f) or {}
        log.debug(f"> CONFIG: Loaded settings from {config_path}")
    except FileNotFoundError as e:
        log.warning(f"> CONFIG: {e} — using built-in defaults.")
        _settings_cache = {}
    except Exception as e:
        log.warning(f"> CONFIG: Failed to parse brickyard.yaml: {e} — using built-in defaults.")
        _settings_cache = {}

    return _settings_cache


def _positive_int(value: Any, name: str, fallback: int) -> int:
    try:
        result = int(value)
    except (TypeError, ValueError):
        log.warning(f"> CONFIG: {name}={value!r} is not an integer — using {fallback}.")
        return fallback
    if result < 1:
        log.warning(f"> CONFIG: {name}={result} must be positive — using {fallback}.")
        return fallback
    return result


def _odd_lengths(raw: Any) -> tuple[int, ...]:
    """Odd path lengths >= 3; anything unusable falls back to the defaults."""
    try:
        values = [int(x) for x in raw]
    except (TypeError, ValueError):
        log.warning(
            f"> CONFIG: lemmas.bisubdivision_lengths={raw!r} is not a list of integers "
            f"— using {list(DEFAULT_BISUBDIVISION_LENGTHS)}."
        )
        return DEFAULT_BISUBDIVISION_LENGTHS
    lengths = tuple(length for length in values if length >= 3 and length % 2 == 1)
    if len(lengths) != len(values):
        log.warning(f"> CONFIG: lemmas.bisubdivision_lengths drops even or short lengths from {values}.")
    return lengths or DEFAULT_BISUBDIVISION_LENGTHS


def _load_limits() -> Limits:
    settings = get_settings()
    limits_cfg = settings.get("limits") or {}
    lemmas_cfg = settings.get("lemmas") or {}

    max_n = _positive_int(limits_cfg.get("max_n", DEFAULT_MAX_N), "limits.max_n", DEFAULT_MAX_N)
    env_max_n = os.environ.get(ENV_MAX_N)
    if env_max_n:
        max_n = _positive_int(env_max_n, ENV_MAX_N, max_n)

    lengths = _odd_lengths(lemmas_cfg.get("bisubdivision_lengths", list(DEFAULT_BISUBDIVISION_LENGTHS)))

    return Limits(
        max_n=max_n,
        max_pm_enum=_positive_int(
            limits_cfg.get("max_pm_enum", DEFAULT_MAX_PM_ENUM),
            "limits.max_pm_enum",
            DEFAULT_MAX_PM_ENUM,
        ),
        lemma_max_n=_positive_int(
            lemmas_cfg.get("max_n", DEFAULT_LEMMA_MAX_N),
            "lemmas.max_n",
            DEFAULT_LEMMA_MAX_N,
        ),
        bisubdivision_lengths=lengths,
    )


def get_limits() -> Limits:
    """Return the active caps (config file, then env, then overrides)."""
    global _limits_cache
    if _limits_cache is None:
        _limits_cache = _load_limits()
    return _limits_cache


def set_limits(limits: Limits | None = None, **overrides: Any) -> Limits:
    """
    Install explicit caps. Either a full Limits object (used to seed
    worker processes) or keyword overrides applied on top of the current
    values; None-valued overrides are ignored.
    """
    global _limits_cache
    base = limits if limits is not None else get_limits()
    changes = {k: v for k, v in overrides.items() if v is not None}
    _limits_cache = replace(base, **changes)
    log.debug(f"> CONFIG: Active limits {_limits_cache}")
    return _limits_cache


def reset() -> None:
    """Drop cached settings and limits (tests, config reloads)."""
    global _settings_cache, _limits_cache
    _settings_cache = None
    _limits_cache = None

#!/usr/bin/env python3
"""
Configuration Management Module

Loads toolkit settings from environment variables or a .env file, and
builds/validates the per-run AnalysisConfig from CLI flags and config files.
"""

import json
import os
import sys
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from catalog import BUNDLED_CATALOG, CatalogEntry, CatalogError, load_catalog
from iet import IET, IETError, build_iet
from perm import Permutation, PermutationError, parse_permutation
from scalar import Scalar, ScalarError, parse_scalar

COMMANDS = ("perm", "analyze", "catalog", "eps", "tower", "rigidity")
NEEDS_LENGTHS = ("analyze", "eps", "tower", "rigidity")
CSV_COMMANDS = ("perm", "eps", "rigidity")


class ConfigError(ValueError):
    """One or more configuration problems, reported together."""

    def __init__(self, errors: List[str]):
        self.errors = list(errors)
        super().__init__("Configuration errors:\n  - " + "\n  - ".join(self.errors))


def load_config() -> Dict[str, Any]:
    """
    Load configuration from environment variables.

    Looks for .env file in project root and loads variables if found.

    Returns:
        Dictionary with configuration sections:
        - catalog: default catalog path
        - processing: worker count, decimal digits, sweep chunk size
        - logging: log level name
    """
    env_file = Path(__file__).parent.parent.parent / ".env"
    if env_file.exists():
        _load_env_file(env_file)

    return {
        "catalog": {
            "path": os.getenv("IETLAB_CATALOG", str(BUNDLED_CATALOG)),
        },
        "processing": {
            "max_workers": os.getenv("IETLAB_MAX_WORKERS", "1"),
            "digits": os.getenv("IETLAB_DIGITS", "12"),
            "chunk_size": os.getenv("IETLAB_CHUNK_SIZE", "250"),
        },
        "logging": {
            "level": os.getenv("IETLAB_LOG_LEVEL", "WARNING").upper(),
        },
    }


def _parse_key_values(text: str) -> Dict[str, str]:
    values = {}
    for line in text.splitlines():
        line = line.strip()
        # Skip empty lines and comments
        if not line or line.startswith("#"):
            continue
        if "=" in line:
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


def _load_env_file(env_file: Path) -> None:
    """
    Load environment variables from .env file.

    Args:
        env_file: Path to .env file
    """
    for key, value in _parse_key_values(env_file.read_text()).items():
        # Only set if not already in environment
        if key not in os.environ:
            os.environ[key] = value


def validate_config(config: Dict[str, Any]) -> Dict[str, Any]:
    """
    Validate and convert environment settings.

    Args:
        config: Configuration dictionary from load_config()

    Returns:
        The same dictionary with numeric values converted to int

    Raises:
        ConfigError: listing every invalid setting
    """
    errors = []
    for key, minimum in (("max_workers", 1), ("digits", 0), ("chunk_size", 1)):
        raw = config["processing"][key]
        try:
            value = int(raw)
            if value < minimum:
                raise ValueError
            config["processing"][key] = value
        except (TypeError, ValueError):
            errors.append(f"IETLAB_{key.upper()}={raw!r} must be an integer >= {minimum}")
    if config["logging"]["level"] not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        errors.append(f"IETLAB_LOG_LEVEL={config['logging']['level']!r} is not a log level")
    if errors:
        raise ConfigError(errors)
    return config


@dataclass
class AnalysisConfig:
    """One CLI run. String-valued fields are parsed by resolve_analysis()."""

    command: str = "analyze"
    perm: Optional[str] = None
    lengths: Optional[List[str]] = None
    normalize: bool = False
    N: int = 100
    eps: str = "1/100"
    delta: str = "1/10"
    b: int = 2
    shift_power: int = 1
    threshold: Optional[str] = None
    interval: Optional[List[str]] = None
    out: Optional[str] = None
    format: str = "json"
    sample: bool = False
    seed: Optional[int] = None
    workers: int = 1
    catalog: Optional[str] = None
    digits: int = 12
    scan: Optional[int] = None

    @classmethod
    def from_file(cls, path: str) -> Dict[str, Any]:
        """Read a JSON object or key=value file into raw field values."""
        text = Path(path).read_text()
        try:
            raw = json.loads(text)
            if not isinstance(raw, dict):
                raise ConfigError([f"{path}: JSON config must be an object"])
        except json.JSONDecodeError:
            raw = _parse_key_values(text)
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ConfigError([f"{path}: unknown key {key!r}" for key in unknown])
        if isinstance(raw.get("lengths"), str):
            raw["lengths"] = [t for t in raw["lengths"].split(",") if t.strip()]
        if isinstance(raw.get("interval"), str):
            raw["interval"] = raw["interval"].split(",")
        for key in ("normalize", "sample"):
            if isinstance(raw.get(key), str):
                raw[key] = raw[key].strip().lower() in ("1", "true", "yes", "on")
        return raw

    @classmethod
    def merged(cls, file_values: Dict[str, Any], overrides: Dict[str, Any]) -> "AnalysisConfig":
        """File values first, then every override that is not None."""
        values = dict(file_values)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass
class ResolvedAnalysis:
    """Validated inputs ready for computation."""

    config: AnalysisConfig
    perm: Optional[Permutation] = None
    iet: Optional[IET] = None
    eps: Optional[Scalar] = None
    delta: Optional[Scalar] = None
    threshold: Optional[Scalar] = None
    interval: Optional[List[Scalar]] = None
    provenance: Dict[str, Any] = field(default_factory=dict)
    catalog: Dict[str, CatalogEntry] = field(default_factory=dict)


def sample_lengths(d: int, seed: int) -> List[Scalar]:
    """Seeded rational lengths k_i / sum(k) with k_i drawn from 1..1000."""
    rng = np.random.default_rng(seed)
    weights = [int(k) for k in rng.integers(1, 1001, size=d)]
    total = sum(weights)
    return [Scalar(Fraction(k, total)) for k in weights]


def _int_field(cfg: AnalysisConfig, name: str, minimum: int, errors: List[str]) -> None:
    value = getattr(cfg, name)
    try:
        value = int(value)
        if value < minimum:
            raise ValueError
        setattr(cfg, name, value)
    except (TypeError, ValueError):
        errors.append(f"{name} must be an integer >= {minimum}, got {value!r}")


def _is_text(value) -> bool:
    return isinstance(value, str) or (isinstance(value, int) and not isinstance(value, bool))


def _text_field(cfg: AnalysisConfig, name: str, errors: List[str], many: bool = False) -> bool:
    """Scalar and permutation fields arrive as text; JSON integers are accepted too."""
    value = getattr(cfg, name)
    if value is None:
        return True
    if many and isinstance(value, (list, tuple)) and all(_is_text(v) for v in value):
        setattr(cfg, name, [str(v) for v in value])
        return True
    if not many and _is_text(value):
        setattr(cfg, name, str(value))
        return True
    kind = "a list of scalars" if many else "text"
    errors.append(f"{name} must be {kind}, got {value!r}")
    return False


def _positive_scalar(text: Optional[str], name: str, errors: List[str]) -> Optional[Scalar]:
    if text is None:
        return None
    try:
        value = parse_scalar(text)
    except ScalarError as e:
        errors.append(f"{name}: {e}")
        return None
    if value.sign <= 0:
        errors.append(f"{name} must be positive, got {value}")
        return None
    return value


def resolve_analysis(cfg: AnalysisConfig) -> ResolvedAnalysis:
    """
    Validate every field before any computation starts.

    Args:
        cfg: Raw analysis configuration

    Returns:
        ResolvedAnalysis with parsed permutation, IET and parameters

    Raises:
        ConfigError: aggregating every problem found
    """
    errors: List[str] = []
    resolved = ResolvedAnalysis(cfg)

    if cfg.command not in COMMANDS:
        errors.append(f"unknown command {cfg.command!r}; expected one of {', '.join(COMMANDS)}")
    if cfg.format not in ("json", "csv"):
        errors.append(f"format must be json or csv, got {cfg.format!r}")
    elif cfg.format == "csv" and cfg.command not in CSV_COMMANDS:
        errors.append(f"{cfg.command} writes JSON only (CSV: {', '.join(CSV_COMMANDS)})")
    _int_field(cfg, "N", 1, errors)
    _int_field(cfg, "b", 0, errors)
    _int_field(cfg, "shift_power", -10**6, errors)
    _int_field(cfg, "workers", 1, errors)
    _int_field(cfg, "digits", 0, errors)
    well_typed = {name: _text_field(cfg, name, errors, many=name in ("lengths", "interval"))
                  for name in ("perm", "lengths", "eps", "delta", "threshold", "interval")}
    if cfg.seed is not None:
        _int_field(cfg, "seed", 0, errors)
    if cfg.seed is not None and not cfg.sample:
        errors.append("--seed is only valid with --sample")

    try:
        resolved.catalog = load_catalog(cfg.catalog)
    except CatalogError as e:
        errors.append(str(e))

    entry = None
    if cfg.command == "catalog":
        pass
    elif cfg.command == "perm" and cfg.scan is not None:
        _int_field(cfg, "scan", 1, errors)
        if isinstance(cfg.scan, int) and cfg.scan > 7:
            errors.append(f"--scan needs 1 <= d <= 7, got {cfg.scan}")
    elif not well_typed["perm"]:
        pass
    elif not cfg.perm:
        errors.append("missing permutation (--perm text or catalog name)")
    elif cfg.perm.strip() in resolved.catalog:
        entry = resolved.catalog[cfg.perm.strip()]
        resolved.perm = entry.perm
        resolved.provenance = entry.provenance()
    else:
        try:
            resolved.perm = parse_permutation(cfg.perm)
            resolved.provenance = {"catalog": None, "name": None, "permutation": cfg.perm.strip()}
        except PermutationError as e:
            errors.append(f"permutation: {e}")

    if cfg.command in NEEDS_LENGTHS and resolved.perm is not None:
        lengths = None
        from_catalog = False
        if cfg.sample:
            if cfg.lengths:
                errors.append("--sample and --lengths are mutually exclusive")
            else:
                lengths = sample_lengths(resolved.perm.d, cfg.seed or 0)
                resolved.provenance["sample_seed"] = cfg.seed or 0
        elif not well_typed["lengths"]:
            pass
        elif cfg.lengths:
            try:
                lengths = [parse_scalar(t) for t in cfg.lengths]
            except ScalarError as e:
                errors.append(f"lengths: {e}")
        elif entry is not None and entry.has_lengths:
            lengths = list(entry.lengths)
            from_catalog = True
        else:
            errors.append("missing lengths (--lengths, catalog entry with lengths, or --sample)")
        if lengths is not None:
            try:
                normalize = cfg.normalize or cfg.sample or from_catalog
                resolved.iet = build_iet(lengths, resolved.perm, normalize=normalize)
            except (IETError, ScalarError) as e:
                hint = " (pass --normalize to rescale)" if "sum" in str(e) else ""
                errors.append(f"lengths: {e}{hint}")

    for name in ("eps", "delta", "threshold"):
        if well_typed[name]:
            setattr(resolved, name, _positive_scalar(getattr(cfg, name), name, errors))
    if cfg.command == "tower" and cfg.interval is not None and well_typed["interval"]:
        if len(cfg.interval) != 2:
            errors.append("--interval takes LEFT RIGHT")
        else:
            try:
                resolved.interval = [parse_scalar(t) for t in cfg.interval]
            except ScalarError as e:
                errors.append(f"interval: {e}")

    if errors:
        raise ConfigError(errors)
    return resolved


# Example usage
if __name__ == "__main__":
    print("IET Lab - Configuration Check\n")
    print("=" * 60)

    try:
        config = validate_config(load_config())
        print("\n✓ Configuration loaded successfully\n")
        print(f"Catalog: {config['catalog']['path']}")
        print(f"  Max Workers: {config['processing']['max_workers']}")
        print(f"  Decimal Digits: {config['processing']['digits']}")
        print(f"  Chunk Size: {config['processing']['chunk_size']}")
        print(f"  Log Level: {config['logging']['level']}")
    except ConfigError as e:
        print(f"\n✗ {e}\n")
        sys.exit(2)

"""INI-style configuration loading.

A config file has up to two sections: ``[physical]`` with the SI-unit
crystal fields and ``[system]`` with the dimensionless fields, named
exactly as the corresponding dataclass fields.  Unknown keys or sections
are a hard error, never ignored.
"""

from __future__ import annotations

import configparser
from dataclasses import fields
from pathlib import Path

from .errors import ConfigError
from .params import CrystalParams, SystemParams

_SYSTEM_KEYS = {f.name for f in fields(SystemParams)}
_PHYSICAL_KEYS = {f.name for f in fields(CrystalParams)}


def _parse_section(section, allowed, label):
    values = {}
    for key, raw in section.items():
        if key not in allowed:
            raise ConfigError(f"unknown key '{key}' in [{label}]")
        try:
            values[key] = float(raw)
        except ValueError as exc:
            raise ConfigError(f"key '{key}' in [{label}]: not a number: {raw!r}") from exc
    return values


def load_config(path) -> tuple[CrystalParams | None, SystemParams]:
    """Load (crystal, system) parameters from an INI file.

    ``[system]`` is required; ``[physical]`` is optional and yields None
    when absent.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser()
    parser.optionxform = str  # keys are case-sensitive (A, L_ac, ...)
    try:
        parser.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc

    known = {"physical", "system"}
    unknown = set(parser.sections()) - known
    if unknown:
        raise ConfigError(f"unknown section(s): {', '.join(sorted(unknown))}")
    if not parser.has_section("system"):
        raise ConfigError("missing [system] section")

    system = SystemParams(**_parse_section(parser["system"], _SYSTEM_KEYS, "system"))
    crystal = None
    if parser.has_section("physical"):
        crystal = CrystalParams(**_parse_section(parser["physical"], _PHYSICAL_KEYS, "physical"))
    return crystal, system


def apply_overrides(params: SystemParams, overrides: dict[str, str]) -> SystemParams:
    """Apply ``key=value`` overrides (e.g. from CLI flags) to a parameter set."""
    changes = {}
    for key, raw in overrides.items():
        if key not in _SYSTEM_KEYS:
            raise ConfigError(f"unknown override key '{key}'")
        try:
            changes[key] = float(raw)
        except ValueError as exc:
            raise ConfigError(f"override '{key}': not a number: {raw!r}") from exc
    return params.replace(**changes) if changes else params

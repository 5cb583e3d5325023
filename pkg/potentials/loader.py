"""
Build potentials from configuration mappings and tabulated text files.
"""
from pathlib import Path
from typing import Any, Mapping, Optional, Union

import numpy as np

from utils.errors import PotentialError
from utils.logger import get_logger
from .spec import (
    PotentialKind,
    PotentialSpec,
    gaussian,
    gaussian_off_center,
    square_well,
    tabulated_radial,
    yukawa,
)

logger = get_logger(__name__)


def load_tabulated_potential(path: Union[str, Path], support_radius: Optional[float] = None) -> PotentialSpec:
    """
    Read a two-column (radius, value) whitespace-separated table.

    Lines starting with '#' are ignored. Radii must be strictly increasing.
    """
    path = Path(path)
    if not path.exists():
        raise PotentialError(f"Potential table not found at {path}")
    try:
        table = np.loadtxt(path, comments="#", ndmin=2)
    except ValueError as e:
        raise PotentialError(f"Could not parse potential table {path}: {e}")
    if table.shape[1] != 2:
        raise PotentialError(f"Potential table {path} must have exactly two columns, found {table.shape[1]}")
    logger.info(f"Loaded {table.shape[0]} potential samples from {path}")
    return tabulated_radial(table[:, 0], table[:, 1], support_radius=support_radius)


def _require(params: Mapping[str, Any], key: str, kind: str) -> float:
    if key not in params:
        raise PotentialError(f"{kind} potential requires parameter '{key}'")
    try:
        return float(params[key])
    except (TypeError, ValueError):
        raise PotentialError(f"{kind} parameter '{key}' must be a number, got {params[key]!r}")


def potential_from_mapping(section: Mapping[str, Any], base_dir: Optional[Path] = None) -> PotentialSpec:
    """
    Build a PotentialSpec from a config section such as
    {"kind": "gaussian", "g": -2.0, "a": 1.0}.

    Args:
        section: Mapping with "kind" plus the kind's named parameters
        base_dir: Directory against which a relative table "file" is resolved
    """
    raw_kind = section.get("kind")
    try:
        kind = PotentialKind(str(raw_kind).lower())
    except ValueError:
        choices = ", ".join(k.value for k in PotentialKind)
        raise PotentialError(f"Unknown potential kind {raw_kind!r}; expected one of: {choices}")

    support = section.get("support_radius")
    name = kind.value
    if kind is PotentialKind.GAUSSIAN:
        return gaussian(_require(section, "g", name), _require(section, "a", name), support)
    if kind is PotentialKind.YUKAWA:
        return yukawa(_require(section, "g", name), _require(section, "mu", name), support)
    if kind is PotentialKind.SQUARE_WELL:
        return square_well(_require(section, "V0", name), _require(section, "a", name))
    if kind is PotentialKind.GAUSSIAN_OFF_CENTER:
        center = section.get("center")
        if center is None:
            raise PotentialError("gaussian_off_center potential requires parameter 'center'")
        return gaussian_off_center(_require(section, "g", name), _require(section, "a", name), center, support)

    if "file" in section:
        table_path = Path(section["file"])
        if base_dir is not None and not table_path.is_absolute():
            table_path = base_dir / table_path
        return load_tabulated_potential(table_path, support)
    if "radii" in section and "values" in section:
        return tabulated_radial(section["radii"], section["values"], support)
    raise PotentialError("tabulated_radial potential requires 'file' or 'radii' and 'values'")

"""
Output writers. Every file starts with the tool version and the config hash.
"""
import json
import math
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Union

import numpy as np
import pandas as pd

from utils.constants import TOOL_NAME, TOOL_VERSION
from utils.logger import get_logger

logger = get_logger(__name__)

CSV_FLOAT_FORMAT = "%.17e"


def header_line(config_hash: str) -> str:
    return f"# tool={TOOL_NAME} version={TOOL_VERSION} config={config_hash}"


def jsonable(value: Any) -> Any:
    """Convert numpy scalars, arrays, complex numbers and non-finite floats into plain JSON data."""
    if isinstance(value, Mapping):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": jsonable(float(value.real)), "im": jsonable(float(value.imag))}
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if value is pd.NA:
        return None
    return value


def write_csv(frame: pd.DataFrame, path: Union[str, Path], config_hash: str,
              description: Optional[str] = None) -> Path:
    """
    Write a DataFrame as CSV in full double precision, preceded by the header comment lines.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [header_line(config_hash)]
    if description:
        lines.append(f"# {description}")
    body = frame.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    path.write_text("\n".join(lines) + "\n" + body, encoding="utf-8")
    logger.debug(f"Wrote {len(frame)} rows to {path}")
    return path


def read_csv(path: Union[str, Path]) -> pd.DataFrame:
    """Read back a CSV written by write_csv (header comment lines skipped)."""
    return pd.read_csv(path, comment="#", float_precision="round_trip")


def write_json(payload: Mapping[str, Any], path: Union[str, Path], config_hash: str) -> Path:
    """Write a JSON document with the tool, version and config hash in front of the payload keys."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {"tool": TOOL_NAME, "version": TOOL_VERSION, "config_hash": config_hash}
    document.update(jsonable(payload))
    path.write_text(json.dumps(document, indent=2, sort_keys=True, allow_nan=False) + "\n", encoding="utf-8")
    logger.debug(f"Wrote {path}")
    return path


def write_table(frame: pd.DataFrame, directory: Union[str, Path], stem: str, formats: Iterable[str],
                config_hash: str, description: Optional[str] = None) -> list:
    """
    Write a table once per requested format (csv and/or json records).

    Returns:
        list: The written paths
    """
    directory = Path(directory)
    written = []
    for fmt in formats:
        if fmt == "csv":
            written.append(write_csv(frame, directory / f"{stem}.csv", config_hash, description))
        elif fmt == "json":
            payload = {"description": description, "columns": list(frame.columns),
                       "rows": frame.to_dict(orient="records")}
            written.append(write_json(payload, directory / f"{stem}.json", config_hash))
        else:
            raise ValueError(f"unknown output format {fmt!r}")
    return written

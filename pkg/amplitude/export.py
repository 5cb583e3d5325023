"""
Tabular and JSON views of an amplitude matrix.
"""
from typing import Any, Dict

import numpy as np
import pandas as pd

from .matrix import AmplitudeMatrix


def amplitude_frame(f: AmplitudeMatrix) -> pd.DataFrame:
    """One row per (outgoing a, incident b) pair: a, b, re, im."""
    a, b = np.meshgrid(np.arange(f.size), np.arange(f.size), indexing="ij")
    return pd.DataFrame({
        "a": a.ravel(),
        "b": b.ravel(),
        "re": f.values.real.ravel(),
        "im": f.values.imag.ravel(),
    })


def amplitude_record(f: AmplitudeMatrix) -> Dict[str, Any]:
    """JSON-serializable record with the grid description and the real and imaginary parts."""
    return {
        "lambda": f.energy,
        "n_theta": f.sphere.n_theta,
        "n_phi": f.sphere.n_phi,
        "directions": f.sphere.directions.tolist(),
        "weights": f.sphere.weights.tolist(),
        "re": f.values.real.tolist(),
        "im": f.values.imag.tolist(),
    }

"""
Input validation utilities for run configurations and operation preconditions.
"""
import math
from typing import Any, Sequence

from utils.errors import ConfigError


def validate_positive_number(name: str, value: Any) -> float:
    """
    Validate that a value is a finite number strictly greater than zero.

    Args:
        name: Field name used in the error message
        value: The value to check

    Returns:
        float: The value as a float

    Raises:
        ConfigError: If the value is not a positive finite number
    """
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a number, got {value!r}")
    if not math.isfinite(number) or number <= 0:
        raise ConfigError(f"{name} must be positive, got {value!r}")
    return number


def validate_count(name: str, value: Any, minimum: int = 1) -> int:
    """
    Validate that a value is an integer not below the given minimum.

    Args:
        name: Field name used in the error message
        value: The value to check
        minimum: Smallest accepted value

    Returns:
        int: The validated count
    """
    if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    count = int(value)
    if count < minimum:
        raise ConfigError(f"{name} must be at least {minimum}, got {count}")
    return count


def validate_even_count(name: str, value: Any, minimum: int = 2) -> int:
    """
    Validate that a value is an even integer not below the given minimum.
    """
    count = validate_count(name, value, minimum)
    if count % 2:
        raise ConfigError(f"{name} must be even, got {count}")
    return count


def validate_interval(name: str, bounds: Sequence[Any]) -> tuple:
    """
    Validate a positive interval given as a two-element sequence (low, high) with low < high.
    """
    if not isinstance(bounds, (list, tuple)) or len(bounds) != 2:
        raise ConfigError(f"{name} must be a [low, high] pair, got {bounds!r}")
    low = validate_positive_number(f"{name}[0]", bounds[0])
    high = validate_positive_number(f"{name}[1]", bounds[1])
    if high <= low:
        raise ConfigError(f"{name} must satisfy low < high, got {bounds!r}")
    return low, high

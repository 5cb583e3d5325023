"""
Run configuration: JSON loading, validation and the reproducibility hash.
"""
import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union

from potentials import PotentialSpec, potential_from_mapping
from utils.constants import (
    BOUND_STATE_ACCEPT_RATIO,
    CORRESPONDENCE_L_MAX,
    CORRESPONDENCE_TOLERANCE,
    CROSS_SECTION_RATIO_TOLERANCE,
    DEFAULT_L_MAX,
    DEFAULT_N_PHI,
    DEFAULT_N_R,
    DEFAULT_N_THETA,
    DEFAULT_R_MAX,
    DENSE_SVD_LIMIT,
    EXCEPTIONAL_RATIO,
    FARFIELD_RADII,
    L_MAX_CEILING,
    PARSEVAL_TOLERANCE,
    PARTIAL_WAVE_ROUTE_TOLERANCE,
    RECONSTRUCTION_TOLERANCE,
    TAIL_TOLERANCE,
    UNITARITY_TOLERANCE,
)
from utils.errors import ConfigError, ScatteringError
from utils.logger import get_logger
from utils.validators import validate_count, validate_even_count, validate_interval, validate_positive_number

logger = get_logger(__name__)

OUTPUT_FORMATS = ("csv", "json")
SECTIONS = ("potential", "energies", "grid", "radial", "boundstates", "verify", "output", "solver")


@dataclass(frozen=True)
class GridConfig:
    n_r: int = DEFAULT_N_R
    n_theta: int = DEFAULT_N_THETA
    n_phi: int = DEFAULT_N_PHI
    r_max: Optional[float] = DEFAULT_R_MAX

    def coarsened(self) -> "GridConfig":
        """Every count halved (n_phi kept even), same radius."""
        half_phi = max(2, self.n_phi // 2)
        return replace(self, n_r=max(2, self.n_r // 2), n_theta=max(2, self.n_theta // 2),
                       n_phi=half_phi + half_phi % 2)


@dataclass(frozen=True)
class RadialConfig:
    l_max: int = DEFAULT_L_MAX
    tail_tolerance: float = TAIL_TOLERANCE
    l_max_ceiling: int = L_MAX_CEILING
    step: Optional[float] = None


@dataclass(frozen=True)
class BoundStateConfig:
    kappa_range: Tuple[float, float] = (0.05, 3.0)
    n_samples: int = 40
    accept_ratio: float = BOUND_STATE_ACCEPT_RATIO
    grid: GridConfig = field(default_factory=lambda: GridConfig(n_r=12, n_theta=8, n_phi=16, r_max=None))


@dataclass(frozen=True)
class BornCheckConfig:
    g: float = 0.01
    mu: float = 1.0
    energy: float = 1.0
    tolerance: float = 0.02
    grid: GridConfig = field(default_factory=lambda: GridConfig(r_max=12.0))


@dataclass(frozen=True)
class SquareWellOracleConfig:
    V0: float = 2.0
    a: float = 1.0
    energies: Tuple[float, ...] = (0.5, 1.0, 2.0)
    tolerance: float = 1e-6


@dataclass(frozen=True)
class BoundStateThresholdConfig:
    a: float = 1.0
    depths: Tuple[float, ...] = (2.0, 3.0)
    kappa_range: Tuple[float, float] = (0.02, 2.0)
    n_samples: int = 40
    grid: GridConfig = field(default_factory=lambda: GridConfig(n_r=12, n_theta=8, n_phi=16, r_max=None))


@dataclass(frozen=True)
class VerificationThresholds:
    reconstruction: float = RECONSTRUCTION_TOLERANCE
    parseval: float = PARSEVAL_TOLERANCE
    unitarity: float = UNITARITY_TOLERANCE
    correspondence: float = CORRESPONDENCE_TOLERANCE
    correspondence_l_max: int = CORRESPONDENCE_L_MAX
    cross_section_ratio: float = CROSS_SECTION_RATIO_TOLERANCE
    partial_wave_routes: float = PARTIAL_WAVE_ROUTE_TOLERANCE
    farfield_radii: Tuple[float, ...] = FARFIELD_RADII
    refinement_check: bool = True
    trivial_check: bool = True
    born_check: Optional[BornCheckConfig] = field(default_factory=BornCheckConfig)
    square_well_oracle: Optional[SquareWellOracleConfig] = field(default_factory=SquareWellOracleConfig)
    bound_state_threshold: Optional[BoundStateThresholdConfig] = field(default_factory=BoundStateThresholdConfig)


@dataclass(frozen=True)
class SolverConfig:
    exceptional_ratio: float = EXCEPTIONAL_RATIO
    dense_svd_limit: int = DENSE_SVD_LIMIT
    threads: Optional[int] = None


@dataclass(frozen=True)
class OutputConfig:
    directory: str = "results"
    formats: Tuple[str, ...] = ("csv",)
    dump_grids: bool = False


@dataclass(frozen=True)
class PotentialConfig:
    """The raw potential section together with the spec built from it."""
    section: Mapping[str, Any]
    spec: PotentialSpec


@dataclass(frozen=True)
class RunConfig:
    potential: PotentialConfig
    energies: Tuple[float, ...]
    grid: GridConfig = field(default_factory=GridConfig)
    radial: RadialConfig = field(default_factory=RadialConfig)
    boundstates: BoundStateConfig = field(default_factory=BoundStateConfig)
    verify: VerificationThresholds = field(default_factory=VerificationThresholds)
    solver: SolverConfig = field(default_factory=SolverConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    source: Optional[str] = None

    @property
    def spec(self) -> PotentialSpec:
        return self.potential.spec

    def grid_radius(self, grid: Optional[GridConfig] = None) -> float:
        """Configured R_max, or the potential's support radius when unset."""
        grid = self.grid if grid is None else grid
        return self.spec.support_radius if grid.r_max is None else grid.r_max

    def to_mapping(self) -> Dict[str, Any]:
        """The effective configuration as plain JSON data (no output location)."""
        data: Dict[str, Any] = {"potential": dict(self.potential.section), "energies": list(self.energies)}
        for name in ("grid", "radial", "boundstates", "verify", "solver", "output"):
            data[name] = asdict(getattr(self, name))
        data["output"].pop("directory", None)
        return data

    @property
    def config_hash(self) -> str:
        return config_hash(self)

    def with_overrides(self, out: Optional[str] = None, formats: Optional[Tuple[str, ...]] = None,
                       dump_grids: Optional[bool] = None) -> "RunConfig":
        output = self.output
        if out is not None:
            output = replace(output, directory=str(out))
        if formats:
            output = replace(output, formats=_formats(list(formats)))
        if dump_grids:
            output = replace(output, dump_grids=True)
        return replace(self, output=output)


def _canonical(value):
    # 2 and 2.0 hash alike
    if isinstance(value, float) and value.is_integer():
        return int(value)
    if isinstance(value, Mapping):
        return {str(k): _canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_canonical(v) for v in value]
    return value


def config_hash(config: RunConfig) -> str:
    """SHA-256 of the canonical JSON (sorted keys, no whitespace) of the effective configuration."""
    text = json.dumps(_canonical(config.to_mapping()), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _section(data: Mapping[str, Any], name: str) -> Mapping[str, Any]:
    value = data.get(name) or {}
    if not isinstance(value, Mapping):
        raise ConfigError(f"section '{name}' must be an object, got {type(value).__name__}")
    return value


def _reject_unknown(section: Mapping[str, Any], allowed, name: str) -> None:
    unknown = sorted(set(section) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown keys in section '{name}': {', '.join(unknown)}")


def _energies(section: Mapping[str, Any]) -> Tuple[float, ...]:
    if "values" in section:
        values = section["values"]
        if not isinstance(values, (list, tuple)) or not values:
            raise ConfigError("energies.values must be a non-empty list")
        return tuple(validate_positive_number(f"energies.values[{i}]", v) for i, v in enumerate(values))
    if {"start", "stop", "step"} <= set(section):
        start = validate_positive_number("energies.start", section["start"])
        stop = validate_positive_number("energies.stop", section["stop"])
        step = validate_positive_number("energies.step", section["step"])
        if stop < start:
            raise ConfigError(f"energies.stop {stop} is below energies.start {start}")
        count = int(math.floor((stop - start) / step + 0.5)) + 1
        return tuple(start + i * step for i in range(count))
    raise ConfigError("energies needs 'values' or 'start', 'stop' and 'step'")


def _grid(section: Mapping[str, Any], name: str, default: GridConfig) -> GridConfig:
    _reject_unknown(section, ("n_r", "n_theta", "n_phi", "r_max"), name)
    r_max = section.get("r_max", default.r_max)
    return GridConfig(
        n_r=validate_count(f"{name}.n_r", section.get("n_r", default.n_r), minimum=2),
        n_theta=validate_count(f"{name}.n_theta", section.get("n_theta", default.n_theta), minimum=2),
        n_phi=validate_even_count(f"{name}.n_phi", section.get("n_phi", default.n_phi)),
        r_max=None if r_max is None else validate_positive_number(f"{name}.r_max", r_max),
    )


def _radial(section: Mapping[str, Any]) -> RadialConfig:
    _reject_unknown(section, ("l_max", "tail_tolerance", "l_max_ceiling", "step"), "radial")
    default = RadialConfig()
    step = section.get("step")
    return RadialConfig(
        l_max=validate_count("radial.l_max", section.get("l_max", default.l_max), minimum=0),
        tail_tolerance=validate_positive_number("radial.tail_tolerance", section.get("tail_tolerance", default.tail_tolerance)),
        l_max_ceiling=validate_count("radial.l_max_ceiling", section.get("l_max_ceiling", default.l_max_ceiling), minimum=1),
        step=None if step is None else validate_positive_number("radial.step", step),
    )


def _boundstates(section: Mapping[str, Any]) -> BoundStateConfig:
    _reject_unknown(section, ("kappa_range", "n_samples", "accept_ratio", "grid"), "boundstates")
    default = BoundStateConfig()
    return BoundStateConfig(
        kappa_range=validate_interval("boundstates.kappa_range", section.get("kappa_range", list(default.kappa_range))),
        n_samples=validate_count("boundstates.n_samples", section.get("n_samples", default.n_samples), minimum=3),
        accept_ratio=validate_positive_number("boundstates.accept_ratio", section.get("accept_ratio", default.accept_ratio)),
        grid=_grid(_section(section, "grid"), "boundstates.grid", default.grid),
    )


def _optional_check(section: Mapping[str, Any], key: str, builder):
    if key in section and section[key] is None:
        return None
    value = section.get(key) or {}
    if not isinstance(value, Mapping):
        raise ConfigError(f"verify.{key} must be an object or null")
    return builder(value)


def _born(section: Mapping[str, Any]) -> BornCheckConfig:
    _reject_unknown(section, ("g", "mu", "energy", "tolerance", "grid"), "verify.born_check")
    default = BornCheckConfig()
    return BornCheckConfig(
        g=float(section.get("g", default.g)),
        mu=validate_positive_number("verify.born_check.mu", section.get("mu", default.mu)),
        energy=validate_positive_number("verify.born_check.energy", section.get("energy", default.energy)),
        tolerance=validate_positive_number("verify.born_check.tolerance", section.get("tolerance", default.tolerance)),
        grid=_grid(_section(section, "grid"), "verify.born_check.grid", default.grid),
    )


def _square_well_oracle(section: Mapping[str, Any]) -> SquareWellOracleConfig:
    _reject_unknown(section, ("V0", "a", "energies", "tolerance"), "verify.square_well_oracle")
    default = SquareWellOracleConfig()
    energies = section.get("energies", list(default.energies))
    return SquareWellOracleConfig(
        V0=float(section.get("V0", default.V0)),
        a=validate_positive_number("verify.square_well_oracle.a", section.get("a", default.a)),
        energies=tuple(validate_positive_number("verify.square_well_oracle.energies", e) for e in energies),
        tolerance=validate_positive_number("verify.square_well_oracle.tolerance", section.get("tolerance", default.tolerance)),
    )


def _threshold(section: Mapping[str, Any]) -> BoundStateThresholdConfig:
    _reject_unknown(section, ("a", "depths", "kappa_range", "n_samples", "grid"), "verify.bound_state_threshold")
    default = BoundStateThresholdConfig()
    depths = section.get("depths", list(default.depths))
    return BoundStateThresholdConfig(
        a=validate_positive_number("verify.bound_state_threshold.a", section.get("a", default.a)),
        depths=tuple(validate_positive_number("verify.bound_state_threshold.depths", d) for d in depths),
        kappa_range=validate_interval("verify.bound_state_threshold.kappa_range",
                                      section.get("kappa_range", list(default.kappa_range))),
        n_samples=validate_count("verify.bound_state_threshold.n_samples", section.get("n_samples", default.n_samples), minimum=3),
        grid=_grid(_section(section, "grid"), "verify.bound_state_threshold.grid", default.grid),
    )


def _verify(section: Mapping[str, Any]) -> VerificationThresholds:
    checks = ("born_check", "square_well_oracle", "bound_state_threshold")
    numbers = ("reconstruction", "parseval", "unitarity", "correspondence", "cross_section_ratio", "partial_wave_routes")
    _reject_unknown(section, numbers + checks + ("correspondence_l_max", "farfield_radii",
                                                 "refinement_check", "trivial_check"), "verify")
    default = VerificationThresholds()
    values = {key: validate_positive_number(f"verify.{key}", section.get(key, getattr(default, key))) for key in numbers}
    radii = section.get("farfield_radii", list(default.farfield_radii))
    if not isinstance(radii, (list, tuple)) or not radii:
        raise ConfigError("verify.farfield_radii must be a non-empty list")
    return VerificationThresholds(
        **values,
        correspondence_l_max=validate_count("verify.correspondence_l_max",
                                            section.get("correspondence_l_max", default.correspondence_l_max), minimum=0),
        farfield_radii=tuple(sorted(validate_positive_number("verify.farfield_radii", r) for r in radii)),
        refinement_check=bool(section.get("refinement_check", default.refinement_check)),
        trivial_check=bool(section.get("trivial_check", default.trivial_check)),
        born_check=_optional_check(section, "born_check", _born),
        square_well_oracle=_optional_check(section, "square_well_oracle", _square_well_oracle),
        bound_state_threshold=_optional_check(section, "bound_state_threshold", _threshold),
    )


def _solver(section: Mapping[str, Any]) -> SolverConfig:
    _reject_unknown(section, ("exceptional_ratio", "dense_svd_limit", "threads"), "solver")
    default = SolverConfig()
    threads = section.get("threads")
    return SolverConfig(
        exceptional_ratio=validate_positive_number("solver.exceptional_ratio",
                                                   section.get("exceptional_ratio", default.exceptional_ratio)),
        dense_svd_limit=validate_count("solver.dense_svd_limit", section.get("dense_svd_limit", default.dense_svd_limit)),
        threads=None if threads is None else validate_count("solver.threads", threads),
    )


def _formats(values) -> Tuple[str, ...]:
    if isinstance(values, str):
        values = [values]
    formats = tuple(dict.fromkeys(str(v).lower() for v in values))
    bad = [f for f in formats if f not in OUTPUT_FORMATS]
    if bad or not formats:
        raise ConfigError(f"output formats must be drawn from {OUTPUT_FORMATS}, got {list(values)!r}")
    return formats


def _output(section: Mapping[str, Any]) -> OutputConfig:
    _reject_unknown(section, ("directory", "formats", "dump_grids"), "output")
    default = OutputConfig()
    return OutputConfig(
        directory=str(section.get("directory", default.directory)),
        formats=_formats(section.get("formats", list(default.formats))),
        dump_grids=bool(section.get("dump_grids", default.dump_grids)),
    )


def run_config_from_mapping(data: Mapping[str, Any], base_dir: Optional[Path] = None,
                            source: Optional[str] = None) -> RunConfig:
    """
    Validate a parsed configuration document.

    Raises:
        ConfigError: On any missing or invalid value (potential errors are re-raised as ConfigError)
    """
    if not isinstance(data, Mapping):
        raise ConfigError("configuration root must be a JSON object")
    _reject_unknown(data, SECTIONS + ("version", "description"), "root")
    if "potential" not in data:
        raise ConfigError("configuration needs a 'potential' section")
    potential_section = _section(data, "potential")
    try:
        spec = potential_from_mapping(potential_section, base_dir=base_dir)
    except ScatteringError as e:
        raise ConfigError(f"potential: {e}") from e

    return RunConfig(
        potential=PotentialConfig(dict(potential_section), spec),
        energies=_energies(_section(data, "energies")) if "energies" in data else (1.0,),
        grid=_grid(_section(data, "grid"), "grid", GridConfig()),
        radial=_radial(_section(data, "radial")),
        boundstates=_boundstates(_section(data, "boundstates")),
        verify=_verify(_section(data, "verify")),
        solver=_solver(_section(data, "solver")),
        output=_output(_section(data, "output")),
        source=source,
    )


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """
    Read and validate a JSON run configuration.

    Raises:
        ConfigError: If the file is missing, not valid JSON, or fails validation
    """
    path = Path(path)
    logger.debug(f"Loading run config from {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"Run config not found at {path}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Run config {path} is not valid JSON: {e}")

    config = run_config_from_mapping(data, base_dir=path.parent, source=str(path))
    logger.info(
        f"Loaded run config {path.name}: {config.spec.describe()}, {len(config.energies)} energies, "
        f"grid {config.grid.n_r}x{config.grid.n_theta}x{config.grid.n_phi}"
    )
    return config

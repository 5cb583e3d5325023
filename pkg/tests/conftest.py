"""
Global pytest configuration and shared fixtures.
"""
import numpy as np
import pytest

from cli.config import SolverConfig
from cli.pipeline import GridSet, run_energy
from potentials import gaussian, square_well, yukawa, zero_potential
from quadrature import build_radial_grid, build_sphere_grid, build_volume_grid

# Package directories and the marker each one receives
CATEGORIES = {
    "test_utils": "utils",
    "test_potentials": "potentials",
    "test_quadrature": "quadrature",
    "test_specfun": "specfun",
    "test_ls_solver": "solver",
    "test_amplitude": "amplitude",
    "test_smatrix": "smatrix",
    "test_radial": "radial",
    "test_cli": "cli",
}


def pytest_configure(config):
    """Configure pytest to show cleaner output."""
    # Register a custom marker for slow tests
    config.addinivalue_line("markers",
                            "slow: marks tests as slow (deselect with '-m \"not slow\"')")
    for marker in CATEGORIES.values():
        config.addinivalue_line("markers", f"{marker}: tests for the {marker} package")


def pytest_collection_modifyitems(config, items):
    """Add markers to tests based on their package directory."""
    for item in items:
        for directory, marker in CATEGORIES.items():
            if directory in item.nodeid:
                item.add_marker(getattr(pytest.mark, marker))


# ------------------------------
# Shared fixtures
# ------------------------------

@pytest.fixture(scope="session")
def small_sphere():
    """6 x 12 sphere grid (72 directions)."""
    return build_sphere_grid(6, 12)


@pytest.fixture(scope="session")
def small_grid(small_sphere):
    """8-node radial rule on [0, 5] times the small sphere grid (576 nodes)."""
    return build_volume_grid(build_radial_grid(5.0, 8), small_sphere)


@pytest.fixture(scope="session")
def gaussian_well():
    return gaussian(-2.0, 1.0)


@pytest.fixture(scope="session")
def weak_yukawa():
    return yukawa(0.01, 1.0)


@pytest.fixture(scope="session")
def deep_square_well():
    return square_well(3.0, 1.0)


@pytest.fixture(scope="session")
def vanishing_potential():
    return zero_potential(2.0)


@pytest.fixture(scope="session")
def solved_gaussian(gaussian_well, small_grid, small_sphere):
    """Full pipeline at λ = 1 on the small grid, shared by the amplitude and S-matrix tests."""
    return run_energy(gaussian_well, GridSet(small_grid, small_sphere), 1.0, SolverConfig())


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# Track the current module and class for grouping output
_current_module = None
_current_class = None


def pytest_runtest_protocol(item, nextitem):
    """
    Hook implementation that runs before each test.
    Used to organize tests visually by module and class.
    """
    global _current_module, _current_class

    module_name = item.module.__name__

    # Format module name for display (remove 'tests.' prefix if present)
    display_module = module_name
    if display_module.startswith('tests.'):
        display_module = display_module[6:]
    if "test_" in display_module:
        display_module = display_module.replace("test_", "Testing ")

    if module_name != _current_module:
        if _current_module is not None:
            print("\n" + "─" * 80)
        print(f"\n\033[1;36m▶ {display_module}\033[0m")
        print("─" * 40)
        _current_module = module_name
        _current_class = None

    if hasattr(item, 'cls') and item.cls:
        class_name = item.cls.__name__
        display_class = class_name.replace("Test", "Testing ")
        if class_name != _current_class:
            if _current_class is not None:
                print("")
            print(f"  \033[1;33m→ {display_class}\033[0m")
            print("  " + "┄" * 30)
            _current_class = class_name

    # Return None to let pytest handle the actual test run
    return None


def pytest_runtest_logreport(report):
    """
    Hook to customize the appearance of test results.
    """
    if report.when == "call":
        if _current_class is None:
            return
        if report.outcome == "passed":
            print(f"    ✓ {report.nodeid.split('::')[-1]}")
        elif report.outcome == "failed":
            print(f"    ✗ {report.nodeid.split('::')[-1]}")
        elif report.outcome == "skipped":
            print(f"    ○ {report.nodeid.split('::')[-1]}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Add custom summary information at the end of test session."""
    if terminalreporter.stats.get('passed', None):
        terminalreporter.write_sep("=", "ls_scatter Test Summary", bold=True)

        counts = {marker: 0 for marker in CATEGORIES.values()}
        for report in terminalreporter.stats.get('passed', []):
            keywords = getattr(report, 'keywords', {})
            for marker in counts:
                if marker in keywords:
                    counts[marker] += 1

        for marker, count in counts.items():
            terminalreporter.write_line(f"{marker.title()} Tests: {count} passed")

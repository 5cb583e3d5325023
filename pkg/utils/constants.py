"""
Constants used throughout ls_scatter.
This file centralizes numerical defaults and tolerances to make them easier to maintain.
"""

# ------------------------------
# Tool identity
# ------------------------------

TOOL_NAME = "ls_scatter"
TOOL_VERSION = "0.1.0"

# ------------------------------
# Potential Constants
# ------------------------------

# Decaying potentials are cut where |V| < TRUNCATION_FACTOR * |g|
TRUNCATION_FACTOR = 1e-10

# Exponent offset δ in the |V| |r|^(3+δ) decay monitor
DEFAULT_DECAY_DELTA = 1.0

POTENTIAL_KINDS = ("gaussian", "yukawa", "square_well", "tabulated_radial", "gaussian_off_center")

# ------------------------------
# Grid Constants
# ------------------------------

DEFAULT_N_R = 24
DEFAULT_N_THETA = 12
DEFAULT_N_PHI = 24
DEFAULT_R_MAX = 6.0

# Row block size for kernel assembly and far-field sums
KERNEL_BLOCK_ROWS = 512

# ------------------------------
# Solver Constants
# ------------------------------

# I+K is flagged exceptional when sigma_min < EXCEPTIONAL_RATIO * sigma_max
EXCEPTIONAL_RATIO = 1e-8

# Above this many unknowns sigma_min/sigma_max come from ARPACK instead of a dense SVD
DENSE_SVD_LIMIT = 2000

# Accept a refined bound-state minimum when sigma_min / sigma_max falls below this
BOUND_STATE_ACCEPT_RATIO = 1e-6

# ------------------------------
# Radial Solver Constants
# ------------------------------

DEFAULT_L_MAX = 12
L_MAX_CEILING = 80
TAIL_TOLERANCE = 1e-6
# Numerov step h = min(a / STEPS_PER_RANGE, wavelength / STEPS_PER_WAVELENGTH)
STEPS_PER_RANGE = 200
STEPS_PER_WAVELENGTH = 50
MATCH_WAVELENGTHS = 2.0

# ------------------------------
# Verification Thresholds
# ------------------------------

RECONSTRUCTION_TOLERANCE = 1e-10
PARSEVAL_TOLERANCE = 1e-10
UNITARITY_TOLERANCE = 1e-3
CORRESPONDENCE_TOLERANCE = 1e-2
CORRESPONDENCE_L_MAX = 4
CROSS_SECTION_RATIO_TOLERANCE = 1e-2
PARTIAL_WAVE_ROUTE_TOLERANCE = 1e-8
FARFIELD_RADII = (20.0, 40.0, 80.0)

# ------------------------------
# Environment
# ------------------------------

THREADS_ENV_VAR = "LS_SCATTER_THREADS"

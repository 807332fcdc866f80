PROGRAM_NAME = "fwlp"

DEFAULT_REFRESH_PERIOD = 1000
DRIFT_TOLERANCE = 1e-8
DEFAULT_TOL = 1e-4
DEFAULT_MAX_ITERS = 10_000
DEFAULT_TRACE_EVERY = 1000

BRUTE_FORCE_MAX_N = 10
KKT_TOLERANCE = 1e-12

# Screening wakes columns early by this much to absorb rounding in d-values.
WAKE_RELATIVE_SLACK = 1e-9
WAKE_ABSOLUTE_SLACK = 1e-12

GENERATOR_RETRY_LIMIT = 50
GENERATOR_CONDITION_LIMIT = 1e10

EXIT_CONVERGED = 0
EXIT_INPUT_ERROR = 1
EXIT_BUDGET = 2

TRACE_HEADER = (
    "k", "primal_infeas", "dual_infeas", "gap", "U", "delta", "epsilon",
    "recursion_residual", "M", "touch_count", "wall_time_ns",
)

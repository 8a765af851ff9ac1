DEFAULT_D_MAX = 10**6
NORMALIZATION_TOL = 1e-12
LOG_UNDERFLOW_FLOOR = -650.0

FORWARD_WARN_TOL = 1e-9
FORWARD_ERROR_TOL = 1e-6
ROUNDTRIP_TOL = 1e-10
RATE_TOL = 1e-3

HEAVY_TAIL_RATIO = 10.0

SELF_LOOP_RETRIES = 16
REBUILD_INTERVAL = 2**20
RANDOM_BATCH = 65536
INITIAL_CAPACITY = 64

MIN_FIT_POINTS = 5
SPIKE_WINDOW = 5
SPIKE_TOLERANCE = 2.0

FAMILIES = ["chung_lu", "power_law", "geometric", "poisson", "broken_power_law"]

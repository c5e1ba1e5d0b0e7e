"""Default global variables for rankset."""

MIN_SIZE = 2
MAX_SIZE = 8

# Grounding distributes a conjunct into CNF only below this many literals.
CLAUSE_BUDGET = 10 ** 6

SEED = 0
TIME_BUDGET = None
MEMORY_CAP_MIB = 4096
RESTART_FIRST = 100
RESTART_FACTOR = 1.5
VAR_DECAY = 0.95
CLAUSE_DECAY = 0.999
RANDOM_FREQ = 0.0
LEARNT_FACTOR = 3

SOLVER = 'builtin'
SOLVER_ENV = 'RANKSET_SOLVER'

BATCH_SIZE = 16
SWITCH_EVERY = 32
WORKERS = 1

CHECKPOINT_VERSION = 1
RESULTS_VERSION = 1

EXIT_ERROR = 1
EXIT_SAT = 0
EXIT_UNSAT = 20
EXIT_UNKNOWN = 30
EXIT_USAGE = 64

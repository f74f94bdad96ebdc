# config.py

# --- GLOBAL SETTINGS ---

# Seed for every random choice (solution-space sampling, Munn word sampling).
# The same seed and input always give the same report.
DEFAULT_SEED = 0

# Default folder for reports written with --save
# Reports are saved as timestamped JSON files inside this directory
DEFAULT_REPORT_PATH = "~/Documents/amenability_reports"

# Number of worker processes used by the `corpus` command
# Set to 1 (or pass --sequential) to run the battery in-process
DEFAULT_WORKERS = 2

# Schema tag written into every report
REPORT_SCHEMA = "amenability-workbench/1"

# --- SIZE GUARDS ---

# Largest semigroup accepted for validation (Cayley table checks are O(n^3))
MAX_VALIDATION_SIZE = 250

# Largest semigroup for algebra-level analysis (J, congruence, quotient group)
MAX_ALGEBRA_SIZE = 40

# Largest base dimension for tensor-level work (ideal I, diagonals, cohomology)
# The tensor square has MAX_TENSOR_SIZE**2 coordinates
MAX_TENSOR_SIZE = 12

# Hard caps: --max-size may not exceed these unless --force is given
HARD_VALIDATION_CAP = 250
HARD_TENSOR_CAP = 12

# Largest degree for the symmetric inverse monoid constructor (|I_4| = 209)
MAX_SYMMETRIC_DEGREE = 4

# --- ADVANCED SETTINGS ---

# Random points drawn from a diagonal solution space and re-verified
SOLUTION_SAMPLES = 20

# Munn tree property sampling: number of word triples and maximal word length
MUNN_SAMPLE_TRIPLES = 100
MUNN_SAMPLE_WORD_LENGTH = 6

# Seconds a corpus worker waits on an empty queue before checking the stop event
# (shorter once the stop event has been set)
WORKER_TIMEOUT_S = 1.0

# Largest base dimension n*n*|G| accepted by the matrix-example construction
# M_3 over the truncated-addition algebra on {0,1,2} needs 27
MAX_MATRIX_DIM = 32

PACKAGE_NAME = "hecke_workbench"

ROOT_DATUM_G2 = "G2"
ROOT_DATUM_A1 = "A1"
ROOT_DATUM_A2 = "A2"
ROOT_DATUM_PRESETS = (ROOT_DATUM_G2, ROOT_DATUM_A1, ROOT_DATUM_A2)

LENGTH_SHORT = "short"
LENGTH_LONG = "long"

PARAMETER_PREFIX = "q"

VERDICT_FINITE = "Finite"
VERDICT_INFINITE = "Infinite"
VERDICT_UNKNOWN = "Unknown"

COMMAND_RELATIONS = "relations"
COMMAND_CLASSIFY = "classify"
COMMAND_COUNT_SIMPLES = "count-simples"
COMMAND_ORBITS = "orbits"
COMMAND_FIBERS = "fibers"
COMMAND_TABLES = "tables"
COMMANDS = (
    COMMAND_RELATIONS,
    COMMAND_CLASSIFY,
    COMMAND_COUNT_SIMPLES,
    COMMAND_ORBITS,
    COMMAND_FIBERS,
    COMMAND_TABLES,
)

EXIT_SUCCESS = 0
EXIT_USAGE_ERROR = 1
EXIT_MISMATCH = 2

CHARACTER_PRESETS = ("example1", "example2", "trivial", "generic")

CHARACTERISTIC = 3

# Roots of the Borel subgroup B in (alpha, beta) coordinates; their lines span V^-.
NEGATIVE_ROOTS = ((1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2))
SHORT_NEGATIVE_ROOTS = ((1, 0), (1, 1), (2, 1))

ZERO_LINE_SHORT = "h_s"
ZERO_LINE_LONG = "h_l"

# (gamma, source, exponent, coefficient, target):
#   x_gamma(t) v_source = v_source + coefficient * t**exponent * v_target
# Every pair of a negative root and a negative-weight line not listed acts trivially.
CHEVALLEY_FORMULAS = (
    ((0, 1), (1, 0), 1, 1, (1, 1)),
    ((1, 1), (1, 0), 1, -1, (2, 1)),
    ((1, 0), (1, 1), 1, 1, (2, 1)),
    ((1, 0), (0, 1), 3, -1, (3, 1)),
    ((3, 1), (0, 1), 1, -1, (3, 2)),
    ((0, 1), (3, 1), 1, 1, (3, 2)),
)

# (representative as root labels, dim of the stabilizer in G, order of the component group)
EXOTIC_ORBITS = (
    ((), 14, 1),
    (("a",), 8, 1),
    (("b",), 8, 1),
    (("ab", "b"), 6, 1),
    (("2ab", "b"), 4, 2),
    (("a", "b"), 2, 1),
)

# Root-group factors printed for the unipotent stabilizer of v_{2a+b} + v_b.
PUBLISHED_STABILIZER_FACTORS = ("b", "ab", "2ab", "3ab")
PUBLISHED_STABILIZER_REPRESENTATIVE = ("2ab", "b")

# Values (alpha(t0), beta(t0)) of the torus element lifting the non-trivial component.
COMPONENT_LIFT = (-1, 1)

# Representatives printed for the fixed space of the first worked example.
EXAMPLE1_REPRESENTATIVES = ((), ("3ab",), ("2ab",), ("2ab", "3ab"), ("ab", "3ab"))

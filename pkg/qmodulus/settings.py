"""
Default settings for qmodulus.

Values are module-level defaults. Suites and the command-line runner read
them through get_setting(), so a parsed config file can override any of
them by name without touching this module.
"""

# Number of known coefficient slots above the valuation of a freshly built
# Laurent series.
LAURENT_PRECISION = 64

# Largest supported truncation length of Witt vectors.
MAX_WITT_LENGTH = 4

# Largest supported degree k of F_q over F_p, q = p^k.
MAX_EXTENSION_DEGREE = 4

# Conway polynomials, dense coefficient lists from the leading term down
# (the layout used by sympy.polys.galoistools). The root of each entry is
# a primitive element of F_{p^k}.
CONWAY_POLYNOMIALS = {
    (2, 1): [1, 1],
    (2, 2): [1, 1, 1],
    (2, 3): [1, 0, 1, 1],
    (2, 4): [1, 0, 0, 1, 1],
    (3, 1): [1, 1],
    (3, 2): [1, 2, 2],
    (3, 3): [1, 0, 2, 1],
    (3, 4): [1, 2, 0, 0, 2],
    (5, 1): [1, 3],
    (5, 2): [1, 4, 2],
    (5, 3): [1, 0, 3, 3],
    (5, 4): [1, 0, 4, 4, 2],
    (7, 1): [1, 4],
    (7, 2): [1, 6, 3],
    (7, 3): [1, 6, 0, 4],
    (7, 4): [1, 0, 5, 4, 3],
}

DEFAULT_SEED = 20240601

# W_n(F_p) arithmetic is cross-checked against the universal polynomials
# when their top degree p^(n-1) is at most this.
WITT_POLYNOMIAL_CHECK_DEGREE = 9

# Side length of the brute-force character box used by the cohomology
# oracle suite.
H1_BRUTE_FORCE_BOX = 12

DEFAULT_GRID = {
    "a": ["1/2", "1", "3/2", "2", "7/3"],
    "b": ["0", "1/2", "1", "5/2"],
    "q": [0, 1, 2],
    "p": [2, 3],
    "n": [1, 2, 3],
    "c": ["1/3", "1/2", "1", "3/2"],
    "trace_primes": [3, 5],
    "trace_degrees": [2, 3, 4],
    "trace_lengths": [1, 2],
    "witt_pairs": [
        [2, 1],
        [2, 2],
        [2, 3],
        [2, 4],
        [3, 1],
        [3, 2],
        [3, 3],
        [3, 4],
        [5, 1],
        [5, 2],
        [5, 3],
        [5, 4],
    ],
}

DEFAULT_SAMPLES = {
    "construction-m": 500,
    "pullback-identities": 200,
    "rounding-inequality": 1000,
    "traces-omega": 300,
    "traces-witt": 300,
    "omega-max": 300,
    "witt-identities": 200,
    "monomial-filtration": 200,
    "oracle-cohomology": 100,
}

RNG_NAME = "python-random-mt19937"


def get_setting(name, overrides=None):
    """
    Look up a setting, preferring an override when one is given.

    Args:
        name (str): Upper-case setting name, e.g. ``"LAURENT_PRECISION"``.
        overrides (Mapping | None): Values parsed from a config file.

    Returns:
        The override if present, otherwise the module default.

    Raises:
        KeyError: If the setting does not exist.
    """
    if overrides and name in overrides:
        return overrides[name]
    try:
        return globals()[name]
    except KeyError:
        raise KeyError(f"Unknown qmodulus setting '{name}'") from None

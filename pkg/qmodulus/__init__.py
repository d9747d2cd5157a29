"""
qmodulus - exact arithmetic for cohomology of Q-modulus pairs.

qmodulus computes, with rationals and finite fields only, the pieces of the
theory of Q-modulus pairs that can be checked instance by instance:

- Q-divisors on two-dimensional fans, star subdivisions and fan maps
- Character-graded Čech cohomology of equivariant sheaves
- Logarithmic differential forms and their filtration over K((t))
- Truncated Witt vectors with the Brylinski-Kato filtration
- Modulus sheaves MΩ^q and MW_n and the blow-up invariance checks

Quick Start:
    >>> from qmodulus import verify_blowup_omega
    >>> verify_blowup_omega("3/2", "1/2", 0).passed
    True

From the shell the same check runs as
``qmodulus verify blowup-omega --a 3/2 --b 1/2 --q 0``.
"""

import importlib

__version__ = "0.1.0"
__author__ = "qmodulus developers"
__email__ = ""
__license__ = "MIT"

# Public name -> defining submodule; submodules load on first access.
_EXPORTS = {
    "QModulusError": "exceptions",
    "PreconditionError": "exceptions",
    "ConfigError": "exceptions",
    "finite_field": "fields",
    "RationalFunctionField": "fields",
    "LaurentField": "laurent",
    "LaurentSeries": "laurent",
    "Fan2D": "toric",
    "QDivisor": "toric",
    "ToricModulusPair": "toric",
    "standard_fan": "toric",
    "star_subdivision": "toric",
    "pullback_qdivisor": "toric",
    "divisor_rounding": "toric",
    "EquivariantSheaf": "cohomology",
    "cech_h": "cohomology",
    "divisorial_sheaf": "cohomology",
    "log_differential_sheaf": "cohomology",
    "WittRing": "witt",
    "WittVector": "witt",
    "bk_member": "witt",
    "witt_kummer_trace": "witt",
    "LogForm": "logforms",
    "KummerExtension": "logforms",
    "log_fil_member": "logforms",
    "form_kummer_trace": "logforms",
    "omega_max_check": "logforms",
    "SheafKind": "modulus",
    "construction_m": "modulus",
    "hirzebruch_pair": "modulus",
    "modulus_cohomology": "modulus",
    "monomial_filtration_check": "modulus",
    "verify_blowup_omega": "modulus",
    "verify_blowup_witt": "modulus",
    "verify_hirzebruch": "modulus",
    "VerificationReport": "reports",
    "emit_table": "reports",
    "SuiteConfig": "suites",
    "run_suite": "suites",
}


def __getattr__(name):
    """Lazy import of the public API."""
    module = _EXPORTS.get(name)
    if module is None:
        raise AttributeError(f"module '{__name__}' has no attribute '{name}'")
    return getattr(importlib.import_module(f".{module}", __name__), name)


__all__ = sorted(_EXPORTS)

"""Closed-form root finding for real-coefficient quartics.

The solver depresses the quartic, extracts the largest resolvent-cubic root
through branch-selected closed forms (trigonometric when all resolvent roots
are real, Cardano otherwise), splits into two quadratics, and Newton-polishes
the result.  A bisection oracle with no shared code provides independent
verification, and a CLI handles batch files and benchmarks.

The hot kernel ships as a compiled extension with a pure-Python fallback;
``backend_name()`` reports which one is active.
"""

from . import backend as _backend
from .cubic import (
    CardanoIntermediates,
    MonicCubic,
    cardano_intermediates,
    cardano_real_root,
    solve_cubic,
)
from .oracle import Bracket, oracle_real_roots, oracle_resolvent_root
from .polycore import (
    Classification,
    DomainError,
    LowerDegreeProblem,
    MonicQuartic,
    RawCoefficients,
    RootSet,
    ZeroPolynomialError,
    evaluate,
    normalize,
    residual,
)
from .quartic import (
    DepressedQuartic,
    ResolventBranch,
    ResolventData,
    ShiftedCoeffs,
    SolveOptions,
    SolveReport,
    assemble_roots,
    delta_invariants,
    depress,
    explicit_roots_monolithic,
    polish,
    resolvent_z,
    shifted_coeffs,
    solve_biquadratic,
    solve_quartic,
)

__version__ = "0.1.0"

__all__ = [
    "Bracket",
    "CardanoIntermediates",
    "Classification",
    "DepressedQuartic",
    "DomainError",
    "LowerDegreeProblem",
    "MonicCubic",
    "MonicQuartic",
    "RawCoefficients",
    "ResolventBranch",
    "ResolventData",
    "RootSet",
    "ShiftedCoeffs",
    "SolveOptions",
    "SolveReport",
    "ZeroPolynomialError",
    "assemble_roots",
    "backend_name",
    "cardano_intermediates",
    "cardano_real_root",
    "delta_invariants",
    "depress",
    "evaluate",
    "explicit_roots_monolithic",
    "normalize",
    "oracle_real_roots",
    "oracle_resolvent_root",
    "polish",
    "residual",
    "resolvent_z",
    "shifted_coeffs",
    "solve_biquadratic",
    "solve_cubic",
    "solve_quartic",
]


def backend_name() -> str:
    """Name of the active kernel backend ('compiled' or 'python')."""
    return _backend.active_name()

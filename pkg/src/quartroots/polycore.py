"""Coefficient containers, normalization and residuals for degree <= 4 polynomials.

Everything in this module is immutable and side-effect free; instances can be
shared freely across threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

__all__ = [
    "DomainError",
    "ZeroPolynomialError",
    "RawCoefficients",
    "MonicQuartic",
    "LowerDegreeProblem",
    "Classification",
    "RootSet",
    "normalize",
    "evaluate",
    "residual",
]

#: Leading coefficients below this fraction of the trailing-coefficient scale
#: degrade the problem to a lower degree instead of producing huge monic
#: coefficients.
DEFAULT_EPS_LEAD = 1e-12


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation (NaN/Inf, bad branch)."""


class ZeroPolynomialError(DomainError):
    """All coefficients are (effectively) zero: every x is a root."""


def _require_finite(**named: float) -> None:
    for name, value in named.items():
        if not math.isfinite(value):
            raise DomainError(f"non-finite coefficient {name}={value!r}")


@dataclass(frozen=True)
class RawCoefficients:
    """Coefficients of e4*x^4 + e3*x^3 + e2*x^2 + e1*x + e0, highest degree first."""

    e4: float
    e3: float
    e2: float
    e1: float
    e0: float

    def __post_init__(self) -> None:
        _require_finite(e4=self.e4, e3=self.e3, e2=self.e2, e1=self.e1, e0=self.e0)

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.e4, self.e3, self.e2, self.e1, self.e0)


@dataclass(frozen=True)
class MonicQuartic:
    """Coefficients of x^4 + a*x^3 + b*x^2 + c*x + d."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        _require_finite(a=self.a, b=self.b, c=self.c, d=self.d)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class LowerDegreeProblem:
    """A degree <= 3 problem left over after normalization.

    ``coefficients`` are the monic coefficients below the leading 1, highest
    degree first; for ``degree == 0`` the tuple is empty (a non-zero constant,
    which has no roots).
    """

    degree: int
    coefficients: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.degree not in (0, 1, 2, 3):
            raise DomainError(f"unsupported degree {self.degree}")
        if len(self.coefficients) != self.degree:
            raise DomainError("coefficient count must equal degree")


class Classification(enum.Enum):
    """Root pattern of a real-coefficient quartic."""

    FOUR_REAL = "four_real"
    TWO_REAL_ONE_PAIR = "two_real_one_pair"
    TWO_COMPLEX_PAIRS = "two_complex_pairs"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class RootSet:
    """Roots of a quartic: sorted real roots with multiplicity plus conjugate pairs.

    ``real_roots`` is a tuple of ``(value, multiplicity)`` sorted ascending by
    value; ``complex_pairs`` is a tuple of ``(re, im)`` with ``im > 0``, each
    describing the pair ``re +/- im*i``.  Multiplicities plus twice the pair
    count always sum to 4.
    """

    classification: Classification
    real_roots: tuple[tuple[float, int], ...]
    complex_pairs: tuple[tuple[float, float], ...]
    degenerate_kind: str | None = field(default=None)

    def __post_init__(self) -> None:
        total = sum(m for _, m in self.real_roots) + 2 * len(self.complex_pairs)
        if total != 4:
            raise DomainError(f"root multiplicities sum to {total}, expected 4")
        values = [v for v, _ in self.real_roots]
        if values != sorted(values):
            raise DomainError("real roots must be sorted ascending")
        if any(m < 1 for _, m in self.real_roots):
            raise DomainError("multiplicities must be >= 1")
        if any(im <= 0.0 for _, im in self.complex_pairs):
            raise DomainError("complex pairs must store im > 0")

    @property
    def real_count(self) -> int:
        """Number of real roots counted with multiplicity."""
        return sum(m for _, m in self.real_roots)

    def real_values(self) -> list[float]:
        """Real roots expanded by multiplicity, ascending."""
        return [v for v, m in self.real_roots for _ in range(m)]


def make_root_set(
    reals: list[tuple[float, int]], pairs: list[tuple[float, float]]
) -> RootSet:
    """Classify and build a RootSet from raw (value, multiplicity) data."""
    reals = sorted(reals)
    n_real = sum(m for _, m in reals)
    degenerate = any(m > 1 for _, m in reals) or len(pairs) != len(set(pairs))
    if degenerate:
        kind = "+".join(str(m) for _, m in reals) + "+cc" * len(pairs)
        classification = Classification.DEGENERATE
        return RootSet(classification, tuple(reals), tuple(pairs), kind.lstrip("+"))
    if n_real == 4:
        classification = Classification.FOUR_REAL
    elif n_real == 2:
        classification = Classification.TWO_REAL_ONE_PAIR
    else:
        classification = Classification.TWO_COMPLEX_PAIRS
    return RootSet(classification, tuple(reals), tuple(pairs))


def normalize(
    raw: RawCoefficients, eps_lead: float = DEFAULT_EPS_LEAD
) -> MonicQuartic | LowerDegreeProblem:
    """Reduce raw coefficients to a monic quartic, degrading degree when the
    leading coefficient is negligible next to the trailing ones.

    Raises ZeroPolynomialError when every coefficient is within the zero band.
    """
    if eps_lead < 0.0:
        raise DomainError("eps_lead must be >= 0")
    coeffs = list(raw.as_tuple())
    while coeffs:
        lead, rest = coeffs[0], coeffs[1:]
        scale = max([abs(x) for x in rest] + [1.0])
        if abs(lead) > eps_lead * scale:
            monic = tuple(x / lead for x in rest)
            if len(monic) == 4:
                return MonicQuartic(*monic)
            return LowerDegreeProblem(len(monic), monic)
        coeffs = rest
    raise ZeroPolynomialError("identically zero polynomial")


def evaluate(poly: RawCoefficients | MonicQuartic, x: float) -> float:
    """Evaluate the polynomial at ``x`` by Horner's rule."""
    if not math.isfinite(x):
        raise DomainError(f"non-finite evaluation point {x!r}")
    if isinstance(poly, MonicQuartic):
        a, b, c, d = poly.as_tuple()
        return (((x + a) * x + b) * x + c) * x + d
    e4, e3, e2, e1, e0 = poly.as_tuple()
    return (((e4 * x + e3) * x + e2) * x + e1) * x + e0


def residual(poly: MonicQuartic, root: float) -> float:
    """Scale-aware residual |P(root)| / (1 + |root|^4).

    The quartic term dominates conditioning at large |x|, so this makes
    residuals comparable across root magnitudes.
    """
    value = evaluate(poly, root)
    r2 = root * root
    return abs(value) / (1.0 + r2 * r2)


def pair_residual(poly: MonicQuartic, re: float, im: float) -> float:
    """Scale-aware residual of P at the complex point re + im*i."""
    z = complex(re, im)
    a, b, c, d = poly.as_tuple()
    value = (((z + a) * z + b) * z + c) * z + d
    mag2 = re * re + im * im
    return abs(value) / (1.0 + mag2 * mag2)

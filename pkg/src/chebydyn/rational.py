"""Rational operators of the Chebyshev-Halley family on quadratics.

The family acting on p(z) = z^2 + c is a rational map G_p of degree <= 4;
conjugating by the Mobius map that sends the roots of p to 0 and infinity
turns it into the one-parameter operator

    O(z) = z^3 (z - 2(alpha - 1)) / (1 - 2(alpha - 1) z),

which is what the rest of the package iterates.  Coefficients are stored
ascending (index = power) and are never silently reduced: degenerate
parameter values keep their unreduced common factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exceptions import (
    DegenerateQuadratic,
    DerivativeVanishes,
    HalleyDenominatorVanishes,
    IndeterminateValue,
    PoleDerivative,
)
from .sphere import INFINITY, SpherePoint, as_sphere_point, principal_sqrt

#: absolute floor for detecting exact degeneracies (0/0 evaluations)
INDETERMINATE_TOL = 1e-14


def polyval(coeffs, z: complex) -> complex:
    """Evaluate an ascending-coefficient polynomial by Horner's rule."""
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def polyder(coeffs) -> tuple[complex, ...]:
    """Ascending coefficients of the derivative."""
    return tuple(k * c for k, c in enumerate(coeffs) if k >= 1)


def _trim(coeffs) -> tuple[complex, ...]:
    last = 0
    for k, c in enumerate(coeffs):
        if c != 0:
            last = k
    return tuple(coeffs[: last + 1])


def _coeff_scale(coeffs) -> float:
    return max(1.0, max(abs(c) for c in coeffs))


@dataclass(frozen=True)
class PolynomialSpec:
    """The quadratic z^2 + c whose roots the family hunts; c must be nonzero."""

    c: complex

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))
        if not (math.isfinite(self.c.real) and math.isfinite(self.c.imag)):
            raise ValueError("c must be finite")
        if self.c == 0:
            raise DegenerateQuadratic("z^2 + c needs c != 0 (distinct roots)")

    @property
    def roots(self) -> tuple[complex, complex]:
        r = 1j * principal_sqrt(self.c)
        return r, -r


@dataclass(frozen=True)
class RationalMap:
    """A degree <= 4 rational self-map of the sphere in coefficient form."""

    numer: tuple[complex, ...]
    denom: tuple[complex, ...]
    alpha: complex | None = None
    family: bool = field(default=False, compare=False)

    def __post_init__(self):
        numer = tuple(complex(c) for c in self.numer)
        denom = tuple(complex(c) for c in self.denom)
        if all(c == 0 for c in numer) and all(c == 0 for c in denom):
            raise ValueError("numerator and denominator cannot both be zero")
        if len(numer) > 5 or len(denom) > 5:
            raise ValueError("degree above 4 is not supported")
        object.__setattr__(self, "numer", numer)
        object.__setattr__(self, "denom", denom)

    # -- evaluation -----------------------------------------------------

    def _padded_reversed(self) -> tuple[tuple[complex, ...], tuple[complex, ...]]:
        n, d = _trim(self.numer), _trim(self.denom)
        width = max(len(n), len(d))
        n = n + (0j,) * (width - len(n))
        d = d + (0j,) * (width - len(d))
        return tuple(reversed(n)), tuple(reversed(d))

    def reciprocal_chart(self) -> "RationalMap":
        """The map read in the chart w = 1/z on both sides: w -> 1/f(1/w)."""
        rev_n, rev_d = self._padded_reversed()
        return RationalMap(rev_d, rev_n, self.alpha)

    def eval(self, z) -> SpherePoint:
        """Sphere-safe evaluation: poles go to infinity, infinity through
        the reciprocal chart; a 0/0 evaluation raises IndeterminateValue."""
        z = as_sphere_point(z)
        if z.infinite:
            rev_n, rev_d = self._padded_reversed()
            return _eval_fraction(rev_n, rev_d, 0j)
        return _eval_fraction(self.numer, self.denom, z.value)

    def __call__(self, z) -> SpherePoint:
        return self.eval(z)

    def derivative(self, z) -> complex:
        """f'(z) by the quotient rule; at infinity, the multiplier in the
        chart w = 1/z.  Raises PoleDerivative exactly at a pole."""
        z = as_sphere_point(z)
        if z.infinite:
            rev_n, rev_d = self._padded_reversed()
            # chart map is w -> rev_d(w) / rev_n(w); its fixed point is w = 0
            return _quotient_rule(rev_d, rev_n, 0j)
        return _quotient_rule(self.numer, self.denom, z.value)

    def pole_tolerance(self, z: complex) -> float:
        return INDETERMINATE_TOL * _coeff_scale(self.denom) * max(1.0, abs(z)) ** 4


def _eval_fraction(numer, denom, z: complex) -> SpherePoint:
    n = polyval(numer, z)
    d = polyval(denom, z)
    scale = max(1.0, abs(z)) ** max(len(numer), len(denom))
    if abs(n) < INDETERMINATE_TOL * _coeff_scale(numer) * scale and abs(
        d
    ) < INDETERMINATE_TOL * _coeff_scale(denom) * scale:
        raise IndeterminateValue(f"0/0 at z={z}: unreduced common root")
    if d == 0:
        return INFINITY
    q = n / d
    if math.isfinite(q.real) and math.isfinite(q.imag):
        return SpherePoint(q)
    return INFINITY


def _quotient_rule(numer, denom, z: complex) -> complex:
    d = polyval(denom, z)
    scale = max(1.0, abs(z)) ** max(len(numer), len(denom))
    if abs(d) < INDETERMINATE_TOL * _coeff_scale(denom) * scale:
        raise PoleDerivative(f"derivative at a pole (z={z})")
    n = polyval(numer, z)
    nd = polyval(polyder(numer), z)
    dd = polyval(polyder(denom), z)
    return (nd * d - n * dd) / (d * d)


# -- constructors -------------------------------------------------------


def build_operator(alpha: complex) -> RationalMap:
    """The conjugated one-parameter operator
    z^3 (z - 2(alpha-1)) / (1 - 2(alpha-1) z).

    Degenerate cancellations are kept unreduced (alpha = 1 is stored as
    z^3 * z / 1), so the coefficients are an exact function of alpha.
    """
    alpha = complex(alpha)
    a = 2 * (alpha - 1)
    return RationalMap(
        numer=(0j, 0j, 0j, -a, 1 + 0j),
        denom=(1 + 0j, -a, 0j, 0j, 0j),
        alpha=alpha,
        family=True,
    )


def build_general_operator(alpha: complex, poly: PolynomialSpec) -> RationalMap:
    """The family operator on z^2 + c before conjugation:

    (z^4 (2a-3) + 6 c z^2 + c^2 (1-2a)) / (4 z (z^2 (a-2) + a c)).
    """
    alpha = complex(alpha)
    c = poly.c
    numer = (c * c * (1 - 2 * alpha), 0j, 6 * c, 0j, 2 * alpha - 3 + 0j)
    denom = (0j, 4 * alpha * c, 0j, 4 * (alpha - 2), 0j)
    return RationalMap(numer, denom, alpha=alpha)


def conjugacy(poly: PolynomialSpec, z, direction: str = "forward") -> SpherePoint:
    """The Mobius change of coordinates h(z) = (z - i sqrt(c)) / (z + i sqrt(c))
    sending the roots of z^2 + c to 0 and infinity (and infinity to 1).

    Uses the principal branch for sqrt(c); "inverse" applies h^-1.
    """
    if direction not in ("forward", "inverse"):
        raise ValueError(f"direction must be forward or inverse, not {direction!r}")
    r = 1j * principal_sqrt(poly.c)
    z = as_sphere_point(z)
    if direction == "forward":
        if z.infinite:
            return SpherePoint(1 + 0j)
        if z.value == -r:
            return INFINITY
        return SpherePoint((z.value - r) / (z.value + r))
    # inverse: z = r (1 + w) / (1 - w)
    if z.infinite:
        return SpherePoint(-r)
    if z.value == 1:
        return INFINITY
    return SpherePoint(r * (1 + z.value) / (1 - z.value))


def halley_step(alpha: complex, poly_coeffs, z: complex) -> complex:
    """One step of the Chebyshev-Halley iteration on an arbitrary polynomial
    f given by ascending coefficients (degree <= 8):

        z - (1 + L / (2 (1 - alpha L))) * f / f'   with   L = f f'' / f'^2.
    """
    alpha = complex(alpha)
    z = complex(z)
    coeffs = tuple(complex(c) for c in poly_coeffs)
    if len(coeffs) > 9:
        raise ValueError("polynomial degree above 8 is not supported")
    d1 = polyder(coeffs)
    d2 = polyder(d1)
    f = polyval(coeffs, z)
    fp = polyval(d1, z)
    scale = _coeff_scale(coeffs) * max(1.0, abs(z)) ** max(len(coeffs) - 1, 1)
    if abs(fp) < INDETERMINATE_TOL * scale:
        raise DerivativeVanishes(f"f'(z) = 0 within tolerance at z={z}")
    fpp = polyval(d2, z)
    lf = f * fpp / (fp * fp)
    den = 1 - alpha * lf
    if abs(den) < INDETERMINATE_TOL:
        raise HalleyDenominatorVanishes(f"1 - alpha L_f = 0 within tolerance at z={z}")
    return z - (1 + 0.5 * lf / den) * f / fp

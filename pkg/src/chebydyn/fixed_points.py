"""Closed-form fixed points, critical points and their stability.

Besides the superattracting pair {0, infinity}, the conjugated operator
fixes z = 1 and the two roots s1, s2 of z^2 + (3 - 2 alpha) z + 1 = 0
(s1 s2 = 1).  The free critical points c1, c2 also satisfy c1 c2 = 1.
Stability follows the multiplier modulus alone.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .exceptions import IndeterminateValue, NotAFixedPoint, PoleDerivative
from .rational import RationalMap, build_operator
from .sphere import INFINITY, SpherePoint, as_sphere_point, chart_distance, principal_sqrt

#: below this multiplier modulus a fixed point counts as superattracting
TOL_ZERO = 1e-10
#: half-width of the parabolic band around modulus 1
TOL_PARABOLIC = 1e-9
#: discriminants below this merge fixed or critical points
MERGE_TOL = 1e-12
#: residual allowed when checking that a point is fixed
FIXED_RESIDUAL = 1e-9


class StabilityClass(enum.Enum):
    SUPERATTRACTING = "superattracting"
    ATTRACTING = "attracting"
    PARABOLIC = "parabolic"
    REPELLING = "repelling"

    @classmethod
    def from_modulus(cls, m: float) -> "StabilityClass":
        if m < TOL_ZERO:
            return cls.SUPERATTRACTING
        if abs(m - 1) <= TOL_PARABOLIC:
            return cls.PARABOLIC
        if m < 1:
            return cls.ATTRACTING
        return cls.REPELLING

    @property
    def is_repelling(self) -> bool:
        return self is StabilityClass.REPELLING


@dataclass(frozen=True)
class FixedPointInfo:
    location: SpherePoint
    multiplier: complex
    multiplicity: int
    stability: StabilityClass
    label: str  # zero | infinity | one | s1 | s2

    @property
    def modulus(self) -> float:
        return abs(self.multiplier)


@dataclass(frozen=True)
class CriticalSet:
    """0 and infinity plus the free critical points c1, c2 (|c1| <= |c2|)."""

    points: tuple[SpherePoint, ...]
    degenerate: bool

    @property
    def free(self) -> tuple[SpherePoint, ...]:
        return self.points[2:]


def _adaptive_sqrt(b: complex, disc: complex) -> complex:
    """sqrt(disc) oriented so that b + sqrt(disc) avoids cancellation."""
    s = principal_sqrt(disc)
    if (b.conjugate() * s).real < 0:
        s = -s
    return s


def strange_roots(alpha: complex) -> tuple[complex, complex]:
    """The roots of z^2 + (3 - 2 alpha) z + 1, paired as (s, 1/s) and ordered
    by modulus.  Sign-adaptive formula; do not call at a degenerate alpha."""
    b = 3 - 2 * alpha
    big = (-b - _adaptive_sqrt(b, b * b - 4)) / 2
    small = 1 / big
    if abs(small) > abs(big):
        small, big = big, small
    elif abs(small) == abs(big):
        # conjugate pair on the unit circle: order by (real, imag)
        if (big.real, big.imag) < (small.real, small.imag):
            small, big = big, small
    return small, big


def strange_discriminant(alpha: complex) -> complex:
    return 4 * alpha * alpha - 12 * alpha + 5


def _derivative_or_limit(op: RationalMap, z: SpherePoint) -> complex:
    """Quotient-rule derivative; at an unreduced common root (a merged point
    can sit exactly on it, e.g. z = -1 at alpha = 1/2) the evaluation away
    from the root cancels the factor, so central differences give the
    reduced map's derivative."""
    try:
        return op.derivative(z)
    except PoleDerivative:
        h = 1e-6
        return (op.eval(z.value + h).value - op.eval(z.value - h).value) / (2 * h)


def _fixed_info(op: RationalMap, z: SpherePoint, mult: int, label: str) -> FixedPointInfo:
    m = _derivative_or_limit(op, z)
    return FixedPointInfo(z, m, mult, StabilityClass.from_modulus(abs(m)), label)


def strange_fixed_points(alpha: complex) -> list[FixedPointInfo]:
    """z = 1, s1 and s2 with multiplicities.

    A vanishing discriminant merges the pair: alpha = 1/2 gives z = -1 with
    multiplicity 2, alpha = 5/2 gives z = 1 with multiplicity 3.  At
    alpha = 3/2 the written fixed point z = 1 is the unreduced common root
    of the operator (the reduced map -z^3 does not fix it), so it is left
    out there.
    """
    alpha = complex(alpha)
    op = build_operator(alpha)
    out: list[FixedPointInfo] = []
    spurious_one = abs(2 * alpha - 3) < MERGE_TOL
    if abs(strange_discriminant(alpha)) < MERGE_TOL:
        merged = alpha - 1.5  # the double root (2 alpha - 3) / 2
        if abs(merged - 1) < 1e-6:
            # alpha = 5/2: s1 = s2 = 1 merges with the fixed point z = 1
            out.append(_fixed_info(op, SpherePoint(1 + 0j), 3, "one"))
        else:
            out.append(_fixed_info(op, SpherePoint(1 + 0j), 1, "one"))
            out.append(_fixed_info(op, SpherePoint(merged), 2, "s1"))
        return out
    if not spurious_one:
        out.append(_fixed_info(op, SpherePoint(1 + 0j), 1, "one"))
    s1, s2 = strange_roots(alpha)
    out.append(_fixed_info(op, SpherePoint(s1), 1, "s1"))
    out.append(_fixed_info(op, SpherePoint(s2), 1, "s2"))
    return out


def critical_discriminant(alpha: complex) -> complex:
    return 4 * alpha**4 - 16 * alpha**3 + 19 * alpha**2 - 6 * alpha


def critical_points(alpha: complex) -> CriticalSet:
    """0, infinity, and the free critical points

        c = (3 - 4 alpha + 2 alpha^2 +- sqrt(disc)) / (3 (alpha - 1)),

    ordered so |c1| <= |c2|.  At alpha = 1 the pair degenerates to the limit
    {0, infinity} and the set is flagged degenerate, as it is whenever the
    discriminant vanishes and the pair merges on the unit circle.
    """
    alpha = complex(alpha)
    if abs(alpha - 1) < MERGE_TOL:
        return CriticalSet((SpherePoint(0j), INFINITY, SpherePoint(0j), INFINITY), True)
    b = 3 - 4 * alpha + 2 * alpha * alpha
    disc = critical_discriminant(alpha)
    big = (b + _adaptive_sqrt(b, disc)) / (3 * (alpha - 1))
    small = 1 / big
    if abs(small) > abs(big):
        small, big = big, small
    degenerate = abs(disc) < MERGE_TOL
    return CriticalSet(
        (SpherePoint(0j), INFINITY, SpherePoint(small), SpherePoint(big)), degenerate
    )


def multiplier_at(alpha: complex, point) -> complex:
    """The derivative of the operator at one of its fixed points, checked
    against the closed forms |m(1)| = |(4a-8)/(2a-3)| and |m(s_i)| = |6-2a|."""
    alpha = complex(alpha)
    op = build_operator(alpha)
    point = as_sphere_point(point)
    try:
        image = op.eval(point)
        residual = chart_distance(image, point)
    except IndeterminateValue:
        # merged point on the unreduced common root: check the limit value
        h = 1e-7
        limit = (op.eval(point.value + h).value + op.eval(point.value - h).value) / 2
        residual = abs(limit - point.value)
    if residual >= FIXED_RESIDUAL:
        raise NotAFixedPoint(f"{point} moves under the alpha={alpha} operator")
    try:
        m = op.derivative(point)
    except PoleDerivative:
        # point on the unreduced common root: the closed forms below assume
        # the unreduced operator, so report the limit multiplier unchecked
        return _derivative_or_limit(op, point)
    if not point.infinite:
        z = point.value
        if abs(z - 1) < 1e-6 and abs(2 * alpha - 3) > MERGE_TOL:
            expected = abs((4 * alpha - 8) / (2 * alpha - 3))
            assert abs(abs(m) - expected) < FIXED_RESIDUAL, (m, expected)
        elif abs(z * z + (3 - 2 * alpha) * z + 1) < 1e-6 * max(1.0, abs(alpha)):
            expected = abs(6 - 2 * alpha)
            assert abs(abs(m) - expected) < FIXED_RESIDUAL, (m, expected)
    return m


def stability_report(alpha: complex) -> list[FixedPointInfo]:
    """Full classification of {0, infinity, 1, s1, s2} at one alpha."""
    alpha = complex(alpha)
    op = build_operator(alpha)
    report = [
        _fixed_info(op, SpherePoint(0j), 1, "zero"),
        _fixed_info(op, INFINITY, 1, "infinity"),
    ]
    report.extend(strange_fixed_points(alpha))
    return report


def head_disk_predicate(alpha: complex) -> bool:
    """|alpha - 13/6| < 1/3: where z = 1 attracts."""
    return abs(alpha - 13 / 6) < 1 / 3


def body_disk_predicate(alpha: complex) -> bool:
    """|alpha - 3| < 1/2: where s1 and s2 attract."""
    return abs(alpha - 3) < 0.5


def pole_location(alpha: complex) -> SpherePoint:
    """The finite pole 1 / (2 (alpha - 1)); infinity when alpha = 1."""
    a = 2 * (complex(alpha) - 1)
    if a == 0:
        return INFINITY
    return SpherePoint(1 / a)

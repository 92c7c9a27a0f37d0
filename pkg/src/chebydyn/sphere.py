"""Points on the Riemann sphere with an explicit point at infinity.

Infinity is a tag, never a large float.  Large-modulus points are compared
and iterated through the reciprocal chart w = 1/z, so nothing here ever
overflows.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class SpherePoint:
    """A point of the extended complex plane."""

    value: complex = 0j
    infinite: bool = False

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        if self.infinite:
            object.__setattr__(self, "value", 0j)
        elif not (math.isfinite(self.value.real) and math.isfinite(self.value.imag)):
            raise ValueError(f"non-finite components in finite point: {self.value}")

    @classmethod
    def finite(cls, z: complex) -> "SpherePoint":
        return cls(complex(z))

    @property
    def is_zero(self) -> bool:
        return not self.infinite and self.value == 0

    def to_complex(self) -> complex:
        """The finite value; raises for the point at infinity."""
        if self.infinite:
            raise ValueError("point at infinity has no complex value")
        return self.value

    def reciprocal(self) -> "SpherePoint":
        if self.infinite:
            return SpherePoint(0j)
        if self.value == 0:
            return INFINITY
        return SpherePoint(1 / self.value)

    def chart_rep(self) -> tuple[complex, int]:
        """(coordinate, parity): parity 1 means the reciprocal chart.

        The returned coordinate always has modulus <= 1.
        """
        if self.infinite:
            return 0j, 1
        if abs(self.value) > 1:
            return 1 / self.value, 1
        return self.value, 0

    def __str__(self):
        return "inf" if self.infinite else format(self.value, "g")


INFINITY = SpherePoint(0j, True)


def as_sphere_point(z) -> SpherePoint:
    """Coerce a complex scalar (or SpherePoint) into a SpherePoint."""
    if isinstance(z, SpherePoint):
        return z
    z = complex(z)
    if math.isinf(z.real) or math.isinf(z.imag):
        return INFINITY
    return SpherePoint(z)


def from_chart(v: complex, parity: int) -> SpherePoint:
    """Inverse of :meth:`SpherePoint.chart_rep`."""
    if parity == 0:
        return SpherePoint(v)
    if v == 0:
        return INFINITY
    return SpherePoint(1 / v)


def chart_distance(a, b) -> float:
    """min over the two charts of the coordinate distance between a and b.

    Exactly |a - b| when both points sit in the same chart; infinity and 0
    are at distance inf from each other.
    """
    a = as_sphere_point(a)
    b = as_sphere_point(b)
    va, pa = a.chart_rep()
    vb, pb = b.chart_rep()
    return chart_distance_rep(va, pa, vb, pb)


def chart_distance_rep(va: complex, pa: int, vb: complex, pb: int) -> float:
    """Chart distance between two (coordinate, parity) representations."""
    if pa == pb:
        d1 = abs(va - vb)
        # the shared reciprocal chart may be closer only on the unit circle,
        # where both charts agree; still take the min for symmetry
        if va != 0 and vb != 0:
            d2 = abs(1 / va - 1 / vb)
            return min(d1, d2)
        return d1
    d1 = abs(va - 1 / vb) if vb != 0 else math.inf
    d2 = abs(1 / va - vb) if va != 0 else math.inf
    return min(d1, d2)


def principal_sqrt(z: complex) -> complex:
    """Principal branch square root (cut along the negative real axis)."""
    return cmath.sqrt(z)

"""Semantic exceptions raised by the dynamics engine."""


class ChebydynError(Exception):
    """Base class for all package errors."""


class IndeterminateValue(ChebydynError):
    """Numerator and denominator both vanish at the evaluation point."""


class PoleDerivative(ChebydynError):
    """Derivative requested exactly at a pole of the map."""


class DegenerateQuadratic(ChebydynError):
    """The quadratic z^2 + c has a double root (c = 0)."""


class DerivativeVanishes(ChebydynError):
    """f'(z) = 0 within tolerance, so the iteration step is undefined."""


class HalleyDenominatorVanishes(ChebydynError):
    """1 - alpha * L_f(z) = 0 within tolerance."""


class NotAFixedPoint(ChebydynError):
    """A multiplier was requested at a point the map does not fix."""


class OutOfAntennaRange(ChebydynError):
    """alpha is outside the real antenna segments [0, 1/2) and (3/2, 2)."""


class UnmappedTag(ChebydynError):
    """A raster tag has no palette entry."""

"""Higher-level verdicts: cat-set membership, boundary parametrizations,
antenna diagnostics and the table of closed-form special cases.

Membership in the cat set is decided by the standard numerical proxy, the
fates of the two free critical orbits; connectivity itself is not computed.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .exceptions import OutOfAntennaRange
from .fixed_points import (
    critical_points,
    multiplier_at,
    pole_location,
    strange_fixed_points,
    strange_roots,
)
from .orbits import IterationConfig, OrbitFate, iterate_orbit, seed_attractors
from .rational import build_operator
from .sphere import SpherePoint

HEAD_CENTER = 13 / 6
HEAD_RADIUS = 1 / 3
BODY_CENTER = 3.0
BODY_RADIUS = 0.5
LEFT_ANTENNA = (0.0, 0.5)
RIGHT_ANTENNA = (1.5, 2.0)


@dataclass(frozen=True)
class CatVerdict:
    alpha: complex
    verdict: str  # roots_only | strange | undecided
    strange_kind: str | None = None  # fixed-point | cycle
    period: int = 0
    evidence: tuple[OrbitFate, OrbitFate] | None = None

    def to_json_dict(self) -> dict:
        out = {
            "alpha": {"re": self.alpha.real, "im": self.alpha.imag},
            "verdict": self.verdict,
        }
        if self.strange_kind:
            out["kind"] = self.strange_kind
            if self.strange_kind == "cycle":
                out["period"] = self.period
        if self.evidence:
            out["evidence"] = [f.to_json_dict() for f in self.evidence]
        return out


def cat_membership(alpha: complex, cfg: IterationConfig | None = None) -> CatVerdict:
    """roots_only when both critical orbits end at 0 or infinity, strange
    when any decided fate is a strange fixed point or an attracting cycle."""
    cfg = cfg or IterationConfig()
    alpha = complex(alpha)
    op = build_operator(alpha)
    seeds = seed_attractors(alpha, cfg)
    fates = tuple(iterate_orbit(op, c, seeds, cfg) for c in critical_points(alpha).free)
    strange_fixed = any(
        (f.kind == "converged" and f.label not in ("zero", "infinity"))
        or (f.kind == "cycle" and f.period == 1)
        for f in fates
    )
    strange_cycle = any(f.kind == "cycle" and f.period >= 2 for f in fates)
    if strange_fixed:
        return CatVerdict(alpha, "strange", "fixed-point", evidence=fates)
    if strange_cycle:
        period = next(f.period for f in fates if f.kind == "cycle" and f.period >= 2)
        return CatVerdict(alpha, "strange", "cycle", period=period, evidence=fates)
    if all(f.kind == "converged" and f.label in ("zero", "infinity") for f in fates):
        return CatVerdict(alpha, "roots_only", evidence=fates)
    return CatVerdict(alpha, "undecided", evidence=fates)


def boundary_point(region: str, theta: float) -> tuple[complex, complex]:
    """(alpha, bifurcating multiplier) on the head or body boundary circle.

    head: alpha = 13/6 + exp(i theta)/3, multiplier of z = 1, which equals
    (2 e^{i theta} + 1) / (2 + e^{i theta}).  body: alpha = 3 + exp(i theta)/2,
    multiplier of s1 (modulus |6 - 2 alpha| = 1).
    """
    w = cmath.exp(1j * theta)
    if region == "head":
        alpha = HEAD_CENTER + w / 3
        op = build_operator(alpha)
        return alpha, op.derivative(SpherePoint(1 + 0j))
    if region == "body":
        alpha = BODY_CENTER + w / 2
        op = build_operator(alpha)
        s1, _ = strange_roots(alpha)
        return alpha, op.derivative(SpherePoint(s1))
    raise ValueError(f"region must be head or body, not {region!r}")


@dataclass(frozen=True)
class AntennaReport:
    alpha: float
    critical_modulus: float
    pole_modulus: float
    fates: tuple[OrbitFate, OrbitFate]

    def to_json_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "critical_modulus": self.critical_modulus,
            "pole_modulus": self.pole_modulus,
            "fates": [f.to_json_dict() for f in self.fates],
        }


def antenna_check(alpha: float, cfg: IterationConfig | None = None) -> AntennaReport:
    """On the real antennas the free critical points sit on the unit circle
    and the pole 1/(2(alpha-1)) sits inside it; reports both moduli and the
    critical-orbit fates."""
    alpha = float(alpha)
    on_left = LEFT_ANTENNA[0] <= alpha < LEFT_ANTENNA[1]
    on_right = RIGHT_ANTENNA[0] < alpha < RIGHT_ANTENNA[1]
    if not (on_left or on_right):
        raise OutOfAntennaRange(
            f"alpha={alpha} not in [0, 1/2) or (3/2, 2)")
    cfg = cfg or IterationConfig()
    cs = critical_points(alpha)
    c1 = cs.free[0]
    pole = pole_location(alpha)
    op = build_operator(alpha)
    seeds = seed_attractors(alpha, cfg)
    fates = tuple(iterate_orbit(op, c, seeds, cfg) for c in cs.free)
    return AntennaReport(
        alpha=alpha,
        critical_modulus=abs(c1.value),
        pole_modulus=abs(pole.value),
        fates=fates,
    )


# -- special-case verification table --------------------------------------


@dataclass(frozen=True)
class VerificationRow:
    case: str
    expected: str
    observed: str
    residual: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "case": self.case,
            "expected": self.expected,
            "observed": self.observed,
            "residual": self.residual,
            "pass": self.passed,
        }


def _monomial_row(alpha: float, sign: int, power: int, tol: float = 1e-12) -> VerificationRow:
    """Check that the operator reduces to sign * z^power after cancelling
    the common linear factor, via the cross-multiplied coefficient identity
    numer(z) = sign * z^(power - 3) * z^3 * denom(z)."""
    op = build_operator(alpha)
    # sign * z^power * denom as ascending coefficients, padded like numer
    shifted = [0j] * 9
    for k, d in enumerate(op.denom):
        if k + power < 9:
            shifted[k + power] += sign * d
    numer = list(op.numer) + [0j] * (9 - len(op.numer))
    residual = max(abs(a - b) for a, b in zip(numer, shifted))
    name = f"{'-' if sign < 0 else ''}z^{power}"
    return VerificationRow(
        case=f"alpha={alpha}: operator reduces to {name}",
        expected=name,
        observed=f"max coefficient residual {residual:.3e}",
        residual=residual,
        passed=residual < tol,
    )


def _displayed_row(alpha: float, factor: float, numer, denom, tol: float = 1e-12) -> VerificationRow:
    """Check stored coefficients against a displayed operator up to the
    common factor `factor` on numerator and denominator."""
    op = build_operator(alpha)
    res = 0.0
    for stored, shown in ((op.numer, numer), (op.denom, denom)):
        for a, b in zip(stored, shown):
            res = max(res, abs(a * factor - b))
    return VerificationRow(
        case=f"alpha={alpha}: displayed operator matches",
        expected=f"numer={numer} denom={denom} (x{factor:g})",
        observed=f"max coefficient residual {res:.3e}",
        residual=res,
        passed=res < tol,
    )


def verify_special_cases() -> list[VerificationRow]:
    """Every closed-form special case as a pass/fail row; failures are data."""
    rows: list[VerificationRow] = []
    rows.append(_monomial_row(0.5, +1, 3))
    rows.append(_monomial_row(1.0, +1, 4))
    rows.append(_monomial_row(1.5, -1, 3))
    rows.append(_displayed_row(11 / 6, 3.0,
                               (0j, 0j, 0j, -5 + 0j, 3 + 0j),
                               (3 + 0j, -5 + 0j, 0j, 0j, 0j)))
    rows.append(_displayed_row(2.5, 1.0,
                               (0j, 0j, 0j, -3 + 0j, 1 + 0j),
                               (1 + 0j, -3 + 0j, 0j, 0j, 0j)))
    rows.append(_displayed_row(3.0, 1.0,
                               (0j, 0j, 0j, -4 + 0j, 1 + 0j),
                               (1 + 0j, -4 + 0j, 0j, 0j, 0j)))
    rows.append(_displayed_row(3.5, 1.0,
                               (0j, 0j, 0j, -5 + 0j, 1 + 0j),
                               (1 + 0j, -5 + 0j, 0j, 0j, 0j)))

    # alpha = 0: c1 = c2 = -1 is a pre-image of z = 1
    cs = critical_points(0.0)
    op0 = build_operator(0.0)
    image = op0.eval(SpherePoint(-1 + 0j))
    res = max(abs(cs.free[0].value + 1), abs(cs.free[1].value + 1),
              abs(image.value - 1))
    rows.append(VerificationRow(
        case="alpha=0: critical points -1 and O(-1)=1",
        expected="c1=c2=-1, O(-1)=1",
        observed=f"c1={cs.free[0]}, c2={cs.free[1]}, O(-1)={image}",
        residual=res, passed=res < 1e-10))

    # alpha = 2: z = 1 superattracting
    m = multiplier_at(2.0, SpherePoint(1 + 0j))
    rows.append(VerificationRow(
        case="alpha=2: z=1 superattracting",
        expected="multiplier 0",
        observed=f"|m|={abs(m):.3e}",
        residual=abs(m), passed=abs(m) < 1e-12))

    # alpha = 5/2: critical points (2/9)(11/2 -+ sqrt(10))
    cs = critical_points(2.5)
    e1 = (2 / 9) * (5.5 - 10 ** 0.5)
    e2 = (2 / 9) * (5.5 + 10 ** 0.5)
    res = max(abs(cs.free[0].value - e1), abs(cs.free[1].value - e2))
    rows.append(VerificationRow(
        case="alpha=5/2: critical points (2/9)(11/2 -+ sqrt(10))",
        expected=f"{e1:.12f}, {e2:.12f}",
        observed=f"{cs.free[0]}, {cs.free[1]}",
        residual=res, passed=res < 1e-10))

    # alpha = 5/2: three strange fixed points merged at z = 1
    fps = strange_fixed_points(2.5)
    merged_ok = len(fps) == 1 and fps[0].multiplicity == 3
    res = abs(fps[0].location.value - 1) if merged_ok else float("inf")
    rows.append(VerificationRow(
        case="alpha=5/2: z=1 has multiplicity 3",
        expected="single strange point z=1, multiplicity 3",
        observed=f"{len(fps)} strange points",
        residual=res, passed=merged_ok and res < 1e-12))

    # alpha = 3: critical and fixed points coincide, superattracting
    cs = critical_points(3.0)
    s1, s2 = strange_roots(3.0)
    res = max(abs(cs.free[0].value - s1), abs(cs.free[1].value - s2))
    m3 = multiplier_at(3.0, SpherePoint(s1))
    rows.append(VerificationRow(
        case="alpha=3: s_i = c_i are superattractors",
        expected="|s_i - c_i| = 0 and multiplier 0",
        observed=f"residual {res:.3e}, |m|={abs(m3):.3e}",
        residual=max(res, abs(m3)), passed=res < 1e-10 and abs(m3) < 1e-10))

    # alpha = 11/6: parabolic multiplier -1 at z = 1
    m = multiplier_at(11 / 6, SpherePoint(1 + 0j))
    rows.append(VerificationRow(
        case="alpha=11/6: multiplier at z=1 is -1",
        expected="-1",
        observed=f"{m:.12f}",
        residual=abs(m + 1), passed=abs(m + 1) < 1e-10))

    # alpha = 7/2: s_i parabolic
    s1, _ = strange_roots(3.5)
    m = multiplier_at(3.5, SpherePoint(s1))
    rows.append(VerificationRow(
        case="alpha=7/2: s_i parabolic",
        expected="multiplier modulus 1",
        observed=f"|m|={abs(m):.12f}",
        residual=abs(abs(m) - 1), passed=abs(abs(m) - 1) < 1e-10))

    # Newton limit: the operator approaches z^2 on the unit circle
    sups = []
    for big in (1e3, 1e6):
        op = build_operator(big)
        sup = 0.0
        for k in range(256):
            z = cmath.exp(2j * cmath.pi * k / 256)
            sup = max(sup, abs(op.eval(z).value - z * z))
        sups.append(sup)
    bound = 2.5 / (2 * 1e6 - 2)
    rows.append(VerificationRow(
        case="alpha -> +inf: operator tends to z^2 on |z|=1",
        expected=f"sup at 1e6 below {bound:.2e} and below sup at 1e3",
        observed=f"sup(1e3)={sups[0]:.3e}, sup(1e6)={sups[1]:.3e}",
        residual=sups[1],
        passed=sups[1] < bound and sups[1] < sups[0]))

    return rows


def verification_report_json(rows: list[VerificationRow] | None = None) -> list[dict]:
    rows = rows if rows is not None else verify_special_cases()
    return [r.to_json_dict() for r in rows]

"""Orbit iteration, fate classification and attracting-cycle discovery.

Orbits of the family operator run through the compiled kernel; arbitrary
rational maps fall back to a pure-Python engine with the same structure
(two charts, lagged-return cycle candidates, Newton refinement).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .fixed_points import critical_points, stability_report
from .rational import RationalMap, build_operator
from .sphere import SpherePoint, as_sphere_point, chart_distance_rep, from_chart


@dataclass(frozen=True)
class IterationConfig:
    max_iter: int = 500
    eps_converge: float = 1e-8
    confirm_steps: int = 2
    max_period: int = 32
    transient: int = 200

    def __post_init__(self):
        if self.max_iter <= self.transient:
            raise ValueError("max_iter must exceed transient")
        if self.max_period < 1:
            raise ValueError("max_period must be >= 1")
        if self.eps_converge <= 0:
            raise ValueError("eps_converge must be positive")
        if self.confirm_steps < 1:
            raise ValueError("confirm_steps must be >= 1")


@dataclass(frozen=True)
class AttractorEntry:
    label: str
    points: tuple[SpherePoint, ...]
    kind: str = "fixed"  # fixed | cycle
    provenance: str = "known-fixed"  # known-fixed | critical-orbit
    multiplier: complex | None = None

    @property
    def period(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class AttractorSet:
    entries: tuple[AttractorEntry, ...]
    eps: float = 1e-8

    def __post_init__(self):
        labels = [e.label for e in self.entries]
        if "zero" not in labels or "infinity" not in labels:
            raise ValueError("attractor set must contain 0 and infinity")
        flat = [(p, e.label) for e in self.entries for p in e.points]
        for i in range(len(flat)):
            for j in range(i + 1, len(flat)):
                if flat[i][1] == flat[j][1]:
                    continue
                va, pa = flat[i][0].chart_rep()
                vb, pb = flat[j][0].chart_rep()
                if chart_distance_rep(va, pa, vb, pb) <= 2 * self.eps:
                    raise ValueError(
                        f"entries {flat[i][1]} and {flat[j][1]} closer than 2*eps"
                    )

    def labels(self) -> list[str]:
        return [e.label for e in self.entries]

    def flatten(self):
        """(coords, parities, entry indices) arrays for the kernels."""
        vs, ps, idx = [], [], []
        for k, e in enumerate(self.entries):
            for p in e.points:
                v, par = p.chart_rep()
                vs.append(v)
                ps.append(par)
                idx.append(k)
        return (
            np.asarray(vs, dtype=np.complex128),
            np.asarray(ps, dtype=np.int64),
            np.asarray(idx, dtype=np.int64),
        )

    def nearest(self, point: SpherePoint, radius: float) -> int:
        v, par = point.chart_rep()
        best, bd = -1, radius
        for k, e in enumerate(self.entries):
            for p in e.points:
                u, q = p.chart_rep()
                d = chart_distance_rep(v, par, u, q)
                if d < bd:
                    bd, best = d, k
        return best


@dataclass(frozen=True)
class OrbitFate:
    kind: str  # converged | cycle | undecided
    iterations: int
    label: str | None = None
    location: SpherePoint | None = None
    period: int = 0
    representatives: tuple[SpherePoint, ...] = ()
    multiplier: complex | None = None

    @property
    def is_converged(self) -> bool:
        return self.kind == "converged"

    def to_json_dict(self) -> dict:
        out: dict = {"kind": self.kind, "iterations": self.iterations}
        if self.kind == "converged":
            out["label"] = self.label
            out["location"] = _point_json(self.location)
        elif self.kind == "cycle":
            out["period"] = self.period
            out["points"] = [_point_json(p) for p in self.representatives]
            out["multiplier"] = {"re": self.multiplier.real, "im": self.multiplier.imag}
            out["modulus"] = abs(self.multiplier)
        return out


def _point_json(p: SpherePoint | None):
    if p is None:
        return None
    if p.infinite:
        return {"infinity": True}
    return {"re": p.value.real, "im": p.value.imag}


# -- scalar engine -------------------------------------------------------


def _family_parameter(m: RationalMap) -> complex:
    return 2 * (m.alpha - 1)


def iterate_orbit(map_: RationalMap, z0, attractors: AttractorSet,
                  cfg: IterationConfig | None = None) -> OrbitFate:
    """Classify the orbit of z0: convergence to a listed attractor, a newly
    found attracting cycle, or undecided.  Indeterminate evaluations (orbit
    hits an unreduced common root) also come back undecided."""
    cfg = cfg or IterationConfig()
    z0 = as_sphere_point(z0)
    att_v, att_par, att_idx = attractors.flatten()
    if map_.family:
        v0, par0 = z0.chart_rep()
        status, entry, it, period, mult, v, par = _kernels.run_orbit(
            v0, par0, _family_parameter(map_), att_v, att_par, att_idx,
            cfg.eps_converge, cfg.confirm_steps, cfg.max_iter,
            cfg.max_period, cfg.transient)
    else:
        status, entry, it, period, mult, v, par = _orbit_reference(
            map_, z0, att_v, att_par, att_idx, cfg)
    if status == _kernels.CONVERGED:
        e = attractors.entries[entry]
        return OrbitFate("converged", it, label=e.label, location=e.points[0])
    if status == _kernels.CYCLE:
        reps = _collect_cycle(map_, v, par, period)
        return OrbitFate("cycle", it, period=period, representatives=reps,
                         multiplier=complex(mult))
    return OrbitFate("undecided", it)


def _collect_cycle(map_: RationalMap, v: complex, par: int, period: int):
    reps = [from_chart(v, par)]
    if map_.family:
        a = _family_parameter(map_)
        for _ in range(period - 1):
            v, par, ok = _kernels._step(v, par, a)
            if not ok:
                break
            reps.append(from_chart(v, par))
    else:
        charts = (map_, map_.reciprocal_chart())
        for _ in range(period - 1):
            v, par, ok, _ = _generic_step(charts, v, par)
            if not ok:
                break
            reps.append(from_chart(v, par))
    return tuple(reps)


def _generic_step(charts, v: complex, par: int):
    """(v', par', ok, local derivative) for an arbitrary rational map."""
    m = charts[par]
    from .rational import polyder, polyval

    num = polyval(m.numer, v)
    den = polyval(m.denom, v)
    if den == 0:
        if num == 0:
            return v, par, False, 0j
        return 0j, par ^ 1, True, 0j
    nd = polyval(polyder(m.numer), v)
    dd = polyval(polyder(m.denom), v)
    d_local = (nd * den - num * dd) / (den * den)
    w = num / den
    aw = abs(w)
    if aw != aw:
        return v, par, False, 0j
    if aw > 1.0:
        return 1.0 / w, par ^ 1, True, d_local * (-1.0 / (w * w))
    return w, par, True, d_local


def _generic_walk(charts, v, par, steps):
    deriv = 1 + 0j
    for _ in range(steps):
        v, par, ok, d = _generic_step(charts, v, par)
        if not ok:
            return v, par, 0j, False
        deriv *= d
        if not (math.isfinite(deriv.real) and math.isfinite(deriv.imag)):
            return v, par, 0j, False
    return v, par, deriv, True


def _generic_refine(charts, v, par, lag):
    x = v
    for _ in range(24):
        xe, pe, der, ok = _generic_walk(charts, x, par, lag)
        if not ok or pe != par:
            return x, 0j, 0, False
        g = xe - x
        if abs(g) < 1e-13:
            break
        dg = der - 1.0
        if dg == 0:
            return x, 0j, 0, False
        x = x - g / dg
        if abs(x) > 1.5:
            return x, 0j, 0, False
    xe, pe, der, ok = _generic_walk(charts, x, par, lag)
    if not ok or pe != par or abs(xe - x) > 1e-9:
        return x, 0j, 0, False
    y, py, mult = x, par, 1 + 0j
    for j in range(1, lag + 1):
        y, py, dj, ok = _generic_walk(charts, y, py, 1)
        if not ok:
            return x, 0j, 0, False
        mult *= dj
        if py == par and abs(y - x) < 1e-9:
            return x, mult, j, True
    return x, 0j, 0, False


def _orbit_reference(map_: RationalMap, z0: SpherePoint,
                     att_v, att_par, att_idx, cfg: IterationConfig):
    """Pure-Python twin of the compiled orbit routine for general maps."""
    charts = (map_, map_.reciprocal_chart())
    v, par = z0.chart_rep()
    hist: list[tuple[complex, int] | None] = [None] * cfg.max_period
    streak, last_entry, cooldown = 0, -1, 0
    for n in range(1, cfg.max_iter + 1):
        v, par, ok, _ = _generic_step(charts, v, par)
        if not ok:
            return _kernels.INDETERMINATE, -1, n, 0, 0j, v, par
        best, bd = -1, cfg.eps_converge
        for k in range(att_v.shape[0]):
            d = chart_distance_rep(v, par, att_v[k], int(att_par[k]))
            if d < bd:
                bd, best = d, int(att_idx[k])
        if best >= 0:
            streak = streak + 1 if best == last_entry else 1
            last_entry = best
            if streak >= cfg.confirm_steps:
                return _kernels.CONVERGED, best, n, 0, 0j, v, par
        else:
            streak, last_entry = 0, -1
        if n > cfg.transient:
            if cooldown > 0:
                cooldown -= 1
            else:
                lim = min(cfg.max_period, n - 1)
                for lag in range(1, lim + 1):
                    h = hist[(n - lag) % cfg.max_period]
                    if h is not None and h[1] == par and abs(h[0] - v) < cfg.eps_converge:
                        x, mult, period, ok2 = _generic_refine(charts, v, par, lag)
                        if ok2:
                            if period == 1:
                                e = -1
                                bd = 2 * cfg.eps_converge
                                for k in range(att_v.shape[0]):
                                    d = chart_distance_rep(x, par, att_v[k], int(att_par[k]))
                                    if d < bd:
                                        bd, e = d, int(att_idx[k])
                                if e >= 0:
                                    return _kernels.CONVERGED, e, n, 0, mult, x, par
                                if abs(mult) < 1.0:
                                    return _kernels.CYCLE, -1, n, 1, mult, x, par
                            elif abs(mult) < 1.0:
                                return _kernels.CYCLE, -1, n, period, mult, x, par
                        cooldown = 16
                        break
        hist[n % cfg.max_period] = (v, par)
    return _kernels.UNDECIDED, -1, cfg.max_iter, 0, 0j, v, par


# -- attractor discovery -------------------------------------------------


def seed_attractors(alpha: complex, cfg: IterationConfig | None = None) -> AttractorSet:
    """{0, infinity} plus every non-repelling strange fixed point."""
    cfg = cfg or IterationConfig()
    entries = [
        AttractorEntry("zero", (SpherePoint(0j),)),
        AttractorEntry("infinity", (SpherePoint(0j, True),)),
    ]
    for info in stability_report(alpha):
        if info.label in ("zero", "infinity"):
            continue
        if not info.stability.is_repelling:
            entries.append(AttractorEntry(info.label, (info.location,),
                                          multiplier=info.multiplier))
    return AttractorSet(tuple(entries), eps=cfg.eps_converge)


def _fresh_label(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    k = 2
    while f"{base}-{k}" in taken:
        k += 1
    return f"{base}-{k}"


def find_attractors(alpha: complex, cfg: IterationConfig | None = None) -> AttractorSet:
    """Seed the known fixed points, then chase both free critical orbits and
    append whatever attracting cycles or unlisted fixed points they land on."""
    cfg = cfg or IterationConfig()
    alpha = complex(alpha)
    op = build_operator(alpha)
    current = seed_attractors(alpha, cfg)
    for c in critical_points(alpha).free:
        fate = iterate_orbit(op, c, current, cfg)
        if fate.kind != "cycle":
            continue
        new_points = fate.representatives
        if any(current.nearest(p, 2 * cfg.eps_converge) >= 0 for p in new_points):
            continue
        taken = set(current.labels())
        if fate.period == 1:
            label = _fresh_label("fixed-aux", taken)
            kind = "fixed"
        else:
            label = _fresh_label(f"cycle{fate.period}", taken)
            kind = "cycle"
        current = AttractorSet(
            current.entries + (AttractorEntry(label, new_points, kind=kind,
                                              provenance="critical-orbit",
                                              multiplier=fate.multiplier),),
            eps=cfg.eps_converge,
        )
    return current


@dataclass(frozen=True)
class CycleRecord:
    period: int
    points: tuple[SpherePoint, ...]
    multiplier: complex

    @property
    def modulus(self) -> float:
        return abs(self.multiplier)

    def to_json_dict(self) -> dict:
        return {
            "period": self.period,
            "points": [_point_json(p) for p in self.points],
            "multiplier": {"re": self.multiplier.real, "im": self.multiplier.imag},
            "modulus": self.modulus,
        }


def find_cycles(alpha: complex, cfg: IterationConfig | None = None) -> list[CycleRecord]:
    """Attracting cycles (minimal period >= 2) reached by the free critical
    orbits; fixed-point convergence is not a cycle."""
    cfg = cfg or IterationConfig()
    alpha = complex(alpha)
    op = build_operator(alpha)
    seeds = seed_attractors(alpha, cfg)
    cycles: list[CycleRecord] = []
    for c in critical_points(alpha).free:
        fate = iterate_orbit(op, c, seeds, cfg)
        if fate.kind != "cycle" or fate.period < 2:
            continue
        known = False
        for rec in cycles:
            for p in fate.representatives:
                v, par = p.chart_rep()
                for q in rec.points:
                    u, qp = q.chart_rep()
                    if chart_distance_rep(v, par, u, qp) < 2 * cfg.eps_converge:
                        known = True
        if not known:
            cycles.append(CycleRecord(fate.period, fate.representatives,
                                      complex(fate.multiplier)))
    return cycles

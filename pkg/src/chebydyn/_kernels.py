"""Compiled orbit kernels.

One orbit routine serves every consumer: the scalar engine calls it on
single points, the raster renderers over pixel arrays in parallel.  Points
are carried as (coordinate, parity) pairs where parity 1 means the
reciprocal chart w = 1/z; the family operator equals its own reciprocal-
chart form (O(1/z) = 1/O(z)), so both charts share one step formula and
coordinates never leave the closed unit disk for long.

Cycle detection is a lagged-return test refined by Newton iteration on the
composed map: an orbit spiralling into an attracting fixed point fires
lagged returns too, and only the refinement (which collapses such
candidates to their true period) tells a genuine attracting cycle from
slow convergence.
"""

import numpy as np
from numba import config as _nb_config
from numba import njit, prange

# the portable threading layer avoids probing TBB/OpenMP at first parallel call
if _nb_config.THREADING_LAYER == "default":
    _nb_config.THREADING_LAYER = "workqueue"

# orbit status codes
UNDECIDED = 0
CONVERGED = 1
CYCLE = 2
INDETERMINATE = 3

# parameter-plane tags
PARAM_UNDECIDED = 0
PARAM_ROOTS_ONLY = 1
PARAM_STRANGE_FIXED = 2
PARAM_STRANGE_CYCLE = 3

#: cooldown (steps) after a rejected cycle candidate
_REJECT_COOLDOWN = 16
#: residual for refined periodic points and minimal-period collapse
_REFINE_TOL = 1e-9


@njit(cache=True)
def _finite(x):
    return x.real == x.real and x.imag == x.imag and abs(x.real) < 1e300 and abs(x.imag) < 1e300


@njit(cache=True)
def chart_dist(va, pa, vb, pb):
    """min over the two charts of the coordinate distance; coordinates are
    expected inside the closed unit disk."""
    if pa == pb:
        d = abs(va - vb)
        if va != 0 and vb != 0:
            d2 = abs(1.0 / va - 1.0 / vb)
            if d2 < d:
                d = d2
        return d
    d = np.inf
    if vb != 0:
        d = abs(va - 1.0 / vb)
    if va != 0:
        d2 = abs(1.0 / va - vb)
        if d2 < d:
            d = d2
    return d


@njit(cache=True)
def _step(v, par, a):
    """One application of z^3 (z - a) / (1 - a z) in the current chart.

    Returns (v', par', ok); ok False flags an exact 0/0 evaluation.
    """
    num = v * v * v * (v - a)
    den = 1.0 - a * v
    if den == 0:
        if num == 0:
            return v, par, False
        return 0j, par ^ 1, True  # pole: image is the chart's far point
    w = num / den
    aw = abs(w)
    if aw != aw:  # nan
        return v, par, False
    if aw > 1.0:
        return 1.0 / w, par ^ 1, True
    return w, par, True


@njit(cache=True)
def _walk(v, par, a, steps):
    """`steps` chart steps with the chain-rule derivative accumulated,
    including -1/w^2 factors at chart switches.  Returns (v, par, deriv, ok)."""
    deriv = 1.0 + 0j
    for _ in range(steps):
        num = v * v * v * (v - a)
        den = 1.0 - a * v
        if den == 0:
            return v, par, 0j, False
        d_local = (v * v * (4.0 * v - 3.0 * a) * den + num * a) / (den * den)
        w = num / den
        aw = abs(w)
        if aw != aw:
            return v, par, 0j, False
        if aw > 1.0:
            deriv = deriv * d_local * (-1.0 / (w * w))
            v = 1.0 / w
            par = par ^ 1
        else:
            deriv = deriv * d_local
            v = w
        if not _finite(deriv):
            return v, par, 0j, False
    return v, par, deriv, True


@njit(cache=True)
def _refine_periodic(v, par, a, lag):
    """Newton-refine v as a fixed point of the lag-fold composition.

    Returns (point, multiplier, minimal_period, ok).  The minimal period is
    1 when the candidate collapses onto a fixed point (slow spiral-in), in
    which case the multiplier is the fixed point's own.
    """
    x = v
    for _ in range(24):
        xe, pe, der, ok = _walk(x, par, a, lag)
        if not ok or pe != par:
            return x, 0j, 0, False
        g = xe - x
        dg = der - 1.0
        if abs(g) < 1e-13:
            break
        if dg == 0 or not _finite(dg):
            return x, 0j, 0, False
        step = g / dg
        x = x - step
        if abs(x) > 1.5 or not _finite(x):
            return x, 0j, 0, False
        if abs(step) < 1e-14:
            break
    xe, pe, der, ok = _walk(x, par, a, lag)
    if not ok or pe != par or abs(xe - x) > _REFINE_TOL:
        return x, 0j, 0, False
    # minimal period: first return of the refined orbit to its start
    y = x
    py = par
    mult = 1.0 + 0j
    for j in range(1, lag + 1):
        y, py, dj, ok = _walk(y, py, a, 1)
        if not ok:
            return x, 0j, 0, False
        mult = mult * dj
        if py == par and abs(y - x) < _REFINE_TOL:
            return x, mult, j, True
    return x, 0j, 0, False


@njit(cache=True)
def _nearest_entry(v, par, att_v, att_par, att_idx, radius):
    best = -1
    bd = radius
    for k in range(att_v.shape[0]):
        d = chart_dist(v, par, att_v[k], att_par[k])
        if d < bd:
            bd = d
            best = att_idx[k]
    return best


@njit(cache=True)
def run_orbit(v0, par0, a, att_v, att_par, att_idx,
              eps, confirm, max_iter, max_period, transient):
    """Iterate one orbit to a fate.

    Returns (status, entry, iterations, period, multiplier, v, par):
    CONVERGED carries the attractor entry index, CYCLE the minimal period
    and cycle multiplier with (v, par) a refined representative.
    """
    v = v0
    par = par0
    if abs(v) > 1.0:
        v = 1.0 / v
        par = par ^ 1
    hist_v = np.empty(max_period, np.complex128)
    hist_p = np.empty(max_period, np.int64)
    streak = 0
    last_entry = -1
    cooldown = 0
    for n in range(1, max_iter + 1):
        v, par, ok = _step(v, par, a)
        if not ok:
            return INDETERMINATE, -1, n, 0, 0j, v, par
        entry = _nearest_entry(v, par, att_v, att_par, att_idx, eps)
        if entry >= 0:
            if entry == last_entry:
                streak += 1
            else:
                streak = 1
                last_entry = entry
            if streak >= confirm:
                return CONVERGED, entry, n, 0, 0j, v, par
        else:
            streak = 0
            last_entry = -1
        if n > transient:
            if cooldown > 0:
                cooldown -= 1
            else:
                lim = max_period if max_period < n - 1 else n - 1
                for lag in range(1, lim + 1):
                    j = (n - lag) % max_period
                    if hist_p[j] == par and abs(hist_v[j] - v) < eps:
                        x, mult, period, ok2 = _refine_periodic(v, par, a, lag)
                        if ok2:
                            if period == 1:
                                e = _nearest_entry(x, par, att_v, att_par, att_idx, 2.0 * eps)
                                if e >= 0:
                                    return CONVERGED, e, n, 0, mult, x, par
                                if abs(mult) < 1.0:
                                    return CYCLE, -1, n, 1, mult, x, par
                            elif abs(mult) < 1.0:
                                return CYCLE, -1, n, period, mult, x, par
                        cooldown = _REJECT_COOLDOWN
                        break
        hist_v[n % max_period] = v
        hist_p[n % max_period] = par
    return UNDECIDED, -1, max_iter, 0, 0j, v, par


@njit(parallel=True, cache=True)
def classify_points(points, a, att_v, att_par, att_idx, n_entries,
                    eps, confirm, max_iter, max_period, transient,
                    tags, iters):
    """Per-point fates against a fixed attractor table.

    Tag 0 is undecided, 1..n_entries converged to that entry, and
    n_entries + 1 a newly detected attracting cycle.
    """
    for i in prange(points.shape[0]):
        status, entry, it, period, mult, fv, fp = run_orbit(
            points[i], 0, a, att_v, att_par, att_idx,
            eps, confirm, max_iter, max_period, transient)
        if status == CONVERGED:
            tags[i] = entry + 1
        elif status == CYCLE:
            tags[i] = n_entries + 1
        else:
            tags[i] = 0
        iters[i] = it


@njit(cache=True)
def _param_setup(alpha):
    """Attractor table {0, inf} + non-repelling strange fixed points, and
    the free critical points, for one alpha.  Matches the scalar seeding."""
    a = 2.0 * (alpha - 1.0)
    att_v = np.zeros(5, np.complex128)
    att_par = np.zeros(5, np.int64)
    att_idx = np.zeros(5, np.int64)
    att_par[1] = 1  # infinity
    att_idx[0] = 0
    att_idx[1] = 1
    count = 2
    # z = 1, unless it is the unreduced common root (alpha = 3/2)
    if abs(2.0 * alpha - 3.0) >= 1e-12:
        den1 = 1.0 - a
        m1 = abs((1.0 * (4.0 - 3.0 * a) * den1 + (1.0 - a) * a) / (den1 * den1))
        if m1 <= 1.0 + 1e-9:
            att_v[count] = 1.0 + 0j
            att_par[count] = 0
            att_idx[count] = count
            count += 1
    # s1, s2 (or their merged double point)
    disc = 4.0 * alpha * alpha - 12.0 * alpha + 5.0
    if abs(disc) < 1e-12:
        roots = np.empty(1, np.complex128)
        roots[0] = alpha - 1.5
    else:
        b = 3.0 - 2.0 * alpha
        s = np.sqrt(disc)
        if (np.conj(b) * s).real < 0:
            s = -s
        big = (-b - s) / 2.0
        roots = np.empty(2, np.complex128)
        roots[0] = 1.0 / big
        roots[1] = big
    for r in roots:
        if abs(r) > 1.0:
            rv = 1.0 / r
            rp = 1
        else:
            rv = r
            rp = 0
        den = 1.0 - a * rv
        if den == 0:
            continue
        num = rv * rv * rv * (rv - a)
        m = abs((rv * rv * (4.0 * rv - 3.0 * a) * den + num * a) / (den * den))
        if m > 1.0 + 1e-9:
            continue
        dup = False
        for k in range(count):
            if chart_dist(rv, rp, att_v[k], att_par[k]) < 1e-9:
                dup = True
                break
        if not dup:
            att_v[count] = rv
            att_par[count] = rp
            att_idx[count] = count
            count += 1
    # free critical points (the degenerate alpha = 1 pair is {0, inf})
    if abs(alpha - 1.0) < 1e-12:
        c1 = 0j
        p1 = 0
        c2 = 0j
        p2 = 1
    else:
        bb = 3.0 - 4.0 * alpha + 2.0 * alpha * alpha
        dc = 4.0 * alpha**4 - 16.0 * alpha**3 + 19.0 * alpha**2 - 6.0 * alpha
        sc = np.sqrt(dc)
        if (np.conj(bb) * sc).real < 0:
            sc = -sc
        cbig = (bb + sc) / (3.0 * (alpha - 1.0))
        if abs(cbig) > 1.0:
            c2 = 1.0 / cbig
            p2 = 1
        else:
            c2 = cbig
            p2 = 0
        csmall = 1.0 / cbig
        if abs(csmall) > 1.0:
            c1 = 1.0 / csmall
            p1 = 1
        else:
            c1 = csmall
            p1 = 0
    return a, att_v[:count], att_par[:count], att_idx[:count], count, c1, p1, c2, p2


@njit(parallel=True, cache=True)
def classify_alphas(alphas, eps, confirm, max_iter, max_period, transient,
                    tags, iters):
    """Parameter-plane verdict per alpha from the two free critical orbits:
    1 roots-only, 2 strange fixed point, 3 strange cycle, 0 undecided."""
    for i in prange(alphas.shape[0]):
        a, att_v, att_par, att_idx, count, c1, p1, c2, p2 = _param_setup(alphas[i])
        st1, e1, it1, per1, m1, v1, q1 = run_orbit(
            c1, p1, a, att_v, att_par, att_idx,
            eps, confirm, max_iter, max_period, transient)
        st2, e2, it2, per2, m2, v2, q2 = run_orbit(
            c2, p2, a, att_v, att_par, att_idx,
            eps, confirm, max_iter, max_period, transient)
        fixed_strange = (st1 == CONVERGED and e1 >= 2) or (st2 == CONVERGED and e2 >= 2) \
            or (st1 == CYCLE and per1 == 1) or (st2 == CYCLE and per2 == 1)
        cycle_strange = (st1 == CYCLE and per1 >= 2) or (st2 == CYCLE and per2 >= 2)
        if fixed_strange:
            tags[i] = PARAM_STRANGE_FIXED
        elif cycle_strange:
            tags[i] = PARAM_STRANGE_CYCLE
        elif st1 == CONVERGED and st2 == CONVERGED:
            tags[i] = PARAM_ROOTS_ONLY
        else:
            tags[i] = PARAM_UNDECIDED
        iters[i] = it1 + it2

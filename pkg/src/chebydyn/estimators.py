"""Scikit-learn style classifiers over the orbit engine.

DynamicalPlaneClassifier labels initial points by the attractor their orbit
reaches for one fixed parameter; ParameterPlaneClassifier labels parameter
values by the joint fate of the two free critical orbits.  Both are plain
estimators: get_params/set_params work, fit validates and precomputes,
predict maps complex points to small integer tags explained by `legend_`.
"""

from __future__ import annotations

import os

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from . import _kernels
from .orbits import IterationConfig, find_attractors

PARAM_LEGEND = {
    _kernels.PARAM_UNDECIDED: "undecided",
    _kernels.PARAM_ROOTS_ONLY: "roots-only",
    _kernels.PARAM_STRANGE_FIXED: "strange-fixed-point",
    _kernels.PARAM_STRANGE_CYCLE: "strange-cycle",
}


def check_complex_points(X) -> np.ndarray:
    """Validate and coerce input into a 1-D contiguous complex128 array.

    Accepts complex array-likes, real array-likes, or (n, 2) real arrays
    read as (re, im) columns.  Rejects non-finite entries.
    """
    X = np.asarray(X)
    if X.ndim == 0:
        X = X.reshape(1)
    if X.ndim == 2 and X.shape[1] == 2 and not np.iscomplexobj(X):
        X = X[:, 0] + 1j * X[:, 1]
    if X.ndim != 1:
        raise ValueError(f"expected 1-D points (or (n, 2) reals), got shape {X.shape}")
    X = np.ascontiguousarray(X, dtype=np.complex128)
    if not np.all(np.isfinite(X.real) & np.isfinite(X.imag)):
        raise ValueError("points must be finite")
    return X


def render_threads() -> int:
    """Worker count for the parallel kernels, capped by CHEBYDYN_THREADS."""
    avail = os.cpu_count() or 1
    cap = os.environ.get("CHEBYDYN_THREADS")
    if cap:
        try:
            avail = min(avail, max(1, int(cap)))
        except ValueError:
            pass
    return avail


def _set_threads():
    import numba

    numba.set_num_threads(render_threads())


class DynamicalPlaneClassifier(BaseEstimator):
    """Classify initial points z0 by orbit fate under one family operator.

    fit() discovers the attractor set for `alpha` (known fixed points plus
    whatever the critical orbits find); predict() returns integer tags:
    0 undecided, 1..k convergence to attractors_.entries[tag-1], k+1 a new
    attracting cycle.  `legend_` maps tags to labels.
    """

    def __init__(self, alpha=3.0 + 0j, max_iter=500, eps_converge=1e-8,
                 confirm_steps=2, max_period=32, transient=200):
        self.alpha = alpha
        self.max_iter = max_iter
        self.eps_converge = eps_converge
        self.confirm_steps = confirm_steps
        self.max_period = max_period
        self.transient = transient

    def _config(self) -> IterationConfig:
        return IterationConfig(
            max_iter=int(self.max_iter),
            eps_converge=float(self.eps_converge),
            confirm_steps=int(self.confirm_steps),
            max_period=int(self.max_period),
            transient=int(self.transient),
        )

    def fit(self, X=None, y=None):
        """Precompute the attractor table; X and y are ignored."""
        cfg = self._config()
        self.config_ = cfg
        self.attractors_ = find_attractors(complex(self.alpha), cfg)
        self.legend_ = {0: "undecided"}
        for k, entry in enumerate(self.attractors_.entries):
            self.legend_[k + 1] = entry.label
        self.legend_[len(self.attractors_.entries) + 1] = "cycle"
        self.classes_ = np.arange(len(self.legend_), dtype=np.int16)
        return self

    def predict(self, X) -> np.ndarray:
        return self.predict_with_counts(X)[0]

    def predict_with_counts(self, X) -> tuple[np.ndarray, np.ndarray]:
        """(tags, iterations used) for each point."""
        if not hasattr(self, "attractors_"):
            raise NotFittedError("call fit() before predict()")
        pts = check_complex_points(X)
        att_v, att_par, att_idx = self.attractors_.flatten()
        tags = np.zeros(pts.shape[0], dtype=np.int16)
        iters = np.zeros(pts.shape[0], dtype=np.int32)
        cfg = self.config_
        _set_threads()
        _kernels.classify_points(
            pts, 2 * (complex(self.alpha) - 1), att_v, att_par, att_idx,
            len(self.attractors_.entries),
            cfg.eps_converge, cfg.confirm_steps, cfg.max_iter,
            cfg.max_period, cfg.transient, tags, iters)
        return tags, iters


class ParameterPlaneClassifier(BaseEstimator):
    """Classify parameter values by the fates of the free critical orbits:
    roots-only, strange (fixed point or cycle), or undecided."""

    legend_ = dict(PARAM_LEGEND)

    def __init__(self, max_iter=500, eps_converge=1e-8, confirm_steps=2,
                 max_period=32, transient=200):
        self.max_iter = max_iter
        self.eps_converge = eps_converge
        self.confirm_steps = confirm_steps
        self.max_period = max_period
        self.transient = transient

    def _config(self) -> IterationConfig:
        return IterationConfig(
            max_iter=int(self.max_iter),
            eps_converge=float(self.eps_converge),
            confirm_steps=int(self.confirm_steps),
            max_period=int(self.max_period),
            transient=int(self.transient),
        )

    def fit(self, X=None, y=None):
        self.config_ = self._config()
        self.classes_ = np.arange(4, dtype=np.int16)
        return self

    def predict(self, X) -> np.ndarray:
        return self.predict_with_counts(X)[0]

    def predict_with_counts(self, X) -> tuple[np.ndarray, np.ndarray]:
        if not hasattr(self, "config_"):
            self.fit()
        alphas = check_complex_points(X)
        tags = np.zeros(alphas.shape[0], dtype=np.int16)
        iters = np.zeros(alphas.shape[0], dtype=np.int32)
        cfg = self.config_
        _set_threads()
        _kernels.classify_alphas(
            alphas, cfg.eps_converge, cfg.confirm_steps, cfg.max_iter,
            cfg.max_period, cfg.transient, tags, iters)
        return tags, iters

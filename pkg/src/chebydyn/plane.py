"""Raster specifications, classification grids and the bifurcation scan."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .estimators import DynamicalPlaneClassifier, ParameterPlaneClassifier
from .fixed_points import critical_points, stability_report, TOL_PARABOLIC
from .orbits import IterationConfig
from .sphere import SpherePoint

DEFAULT_PARAMETER_VIEW = (-0.5, 4.5, -2.0, 2.0)  # contains head, body, antennas
DEFAULT_DYNAMICAL_VIEW = (-3.0, 3.0, -3.0, 3.0)


@dataclass(frozen=True)
class PlaneSpec:
    """A pixel raster over a rectangle of the complex plane.

    Pixel centers: re = center + half_width * (2 col + 1 - W) / W and the
    mirrored formula for im, with row 0 at maximum imaginary part.  The
    offsets are exactly antisymmetric, so a viewport symmetric about the
    real axis samples exactly conjugate points.
    """

    center: complex
    half_width: float
    half_height: float
    width_px: int
    height_px: int
    kind: str = "dynamical"  # parameter | dynamical
    alpha: complex | None = None
    iteration: IterationConfig = IterationConfig()

    def __post_init__(self):
        if self.kind not in ("parameter", "dynamical"):
            raise ValueError(f"unknown plane kind {self.kind!r}")
        if self.width_px < 1 or self.height_px < 1:
            raise ValueError("pixel dimensions must be >= 1")
        if self.half_width <= 0 or self.half_height <= 0:
            raise ValueError("half extents must be positive")
        if self.kind == "dynamical" and self.alpha is None:
            raise ValueError("dynamical plane needs alpha")
        object.__setattr__(self, "center", complex(self.center))
        if self.alpha is not None:
            object.__setattr__(self, "alpha", complex(self.alpha))

    @classmethod
    def from_viewport(cls, re0, re1, im0, im1, width_px, height_px, **kw) -> "PlaneSpec":
        if not (re0 < re1 and im0 < im1):
            raise ValueError("viewport must satisfy re0 < re1 and im0 < im1")
        return cls(
            center=complex((re0 + re1) / 2, (im0 + im1) / 2),
            half_width=(re1 - re0) / 2,
            half_height=(im1 - im0) / 2,
            width_px=width_px,
            height_px=height_px,
            **kw,
        )

    @property
    def viewport(self) -> tuple[float, float, float, float]:
        return (
            self.center.real - self.half_width,
            self.center.real + self.half_width,
            self.center.imag - self.half_height,
            self.center.imag + self.half_height,
        )

    def re_axis(self) -> np.ndarray:
        cols = np.arange(self.width_px)
        return self.center.real + self.half_width * ((2 * cols + 1 - self.width_px) / self.width_px)

    def im_axis(self) -> np.ndarray:
        rows = np.arange(self.height_px)
        return self.center.imag + self.half_height * ((self.height_px - 1 - 2 * rows) / self.height_px)

    def points(self) -> np.ndarray:
        """Row-major flat array of pixel-center points."""
        re = self.re_axis()
        im = self.im_axis()
        return (re[np.newaxis, :] + 1j * im[:, np.newaxis]).ravel()

    def point_at(self, row: int, col: int) -> complex:
        re = self.center.real + self.half_width * ((2 * col + 1 - self.width_px) / self.width_px)
        im = self.center.imag + self.half_height * ((self.height_px - 1 - 2 * row) / self.height_px)
        return complex(re, im)

    def pixel_of(self, z: complex) -> tuple[int, int]:
        """(row, col) of the pixel containing z (clamped to the raster)."""
        col = int(np.floor((z.real - self.viewport[0]) / (2 * self.half_width) * self.width_px))
        row = int(np.floor((self.viewport[3] - z.imag) / (2 * self.half_height) * self.height_px))
        return (min(max(row, 0), self.height_px - 1), min(max(col, 0), self.width_px - 1))

    def to_json_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "center": {"re": self.center.real, "im": self.center.imag},
            "half_width": self.half_width,
            "half_height": self.half_height,
            "width_px": self.width_px,
            "height_px": self.height_px,
            "iteration": {
                "max_iter": self.iteration.max_iter,
                "eps_converge": self.iteration.eps_converge,
                "confirm_steps": self.iteration.confirm_steps,
                "max_period": self.iteration.max_period,
                "transient": self.iteration.transient,
            },
        }
        if self.alpha is not None:
            out["alpha"] = {"re": self.alpha.real, "im": self.alpha.imag}
        return out

    @classmethod
    def from_json_dict(cls, d: dict) -> "PlaneSpec":
        alpha = d.get("alpha")
        return cls(
            center=complex(d["center"]["re"], d["center"]["im"]),
            half_width=d["half_width"],
            half_height=d["half_height"],
            width_px=d["width_px"],
            height_px=d["height_px"],
            kind=d["kind"],
            alpha=complex(alpha["re"], alpha["im"]) if alpha else None,
            iteration=IterationConfig(**d["iteration"]),
        )


def rle_encode(tags: np.ndarray, iters: np.ndarray) -> list[list[int]]:
    """Run-length triples [tag, iterations, count] over the flat pair stream."""
    out: list[list[int]] = []
    for t, i in zip(tags.ravel().tolist(), iters.ravel().tolist()):
        if out and out[-1][0] == t and out[-1][1] == i:
            out[-1][2] += 1
        else:
            out.append([int(t), int(i), 1])
    return out


def rle_decode(runs, n: int) -> tuple[np.ndarray, np.ndarray]:
    tags = np.empty(n, dtype=np.int16)
    iters = np.empty(n, dtype=np.int32)
    pos = 0
    for t, i, c in runs:
        tags[pos:pos + c] = t
        iters[pos:pos + c] = i
        pos += c
    if pos != n:
        raise ValueError(f"run lengths sum to {pos}, expected {n}")
    return tags, iters


@dataclass(frozen=True)
class ClassificationGrid:
    spec: PlaneSpec
    tags: np.ndarray  # int16, (height_px, width_px), row-major
    iters: np.ndarray  # int32, same shape
    legend: dict[int, str]

    def __post_init__(self):
        shape = (self.spec.height_px, self.spec.width_px)
        if self.tags.shape != shape or self.iters.shape != shape:
            raise ValueError("cell arrays must match the spec's pixel shape")
        present = set(np.unique(self.tags).tolist())
        missing = present - set(self.legend)
        if missing:
            raise ValueError(f"tags {sorted(missing)} missing from legend")

    def stats(self) -> dict[str, int]:
        out: dict[str, int] = {}
        values, counts = np.unique(self.tags, return_counts=True)
        for v, c in zip(values.tolist(), counts.tolist()):
            out[self.legend[v]] = int(c)
        return out

    def to_json_dict(self) -> dict:
        return {
            "spec": self.spec.to_json_dict(),
            "legend": {str(k): v for k, v in self.legend.items()},
            "cells": rle_encode(self.tags, self.iters),
            "stats": self.stats(),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "ClassificationGrid":
        spec = PlaneSpec.from_json_dict(d["spec"])
        tags, iters = rle_decode(d["cells"], spec.width_px * spec.height_px)
        return cls(
            spec=spec,
            tags=tags.reshape(spec.height_px, spec.width_px),
            iters=iters.reshape(spec.height_px, spec.width_px),
            legend={int(k): v for k, v in d["legend"].items()},
        )


def _cfg_kwargs(cfg: IterationConfig) -> dict:
    return {
        "max_iter": cfg.max_iter,
        "eps_converge": cfg.eps_converge,
        "confirm_steps": cfg.confirm_steps,
        "max_period": cfg.max_period,
        "transient": cfg.transient,
    }


def render_dynamical_plane(spec: PlaneSpec, supersample: bool = False) -> ClassificationGrid:
    """Classify every pixel of a dynamical plane for spec.alpha.

    With supersample=True each pixel takes the majority fate of a 2x2
    subgrid (ties keep the first subsample).
    """
    if spec.kind != "dynamical":
        raise ValueError("spec.kind must be 'dynamical'")
    clf = DynamicalPlaneClassifier(alpha=spec.alpha, **_cfg_kwargs(spec.iteration)).fit()
    if not supersample:
        tags, iters = clf.predict_with_counts(spec.points())
    else:
        tags, iters = _supersampled(spec, clf)
    shape = (spec.height_px, spec.width_px)
    return ClassificationGrid(spec, tags.reshape(shape), iters.reshape(shape),
                              dict(clf.legend_))


def _supersampled(spec: PlaneSpec, clf) -> tuple[np.ndarray, np.ndarray]:
    fine = replace(spec, width_px=2 * spec.width_px, height_px=2 * spec.height_px)
    t, i = clf.predict_with_counts(fine.points())
    t = t.reshape(fine.height_px, fine.width_px)
    i = i.reshape(fine.height_px, fine.width_px)
    quads_t = np.stack([t[0::2, 0::2], t[0::2, 1::2], t[1::2, 0::2], t[1::2, 1::2]])
    quads_i = np.stack([i[0::2, 0::2], i[0::2, 1::2], i[1::2, 0::2], i[1::2, 1::2]])
    out_t = quads_t[0].copy()
    out_i = quads_i.mean(axis=0).astype(np.int32)
    # majority vote over the four subsamples
    for h in range(out_t.shape[0]):
        for w in range(out_t.shape[1]):
            vals, counts = np.unique(quads_t[:, h, w], return_counts=True)
            out_t[h, w] = vals[np.argmax(counts)]
    return out_t.ravel(), out_i.ravel()


def render_parameter_plane(spec: PlaneSpec) -> ClassificationGrid:
    """Classify every pixel of the parameter plane by critical-orbit fates."""
    if spec.kind != "parameter":
        raise ValueError("spec.kind must be 'parameter'")
    clf = ParameterPlaneClassifier(**_cfg_kwargs(spec.iteration)).fit()
    tags, iters = clf.predict_with_counts(spec.points())
    shape = (spec.height_px, spec.width_px)
    return ClassificationGrid(spec, tags.reshape(shape), iters.reshape(shape),
                              dict(clf.legend_))


@dataclass(frozen=True)
class BifurcationData:
    """Real-axis tracks of the strange fixed points and critical points."""

    alphas: np.ndarray
    locations: dict[str, np.ndarray]  # one, s1, s2 -> complex tracks
    moduli: dict[str, np.ndarray]  # multiplier modulus tracks
    critical: dict[str, np.ndarray]  # c1, c2 -> complex tracks

    def attracting_windows(self, label: str) -> list[tuple[float, float]]:
        """Maximal alpha intervals where the labelled point attracts
        (multiplier modulus < 1 outside the parabolic band)."""
        good = self.moduli[label] < 1 - TOL_PARABOLIC
        out = []
        start = None
        for a, g in zip(self.alphas, good):
            if g and start is None:
                start = a
            elif not g and start is not None:
                out.append((float(start), float(prev)))
                start = None
            prev = a
        if start is not None:
            out.append((float(start), float(self.alphas[-1])))
        return out


def bifurcation_scan(alpha_min: float, alpha_max: float, step: float) -> BifurcationData:
    """Tabulate locations and stability of 1, s1, s2 and the critical points
    over a real alpha grid."""
    if not alpha_min < alpha_max:
        raise ValueError("alpha_min must be below alpha_max")
    if step <= 0:
        raise ValueError("step must be positive")
    n = int(round((alpha_max - alpha_min) / step)) + 1
    alphas = np.linspace(alpha_min, alpha_max, n)
    labels = ("one", "s1", "s2")
    loc = {k: np.full(n, np.nan + 0j, dtype=np.complex128) for k in labels}
    mod = {k: np.full(n, np.nan) for k in labels}
    crit = {k: np.empty(n, dtype=np.complex128) for k in ("c1", "c2")}
    for i, a in enumerate(alphas):
        by_label = {}
        for info in stability_report(a):
            by_label[info.label] = info
        if "s2" not in by_label and "s1" in by_label:
            by_label["s2"] = by_label["s1"]  # merged pair
        if "s1" not in by_label and "one" in by_label and by_label["one"].multiplicity == 3:
            by_label["s1"] = by_label["s2"] = by_label["one"]
        for k in labels:
            info = by_label.get(k)
            if info is None:
                continue
            loc[k][i] = info.location.value
            mod[k][i] = abs(info.multiplier)
        cs = critical_points(a)
        c1, c2 = cs.free
        crit["c1"][i] = np.inf if c1.infinite else c1.value
        crit["c2"][i] = np.inf if c2.infinite else c2.value
    return BifurcationData(alphas, loc, mod, crit)

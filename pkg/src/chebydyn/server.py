"""Stateless HTTP API over the renderers and classifiers.

Every endpoint is a pure function of its URL, so responses are cacheable
by full URL; an optional small in-memory cache keyed that way is kept
under a lock.  Complex numbers travel as separate real fields (are/aim).
"""

from __future__ import annotations

import json
import threading
from collections import OrderedDict

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware

from .analysis import BODY_CENTER, BODY_RADIUS, HEAD_CENTER, HEAD_RADIUS, LEFT_ANTENNA, RIGHT_ANTENNA
from .cli import classify_payload
from .imaging import default_palette, encode_image
from .orbits import IterationConfig
from .plane import (
    DEFAULT_DYNAMICAL_VIEW,
    DEFAULT_PARAMETER_VIEW,
    PlaneSpec,
    render_dynamical_plane,
    render_parameter_plane,
)

MAX_PIXELS = 16_000_000


class _UrlCache:
    """URL-keyed byte cache, single writer, bounded size."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self._lock = threading.Lock()
        self._data: OrderedDict[str, bytes] = OrderedDict()

    def get(self, key: str) -> bytes | None:
        with self._lock:
            return self._data.get(key)

    def put(self, key: str, value: bytes) -> None:
        if self.capacity <= 0:
            return
        with self._lock:
            self._data[key] = value
            while len(self._data) > self.capacity:
                self._data.popitem(last=False)


def _parse_float(params, name: str, default: float | None = None) -> float:
    raw = params.get(name)
    if raw is None:
        if default is None:
            raise HTTPException(status_code=400, detail=f"missing query parameter {name!r}")
        return default
    try:
        value = float(raw)
    except ValueError:
        raise HTTPException(status_code=400, detail=f"malformed {name!r}: {raw!r}")
    if value != value or value in (float("inf"), float("-inf")):
        raise HTTPException(status_code=400, detail=f"non-finite {name!r}")
    return value


def _parse_int(params, name: str, default: int) -> int:
    raw = params.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise HTTPException(status_code=400, detail=f"malformed {name!r}: {raw!r}")


def _plane_args(params, default_view):
    re0 = _parse_float(params, "re0", default_view[0])
    re1 = _parse_float(params, "re1", default_view[1])
    im0 = _parse_float(params, "im0", default_view[2])
    im1 = _parse_float(params, "im1", default_view[3])
    w = _parse_int(params, "w", 600)
    h = _parse_int(params, "h", 480)
    max_iter = _parse_int(params, "max_iter", 300)
    if not (re0 < re1 and im0 < im1):
        raise HTTPException(status_code=400, detail="viewport must satisfy re0<re1 and im0<im1")
    if w < 1 or h < 1 or max_iter < 2:
        raise HTTPException(status_code=400, detail="w, h and max_iter must be positive")
    if w * h > MAX_PIXELS:
        raise HTTPException(status_code=422, detail=f"w*h exceeds {MAX_PIXELS} pixels")
    cfg = IterationConfig(max_iter=max_iter, transient=min(200, max(1, max_iter // 2)))
    return re0, re1, im0, im1, w, h, cfg


def create_app(cache_size: int = 32, ui_dir=None) -> FastAPI:
    app = FastAPI(title="chebydyn", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["GET"], allow_headers=["*"]
    )
    cache = _UrlCache(cache_size)

    @app.exception_handler(RequestValidationError)
    async def _validation_as_400(request, exc):  # malformed query -> 400
        return Response(content=json.dumps({"detail": str(exc)}),
                        status_code=400, media_type="application/json")

    def _png_response(key: str, build) -> Response:
        body = cache.get(key)
        if body is None:
            body = build()
            cache.put(key, body)
        return Response(content=body, media_type="image/png",
                        headers={"Cache-Control": "public, max-age=86400"})

    @app.get("/api/param-plane")
    def param_plane(request: Request):
        params = request.query_params
        re0, re1, im0, im1, w, h, cfg = _plane_args(params, DEFAULT_PARAMETER_VIEW)

        def build() -> bytes:
            spec = PlaneSpec.from_viewport(re0, re1, im0, im1, w, h,
                                           kind="parameter", iteration=cfg)
            grid = render_parameter_plane(spec)
            return encode_image(grid, default_palette(grid), fmt="png")

        return _png_response(str(request.url), build)

    @app.get("/api/dyn-plane")
    def dyn_plane(request: Request):
        params = request.query_params
        are = _parse_float(params, "are")
        aim = _parse_float(params, "aim", 0.0)
        re0, re1, im0, im1, w, h, cfg = _plane_args(params, DEFAULT_DYNAMICAL_VIEW)

        def build() -> bytes:
            spec = PlaneSpec.from_viewport(re0, re1, im0, im1, w, h,
                                           kind="dynamical",
                                           alpha=complex(are, aim), iteration=cfg)
            grid = render_dynamical_plane(spec)
            return encode_image(grid, default_palette(grid), fmt="png")

        return _png_response(str(request.url), build)

    @app.get("/api/classify")
    def classify(request: Request):
        params = request.query_params
        are = _parse_float(params, "are")
        aim = _parse_float(params, "aim", 0.0)
        payload = classify_payload(complex(are, aim))
        return Response(content=json.dumps(payload), media_type="application/json",
                        headers={"Cache-Control": "public, max-age=86400"})

    @app.get("/api/meta")
    def meta():
        return {
            "default_viewports": {
                "parameter": dict(zip(("re0", "re1", "im0", "im1"), DEFAULT_PARAMETER_VIEW)),
                "dynamical": dict(zip(("re0", "re1", "im0", "im1"), DEFAULT_DYNAMICAL_VIEW)),
            },
            "landmarks": {
                "head": {"center": {"re": HEAD_CENTER, "im": 0.0}, "radius": HEAD_RADIUS},
                "body": {"center": {"re": BODY_CENTER, "im": 0.0}, "radius": BODY_RADIUS},
                "antennas": [list(LEFT_ANTENNA), list(RIGHT_ANTENNA)],
            },
        }

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    return app


def serve_http(port: int = 8765, host: str = "127.0.0.1", ui_dir=None) -> None:
    import uvicorn

    uvicorn.run(create_app(ui_dir=ui_dir), host=host, port=port, log_level="info")

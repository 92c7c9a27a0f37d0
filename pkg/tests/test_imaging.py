import io

import numpy as np
import pytest

from chebydyn.exceptions import UnmappedTag
from chebydyn.imaging import default_palette, encode_image, encode_ppm, render_rgb
from chebydyn.orbits import IterationConfig
from chebydyn.plane import ClassificationGrid, PlaneSpec, render_dynamical_plane

FAST = IterationConfig(max_iter=300, transient=100)


def tiny_grid(tags, legend, width, height):
    spec = PlaneSpec.from_viewport(-1, 1, -1, 1, width, height,
                                   kind="dynamical", alpha=1.0, iteration=FAST)
    tags = np.asarray(tags, dtype=np.int16).reshape(height, width)
    iters = np.ones((height, width), dtype=np.int32)
    return ClassificationGrid(spec, tags, iters, legend)


class TestPpm:
    def test_single_pixel(self):
        grid = tiny_grid([1], {1: "roots-only"}, 1, 1)
        data = encode_ppm(grid, {1: (255, 255, 255)})
        assert data == b"P6\n1 1\n255\n\xff\xff\xff"

    def test_row_major_order(self):
        grid = tiny_grid([1, 2], {1: "a", 2: "b"}, 2, 1)
        data = encode_ppm(grid, {1: (10, 20, 30), 2: (40, 50, 60)})
        assert data == b"P6\n2 1\n255\n" + bytes([10, 20, 30, 40, 50, 60])

    def test_header_format(self):
        grid = tiny_grid(np.zeros(35), {0: "undecided"}, 7, 5)
        data = encode_ppm(grid, {0: (0, 0, 0)})
        assert data.startswith(b"P6\n7 5\n255\n")
        assert len(data) == len(b"P6\n7 5\n255\n") + 3 * 35

    def test_deterministic(self):
        grid = render_dynamical_plane(
            PlaneSpec.from_viewport(-2, 2, -2, 2, 16, 16, kind="dynamical",
                                    alpha=3.0, iteration=FAST))
        pal = default_palette(grid)
        assert encode_ppm(grid, pal) == encode_ppm(grid, pal)

    def test_unmapped_tag(self):
        grid = tiny_grid([1, 2], {1: "a", 2: "b"}, 2, 1)
        with pytest.raises(UnmappedTag):
            encode_ppm(grid, {1: (0, 0, 0)})


class TestPng:
    def test_round_trip_pixels(self):
        from PIL import Image

        grid = render_dynamical_plane(
            PlaneSpec.from_viewport(-2, 2, -2, 2, 20, 12, kind="dynamical",
                                    alpha=1.0, iteration=FAST))
        pal = default_palette(grid)
        png = encode_image(grid, pal, fmt="png")
        img = Image.open(io.BytesIO(png))
        assert img.size == (20, 12)
        assert np.array_equal(np.asarray(img), render_rgb(grid, pal))

    def test_deterministic(self):
        grid = render_dynamical_plane(
            PlaneSpec.from_viewport(-2, 2, -2, 2, 16, 16, kind="dynamical",
                                    alpha=3.0, iteration=FAST))
        assert encode_image(grid, fmt="png") == encode_image(grid, fmt="png")


class TestPalette:
    def test_default_palette_covers_legend(self):
        grid = render_dynamical_plane(
            PlaneSpec.from_viewport(-2, 2, -2, 2, 12, 12, kind="dynamical",
                                    alpha=3.55, iteration=IterationConfig(max_iter=600)))
        pal = default_palette(grid)
        assert set(pal) == set(grid.legend)

    def test_undecided_shading_uses_iterations(self):
        spec = PlaneSpec.from_viewport(-1, 1, -1, 1, 2, 1, kind="dynamical",
                                       alpha=1.0, iteration=FAST)
        tags = np.array([[0, 0]], dtype=np.int16)
        iters = np.array([[1, 300]], dtype=np.int32)
        grid = ClassificationGrid(spec, tags, iters, {0: "undecided"})
        rgb = render_rgb(grid, {0: (100, 100, 100)})
        assert (rgb[0, 0] < rgb[0, 1]).all()

    def test_unknown_format(self):
        grid = tiny_grid([1], {1: "x"}, 1, 1)
        with pytest.raises(ValueError):
            encode_image(grid, {1: (0, 0, 0)}, fmt="bmp")

import math

import numpy as np
import pytest

import pbrkit


def test_table_counts():
    p = pbrkit.polyhedron_properties("octahedron")
    assert (p["vertex_count"], p["side_count"], p["surface_count"]) == (6, 12, 8)
    assert p["height_side_ratio"] == pytest.approx(math.sqrt(2), abs=1e-12)


def test_dual_of_cube_is_octahedron():
    dual = pbrkit.dual_polyhedron(pbrkit.regular_solid("hexahedron"))
    assert len(dual["vertices"]) == 6
    assert len(dual["faces"]) == 8


def test_equilateral_height_at_45():
    h, ratio = pbrkit.equilateral_adjust(45.0)
    assert ratio == 1.0
    assert h == pytest.approx(math.sqrt(math.sqrt(2) / 2), abs=1e-6)


def test_row_compositions():
    rows = pbrkit.enumerate_row_compositions(3, {"A": 1, "C": 2}, 0.0)
    assert rows == [["A", "A", "A"], ["A", "C"], ["C", "A"]]
    assert pbrkit.tessellate_row(4, {"A": 1, "C": 2}, 0.0, 7) in pbrkit.enumerate_row_compositions(
        4, {"A": 1, "C": 2}, 0.0
    )


def test_pipes_two_straights():
    sols = pbrkit.solve_grid_configurations(1, 2, ["straight", "straight"])
    assert sols == [[0, 0], [0, 2], [2, 0], [2, 2]]


def test_measures():
    assert len(pbrkit.measure_kinds()) == 10
    assert pbrkit.measure((0, 0, 0), (3, 4, 0)) == pytest.approx(5.0)
    assert pbrkit.signed_difference((10, 20, 30), (10, 20, 30), "cosine") == 0.0


def test_uniform_image_is_exact():
    img = np.full((60, 80, 3), (12, 200, 40), dtype=np.uint8)
    assert pbrkit.nine_grid_color(img, seed=5) == pytest.approx([12, 200, 40])


def test_fit_and_invert():
    days = list(range(1, 11))
    diffs = [-3.0 * d for d in days]
    model = pbrkit.fit(days, diffs, 1)
    assert model["r2"] == pytest.approx(1.0)
    assert pbrkit.estimate_age(model, -15.0) == pytest.approx(5.0, abs=1e-6)


def test_errors_carry_code():
    with pytest.raises(pbrkit.PbrkitError, match="NoComposition"):
        pbrkit.tessellate_row(0.5, {"A": 1, "B": 1.5, "C": 2}, 0.0)


def test_synthetic_frame_shape():
    frame = pbrkit.synthetic_frame(5, 30, 1.0, 3)
    assert frame.shape == (240, 320, 3)
    assert frame.dtype == np.uint8

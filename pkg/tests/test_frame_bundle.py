import numpy as np
import pytest

from framecurv.base_manifold import christoffel, flat, space_form
from framecurv.errors import IndexOutOfRange, InvalidFrame
from framecurv.frame_bundle import (
    AffineField,
    CoordTangent,
    FramePoint,
    LMTangent,
    decompose,
    decompose_matrix,
    horizontal_lift,
    lie_bracket,
    random_frame_point,
    recompose,
    right_mult,
    right_mult_pushforward,
    vertical_lift,
)


def test_frame_point_rejects_singular_frame():
    with pytest.raises(InvalidFrame):
        FramePoint([0.0, 0.0], [[1.0, 2.0], [2.0, 4.0]])


def test_chart_round_trip():
    p = random_frame_point(np.random.default_rng(0), 3)
    q = p.chart()
    assert q.size == 3 + 9
    back = FramePoint.from_chart(q)
    np.testing.assert_array_equal(back.u, p.u)
    np.testing.assert_array_equal(FramePoint.from_json(p.to_json()).u, p.u)


def test_right_mult():
    x = np.array([0.1, 0.2])
    assert np.array_equal(right_mult(FramePoint(x, np.eye(2)), 0)[1], [1.0, 0.0])
    assert np.array_equal(right_mult(FramePoint(x, 2 * np.eye(2)), 1)[1], [0.0, 2.0])
    p = random_frame_point(np.random.default_rng(3), 2)
    assert np.array_equal(right_mult(p, 1)[1], p.u[:, 1])
    with pytest.raises(IndexOutOfRange):
        right_mult(p, 2)


def test_horizontal_lift_flat_and_origin():
    X = np.array([0.3, -1.2])
    for g, x in ((flat(2), [0.4, 0.1]), (space_form(2, 1.0), [0.0, 0.0])):
        t = horizontal_lift(X, FramePoint(x, [[1.0, 0.5], [0.0, 1.0]]), g)
        np.testing.assert_array_equal(t.a, X)
        assert not t.b.any()


def test_horizontal_lift_formula():
    g = space_form(2, 1.0)
    p = FramePoint([1.0, 0.0], np.eye(2))
    t = horizontal_lift([1.0, 0.0], p, g)
    gam = christoffel(g, p.x)
    expected = -np.einsum("jab,ai,b->ji", gam, p.u, [1.0, 0.0])
    np.testing.assert_allclose(t.b, expected, atol=1e-15)


def test_vertical_lift_example():
    t = vertical_lift([1.0, 0.0], 0, 2)
    np.testing.assert_array_equal(t.b, [[1.0, 0.0], [0.0, 0.0]])
    assert not t.a.any()
    assert not vertical_lift([0.0, 0.0], 1, 2).b.any()


def test_decompose_lifts():
    g = space_form(3, 0.8)
    p = random_frame_point(np.random.default_rng(7), 3)
    X = np.array([0.2, -0.4, 1.0])
    h = decompose(horizontal_lift(X, p, g), p, g)
    np.testing.assert_allclose(h.h, X, atol=1e-15)
    np.testing.assert_allclose(h.v, 0.0, atol=1e-15)
    v = decompose(vertical_lift(X, 2, 3), p, g)
    assert not v.h.any()
    np.testing.assert_array_equal(v.v[2], X)
    assert not v.v[:2].any()


def test_decompose_flat_reads_columns():
    p = random_frame_point(np.random.default_rng(2), 2)
    b = np.array([[1.0, 2.0], [3.0, 4.0]])
    w = decompose(CoordTangent([5.0, 6.0], b), p, flat(2))
    np.testing.assert_array_equal(w.v[0], b[:, 0])
    np.testing.assert_array_equal(w.h, [5.0, 6.0])


def test_decompose_matrix_inverts_recompose():
    g = space_form(2, -0.5)
    p = random_frame_point(np.random.default_rng(11), 2)
    rng = np.random.default_rng(12)
    w = LMTangent(rng.normal(size=2), rng.normal(size=(2, 2)))
    c = recompose(w, p, g)
    np.testing.assert_allclose(decompose_matrix(p, g) @ c.flat(), w.flat(), atol=1e-14)


def test_bracket_of_vertical_lifts_vanishes():
    g = space_form(2, 1.0)
    p = random_frame_point(np.random.default_rng(5), 2)
    rng = np.random.default_rng(6)
    X = AffineField(p.x, rng.normal(size=2), rng.normal(size=(2, 2)))
    Y = AffineField(p.x, rng.normal(size=2), rng.normal(size=(2, 2)))
    for i, j in ((0, 0), (0, 1)):
        assert not np.any(lie_bracket(X, Y, i, j, p, g).flat())


def test_bracket_flat_coordinate_fields():
    p = random_frame_point(np.random.default_rng(8), 2)
    X = AffineField.constant([1.0, 0.0], p.x)
    Y = AffineField.constant([0.0, 1.0], p.x)
    np.testing.assert_allclose(lie_bracket(X, Y, "h", "h", p, flat(2)).flat(), 0.0, atol=1e-15)


def test_lm_tangent_arithmetic():
    a = LMTangent.horizontal([1.0, 2.0])
    b = LMTangent.vertical([3.0, 4.0], 1)
    c = a + b * 2.0 - a
    np.testing.assert_array_equal(c.flat(), (b * 2.0).flat())
    np.testing.assert_array_equal((-c).v[1], [-6.0, -8.0])


def test_right_mult_pushforward_of_lifts():
    g = space_form(2, 0.6)
    p = random_frame_point(np.random.default_rng(13), 2)
    X = np.array([0.7, -0.2])
    h, v = right_mult_pushforward(horizontal_lift(X, p, g), p, 1, g)
    np.testing.assert_allclose(h, X)
    np.testing.assert_allclose(v, 0.0, atol=1e-15)
    h, v = right_mult_pushforward(vertical_lift(X, 1, 2), p, 1, g)
    assert not h.any()
    np.testing.assert_array_equal(v, X)
    _, v = right_mult_pushforward(vertical_lift(X, 0, 2), p, 1, g)
    assert not v.any()

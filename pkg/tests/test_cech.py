from fractions import Fraction as F

import pytest

from cotquant import cech
from cotquant.symcalc import I, PolyFn

U_VARS = cech.COEFF_VARS
S_VARS = cech.SECTION_VARS


def band(a, b, k=3):
    return cech.CechBandComplex(cech.Band(F(a), F(b)), k)


def test_band_requires_order():
    with pytest.raises(ValueError):
        cech.Band(1, 1)
    with pytest.raises(ValueError):
        cech.CechBandComplex(cech.Band(0, 1), 2)


def test_band_integers_are_strict():
    assert cech.Band(0, 3).integers() == [1, 2]
    assert cech.Band(F(-1, 2), F(5, 2)).integers() == [0, 1, 2]
    assert cech.Band(F(1, 4), F(3, 4)).integers() == []


def test_complex_layout():
    cx = band(0, 1, 4)
    assert cx.intersections == [(0, 1), (1, 2), (2, 3), (3, 0)]
    assert cx.jump_index == 3
    assert cx.triple_intersections == []


def test_coboundary_of_constant_cochain():
    cx = band(F(-1, 2), F(1, 2))
    beta = cech.coboundary(cx, cech.Cochain.from_amplitudes(0, [1, 1, 1]))
    u = PolyFn.var(U_VARS, "u")
    assert beta.coefficients[:2] == (PolyFn.zero(U_VARS), PolyFn.zero(U_VARS))
    assert beta.coefficients[2] == u - 1


def test_coboundary_is_linear_and_squares_to_zero():
    cx = band(0, 1)
    assert cech.coboundary(cx, cech.Cochain.from_amplitudes(0, [0, 0, 0])).is_zero()
    beta = cech.coboundary(cx, cech.Cochain.from_amplitudes(0, [1, 2, 3]))
    assert beta.degree == 1
    assert cech.coboundary(cx, beta).is_zero()


def test_coboundary_wrong_length():
    with pytest.raises(ValueError):
        cech.coboundary(band(0, 1), cech.Cochain.from_amplitudes(0, [1, 2]))


@pytest.mark.parametrize("k", range(3, 9))
def test_determinant_is_unit_multiple_of_u_minus_one(k):
    det = cech.coboundary_determinant(band(0, 1, k))
    u = PolyFn.var(("u",), "u")
    assert det in (u - 1, 1 - u)


@pytest.mark.parametrize(
    "a, b, k, h1, bs",
    [
        ("1/4", "3/4", 3, 0, ()),
        ("-1/2", "1/2", 3, 1, (0,)),
        ("-1/2", "5/2", 5, 3, (0, 1, 2)),
        ("-1/2", "5/2", 3, 3, (0, 1, 2)),
        ("0", "1", 3, 0, ()),
        ("-7/3", "-1/3", 4, 2, (-2, -1)),
    ],
)
def test_cohomology_examples(a, b, k, h1, bs):
    res = cech.cohomology_dimensions(band(F(a), F(b), k))
    assert (res.h0, res.h1, res.bs_leaves) == (0, h1, bs)


def test_unit_values():
    assert cech.unit_value(3) == 1
    assert cech.unit_value(F(1, 2)) == -1
    assert cech.unit_value(F(1, 4)) == -I
    assert cech.unit_value(F(1, 3)) is None


@pytest.mark.parametrize("t0", [0, 1, -2])
def test_solvability_at_integers(t0):
    res = cech.local_solvability(band(-3, 3), t0, degree=4)
    assert res.codimension == 1
    assert res.image_equals_functional_kernel


@pytest.mark.parametrize("t0", [F(1, 2), F(1, 3), F(-5, 4)])
def test_solvability_off_integers(t0):
    res = cech.local_solvability(band(-3, 3), t0, degree=4)
    assert res.codimension == 0
    assert res.image_equals_functional_kernel


def test_solvability_independent_of_unit_slope():
    cx = band(-1, 1, 4)
    a = cech.local_solvability(cx, 0, degree=3)
    b = cech.local_solvability(cx, 0, degree=3, unit_slope=[2, 5, -1])
    assert (a.image_rank, a.image_equals_functional_kernel) == (b.image_rank, b.image_equals_functional_kernel)
    with pytest.raises(ValueError):
        cech.local_solvability(cx, 0, unit_slope=[0, 1])


def test_flat_section_residuals():
    t, theta = PolyFn.gens(S_VARS)
    one = PolyFn.const(S_VARS, 1)
    assert cech.flat_section_residual(t * theta, one).is_zero()
    assert cech.flat_section_residual(PolyFn.zero(S_VARS), one) == t * (-I)
    assert cech.flat_section_residual(2 * t * theta, one) == t * I
    with pytest.raises(ValueError):
        cech.flat_section_residual(PolyFn.var(("t",), "t"), one)


@pytest.mark.parametrize(
    "t0, trivial, phase",
    [(3, True, 0), (F(1, 2), False, F(1, 2)), (-2, True, 0), (F(-1, 3), False, F(2, 3))],
)
def test_holonomy(t0, trivial, phase):
    h = cech.holonomy(t0)
    assert h.trivial is trivial and h.phase == phase

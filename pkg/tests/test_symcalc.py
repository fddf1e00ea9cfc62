from fractions import Fraction

import pytest

from cotquant.symcalc import (
    DegenerateFormError,
    ExpTrig,
    I,
    PolyField,
    PolyFn,
    PolyForm,
    PolyMap,
    QI,
    exterior_derivative,
    hamiltonian_vector_field,
    interior_product,
    parse_rational,
    poisson_bracket,
    pullback,
    wedge,
)
from cotquant.symcalc import linalg

XY = ("x", "y")
X4 = ("x1", "x2", "y1", "y2")


@pytest.fixture
def plane():
    x, y = PolyFn.gens(XY)
    return x, y, PolyForm.d(XY, "x", "y")


@pytest.fixture
def four():
    return PolyFn.gens(X4), PolyForm.darboux(X4, [("x1", "y1"), ("x2", "y2")])


# scalars and polynomials ---------------------------------------------------


def test_parse_rational_accepts_integers_and_fractions():
    assert parse_rational("3") == 3
    assert parse_rational("-1/2") == Fraction(-1, 2)
    assert parse_rational(" 4/6 ") == Fraction(2, 3)


@pytest.mark.parametrize("bad", ["0.5", "1e3", "1/", "/2", "a", "", "1/2/3"])
def test_parse_rational_rejects_float_syntax(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_gaussian_rational_arithmetic():
    z = QI(1, 2)
    assert z * z.inverse() == 1
    assert I * I == -1
    assert (z * z.conjugate()).is_real and z.norm() == 5
    assert QI(3) == 3 and hash(QI(3)) == hash(3)
    with pytest.raises(ZeroDivisionError):
        QI(0).inverse()


def test_poly_drops_zero_terms():
    x, y = PolyFn.gens(XY)
    p = x * y - y * x
    assert p.is_zero() and p.terms == {}
    assert (x + 1) ** 2 == x * x + 2 * x + 1


def test_poly_variable_mismatch_is_an_error():
    x = PolyFn.var(XY, "x")
    z = PolyFn.var(("z",), "z")
    with pytest.raises(ValueError):
        x + z


def test_poly_compose_and_evaluate():
    x, y = PolyFn.gens(XY)
    p = x * x * y + 3
    assert p.evaluate([2, Fraction(1, 2)]) == 5
    assert p.compose([x + y, x - y]) == (x + y) ** 2 * (x - y) + 3


def test_linalg_charpoly_and_inverse():
    a = [[0, 1], [-4, 0]]
    assert linalg.charpoly(a) == [1, 0, 4]
    inv = linalg.inverse([[2, 1], [1, 1]])
    assert linalg.matmul(inv, linalg.as_matrix([[2, 1], [1, 1]])) == linalg.identity(2)
    assert linalg.det([[1, 2], [2, 4]]) == 0
    assert len(linalg.nullspace([[1, 2], [2, 4]])) == 1


# exp/trig algebra -----------------------------------------------------------


def test_exptrig_relations():
    c, s = ExpTrig.cos("t"), ExpTrig.sin("t")
    assert c * c + s * s == 1
    assert ExpTrig.exp("t", 1) * ExpTrig.exp("t", -1) == 1
    assert ExpTrig.expi("t", 1) * ExpTrig.expi("t", -1) == 1


def test_exptrig_derivative_table():
    assert ExpTrig.param("t").derivative_at_zero("t") == 1
    assert ExpTrig.exp("t", 1).derivative_at_zero("t") == 1
    assert ExpTrig.exp("t", -1).derivative_at_zero("t") == -1
    assert ExpTrig.cos("t").derivative_at_zero("t") == 0
    assert ExpTrig.sin("t").derivative_at_zero("t") == 1
    assert ExpTrig.expi("t", -1).derivative_at_zero("t") == -I
    # product rule through a mixed monomial
    prod = ExpTrig.exp("t", -1) * ExpTrig.cos("theta")
    assert prod.derivative_at_zero("t") == -1
    assert prod.derivative_at_zero("theta") == 0
    assert (ExpTrig.sin("t") * ExpTrig.sin("t")).derivative_at_zero("t") == 0
    assert ExpTrig.cos("t").at_zero() == 1 and ExpTrig.sin("t").at_zero() == 0


# forms ------------------------------------------------------------------------


def test_d_of_x_dy(plane):
    x, _, w = plane
    assert exterior_derivative(PolyForm(XY, 1, {(1,): x})) == w


def test_d_of_top_form_is_empty(plane):
    _, _, w = plane
    top = exterior_derivative(w)
    assert top.degree == 3 and top.is_zero()


def test_d_of_x2y_dx(plane):
    x, y, w = plane
    assert exterior_derivative(PolyForm(XY, 1, {(0,): x * x * y})) == w * (-(x * x))


def test_canonical_sign_on_construction(plane):
    x, _, w = plane
    assert PolyForm(XY, 2, {(1, 0): x}) == w * (-x)
    assert PolyForm(XY, 2, {(0, 0): x}).is_zero()


def test_wedge_is_graded_commutative(plane):
    x, y, _ = plane
    a = PolyForm(XY, 1, {(0,): y})
    b = PolyForm(XY, 1, {(1,): x})
    assert wedge(a, b) == -wedge(b, a)
    assert wedge(a, a).is_zero()


def test_interior_product_examples(plane):
    x, y, w = plane
    field = PolyField.from_exprs(XY, [-x, y])
    assert interior_product(field, w) == -exterior_derivative(PolyForm.function(x * y))
    assert interior_product(PolyField.zero(XY), w).is_zero()
    qp = ("q", "p")
    q, p = PolyFn.gens(qp)
    lam = PolyForm(qp, 1, {(0,): p})
    assert interior_product(PolyField.coordinate(qp, "p"), lam).is_zero()
    assert interior_product(PolyField.coordinate(qp, "q"), lam).as_function() == p


def test_interior_product_rejects_functions_and_mismatch(plane):
    x, _, _ = plane
    with pytest.raises(ValueError):
        interior_product(PolyField.zero(XY), PolyForm.function(x))
    with pytest.raises(ValueError):
        interior_product(PolyField.zero(("a", "b")), PolyForm.d(XY, "x", "y"))


def test_hamiltonian_fields_of_model_functions(plane, four):
    x, y, w = plane
    assert hamiltonian_vector_field(x * y, w) == PolyField.from_exprs(XY, [-x, y])
    assert hamiltonian_vector_field((x * x + y * y) / 2, w) == PolyField.from_exprs(XY, [-y, x])
    (x1, x2, y1, y2), w4 = four
    assert hamiltonian_vector_field(x1 * y2 - x2 * y1, w4) == PolyField.from_exprs(X4, [x2, -x1, y2, -y1])


def test_hamiltonian_field_rejects_degenerate_forms(plane):
    x, _, w = plane
    with pytest.raises(DegenerateFormError):
        hamiltonian_vector_field(x, PolyForm.zero(XY, 2))
    with pytest.raises(DegenerateFormError):
        hamiltonian_vector_field(x, w * x)
    v3 = ("a", "b", "c")
    with pytest.raises(DegenerateFormError):
        hamiltonian_vector_field(PolyFn.var(v3, "a"), PolyForm.d(v3, "a", "b"))


def test_poisson_bracket_examples(plane, four):
    x, y, w = plane
    assert poisson_bracket(x, y, w) == 1
    (x1, x2, y1, y2), w4 = four
    assert poisson_bracket(x1 * y1, x2 * y2, w4).is_zero()
    assert poisson_bracket(x1 * y2 - x2 * y1, x1 * y1 + x2 * y2, w4).is_zero()


def test_pullback_examples():
    qp = ("q", "p")
    q, p = PolyFn.gens(qp)
    lam = PolyForm(qp, 1, {(0,): p})
    shift = PolyMap(qp, qp, (q + 5, p))
    assert pullback(shift, lam) == lam
    assert pullback(PolyMap.identity(qp), lam) == lam
    # fixed hyperbolic group element as the unit pair (a, 1/a)
    a, ainv = ExpTrig.exp("t0", -1), ExpTrig.exp("t0", 1)
    hyp = PolyMap(qp, qp, (q * a, p * ainv))
    assert pullback(hyp, PolyForm.d(qp, "q", "p")) == PolyForm.d(qp, "q", "p")


def test_pullback_is_functorial():
    v = ("a", "b")
    a, b = PolyFn.gens(v)
    phi = PolyMap(v, v, (a * b, a + b * b))
    psi = PolyMap(v, v, (a - 1, a * a * b))
    form = PolyForm(v, 1, {(0,): a * b, (1,): b})
    assert pullback(phi.compose(psi), form) == pullback(psi, pullback(phi, form))


def test_pullback_dimension_mismatch():
    v = ("a", "b")
    a, b = PolyFn.gens(v)
    phi = PolyMap(v, ("p",), (a,))
    with pytest.raises(ValueError):
        pullback(phi, PolyForm.d(v, "a"))

"""Property tests for the algebraic and counting invariants."""

import random
from fractions import Fraction

from hypothesis import HealthCheck, given, settings, strategies as st

from cotquant import cech, normal_forms as nf, polytope as pt, quantize as qz
from cotquant.cli import render_svg
from cotquant.symcalc import (
    PolyFn,
    PolyForm,
    PolyMap,
    QI,
    exterior_derivative,
    interior_product,
    poisson_bracket,
    pullback,
    wedge,
)

from _support import (
    darboux,
    is_symplectic,
    poisson_by_formula,
    random_form,
    random_poly,
    random_symplectic,
    random_unimodular,
    substitute_linear,
)

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(QI, fractions, fractions)
seeds = st.integers(min_value=0, max_value=2**32 - 1)

VARS = ("a", "b", "c")


@st.composite
def polys(draw, variables=VARS, max_degree=2):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_degree)] * len(variables)), scalars, max_size=4
        )
    )
    return PolyFn(variables, terms)


# scalars and polynomials ----------------------------------------------------


@SETTINGS
@given(scalars, scalars, scalars)
def test_gaussian_rationals_form_a_field(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == 0
    if x != 0:
        assert x * x.inverse() == 1
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()


@SETTINGS
@given(polys(), polys(), polys())
def test_polynomials_form_a_ring(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert (f - f).is_zero()


@SETTINGS
@given(polys(), polys())
def test_derivative_obeys_leibniz(f, g):
    for i in range(len(VARS)):
        assert (f * g).diff(i) == f.diff(i) * g + f * g.diff(i)


# forms ------------------------------------------------------------------------


@SETTINGS
@given(seeds, st.integers(2, 4))
def test_d_squared_vanishes(seed, nvars):
    rng = random.Random(seed)
    v = tuple(f"v{i}" for i in range(nvars))
    form = random_form(rng, v, rng.randint(0, nvars), max_degree=3)
    assert exterior_derivative(exterior_derivative(form)).is_zero()


@SETTINGS
@given(seeds)
def test_d_is_a_graded_derivation(seed):
    rng = random.Random(seed)
    a = random_form(rng, VARS, rng.randint(0, 2))
    b = random_form(rng, VARS, rng.randint(0, 1))
    sign = -1 if a.degree % 2 else 1
    lhs = exterior_derivative(wedge(a, b))
    rhs = wedge(exterior_derivative(a), b) + wedge(a, exterior_derivative(b)) * sign
    assert lhs == rhs


@SETTINGS
@given(seeds)
def test_pullback_commutes_with_d(seed):
    rng = random.Random(seed)
    src = ("a", "b", "c")[: rng.randint(2, 3)]
    tgt = ("p", "q", "r")[: rng.randint(2, 3)]
    phi = PolyMap(src, tgt, tuple(random_poly(rng, src, 2, 2) for _ in tgt))
    form = random_form(rng, tgt, rng.randint(0, len(tgt) - 1), max_degree=1)
    assert pullback(phi, exterior_derivative(form)) == exterior_derivative(pullback(phi, form))


@SETTINGS
@given(seeds, st.integers(1, 2))
def test_poisson_bracket_axioms(seed, n):
    rng = random.Random(seed)
    v, w = darboux(n)
    f, g, h = (random_poly(rng, v, 2, 3) for _ in range(3))
    assert poisson_bracket(f, g, w) == -poisson_bracket(g, f, w)
    assert poisson_bracket(f, g, w) == poisson_by_formula(f, g, n)
    assert poisson_bracket(f, g * h, w) == poisson_bracket(f, g, w) * h + g * poisson_bracket(f, h, w)
    jac = (
        poisson_bracket(f, poisson_bracket(g, h, w), w)
        + poisson_bracket(g, poisson_bracket(h, f, w), w)
        + poisson_bracket(h, poisson_bracket(f, g, w), w)
    )
    assert jac.is_zero()


# normal forms -------------------------------------------------------------------

TYPES = nf.all_williamson_types(3)


@SETTINGS
@given(st.sampled_from(TYPES))
def test_normal_form_fields_solve_defining_equation(wt):
    system = nf.compose_blocks(wt)
    assert system.is_involutive()
    for f, field in zip(system.moment_map, system.hamiltonian_fields()):
        residual = interior_product(field, system.symplectic_form) + exterior_derivative(PolyForm.function(f))
        assert residual.is_zero()


def _conjugate(quadratics, m):
    return [substitute_linear(q, m) for q in quadratics]


@SETTINGS
@given(seeds, st.sampled_from(["e", "h"]))
def test_classification_invariant_in_dimension_two(seed, kind):
    rng = random.Random(seed)
    v, w = darboux(1)
    x, y = PolyFn.gens(v)
    q = x * x + y * y if kind == "e" else x * y
    m = random_symplectic(rng, 1, steps=rng.randint(1, 6))
    assert is_symplectic(m, 1)
    assert nf.williamson_classify(_conjugate([q], m), w) == nf.williamson_classify([q], w)


@SETTINGS
@given(seeds)
def test_focus_classification_invariant_in_dimension_four(seed):
    rng = random.Random(seed)
    v, w = darboux(2)
    x1, x2, y1, y2 = PolyFn.gens(v)
    qs = [x1 * y2 - x2 * y1, x1 * y1 + x2 * y2]
    m = random_symplectic(rng, 2, steps=rng.randint(1, 5))
    assert nf.williamson_classify(_conjugate(qs, m), w) == [nf.BlockKind.FOCUS_FOCUS]


# cech ---------------------------------------------------------------------------

endpoints = st.fractions(min_value=-6, max_value=6, max_denominator=6)


@SETTINGS
@given(endpoints, st.fractions(min_value=Fraction(1, 6), max_value=5, max_denominator=6), st.integers(3, 8))
def test_h1_counts_integers_for_every_cover(a, width, k):
    b = a + width
    res = cech.cohomology_dimensions(cech.CechBandComplex(cech.Band(a, b), k))
    brute = [m for m in range(-20, 20) if a < m < b]
    assert res.h0 == 0
    assert res.h1 == len(brute)
    assert list(res.bs_leaves) == brute
    assert res == cech.cohomology_dimensions(cech.CechBandComplex(cech.Band(a, b), 3))


@SETTINGS
@given(st.integers(3, 6), st.integers(-3, 3), st.integers(1, 3))
def test_each_integer_imposes_one_condition(k, m, degree):
    cx = cech.CechBandComplex(cech.Band(-4, 4), k)
    res = cech.local_solvability(cx, m, degree=degree)
    assert res.codimension == 1 and res.image_equals_functional_kernel


# polytope -----------------------------------------------------------------------

polygons = st.sampled_from(
    [
        [(0, 0), (8, 0), (0, 8)],
        [(0, 0), (2, 0), (0, 1)],
        [(0, 0), (4, 0), (4, 3), (0, 3)],
        [(0, 0), (3, 0), (3, 1), (1, 3), (0, 3)],
        [(0, 0), (5, 0), (2, 3), (0, 3)],
        [(0, 0), (1, 0), (1, 1), (0, 1)],
    ]
)


@SETTINGS
@given(polygons, seeds, st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_unimodular_invariance(verts, seed, shift):
    rng = random.Random(seed)
    P = pt.DelzantPolytope(verts)
    Q = P.transform(random_unimodular(rng, 2), shift)
    assert len(pt.interior_lattice_points(Q)) == len(pt.interior_lattice_points(P))
    assert pt.validate_delzant(Q).ok == pt.validate_delzant(P).ok


@SETTINGS
@given(polygons, st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_integral_orbit_equals_interior_points(verts, base):
    P = pt.DelzantPolytope(verts)
    orbit = set(pt.discrete_cotangent_orbit(P, base))
    assert orbit == {p.coordinates for p in pt.interior_lattice_points(P)}


@SETTINGS
@given(polygons)
def test_svg_circles_match_interior_points(verts):
    P = pt.DelzantPolytope(verts)
    pts = pt.interior_lattice_points(P)
    assert render_svg(P, pts).count("<circle") == len(pts)


@SETTINGS
@given(st.lists(st.integers(-5, 5), min_size=2, max_size=2), st.lists(fractions, min_size=2, max_size=2))
def test_discrete_lift_preserves_liouville(m, base):
    assert pt.DiscreteAction(tuple(base)).preserves_liouville(m)


# quantize -----------------------------------------------------------------------

focus_fibers = st.builds(qz.FocusFiber, st.integers(1, 5), st.booleans(), st.just(True))


@SETTINGS
@given(st.integers(0, 30), st.lists(focus_fibers, max_size=6), st.lists(st.integers(1, 5), max_size=6))
def test_new_model_ignores_node_counts(n_r, fibers, nodes):
    inv = qz.FiberInventory(n=2, n_r=n_r, focus_fibers=tuple(fibers))
    changed = tuple(
        qz.FocusFiber(nodes[i] if i < len(nodes) else f.nodes, f.is_bs, f.compact_fiber)
        for i, f in enumerate(fibers)
    )
    rep = qz.quantize_new(inv)
    assert rep.infinite_summands == ()
    assert rep.finite_dim == qz.quantize_new(qz.FiberInventory(n=2, n_r=n_r, focus_fibers=changed)).finite_dim
    old = qz.quantize_old(inv)
    if inv.bs_focus_count:
        assert not old.is_finite
    assert qz.QuantizationReport.from_json(old.to_json()) == old
    assert qz.QuantizationReport.from_json(rep.to_json()) == rep


@SETTINGS
@given(st.integers(0, 30), st.integers(0, 6))
def test_surface_models(n_r, hyp):
    inv = qz.FiberInventory(n=1, n_r=n_r, hyperbolic_points=hyp)
    old = qz.quantize_old(inv)
    assert old.multiplicity(qz.InfiniteSummandKind.TAYLOR_SERIES) == 2 * hyp
    assert old.is_finite == (hyp == 0)
    assert qz.quantize_new(inv).finite_dim == n_r


@SETTINGS
@given(polygons, polygons)
def test_kunneth_counts_multiply(a, b):
    P, Q = pt.DelzantPolytope(a), pt.DelzantPolytope(b)
    if not (pt.validate_delzant(P).ok and pt.validate_delzant(Q).ok):
        return
    prod = qz.quantize_toric(P.product(Q))
    assert prod.degree == 4
    assert prod.finite_dim == qz.quantize_toric(P).finite_dim * qz.quantize_toric(Q).finite_dim

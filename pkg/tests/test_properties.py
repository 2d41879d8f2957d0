"""Property-based checks of the algebraic invariants."""

import math
from fractions import Fraction as F

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from horochain.cf import (
    CfTerm,
    ContinuedFraction,
    cf_matrix,
    convergents,
    evaluate_oracle,
    expand_real,
    iter_states,
)
from horochain.chain2d import connecting_cycle, horocycle_first_column, horocycle_second_column
from horochain.clifford import (
    CycleND,
    VersorMatrix,
    ahlfors_validate,
    cycle_image_nd,
    cycles_residual,
    lemma4_horocycle,
    lemma5_horocycle,
    lemma6_connecting,
    md_cf_matrix,
    mobius_apply_vector,
    partial_quotient_nd,
    reflect_vector,
)
from horochain.cycle2d import (
    INFINITY,
    Cycle2,
    MoebiusMat2,
    apply_moebius_point,
    center_radius,
    cycle_image,
    inner_product,
    inner_product_trace,
    is_orthogonal,
    is_tangent,
    proj_equal,
)
from horochain.errors import PoleHit
from horochain.multivector import Multivector, conjugate, gp, lift, reverse

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small = st.integers(-6, 6)
nonzero = small.filter(lambda x: x != 0)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


# --- continued fractions -------------------------------------------------------

terms = st.builds(CfTerm, nonzero, small)
cfs = st.builds(lambda ts: ContinuedFraction(None, tuple(ts)), st.lists(terms, min_size=1, max_size=8))


@given(cfs)
def test_determinant_identity(cf):
    prod = F(1)
    for state, t in zip(iter_states(cf), cf.terms):
        prod *= -t.a
        assert state.p_prev * state.q_curr - state.p_curr * state.q_prev == prod


@given(cfs)
def test_oracle_matches_recurrence(cf):
    states = list(iter_states(cf))
    assume(all(s.q_curr != 0 for s in states))
    # the oracle evaluates from the tail, so intermediate tails must not vanish
    try:
        oracle = evaluate_oracle(cf, len(cf.terms))
    except ZeroDivisionError:
        assume(False)
    assert convergents(cf, len(cf.terms))[-1] == oracle


@given(cfs)
def test_matrix_columns_match_recurrence(cf):
    for n, s in enumerate(iter_states(cf), 1):
        M = cf_matrix(cf, n)
        assert (M.a, M.c, M.b, M.d) == (s.p_prev, s.q_prev, s.p_curr, s.q_curr)


@given(rationals)
def test_expand_real_round_trip(x):
    cf = expand_real(x)
    if not cf.terms:
        assert cf.offset == x
    else:
        assert convergents(cf, len(cf.terms))[-1] == x


@given(cfs)
def test_neighbour_gap(cf):
    states = list(iter_states(cf))
    prod = F(1)
    for s, t in zip(states, cf.terms):
        prod *= t.a
        if s.q_prev != 0 and s.q_curr != 0:
            gap = abs(F(s.p_curr) / s.q_curr - F(s.p_prev) / s.q_prev)
            assert gap == abs(prod) / abs(s.q_curr * s.q_prev)


# --- planar cycles ---------------------------------------------------------------


@st.composite
def unimodular(draw):
    """Integer matrices of determinant +-1, as products of elementary factors."""
    M = MoebiusMat2.identity()
    for b in draw(st.lists(small, min_size=1, max_size=5)):
        M = M @ MoebiusMat2(0, 1, 1, b)
    if draw(st.booleans()):
        M = MoebiusMat2(1, draw(small), 0, 1) @ M
    return M


real_cycles = st.tuples(small, small, small, small).filter(
    lambda t: t[1] ** 2 + t[2] ** 2 - t[0] * t[3] > 0
).map(lambda t: Cycle2(*t))


@given(unimodular(), real_cycles, st.integers(0, 15))
def test_locus_covariance(M, c, j):
    M = MoebiusMat2(*(float(x) for x in (M.a, M.b, M.c, M.d)))
    img = cycle_image(M, c)
    shape = center_radius(c)
    t = 2 * math.pi * j / 16
    if c.k == 0:
        (a, b), off = shape.normal, shape.offset
        nrm = a * a + b * b
        base = complex(a * off / nrm, b * off / nrm)
        z = base + complex(-b, a) * (j - 8) / 3
    else:
        (cu, cv), r = shape.center, float(shape.radius)
        z = complex(float(cu) + r * math.cos(t), float(cv) + r * math.sin(t))
    w = apply_moebius_point(M, z)
    assume(w is not INFINITY and abs(w) < 1e6)
    s = max(abs(img.k), abs(img.l), abs(img.n), abs(img.m))
    res = abs(img.evaluate(w.real, w.imag)) / s
    assert res <= 1e-8 * (1 + abs(w) ** 2)


@given(unimodular(), real_cycles, real_cycles)
def test_inner_product_invariance(M, c1, c2):
    exact = inner_product(cycle_image(M, c1), cycle_image(M, c2))
    assert exact == inner_product(c1, c2)
    Mf = MoebiusMat2(*(float(x) for x in (M.a, M.b, M.c, M.d)))
    fl = inner_product(cycle_image(Mf, c1), cycle_image(Mf, c2))
    ref = inner_product(c1, c2)
    assert abs(fl - ref) <= 1e-9 * max(1.0, abs(ref))


any_cycles = st.tuples(rationals, rationals, rationals, rationals).filter(any).map(lambda t: Cycle2(*t))


@given(any_cycles, any_cycles)
def test_trace_form(c1, c2):
    assert inner_product_trace(c1, c2) == inner_product(c1, c2)


circles = st.builds(lambda u, v, r: (u, v, r), rationals, rationals, st.fractions(F(1, 10), 10, max_denominator=10))


def _circle(u, v, r):
    return Cycle2(1, u, v, u * u + v * v - r * r)


@given(circles, circles)
def test_orthogonality_matches_metric(a, b):
    c1, c2 = _circle(*a), _circle(*b)
    d2 = (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2
    assert is_orthogonal(c1, c2) == (d2 == a[2] ** 2 + b[2] ** 2)


@given(circles, st.fractions(F(1, 10), 10, max_denominator=10), st.sampled_from([(3, 4), (0, 1), (5, 12)]))
def test_tangency_matches_metric(a, r2, direction):
    # place a second circle at distance r1 + r2 along a rational unit direction
    dx, dy = direction
    h = F(int(math.isqrt(dx * dx + dy * dy)))
    u, v, r1 = a
    c1 = _circle(u, v, r1)
    c2 = _circle(u + (r1 + r2) * dx / h, v + (r1 + r2) * dy / h, r2)
    assert is_tangent(c1, c2)
    c3 = _circle(u + (r1 + r2 + F(1, 7)) * dx / h, v + (r1 + r2 + F(1, 7)) * dy / h, r2)
    assert not is_tangent(c1, c3)


@given(unimodular(), real_cycles)
def test_reflection_commutes(M, c):
    assert c.reflect().reflect() == c
    assert proj_equal(cycle_image(M, c.reflect()), cycle_image(M, c).reflect())


@given(unimodular(), st.fractions(F(1, 5), 5, max_denominator=5), st.fractions(-5, 5, max_denominator=5))
def test_closed_forms_match_similarity(M, p, r):
    if M.c != 0:
        assert proj_equal(horocycle_first_column(M, p), cycle_image(M, Cycle2(0, 0, 1, p)))
    if M.d != 0:
        assert proj_equal(horocycle_second_column(M, p), cycle_image(M, Cycle2(p, 0, 1, 0)))
    assert proj_equal(connecting_cycle(M, r), cycle_image(M, Cycle2(0, 1, r, 0)))


# --- Clifford algebra -------------------------------------------------------------

dims = st.integers(1, 4)


@st.composite
def multivectors(draw, dim=None):
    dim = dim or draw(dims)
    return Multivector(dim, draw(st.lists(st.integers(-3, 3), min_size=1 << dim, max_size=1 << dim)))


@st.composite
def triples(draw):
    dim = draw(dims)
    return tuple(draw(multivectors(dim)) for _ in range(3))


@given(triples())
def test_gp_associative_and_distributive(t):
    x, y, z = t
    assert gp(gp(x, y), z) == gp(x, gp(y, z))
    assert gp(x, y + z) == gp(x, y) + gp(x, z)


@given(triples())
def test_anti_automorphisms(t):
    x, y, _ = t
    assert reverse(gp(x, y)) == gp(reverse(y), reverse(x))
    assert conjugate(gp(x, y)) == gp(conjugate(y), conjugate(x))
    assert reverse(reverse(x)) == x and conjugate(conjugate(x)) == x


@given(dims, st.data())
def test_generator_relations(dim, data):
    i = data.draw(st.integers(1, dim))
    j = data.draw(st.integers(1, dim))
    ei, ej = Multivector.basis(dim, i), Multivector.basis(dim, j)
    assert gp(ei, ej) + gp(ej, ei) == Multivector.scalar(dim, -2 if i == j else 0)


@st.composite
def factor_products(draw, max_len=6):
    n = draw(st.integers(1, 3))
    bs = draw(st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), max_size=max_len))
    return md_cf_matrix(bs, n), n, len(bs)


@given(factor_products())
def test_versor_matrix_structure(data):
    M, n, length = data
    assert ahlfors_validate(M).ok
    assert M.delta == (-1) ** length
    assert M @ M.bar() == VersorMatrix.of(n, M.delta, 0, 0, M.delta)
    E = Multivector.basis(n + 1, n + 1)
    d = lift(M.d, n + 1)
    assert gp(E, conjugate(d)) == gp(reverse(d), E)


@given(factor_products(), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_anticommutation_with_top_generator(data, comps):
    _, n, _ = data
    E = Multivector.basis(n + 1, n + 1)
    x = lift(Multivector.vector(n, comps[:n]), n + 1)
    assert gp(E, x) == -gp(x, E)


@given(factor_products(), st.fractions(F(1, 4), 4, max_denominator=4), st.fractions(-3, 3, max_denominator=3))
def test_nd_closed_forms(data, p, r):
    M, n, _ = data
    E = Multivector.basis(n + 1, n + 1)
    if not M.c.is_zero():
        assert cycles_residual(cycle_image_nd(M, CycleND(0, E, p)), lemma4_horocycle(M, p)) < 1e-9
    if not M.d.is_zero():
        assert cycles_residual(cycle_image_nd(M, CycleND(p, E, 0)), lemma5_horocycle(M, p)) < 1e-9
        assert lemma5_horocycle(M, p).center() - E.scale(lemma5_horocycle(M, p).height()) \
            == lift(partial_quotient_nd(M), n + 1)
    x = Multivector.basis(n, 1)
    C = CycleND(0, lift(x, n + 1) + E.scale(r), 0)
    assert cycles_residual(cycle_image_nd(M, C), lemma6_connecting(M, x, r)) < 1e-9


@given(factor_products(), st.lists(st.fractions(-3, 3, max_denominator=3), min_size=4, max_size=4))
def test_nd_reflection_equivariance(data, comps):
    M, n, _ = data
    x = Multivector.vector(n + 1, comps[:n + 1])
    try:
        y = mobius_apply_vector(M, x)
    except PoleHit:
        assume(False)
    assert mobius_apply_vector(M, reflect_vector(x)) == reflect_vector(y)


@given(st.lists(st.integers(1, 9), min_size=1, max_size=8))
def test_cl1_correspondence(bs):
    M = md_cf_matrix([[b] for b in bs])
    cf = ContinuedFraction.from_pairs([(-1, b) for b in bs])
    states = list(iter_states(cf))
    assume(states[-1].q_curr != 0)
    assert partial_quotient_nd(M).component(1) == F(states[-1].p_curr) / states[-1].q_curr

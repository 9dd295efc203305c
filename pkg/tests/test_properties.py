"""Property checks on randomly drawn polynomials and maps."""

import random
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from cremona.birmap import compose, invert_linear, is_identity, maps_equal, new_map, normalize
from cremona.errors import ComposedToZero
from cremona.family import family_Deg, minimal_writing, reparameterize, specialize
from cremona.oracle import OracleConfig, gcd_degree_estimate, identity_check_modp
from cremona.polyring import MultiPoly, VariableContext, divide_exact, gcd, gcd_many, parse_poly

import generators as G

X = VariableContext.projective(2)
FAST = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, max_degree=3, ctx=X):
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(0, max_degree)] * len(ctx)), small, max_size=5))
    return MultiPoly(ctx, terms)


seeds = st.integers(0, 2 ** 32)


@FAST
@given(polys(), polys(), polys())
def test_ring_laws(a, b, c):
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == MultiPoly.zero(X)


@FAST
@given(polys(), polys(), st.lists(small, min_size=3, max_size=3))
def test_evaluation_is_a_homomorphism(a, b, point):
    assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)
    assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)


@FAST
@given(polys(), polys(), polys(max_degree=1), polys(max_degree=1))
def test_substitute_is_a_homomorphism(a, b, u, v):
    binding = {"x0": u, "x1": v}
    assert (a * b).substitute(binding) == a.substitute(binding) * b.substitute(binding)
    assert (a + b).substitute(binding) == a.substitute(binding) + b.substitute(binding)


@FAST
@given(polys())
def test_print_parse_round_trip(a):
    assert parse_poly(str(a), X) == a


@FAST
@given(st.integers(0, 3), st.integers(1, 3), st.integers(1, 3), seeds)
def test_planted_gcd(dg, da, db, seed):
    rng = random.Random(seed)
    g = G.random_form(rng, X, dg)
    a, b = G.random_form(rng, X, da), G.random_form(rng, X, db)
    e = gcd(a * g, b * g)
    # e is g times gcd(a, b), up to a scalar
    divide_exact(e, g)
    divide_exact(a * g, e)
    divide_exact(b * g, e)
    assert e.total_degree() == dg + gcd(a, b).total_degree()
    assert e.is_homogeneous()
    assert gcd_degree_estimate([a * g, b * g], OracleConfig(seed=seed)) == e.total_degree()


@FAST
@given(seeds)
def test_gcd_many_divides(seed):
    rng = random.Random(seed)
    g = G.random_form(rng, X, rng.randint(0, 2))
    ps = [G.random_form(rng, X, rng.randint(1, 2)) * g for _ in range(3)]
    e = gcd_many(ps)
    for p in ps:
        assert divide_exact(p, e) * e == p
    divide_exact(e, g)


@FAST
@given(seeds)
def test_compose_associative(seed):
    rng = random.Random(seed)
    f, g, h = (G.random_map(rng) for _ in range(3))
    try:
        lhs = compose(compose(f, g), h)
        rhs = compose(f, compose(g, h))
    except ComposedToZero:
        return
    assert maps_equal(lhs, rhs)


@FAST
@given(seeds)
def test_degree_bound_and_inverse(seed):
    rng = random.Random(seed)
    f, g = G.random_map(rng), G.random_map(rng)
    assert compose(f, g).degree <= f.degree * g.degree
    L = G.random_linear(rng, 2)
    assert is_identity(compose(L, invert_linear(L)))


@FAST
@given(seeds, st.integers(1, 5))
def test_maps_equal_under_scaling(seed, c):
    rng = random.Random(seed)
    f = G.random_map(rng)
    g = new_map(2, [comp * Fraction(c, 3) for comp in f.components])
    k = G.random_form(rng, X, 1)
    h = new_map(2, [comp * k for comp in f.components])
    assert maps_equal(f, g) and maps_equal(f, h)
    assert normalize(h) == normalize(f)


@FAST
@given(seeds)
def test_oracle_never_refutes_identity(seed):
    rng = random.Random(seed)
    L = G.random_linear(rng, 2)
    raw = [c.substitute(dict(zip(X.names, invert_linear(L).components))) for c in L.components]
    assert identity_check_modp(raw, OracleConfig(seed=seed)).verdict


@FAST
@given(seeds)
def test_specialization_below_Deg(seed):
    rng = random.Random(seed)
    w = G.random_sigma_family(rng)
    Deg = family_Deg(w)
    m = minimal_writing(w)
    for _ in range(5):
        t0 = Fraction(rng.randint(-30, 30), rng.randint(1, 5))
        assert specialize(m, t0)[1] <= Deg


@FAST
@given(seeds)
def test_reparameterization_keeps_Deg(seed):
    rng = random.Random(seed)
    w = G.random_pencil(rng)
    assert family_Deg(reparameterize(w, G.random_mobius(rng))) == family_Deg(w)

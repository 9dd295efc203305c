import random

import pytest

from cremona.birmap import (
    compose,
    conjugate,
    cyclic_growth_report,
    degree,
    evaluate,
    identity_map,
    invert_linear,
    is_dominant_candidate,
    is_identity,
    jacobian,
    linear_map,
    maps_equal,
    matrix_of,
    new_map,
    normalize,
    power_degree_sequence,
    standard_quadratic,
    verify_mutual_inverse,
)
from cremona.catalog import diagonal, henon
from cremona.errors import (
    AllZero,
    ComposedToZero,
    DegreeMismatch,
    NotHomogeneous,
    NotInversePair,
    NotLinear,
    SingularMatrix,
)
from cremona.polyring import MultiPoly, parse_poly

import generators as G

SIGMA = standard_quadratic()
ID = identity_map(2)


def M(*comps):
    return new_map(len(comps) - 1, list(comps))


class TestConstruction:
    def test_linear(self):
        f = M("x0", "x1", "x2")
        assert f.degree == 1

    def test_sigma(self):
        assert M("x1*x2", "x0*x2", "x0*x1").degree == 2

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            M("x0", "x1*x2", "x2^2")

    def test_not_homogeneous(self):
        with pytest.raises(NotHomogeneous):
            M("x0 + x1^2", "x1^2", "x2^2")

    def test_all_zero(self):
        with pytest.raises(AllZero):
            M("0", "0", "0")

    def test_zero_components_allowed(self):
        assert M("x0", "0", "x2").raw_degree == 1


class TestNormalize:
    def test_planted_factor(self):
        f = M("x0*(x0 + 2*x1)", "x1*(x0 + 2*x1)", "x2*(x0 + 2*x1)")
        assert normalize(f) == ID

    def test_sigma_unchanged(self):
        assert normalize(SIGMA) == SIGMA

    def test_raw_sigma_squared(self):
        g = M("x0*x1*x2*x0", "x0*x1*x2*x1", "x0*x1*x2*x2")
        assert normalize(g) == ID and degree(g) == 1

    def test_scale_is_canonical(self):
        assert normalize(M("-2*x0", "-2*x1", "-2*x2")) == ID
        assert normalize(M("1/3*x1*x2", "1/3*x0*x2", "1/3*x0*x1")) == SIGMA

    def test_degrees(self):
        assert degree(ID) == 1 and degree(SIGMA) == 2


class TestCompose:
    def test_sigma_involution(self):
        assert is_identity(compose(SIGMA, SIGMA))

    def test_right_identity(self):
        f = henon()
        assert compose(f, ID) == normalize(f)

    def test_henon_square(self):
        assert compose(henon(), henon()).degree == 4

    def test_composed_to_zero(self):
        # g collapses onto (1:0:0), a base point of sigma
        with pytest.raises(ComposedToZero):
            compose(SIGMA, M("x0", "0", "0"))

    def test_matmul(self):
        assert (SIGMA @ SIGMA) == ID


class TestEquality:
    def test_identity_tests(self):
        assert is_identity(ID)
        assert is_identity(M("5*x0", "5*x1", "5*x2"))
        assert not is_identity(SIGMA)

    def test_maps_equal(self):
        f = henon()
        assert maps_equal(f, M("5*x1*x2", "5*x1^2 - 5*x0*x2", "5*x2^2"))
        g = new_map(2, [c * parse_poly("x0 - x2", f.ctx) for c in f.components])
        assert maps_equal(f, g)
        assert not maps_equal(SIGMA, ID)


class TestJacobian:
    def test_identity(self):
        assert jacobian(ID) == MultiPoly.one(ID.ctx) and is_dominant_candidate(ID)

    def test_sigma(self):
        assert jacobian(SIGMA) == parse_poly("2*x0*x1*x2", SIGMA.ctx)

    def test_degenerate(self):
        f = M("x0", "x1", "x0")
        assert jacobian(f).is_zero() and not is_dominant_candidate(f)


class TestInverse:
    def test_pairs(self):
        assert verify_mutual_inverse(SIGMA, SIGMA)
        assert verify_mutual_inverse(ID, ID)
        check = verify_mutual_inverse(SIGMA, ID)
        assert not check and check.diagnostic

    def test_linear_inverse(self):
        assert linear_map([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == ID
        inv = invert_linear(diagonal((1, 2, 3)))
        assert inv == M("6*x0", "3*x1", "2*x2")

    def test_random_linear(self):
        rng = random.Random(11)
        for _ in range(10):
            L = G.random_linear(rng, 2)
            assert verify_mutual_inverse(L, invert_linear(L))

    def test_errors(self):
        with pytest.raises(SingularMatrix):
            invert_linear(linear_map([[1, 1, 0], [1, 1, 0], [0, 0, 1]]))
        with pytest.raises(NotLinear):
            matrix_of(SIGMA)

    def test_sigma_fixes_111(self):
        assert evaluate(SIGMA, [1, 1, 1]) == (1, 1, 1)


class TestPowers:
    def test_linear(self):
        assert power_degree_sequence(diagonal(), 5).degrees == [1] * 5

    def test_sigma(self):
        assert power_degree_sequence(SIGMA, 6).degrees == [2, 1, 2, 1, 2, 1]

    def test_henon(self):
        assert power_degree_sequence(henon(), 6).degrees == [2, 4, 8, 16, 32, 64]

    def test_growth_reports(self):
        g = cyclic_growth_report(SIGMA, 6)
        assert g.label == "finite-order(2)"
        assert cyclic_growth_report(diagonal(), 6).label == "bounded-observed"
        h = cyclic_growth_report(henon(), 5)
        assert h.label == "strictly-growing-observed"
        assert "observed" in h.note or "horizon" in h.note

    def test_identity_has_order_one(self):
        assert cyclic_growth_report(ID, 3).label == "finite-order(1)"

    def test_power_index_on_failure(self):
        # f^2 = (x2 : 0 : 0) is the constant (1:0:0), where f vanishes
        with pytest.raises(ComposedToZero) as err:
            power_degree_sequence(M("x1", "x2", "0"), 4)
        assert err.value.power == 3


class TestConjugate:
    def test_trivial(self):
        assert conjugate(henon(), ID, ID) == normalize(henon())
        L = G.random_linear(random.Random(2), 2)
        assert is_identity(conjugate(ID, L, invert_linear(L)))

    def test_sigma_degree(self):
        L = linear_map([[1, 2, 0], [0, 1, 3], [1, 0, 1]])
        assert conjugate(SIGMA, L, invert_linear(L)).degree == 2

    def test_not_inverse(self):
        L = linear_map([[1, 2, 0], [0, 1, 3], [1, 0, 1]])
        with pytest.raises(NotInversePair):
            conjugate(SIGMA, L, L)

import random

import pytest

from cremona.birmap import compose, identity_map, is_identity, maps_equal, new_map, standard_quadratic
from cremona.catalog import henon
from cremona.errors import NotInStar, ValidationError
from cremona.jonquieres import (
    ProjectionPi,
    base_context,
    in_image_sigma_ell,
    in_jon,
    in_star,
    jon_degree_conditions,
    rho,
    sigma_ell,
)

import generators as G

SIGMA = standard_quadratic()
ID2 = identity_map(2)
B2 = base_context(2)


def M(*comps):
    return new_map(len(comps) - 1, list(comps))


def H(*comps):
    return new_map(len(comps) - 1, list(comps), base_context(len(comps)))


SWAP = H("x2", "x1")


class TestJon:
    def test_identity(self):
        assert in_jon(ID2)

    def test_sigma_is_not_jon(self):
        assert not in_jon(SIGMA)

    def test_cross_product_fails(self):
        assert not in_jon(M("x0^2", "x0*x1", "x2*(x0 + x1)"))
        assert not in_jon(M("x0*(x0 + x1)", "x1*(x0 + x1)", "x2*x0"))

    def test_identity_in_disguise(self):
        assert in_jon(M("x0^2", "x0*x1", "x0*x2"))

    def test_random_elements(self):
        rng = random.Random(1)
        for _ in range(10):
            assert in_jon(G.random_jonquieres(rng, 2, 2))

    def test_degree_diagnostic(self):
        j = G.random_jonquieres(random.Random(4), 2, 2)
        assert jon_degree_conditions(j) == {"a": True, "b": True, "c": True}
        assert not jon_degree_conditions(SIGMA)["a"]

    def test_needs_n_at_least_two(self):
        with pytest.raises(ValidationError):
            in_jon(identity_map(1))


class TestStar:
    def test_sigma_quotient(self):
        s = in_star(SIGMA)
        assert s.member and s.quotient == SWAP
        assert s.certificate == ((1, 2),)

    def test_identity(self):
        s = in_star(ID2)
        assert s and is_identity(s.quotient)

    def test_henon_is_not_member(self):
        s = in_star(henon())
        assert not s.member and s.quotient is None and s.failed_pair == (1, 2)

    def test_rho(self):
        assert rho(SIGMA) == SWAP
        assert is_identity(rho(ID2))
        with pytest.raises(NotInStar):
            rho(henon())

    def test_projection(self):
        pi = ProjectionPi(2)
        assert [str(c) for c in pi.components] == ["x1", "x2"]
        assert pi.after(SIGMA) == SIGMA.components[1:]

    def test_invariant_under_jon(self):
        rng = random.Random(9)
        for _ in range(5):
            j = G.random_jonquieres(rng, 2, 2)
            f = sigma_ell(G.random_base_map(rng, 2, 1), 1)
            assert maps_equal(in_star(compose(j, f)).quotient, in_star(f).quotient)


class TestSigma:
    def test_identity_of_p1(self):
        assert is_identity(sigma_ell(identity_map(1, B2), 1))

    def test_swap(self):
        f = sigma_ell(SWAP, 1)
        assert f == M("x0*x2", "x1*x2", "x1^2") and f.degree == 2

    def test_round_trip(self):
        rng = random.Random(2)
        for n in (2, 3):
            for _ in range(10):
                h = G.random_base_map(rng, n, 1)
                for ell in range(1, n + 1):
                    f = sigma_ell(h, ell)
                    assert maps_equal(rho(f), h)
                    assert in_image_sigma_ell(f, ell)

    def test_cross_image(self):
        assert not in_image_sigma_ell(sigma_ell(SWAP, 1), 2)
        for ell in (1, 2):
            assert in_image_sigma_ell(ID2, ell)

    def test_henon_in_no_image(self):
        assert not in_image_sigma_ell(henon(), 1)

    def test_semidirect_relation(self):
        rng = random.Random(3)
        for _ in range(5):
            j = G.random_jonquieres(rng, 2, rng.choice([1, 2]))
            h = G.random_base_map(rng, 2, 1)
            assert maps_equal(rho(compose(j, sigma_ell(h, 1))), h)

    def test_bad_ell(self):
        with pytest.raises(ValidationError):
            sigma_ell(SWAP, 3)

    def test_renamed_coordinates(self):
        # maps of P^1 given in x0, x1 are read positionally
        assert sigma_ell(new_map(1, ["x1", "x0"]), 1) == sigma_ell(SWAP, 1)

    def test_cross_image_exception(self):
        # two equal diagonal entries: sigma_1(h) and sigma_2(h) coincide
        h = new_map(2, ["x1", "x2", "5*x3"], base_context(3))
        assert in_image_sigma_ell(sigma_ell(h, 1), 2)
        assert not in_image_sigma_ell(sigma_ell(h, 1), 3)

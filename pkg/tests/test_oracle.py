import random
from fractions import Fraction

import pytest

from cremona.birmap import identity_map, is_identity, new_map, standard_quadratic
from cremona.catalog import henon
from cremona.errors import BadReductionExhausted, ValidationError
from cremona.family import (
    constant_family,
    degeneration_family,
    family_Deg,
    nodal_cubic_family,
    semicontinuity_scan,
)
from cremona.oracle import (
    OracleConfig,
    empirical_degree_profile,
    gcd_degree_estimate,
    identity_check_modp,
    is_probable_prime,
    random_prime,
)
from cremona.polyring import MultiPoly, VariableContext, gcd, parse_poly

import generators as G

X = VariableContext.projective(2)
SIGMA = standard_quadratic()


def P(text, ctx=X):
    return parse_poly(text, ctx)


class TestPrimes:
    def test_small(self):
        primes = [n for n in range(200) if is_probable_prime(n)]
        assert primes[:10] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29] and len(primes) == 46

    def test_carmichael_and_mersenne(self):
        assert not is_probable_prime(561) and not is_probable_prime(3215031751)
        assert is_probable_prime(2 ** 61 - 1) and not is_probable_prime(2 ** 67 - 1)
        assert is_probable_prime(2 ** 89 - 1)

    def test_random_prime_size(self):
        rng = random.Random(0)
        for bits in (8, 31, 64):
            p = random_prime(bits, rng)
            assert p.bit_length() == bits and is_probable_prime(p)

    def test_config_validation(self):
        with pytest.raises(ValidationError):
            OracleConfig(prime_bits=2)
        with pytest.raises(ValidationError):
            OracleConfig(trials=0)


class TestGcdEstimate:
    def test_planted(self):
        rng = random.Random(1)
        g = G.random_form(rng, X, 2)
        a, b = P("x0^2 + x1*x2"), P("x1^3 - x0*x2^2")
        assert gcd_degree_estimate([a * g, b * g]) == 2

    def test_coprime(self):
        assert gcd_degree_estimate([P("x0"), P("x1"), P("x2")]) == 0

    def test_nodal_total_degree(self):
        w = nodal_cubic_family(2)
        # s^3 (x0 + s x2) has total degree 5 in (s, x)
        assert gcd_degree_estimate(w.components) == 5

    def test_nodal_in_x_only(self):
        w = nodal_cubic_family(2)
        assert gcd_degree_estimate(w.components, vars=w.x_names) == 1

    def test_agrees_with_exact(self):
        rng = random.Random(2)
        for i in range(30):
            g = G.random_form(rng, X, rng.randint(0, 3))
            a = G.random_form(rng, X, rng.randint(1, 3)) * g
            b = G.random_form(rng, X, rng.randint(1, 3)) * g
            assert gcd_degree_estimate([a, b], OracleConfig(seed=i)) == gcd(a, b).total_degree()

    def test_deterministic(self):
        polys = [P("x0*x1 + x2^2"), P("x0 + x2")]
        cfg = OracleConfig(seed=7)
        assert gcd_degree_estimate(polys, cfg) == gcd_degree_estimate(polys, cfg)

    def test_bad_reduction_exhausted(self):
        # every small prime divides 30030 = 2*3*5*7*11*13
        p = P("1/30030*x0 + x1")
        with pytest.raises(BadReductionExhausted):
            gcd_degree_estimate([p], OracleConfig(prime_bits=3))

    def test_empty(self):
        with pytest.raises(ValidationError):
            gcd_degree_estimate([MultiPoly.zero(X)])


class TestIdentityCheck:
    def test_identity(self):
        c = identity_check_modp(identity_map(2))
        assert c.verdict and c.error_bound < Fraction(1, 2 ** 100) and len(c.primes) == 5

    def test_sigma_witness(self):
        c = identity_check_modp(SIGMA)
        assert not c and c.witness["pair"] and c.error_bound == 0

    def test_raw_sigma_squared(self):
        raw = [c.substitute(dict(zip(X.names, SIGMA.components))) for c in SIGMA.components]
        assert identity_check_modp(raw).verdict
        assert is_identity(new_map(2, raw))

    def test_one_sided(self):
        rng = random.Random(3)
        for _ in range(10):
            f = G.random_map(rng)
            exact = is_identity(f)
            assert identity_check_modp(f).verdict == exact
        assert not identity_check_modp(henon())

    def test_as_dict(self):
        d = identity_check_modp(SIGMA, OracleConfig(seed=4)).as_dict()
        assert set(d) == {"verdict", "primes", "witness", "error_bound"}


class TestEmpiricalProfile:
    def test_nodal_avoiding_node(self):
        prof = empirical_degree_profile(nodal_cubic_family(2), 50, avoid=[0])
        assert len(prof.samples) == 50 and set(prof.degrees().values()) == {2}

    def test_degeneration_at_zero(self):
        prof = empirical_degree_profile(degeneration_family(), 20, extra_points=[0])
        degs = prof.degrees()
        assert degs[0] == 1
        assert all(d == 2 for t, d in degs.items() if t != 0)

    def test_constant_sigma(self):
        prof = empirical_degree_profile(constant_family(SIGMA), 10)
        assert set(prof.degrees().values()) == {2}

    def test_raw_collapse_reported(self):
        prof = empirical_degree_profile(nodal_cubic_family(2), 5, extra_points=[0])
        assert prof.degrees()[0] is None

    def test_matches_exact_scan(self):
        rng = random.Random(5)
        for k in range(5):
            w = G.random_sigma_family(rng)
            prof = empirical_degree_profile(w, 10, OracleConfig(seed=k))
            exact = {e.value: e.degree for e in semicontinuity_scan(w, [t for t, _ in prof.samples]).entries}
            assert prof.degrees() == exact
            assert max(exact.values()) <= family_Deg(w)

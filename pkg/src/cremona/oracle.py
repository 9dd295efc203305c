"""Finite-field cross-checks for the exact kernel.

Everything here works over GF(p) for random primes and shares no code with the
exact gcd: polynomials are reduced coefficientwise, restricted to random lines
and handled as dense coefficient lists mod p.  Answers are one-sided.  A
nonzero evaluation refutes an identity for certain, while agreement only
holds with high probability.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BadReductionExhausted, SemicontinuityViolation, ValidationError
from .polyring import MultiPoly, VariableContext

MAX_REDRAWS = 20
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int, rng: random.Random | None = None, rounds: int = 8) -> bool:
    """Miller-Rabin; the fixed bases make it exact below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    bases = list(_MR_BASES)
    if n.bit_length() > 80:
        rng = rng or random.Random(n)
        bases += [rng.randrange(2, n - 1) for _ in range(rounds)]
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int, rng: random.Random) -> int:
    if bits < 3:
        raise ValidationError("prime size must be at least 3 bits")
    while True:
        cand = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(cand, rng):
            return cand


@dataclass
class OracleConfig:
    prime_bits: int = 31
    trials: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ValidationError("trials must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValidationError("seed must be a 64-bit unsigned integer")
        if self.prime_bits < 3:
            raise ValidationError("prime size must be at least 3 bits")

    def rng(self, salt: int = 0) -> random.Random:
        return random.Random((self.seed << 8) ^ salt)

    def as_dict(self) -> dict:
        return {"prime_bits": self.prime_bits, "trials": self.trials, "seed": self.seed}


# ---------------------------------------------------------------- GF(p) helpers


def _reduce(c: Fraction, p: int) -> int | None:
    c = Fraction(c)
    if c.denominator % p == 0:
        return None
    return c.numerator * pow(c.denominator, -1, p) % p


def _reduce_poly(poly: MultiPoly, p: int):
    """Terms mod p, or None when a denominator or the leading coefficient dies."""
    out = {}
    for e, c in poly.terms.items():
        r = _reduce(c, p)
        if r is None:
            return None
        if r:
            out[e] = r
    lead, _ = poly.leading_term()
    if lead not in out:
        return None
    return out


def _good_prime(polys: Sequence[MultiPoly], cfg: OracleConfig, rng: random.Random):
    for _ in range(MAX_REDRAWS):
        p = random_prime(cfg.prime_bits, rng)
        reduced = [_reduce_poly(q, p) for q in polys]
        if all(r is not None for r in reduced):
            return p, reduced
    raise BadReductionExhausted(f"no good prime of {cfg.prime_bits} bits after {MAX_REDRAWS} draws")


def _eval_terms(terms, point, p):
    acc = 0
    for e, c in terms.items():
        v = c
        for x, k in zip(point, e):
            if k:
                v = v * pow(x, k, p) % p
        acc += v
    return acc % p


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _interp_mod(ys, p):
    """Coefficients (low first) of the polynomial through (i, ys[i]) mod p."""
    n = len(ys)
    c = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            c[i] = (c[i] - c[i - 1]) * pow(j, -1, p) % p
    poly = [c[-1]]
    for i in range(n - 2, -1, -1):
        # poly * (u - i) + c[i]
        nxt = [0] * (len(poly) + 1)
        for k, a in enumerate(poly):
            nxt[k + 1] = (nxt[k + 1] + a) % p
            nxt[k] = (nxt[k] - i * a) % p
        nxt[0] = (nxt[0] + c[i]) % p
        poly = nxt
    return _trim(poly)


def _gcd_mod(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            f = a[-1] * inv % p
            off = len(a) - len(b)
            for i, c in enumerate(b):
                a[off + i] = (a[off + i] - f * c) % p
            _trim(a)
            if not a:
                break
        a, b = b, a
    return a


def _restrict(terms, base, direction, degree, p):
    """Univariate polynomial in u of ``terms`` at ``base + u*direction``."""
    ys = []
    for u in range(degree + 1):
        pt = [(b + u * d) % p for b, d in zip(base, direction)]
        ys.append(_eval_terms(terms, pt, p))
    return _interp_mod(ys, p)


# ---------------------------------------------------------------- gcd degree


def gcd_degree_estimate(polys: Sequence[MultiPoly], cfg: OracleConfig | None = None,
                        vars: Iterable[str] | None = None) -> int:
    """Degree of the common factor of ``polys`` in ``vars``, estimated mod p.

    Variables outside ``vars`` receive random values; ``vars`` move along a
    random affine line.  A restriction can only raise the gcd degree, so the
    minimum over trials is reported.
    """
    cfg = cfg or OracleConfig()
    polys = [q for q in polys if q]
    if not polys:
        raise ValidationError("gcd_degree_estimate needs a nonzero input")
    ctx = polys[0].ctx
    vars = list(vars) if vars is not None else list(ctx.names)
    moving = {ctx.index(v) for v in vars}
    degree = max(q.total_degree(vars) for q in polys)
    rng = cfg.rng(0x6CD)
    best = None
    for _ in range(cfg.trials):
        p, reduced = _good_prime(polys, cfg, rng)
        base = [rng.randrange(p) for _ in ctx.names]
        direction = [rng.randrange(p) if i in moving else 0 for i in range(len(ctx))]
        g = []
        for terms in reduced:
            g = _gcd_mod(g, _restrict(terms, base, direction, degree, p), p)
            if len(g) == 1:
                break
        est = len(g) - 1
        best = est if best is None else min(best, est)
        if best == 0:
            break
    return best


# ---------------------------------------------------------------- identity


@dataclass
class IdentityCheck:
    verdict: bool
    primes: list[int]
    witness: dict | None = None
    error_bound: Fraction = Fraction(0)

    def __bool__(self):
        return self.verdict

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "primes": self.primes,
            "witness": self.witness,
            "error_bound": str(self.error_bound),
        }


def identity_check_modp(f, cfg: OracleConfig | None = None) -> IdentityCheck:
    """Test ``x_j f_i = x_i f_j`` at random points over random primes.

    ``f`` is a map or a raw tuple of homogeneous components.  False comes with a
    witness and is certain; true carries the Schwartz-Zippel bound
    ``((d + 1) / p)`` per trial, multiplied over the trials.
    """
    cfg = cfg or OracleConfig()
    comps = list(f.components if hasattr(f, "components") else f)
    ctx = comps[0].ctx
    n = len(comps) - 1
    if len(ctx) != n + 1:
        raise ValidationError("identity check needs n + 1 components in n + 1 coordinates")
    d = max(c.total_degree() for c in comps if c) if any(comps) else 0
    rng = cfg.rng(0x1D)
    primes = []
    bound = Fraction(1)
    nonzero = [c for c in comps if c]
    for _ in range(cfg.trials):
        p, _ = _good_prime(nonzero, cfg, rng)
        primes.append(p)
        reduced = [_reduce_poly(c, p) or {} for c in comps]
        point = [rng.randrange(1, p) for _ in range(n + 1)]
        vals = [_eval_terms(t, point, p) for t in reduced]
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                if (point[j] * vals[i] - point[i] * vals[j]) % p:
                    witness = {"prime": p, "point": point, "pair": [i, j]}
                    return IdentityCheck(False, primes, witness, Fraction(0))
        bound *= Fraction(d + 1, p)
    if not nonzero:
        # the zero tuple passes every cross-product test but is no map
        return IdentityCheck(False, primes, {"reason": "all components vanish"}, Fraction(0))
    return IdentityCheck(True, primes, None, bound)


# ---------------------------------------------------------------- degree profiles


@dataclass
class EmpiricalProfile:
    samples: list[tuple[Fraction, int | None]]
    Deg: int
    seed: int = 0

    def degrees(self) -> dict[Fraction, int | None]:
        return dict(self.samples)


def _specialized_degree(w, t0: Fraction, cfg: OracleConfig, rng: random.Random):
    """deg of the map at ``t0``: writing degree minus the estimated gcd degree."""
    xs = w.x_names
    xctx = VariableContext(xs)
    d = max(c.total_degree(xs) for c in w.components if c)
    comps = [c.substitute({w.param: t0}, xctx) for c in w.components]
    comps = [c for c in comps if c]
    if not comps:
        return None
    sub = OracleConfig(cfg.prime_bits, cfg.trials, rng.getrandbits(63))
    return d - gcd_degree_estimate(comps, sub)


def empirical_degree_profile(w, samples: int = 50, cfg: OracleConfig | None = None,
                             extra_points: Iterable = (), avoid: Iterable = ()) -> EmpiricalProfile:
    """Degrees at random rational parameters (plus ``extra_points``).

    Collapse points report None.  A degree above ``family_Deg(w)`` is a kernel
    bug and raises :class:`SemicontinuityViolation`.
    """
    from .family import family_Deg

    cfg = cfg or OracleConfig()
    rng = cfg.rng(0xDE6)
    avoid = {Fraction(a) for a in avoid} | set(w.excluded)
    points = {Fraction(x) for x in extra_points}
    while len(points) < samples + len(set(extra_points)):
        t0 = Fraction(rng.randint(-1000, 1000), rng.randint(1, 50))
        if t0 not in avoid:
            points.add(t0)
    Deg = family_Deg(w)
    out = []
    for t0 in sorted(points):
        degree = _specialized_degree(w, t0, cfg, rng)
        if degree is not None and degree > Deg:
            raise SemicontinuityViolation(f"{w.param} = {t0}: oracle degree {degree} exceeds Deg = {Deg}")
        out.append((t0, degree))
    return EmpiricalProfile(out, Deg, cfg.seed)

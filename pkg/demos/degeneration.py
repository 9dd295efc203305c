"""Quadratic de Jonquieres maps degenerating to the identity.

``(x0^2 : x0 x1 : x2 (x0 + t x1))`` has degree 2 for t != 0 and is the identity
at t = 0.  After t = 1/s the special member moves to infinity, so no drop point
is left in the affine chart, while the generic degree stays 2.
"""

from fractions import Fraction

from cremona.family import degeneration_family, reparameterize, specialize, stratify
from cremona.oracle import empirical_degree_profile


def show(w, label):
    p = stratify(w)
    drops = ", ".join(d.describe(w.param) for d in p.drop_points) or "none"
    print(f"{label}: Deg {p.Deg}, drops: {drops}, excluded: {list(map(str, w.excluded)) or 'none'}")


def main():
    w = degeneration_family()
    show(w, "original")
    for t0 in (Fraction(0), Fraction(1), Fraction(-3, 2)):
        f, d = specialize(w, t0)
        print(f"  t = {t0}: {f} (degree {d})")

    prof = empirical_degree_profile(w, 8, extra_points=[0])
    print("mod-p degrees:", {str(t): d for t, d in prof.samples})

    show(reparameterize(w, (0, 1, 1, 0)), "after t = 1/s")
    show(reparameterize(w, (1, 1, 0, 1)), "after t = s + 1")


if __name__ == "__main__":
    main()

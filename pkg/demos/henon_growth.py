"""Degree sequences of three maps of the plane.

The Henon-type map doubles its degree at every step, the standard quadratic
involution alternates between 2 and 1, and a diagonal map stays linear.
"""

from cremona.birmap import cyclic_growth_report, standard_quadratic
from cremona.catalog import diagonal, henon


def main(horizon=8):
    for name, f in [("henon", henon()), ("sigma", standard_quadratic()), ("diagonal", diagonal())]:
        g = cyclic_growth_report(f, horizon)
        print(f"{name:9s} {g.evidence.degrees}")
        print(f"          {g.label}: {g.note}")


if __name__ == "__main__":
    main()

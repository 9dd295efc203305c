"""A family of quadratic maps over a nodal cubic that turns into the identity
at the node.

The raw writing has degree 3 and every component vanishes at the node s = 0.
Dividing out the common factor gives a degree-2 writing that still makes sense
there, and its member at s = 0 is the identity.
"""

from cremona.birmap import is_identity
from cremona.family import nodal_cubic_family, semicontinuity_scan, specialize, stratify


def main():
    w = nodal_cubic_family(2)
    print("raw writing:", w)
    profile = stratify(w)
    print(f"writing degree {profile.writing_degree}, Deg {profile.Deg}")
    print("common factor:", profile.common_factor)
    print("minimal writing:", profile.minimal)
    for p in profile.raw_collapse_points:
        print("raw writing vanishes at", p.describe("s"))
    for p in profile.drop_points:
        print("degree drops at", p.describe("s"))

    phi0, d = specialize(profile.minimal, 0)
    print(f"member at the node: {phi0} (degree {d}, identity: {is_identity(phi0)})")

    report = semicontinuity_scan(w, [-2, -1, 0, 1, 2, 3], profile=profile)
    for e in report.entries:
        print(f"  s = {e.value}: degree {e.degree} [{e.status}]")


if __name__ == "__main__":
    main()

"""Exact computations with Cremona transformations of P^n and their families.

The layers build on each other: :mod:`cremona.polyring` (exact polynomials
over QQ), :mod:`cremona.birmap` (maps, composition, degree growth),
:mod:`cremona.jonquieres` (maps preserving the lines through a point),
:mod:`cremona.family` (one-parameter families and degree stratification) and
:mod:`cremona.oracle` (finite-field cross-checks).
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CremonaError,
    DomainError,
    InvariantViolation,
    ValidationError,
)
from .polyring import (  # noqa: E402
    ExactScalar,
    MultiPoly,
    VariableContext,
    divide_exact,
    format_poly,
    gcd,
    gcd_many,
    parse_poly,
)
from .birmap import (  # noqa: E402
    RationalMapPn,
    compose,
    conjugate,
    cyclic_growth_report,
    identity_map,
    invert_linear,
    is_dominant_candidate,
    is_identity,
    jacobian,
    linear_map,
    maps_equal,
    new_map,
    normalize,
    power_degree_sequence,
    standard_quadratic,
    verify_mutual_inverse,
)
from .jonquieres import in_image_sigma_ell, in_jon, in_star, rho, sigma_ell  # noqa: E402
from .family import (  # noqa: E402
    ParamWriting,
    drop_locus,
    family_compose,
    family_Deg,
    minimal_writing,
    new_writing,
    nodal_cubic_family,
    degeneration_family,
    reparameterize,
    semicontinuity_scan,
    specialize,
    stratify,
    writing_degree,
)
from .oracle import OracleConfig, empirical_degree_profile, gcd_degree_estimate, identity_check_modp  # noqa: E402

__all__ = [name for name in dir() if not name.startswith("_") and name not in {
    "errors", "polyring", "birmap", "jonquieres", "family", "oracle", "upoly",
}]

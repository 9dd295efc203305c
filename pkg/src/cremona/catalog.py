"""Built-in example maps and families."""

from __future__ import annotations

from .birmap import RationalMapPn, linear_map, new_map, standard_quadratic
from .errors import ValidationError
from .family import ParamWriting, degeneration_family, identity_family, nodal_cubic_family


def henon() -> RationalMapPn:
    """``(x1 x2 : x1^2 - x0 x2 : x2^2)``, a quadratic map with degrees ``2^m``."""
    return new_map(2, ["x1*x2", "x1^2 - x0*x2", "x2^2"])


def diagonal(entries=(1, 2, 3)) -> RationalMapPn:
    n = len(entries) - 1
    return linear_map([[entries[i] if i == j else 0 for j in range(n + 1)] for i in range(n + 1)])


MAPS = {
    "henon": (henon, "quadratic map (x1x2 : x1^2 - x0x2 : x2^2) with degree doubling under iteration"),
    "standard-quadratic": (standard_quadratic, "standard quadratic involution (x1x2 : x0x2 : x0x1)"),
    "diagonal": (diagonal, "diagonal linear map diag(1, 2, 3)"),
}

FAMILIES = {
    "nodal-cubic": (nodal_cubic_family, "family over the nodal cubic a^3 + b^3 - abc = 0, raw degree 3, Deg 2"),
    "degeneration": (degeneration_family, "quadratic maps (x0^2 : x0x1 : x2(x0 + t x1)) degenerating to the identity at t = 0"),
    "identity": (identity_family, "constant identity family"),
}


def builtin(name: str, n: int | None = None):
    """A built-in map or family together with a one-line description."""
    if name in MAPS:
        make, note = MAPS[name]
        if n not in (None, 2):
            raise ValidationError(f"built-in {name!r} lives on P^2")
        return make(), note
    if name in FAMILIES:
        make, note = FAMILIES[name]
        if name == "degeneration":
            if n not in (None, 2):
                raise ValidationError("built-in 'degeneration' lives on P^2")
            return make(), note
        return make(n or 2), note
    raise ValidationError(f"unknown built-in {name!r}; choose from {', '.join(sorted(MAPS) + sorted(FAMILIES))}")


def names() -> list[str]:
    return sorted(MAPS) + sorted(FAMILIES)


def is_family(obj) -> bool:
    return isinstance(obj, ParamWriting)

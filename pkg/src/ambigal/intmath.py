"""Integer ceiling division with the sign conventions the tables rely on.

Every multiplicity formula in this package is a difference of ceilings of
shifted indices.  Python's // floors toward minus infinity, which makes an
exact ceiling one negation away, valid for negative numerators as well.
"""


def ceil_div(num: int, den: int) -> int:
    """Return ceil(num / den) for integers, den > 0, rounding toward +infinity."""
    if den <= 0:
        raise ValueError("denominator must be positive")
    return -((-num) // den)


def floor_div(num: int, den: int) -> int:
    """Return floor(num / den) for integers, den > 0."""
    if den <= 0:
        raise ValueError("denominator must be positive")
    return num // den

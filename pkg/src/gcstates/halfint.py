"""Exact half-integer bookkeeping.

Angular-momentum labels (j, mu, nu, ...) are stored internally as
twice-the-value integers so that weight arithmetic never touches floating
point.  Public entry points accept plain numbers (0.5, 1, 1.5, ...) and
convert once at the boundary.
"""

from fractions import Fraction


def twice(x) -> int:
    """Return 2*x as an exact integer, or raise if x is not a half-integer."""
    f = Fraction(x).limit_denominator(10**6)
    t = f * 2
    if t.denominator != 1 or Fraction(x) != f:
        raise ValueError(f"{x!r} is not an integer or half-integer")
    return int(t)


def check_character(two_j: int, two_m: int, what: str = "weight") -> None:
    """A weight m must satisfy |m| <= j and have the same integer/half-integer
    character as j (i.e. j - m must be an integer)."""
    if abs(two_m) > two_j:
        raise ValueError(f"{what} out of range: |2m|={abs(two_m)} > 2j={two_j}")
    if (two_j - two_m) % 2 != 0:
        raise ValueError(
            f"{what} character mismatch: 2j={two_j} and 2m={two_m} "
            "differ in parity"
        )


def weight_index(two_j: int, two_m: int) -> int:
    """Index of weight m in the ascending basis m = -j, ..., +j."""
    check_character(two_j, two_m)
    return (two_m + two_j) // 2

"""Bit-vector truth tables packed into Python integers.

A table over ``n`` Boolean inputs is an int whose bit ``v`` gives the
value at input assignment ``v`` (read as an ``n``-bit number).  All of
the exhaustive enumeration in this package (model search, tautology
checking, formula-class enumeration) runs on these.
"""

from __future__ import annotations


def full_mask(width: int) -> int:
    """All-ones table over ``width`` rows."""
    return (1 << width) - 1


def input_mask(bit: int, width: int) -> int:
    """Table of the projection onto input ``bit``: row ``v`` is ``v>>bit & 1``."""
    half = 1 << bit
    out = full_mask(half) << half
    span = half << 1
    while span < width:
        out |= out << span
        span <<= 1
    return out


def lowest_bit_index(x: int) -> int:
    """Index of the least significant set bit; ``x`` must be nonzero."""
    return (x & -x).bit_length() - 1


def bit_indices(x: int):
    """Yield indices of set bits, ascending."""
    while x:
        i = (x & -x).bit_length() - 1
        yield i
        x &= x - 1

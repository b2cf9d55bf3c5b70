"""Exact one-step semantics for translation images.

Every atom image produced by the ``i``, ``b`` and ``im`` translations has
modal depth 1, and the translations are homomorphic on ``~``/``|``.  The
truth of a depth-1 formula at a world ``w`` depends only on the world's
own variable profile and on the *set* of successor profiles, and every
such configuration is realised by a star-shaped model in the relevant
frame class (the centre must appear among its own successors exactly
when the class is reflexive; symmetry constrains nothing at depth 1).

So for a fixed name-variable alphabet there is a fixed set of
*realizable* truth assignments to the copula atoms: assignment ``t`` is
realizable iff some configuration gives every atom ``eps(x,y)`` the
truth value ``t(eps(x,y))`` under the chosen translation.  An ontology
formula's image is valid in the logic iff the formula's classical truth
table holds on every realizable assignment.  That reduces image
validity to one mask test per truth table, which is what makes
enumeration-scale theorem filtering and counterexample search feasible.

The tableau prover remains the contractual decision procedure; the test
suite cross-checks this module against it and against the bounded model
oracle.
"""

from __future__ import annotations

from itertools import product

from .kripke import FrameClass
from .translations import KINDS, TranslationError


def atom_order(names: list[str]) -> list[tuple[str, str]]:
    """Canonical (printed) order of copula atoms over an alphabet."""
    return sorted((x, y) for x in names for y in names)


def _atom_truth(kind: str, ix: int, iy: int, profile: int, succs: list[int]) -> bool:
    """Truth of the image of ``eps(x,y)`` at a one-step configuration.

    ``profile`` and entries of ``succs`` are bitmasks over variable
    indices; ``ix``/``iy`` index the variables for ``x``/``y``.
    """
    px = bool(profile >> ix & 1)
    py = bool(profile >> iy & 1)
    if kind == "i":
        return px and all((q >> ix & 1) == (q >> iy & 1) for q in succs)
    if kind == "b":
        return (
            px
            and all(not (q >> ix & 1) or (q >> iy & 1) for q in succs)
            and (not py or all(not (q >> iy & 1) or (q >> ix & 1) for q in succs))
        )
    if kind == "im":
        dx = any(q >> ix & 1 for q in succs)
        dy = any(q >> iy & 1 for q in succs)
        bx = all(q >> ix & 1 for q in succs)
        by = all(q >> iy & 1 for q in succs)
        return (not dx or px) and (not bx or by) and (not dy or px)
    raise TranslationError(f"unknown translation kind {kind!r}; expected one of {KINDS}")


def realizable_mask(kind: str, frame: FrameClass, names: list[str]) -> int:
    """Bitmask over copula-atom truth assignments (atom order as in
    :func:`atom_order`, assignment read as a bit vector) marking those
    realizable as the image profile of some world in some model of the
    frame class."""
    atoms = atom_order(names)
    index = {v: i for i, v in enumerate(names)}
    k = len(names)
    profiles = list(range(1 << k))
    mask = 0
    for profile in profiles:
        for sbits in range(1 << len(profiles)):
            if frame.reflexive and not (sbits >> profile) & 1:
                continue
            succs = [q for q in profiles if (sbits >> q) & 1]
            assignment = 0
            for i, (x, y) in enumerate(atoms):
                if _atom_truth(kind, index[x], index[y], profile, succs):
                    assignment |= 1 << i
            mask |= 1 << assignment
    return mask


def sig_image_valid(sig: int, mask: int) -> bool:
    """Whether a truth table over the atom order covers every realizable
    assignment, i.e. whether the formula's image is valid in the logic."""
    return (sig & mask) == mask

"""The three atom translations from ontology formulas to modal formulas.

All three act homomorphically on ``~`` and ``|`` and differ only on the
copula atoms, with ``p_x`` the propositional variable assigned to the
name variable ``x``:

* ``i``:  ``p_a & [](p_a <-> p_b)``
* ``b``:  ``p_a & [](p_a -> p_b) & (p_b -> [](p_b -> p_a))``
* ``im``: ``(<>p_a -> p_a) & ([]p_a -> []p_b) & (<>p_b -> p_a)``

Three-part images are associated to the left.
"""

from __future__ import annotations

from .formulas import (
    And,
    Box,
    Diamond,
    Epsilon,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Var,
    name_vars,
)

KINDS = ("i", "b", "im")


class TranslationError(ValueError):
    pass


def default_varmap(f: Formula) -> dict[str, str]:
    """Map each name variable ``v`` of ``f`` to the propositional
    variable ``p_v`` (injective by construction)."""
    return {v: f"p_{v}" for v in name_vars(f)}


def _atom_image(kind: str, pa: Formula, pb: Formula) -> Formula:
    if kind == "i":
        return And(pa, Box(Iff(pa, pb)))
    if kind == "b":
        return And(And(pa, Box(Implies(pa, pb))), Implies(pb, Box(Implies(pb, pa))))
    if kind == "im":
        return And(
            And(Implies(Diamond(pa), pa), Implies(Box(pa), Box(pb))),
            Implies(Diamond(pb), pa),
        )
    raise TranslationError(f"unknown translation kind {kind!r}; expected one of {KINDS}")


def translate(kind: str, f: Formula, varmap: dict[str, str] | None = None) -> Formula:
    """Apply translation ``kind`` to ontology formula ``f``.

    ``varmap`` must cover every name variable of ``f``; it defaults to
    :func:`default_varmap`.
    """
    if kind not in KINDS:
        raise TranslationError(f"unknown translation kind {kind!r}; expected one of {KINDS}")
    if varmap is None:
        varmap = default_varmap(f)

    def go(g: Formula) -> Formula:
        if isinstance(g, Epsilon):
            try:
                pa, pb = varmap[g.a], varmap[g.b]
            except KeyError as e:
                raise TranslationError(f"name variable {e.args[0]!r} is not mapped") from None
            return _atom_image(kind, Var(pa), Var(pb))
        if isinstance(g, Not):
            return Not(go(g.arg))
        if isinstance(g, Or):
            return Or(go(g.left), go(g.right))
        raise TranslationError(f"not an ontology formula: {g!r}")

    return go(f)

"""Immutable formula ASTs shared by the ontology and modal languages.

The stored core is deliberately minimal:

* ontology formulas (``L1``): ``Epsilon`` atoms closed under ``Not`` / ``Or``;
* modal formulas: ``Var`` atoms closed under ``Not`` / ``Or`` / ``Box``.

Everything else is definitional sugar expanded at construction time:
``Implies(x, y) == Or(Not(x), y)``, ``And(x, y) == Not(Or(Not(x), Not(y)))``,
``Iff`` as the conjunction of both implications, and
``Diamond(x) == Not(Box(Not(x)))``.  The printer re-sugars these patterns;
``parse(print_formula(f)) == f`` holds for every AST.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


class Formula:
    """Base class for AST nodes.  Instances are immutable and hashable."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Var(Formula):
    """Propositional variable (modal language only)."""

    name: str


@dataclass(frozen=True, slots=True)
class Epsilon(Formula):
    """Copula atom ``eps(a,b)`` over two name variables (ontology only)."""

    a: str
    b: str


@dataclass(frozen=True, slots=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Box(Formula):
    arg: Formula


def Implies(x: Formula, y: Formula) -> Formula:
    return Or(Not(x), y)


def And(x: Formula, y: Formula) -> Formula:
    return Not(Or(Not(x), Not(y)))


def Iff(x: Formula, y: Formula) -> Formula:
    return And(Implies(x, y), Implies(y, x))


def Diamond(x: Formula) -> Formula:
    return Not(Box(Not(x)))


# ---------------------------------------------------------------------------
# Sugar pattern recognition (used by the printer and NNF checks).

def match_and(f: Formula):
    """Return ``(x, y)`` when ``f`` is the stored form of ``And(x, y)``."""
    if (
        isinstance(f, Not)
        and isinstance(f.arg, Or)
        and isinstance(f.arg.left, Not)
        and isinstance(f.arg.right, Not)
    ):
        return f.arg.left.arg, f.arg.right.arg
    return None


def match_implies(f: Formula):
    if isinstance(f, Or) and isinstance(f.left, Not):
        return f.left.arg, f.right
    return None


def match_diamond(f: Formula):
    if isinstance(f, Not) and isinstance(f.arg, Box) and isinstance(f.arg.arg, Not):
        return f.arg.arg.arg
    return None


def match_iff(f: Formula):
    m = match_and(f)
    if m is None:
        return None
    a, b = m
    ia, ib = match_implies(a), match_implies(b)
    if ia is not None and ib is not None and ia[0] == ib[1] and ia[1] == ib[0]:
        return ia
    return None


# ---------------------------------------------------------------------------
# Printing.  Precedence, tightest first: prefix (~ [] <>), &, |, ->, <->.
# "->" and "<->" associate to the right, "&" and "|" to the left.

_PREC_IFF = 0
_PREC_IMPLIES = 1
_PREC_OR = 2
_PREC_AND = 3
_PREC_PREFIX = 4
_PREC_ATOM = 5


def print_formula(f: Formula, sugar: bool = True) -> str:
    """Canonical text for an AST, with minimal parentheses.

    With ``sugar=False`` only the stored connectives (``~ | [] eps``) are
    used; the default re-sugars ``&``, ``->``, ``<->`` and ``<>``.
    """
    return _fmt(f, 0, sugar)


def _fmt(f: Formula, level: int, sugar: bool) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Epsilon):
        return f"eps({f.a},{f.b})"
    if sugar:
        m = match_iff(f)
        if m is not None:
            s = f"{_fmt(m[0], _PREC_IFF + 1, sugar)} <-> {_fmt(m[1], _PREC_IFF, sugar)}"
            return _wrap(s, _PREC_IFF, level)
        m = match_and(f)
        if m is not None:
            s = f"{_fmt(m[0], _PREC_AND, sugar)} & {_fmt(m[1], _PREC_AND + 1, sugar)}"
            return _wrap(s, _PREC_AND, level)
        m = match_diamond(f)
        if m is not None:
            return f"<>{_fmt(m, _PREC_PREFIX, sugar)}"
        m = match_implies(f)
        if m is not None:
            s = f"{_fmt(m[0], _PREC_IMPLIES + 1, sugar)} -> {_fmt(m[1], _PREC_IMPLIES, sugar)}"
            return _wrap(s, _PREC_IMPLIES, level)
    if isinstance(f, Not):
        return f"~{_fmt(f.arg, _PREC_PREFIX, sugar)}"
    if isinstance(f, Box):
        return f"[]{_fmt(f.arg, _PREC_PREFIX, sugar)}"
    if isinstance(f, Or):
        s = f"{_fmt(f.left, _PREC_OR, sugar)} | {_fmt(f.right, _PREC_OR + 1, sugar)}"
        return _wrap(s, _PREC_OR, level)
    raise TypeError(f"not a formula: {f!r}")


def _wrap(s: str, prec: int, level: int) -> str:
    return f"({s})" if prec < level else s


# ---------------------------------------------------------------------------
# Structural utilities.

def subformulas(f: Formula) -> list[Formula]:
    """All distinct subformulas of the stored core, in left-to-right
    post-order of first occurrence (children always precede parents)."""
    seen: dict[Formula, None] = {}

    def walk(g: Formula) -> None:
        if isinstance(g, Not) or isinstance(g, Box):
            walk(g.arg)
        elif isinstance(g, Or):
            walk(g.left)
            walk(g.right)
        if g not in seen:
            seen[g] = None

    walk(f)
    return list(seen)


def formula_size(f: Formula) -> int:
    """Number of connective nodes (``Not``/``Or``/``Box``) in the stored core."""
    return _size(f)


def _size(f: Formula) -> int:
    if isinstance(f, (Var, Epsilon)):
        return 0
    if isinstance(f, (Not, Box)):
        return 1 + _size(f.arg)
    return 1 + _size(f.left) + _size(f.right)


def name_vars(f: Formula) -> list[str]:
    """Sorted name variables of an ontology formula."""
    out: set[str] = set()
    for g in subformulas(f):
        if isinstance(g, Epsilon):
            out.add(g.a)
            out.add(g.b)
        elif isinstance(g, (Var, Box)):
            raise TypeError("not an ontology formula")
    return sorted(out)


def prop_vars(f: Formula) -> list[str]:
    """Sorted propositional variables of a modal formula."""
    out: set[str] = set()
    for g in subformulas(f):
        if isinstance(g, Var):
            out.add(g.name)
        elif isinstance(g, Epsilon):
            raise TypeError("not a modal formula")
    return sorted(out)


def is_l1_formula(f: Formula) -> bool:
    """True when every atom is an Epsilon and no modality occurs."""
    return all(not isinstance(g, (Var, Box)) for g in subformulas(f))


def is_modal_formula(f: Formula) -> bool:
    """True when every atom is a Var (modalities allowed)."""
    return all(not isinstance(g, Epsilon) for g in subformulas(f))


def epsilon_atoms(f: Formula) -> list[Epsilon]:
    """Distinct Epsilon atoms in canonical (printed) order."""
    atoms = [g for g in subformulas(f) if isinstance(g, Epsilon)]
    return sorted(atoms, key=lambda e: (e.a, e.b))


# ---------------------------------------------------------------------------
# Negation normal form.

def nnf(f: Formula) -> Formula:
    """Equivalent modal formula in which, under the sugared reading,
    negation applies to variables only.

    ``And`` and ``Diamond`` in the result are the usual stored
    expansions, so e.g. ``nnf(~[]p)`` is the stored form of ``<>~p``.
    """
    if isinstance(f, Var):
        return f
    if isinstance(f, Or):
        return Or(nnf(f.left), nnf(f.right))
    if isinstance(f, Box):
        return Box(nnf(f.arg))
    if isinstance(f, Not):
        return _nnf_neg(f.arg)
    raise TypeError(f"nnf is defined on modal formulas, got {f!r}")


def _nnf_neg(f: Formula) -> Formula:
    if isinstance(f, Var):
        return Not(f)
    if isinstance(f, Not):
        return nnf(f.arg)
    if isinstance(f, Or):
        return And(_nnf_neg(f.left), _nnf_neg(f.right))
    if isinstance(f, Box):
        return Diamond(_nnf_neg(f.arg))
    raise TypeError(f"nnf is defined on modal formulas, got {f!r}")


def is_nnf(f: Formula) -> bool:
    """Check the ``nnf`` postcondition under the sugared reading."""
    if isinstance(f, Var):
        return True
    if isinstance(f, Not) and isinstance(f.arg, Var):
        return True
    m = match_and(f)
    if m is not None:
        return is_nnf(m[0]) and is_nnf(m[1])
    m = match_diamond(f)
    if m is not None:
        return is_nnf(m)
    if isinstance(f, Or):
        return is_nnf(f.left) and is_nnf(f.right)
    if isinstance(f, Box):
        return is_nnf(f.arg)
    return False


# ---------------------------------------------------------------------------
# JSON wire form: {"op": ..., "args": [...]}.

def formula_to_json(f: Formula) -> dict:
    if isinstance(f, Var):
        return {"op": "var", "args": [f.name]}
    if isinstance(f, Epsilon):
        return {"op": "eps", "args": [f.a, f.b]}
    if isinstance(f, Not):
        return {"op": "not", "args": [formula_to_json(f.arg)]}
    if isinstance(f, Box):
        return {"op": "box", "args": [formula_to_json(f.arg)]}
    if isinstance(f, Or):
        return {"op": "or", "args": [formula_to_json(f.left), formula_to_json(f.right)]}
    raise TypeError(f"not a formula: {f!r}")


def formula_from_json(d: dict) -> Formula:
    op = d.get("op")
    args = d.get("args", [])
    if op == "var" and len(args) == 1 and isinstance(args[0], str):
        return Var(args[0])
    if op == "eps" and len(args) == 2 and all(isinstance(a, str) for a in args):
        return Epsilon(args[0], args[1])
    if op == "not" and len(args) == 1:
        return Not(formula_from_json(args[0]))
    if op == "box" and len(args) == 1:
        return Box(formula_from_json(args[0]))
    if op == "or" and len(args) == 2:
        return Or(formula_from_json(args[0]), formula_from_json(args[1]))
    raise ValueError(f"malformed formula JSON: {d!r}")


def sort_key(f: Formula) -> tuple[int, str]:
    """Deterministic formula ordering: size first, then canonical text."""
    return (_size(f), print_formula(f))

"""Finite Kripke models: evaluation, frame checks, and exhaustive search.

:func:`bounded_validity` is the semantic oracle used to cross-check the
tableau prover.  It enumerates every model over the requested frame
class up to a world bound, in a fixed canonical order, and returns the
first falsifying (model, world) pair if one exists.

Canonical order: ascending world count ``n``; then the relation read as
an ``n*n``-bit number (bit ``i*n+j`` = edge ``(i, j)``), ascending,
skipping relations that fail the frame check; then the valuation read
as a ``k*n``-bit number (bit ``i*n+w`` = variable ``i`` true at world
``w``, variables sorted by name), ascending; then the world index.
Only variables occurring in the formula are enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import bitsets
from .formulas import Box, Epsilon, Formula, Not, Or, Var, prop_vars, subformulas

LOGICS = ("k", "kt", "kb", "ktb")


@dataclass(frozen=True, slots=True)
class FrameClass:
    reflexive: bool
    symmetric: bool


_FRAMES = {
    "k": FrameClass(False, False),
    "kt": FrameClass(True, False),
    "kb": FrameClass(False, True),
    "ktb": FrameClass(True, True),
}


def frame_for(logic: str) -> FrameClass:
    """Frame conditions attached to a logic name (k, kt, kb, ktb)."""
    try:
        return _FRAMES[logic]
    except KeyError:
        raise ValueError(f"unknown logic {logic!r}; expected one of {LOGICS}") from None


class EnumerationLimitError(RuntimeError):
    """Raised when an exhaustive search would exceed its resource guard."""


@dataclass
class KripkeModel:
    """Worlds ``0..worlds-1``, a relation, and a valuation."""

    worlds: int
    rel: frozenset[tuple[int, int]]
    val: dict[str, frozenset[int]]
    _succ: dict[int, tuple[int, ...]] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.worlds < 1:
            raise ValueError("a model needs at least one world")
        self.rel = frozenset((int(a), int(b)) for a, b in self.rel)
        for a, b in self.rel:
            if not (0 <= a < self.worlds and 0 <= b < self.worlds):
                raise ValueError(f"relation pair {(a, b)} outside worlds 0..{self.worlds - 1}")
        self.val = {p: frozenset(int(w) for w in ws) for p, ws in self.val.items()}
        for p, ws in self.val.items():
            for w in ws:
                if not 0 <= w < self.worlds:
                    raise ValueError(f"valuation of {p!r} mentions unknown world {w}")
        succ: dict[int, list[int]] = {w: [] for w in range(self.worlds)}
        for a, b in sorted(self.rel):
            succ[a].append(b)
        self._succ = {w: tuple(us) for w, us in succ.items()}

    def successors(self, w: int) -> tuple[int, ...]:
        return self._succ[w]

    def to_json(self) -> dict:
        return {
            "worlds": self.worlds,
            "rel": [list(p) for p in sorted(self.rel)],
            "val": {p: sorted(ws) for p, ws in sorted(self.val.items())},
        }

    @classmethod
    def from_json(cls, d: dict) -> "KripkeModel":
        try:
            return cls(
                worlds=int(d["worlds"]),
                rel=frozenset((int(a), int(b)) for a, b in d["rel"]),
                val={str(p): frozenset(int(w) for w in ws) for p, ws in d["val"].items()},
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"malformed model JSON: {e}") from None


def check_frame(model: KripkeModel, frame: FrameClass) -> bool:
    """True iff the relation has every property flagged in ``frame``."""
    if frame.reflexive and any((w, w) not in model.rel for w in range(model.worlds)):
        return False
    if frame.symmetric and any((b, a) not in model.rel for a, b in model.rel):
        return False
    return True


def eval_formula(model: KripkeModel, world: int, f: Formula) -> bool:
    """Standard satisfaction; ``Box`` quantifies over relation successors."""
    if not 0 <= world < model.worlds:
        raise ValueError(f"unknown world index {world}")
    if isinstance(f, Var):
        return world in model.val.get(f.name, ())
    if isinstance(f, Not):
        return not eval_formula(model, world, f.arg)
    if isinstance(f, Or):
        return eval_formula(model, world, f.left) or eval_formula(model, world, f.right)
    if isinstance(f, Box):
        return all(eval_formula(model, u, f.arg) for u in model.successors(world))
    if isinstance(f, Epsilon):
        raise TypeError("ontology atoms cannot be evaluated in a Kripke model")
    raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True, slots=True)
class Falsified:
    """A countermodel found by :func:`bounded_validity`."""

    model: KripkeModel
    world: int


def bounded_validity(
    f: Formula,
    frame: FrameClass,
    max_worlds: int,
    *,
    max_relation_bits: int = 16,
    max_table_bits: int = 1 << 16,
) -> Falsified | None:
    """Search all models with at most ``max_worlds`` worlds over ``frame``.

    Returns the canonically first :class:`Falsified` witness, or ``None``
    when the formula holds in every enumerated model ("valid at this
    bound").  Raises :class:`EnumerationLimitError` when a level would
    exceed the resource guards (relation count or truth-table width).
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    variables = prop_vars(f)
    for n in range(1, max_worlds + 1):
        if n * n > max_relation_bits:
            raise EnumerationLimitError(
                f"{n} worlds means 2^{n * n} relations; guard is 2^{max_relation_bits}"
            )
        if (1 << (len(variables) * n)) > max_table_bits:
            raise EnumerationLimitError(
                f"{len(variables)} variables over {n} worlds exceeds the "
                f"{max_table_bits}-row valuation guard"
            )
        hit = _search_level(f, frame, n, variables)
        if hit is not None:
            relation, v, w = hit
            model = _build_model(relation, v, w, n, variables)
            assert eval_formula(model, w, f) is False, "enumeration/eval disagreement"
            return Falsified(model, w)
    return None


def _build_model(relation: int, v: int, world: int, n: int, variables: list[str]) -> KripkeModel:
    rel = frozenset(
        (i, j) for i in range(n) for j in range(n) if (relation >> (i * n + j)) & 1
    )
    val = {
        p: frozenset(w for w in range(n) if (v >> (i * n + w)) & 1)
        for i, p in enumerate(variables)
    }
    return KripkeModel(n, rel, val)


# ---------------------------------------------------------------------------
# Enumeration engine.
#
# For a fixed world count n and k relevant variables there are 2^(k*n)
# valuations.  Truth of each subformula at each world is kept as a
# 2^(k*n)-bit table (one bit per valuation), so propositional connectives
# are single integer operations over all valuations at once.  Subformulas
# fall into three ranks: 0 = relation-independent, 1 = depends only on
# the successor set of the evaluation world, 2 = depends on the full
# relation.  Rank-1 values are tabulated per successor set (2^n of them),
# so only rank-2 nodes are recomputed inside the per-relation loop.

def _search_level(f, frame, n, variables):
    k = len(variables)
    width = 1 << (k * n)
    full = bitsets.full_mask(width)
    var_index = {p: i for i, p in enumerate(variables)}

    subs = subformulas(f)  # post-order: children first
    idx = {s: i for i, s in enumerate(subs)}
    rank = [0] * len(subs)
    for s in subs:
        i = idx[s]
        if isinstance(s, Var):
            rank[i] = 0
        elif isinstance(s, Not):
            rank[i] = rank[idx[s.arg]]
        elif isinstance(s, Or):
            rank[i] = max(rank[idx[s.left]], rank[idx[s.right]])
        elif isinstance(s, Box):
            rank[i] = 1 if rank[idx[s.arg]] == 0 else 2
        else:
            raise TypeError(f"not a modal formula: {s!r}")

    # rank 0: table per world
    sat0 = [None] * len(subs)
    for s in subs:
        i = idx[s]
        if rank[i] != 0:
            continue
        if isinstance(s, Var):
            sat0[i] = [bitsets.input_mask(var_index[s.name] * n + w, width) for w in range(n)]
        elif isinstance(s, Not):
            child = sat0[idx[s.arg]]
            sat0[i] = [full ^ child[w] for w in range(n)]
        elif isinstance(s, Or):
            a, b = sat0[idx[s.left]], sat0[idx[s.right]]
            sat0[i] = [a[w] | b[w] for w in range(n)]

    # all-of-successor-set tables for Box over rank-0 arguments
    n_masks = 1 << n
    allm: dict[int, list[int]] = {}
    for s in subs:
        i = idx[s]
        if isinstance(s, Box) and rank[i] == 1:
            child = sat0[idx[s.arg]]
            tab = [full] * n_masks
            for m in range(1, n_masks):
                low = bitsets.lowest_bit_index(m)
                tab[m] = tab[m & (m - 1)] & child[low]
            allm[i] = tab

    # rank 1: table per (successor set, world)
    tab1: list[list[list[int]] | None] = [None] * len(subs)
    for s in subs:
        i = idx[s]
        if rank[i] != 1:
            continue
        if isinstance(s, Box):
            tab1[i] = [[allm[i][m]] * n for m in range(n_masks)]
        elif isinstance(s, Not):
            j = idx[s.arg]
            src = tab1[j] if rank[j] == 1 else None
            if src is None:
                base = sat0[j]
                tab1[i] = [[full ^ base[w] for w in range(n)] for _ in range(n_masks)]
            else:
                tab1[i] = [[full ^ src[m][w] for w in range(n)] for m in range(n_masks)]
        elif isinstance(s, Or):
            ja, jb = idx[s.left], idx[s.right]

            def cell(j, m, w):
                return tab1[j][m][w] if rank[j] == 1 else sat0[j][w]

            tab1[i] = [
                [cell(ja, m, w) | cell(jb, m, w) for w in range(n)] for m in range(n_masks)
            ]

    top = idx[f]
    reflexive, symmetric = frame.reflexive, frame.symmetric
    diag = 0
    for w in range(n):
        diag |= 1 << (w * n + w)
    sym_pairs = [
        (1 << (i * n + j), 1 << (j * n + i)) for i in range(n) for j in range(i + 1, n)
    ]
    row_mask = n_masks - 1

    def frame_ok(r):
        if reflexive and (r & diag) != diag:
            return False
        if symmetric:
            for m1, m2 in sym_pairs:
                if bool(r & m1) != bool(r & m2):
                    return False
        return True

    def first_hit(miss_by_world, relation):
        union = 0
        for mw in miss_by_world:
            union |= mw
        if union == 0:
            return None
        v = bitsets.lowest_bit_index(union)
        for w, mw in enumerate(miss_by_world):
            if (mw >> v) & 1:
                return relation, v, w
        raise AssertionError("unreachable")

    if rank[top] == 0:
        miss = [full ^ sat0[top][w] for w in range(n)]
        if all(m == 0 for m in miss):
            return None
        for r in range(1 << (n * n)):
            if frame_ok(r):
                return first_hit(miss, r)
        return None

    if rank[top] == 1:
        miss_tab = [[full ^ tab1[top][m][w] for w in range(n)] for m in range(n_masks)]
        if all(x == 0 for row in miss_tab for x in row):
            return None
        for r in range(1 << (n * n)):
            if not frame_ok(r):
                continue
            miss = [miss_tab[(r >> (w * n)) & row_mask][w] for w in range(n)]
            hit = first_hit(miss, r)
            if hit is not None:
                return hit
        return None

    # rank 2: evaluate relation-dependent nodes per relation
    rank2_nodes = [s for s in subs if rank[idx[s]] == 2]
    val2: dict[int, list[int]] = {idx[s]: [0] * n for s in rank2_nodes}

    def value(j, w, rows):
        r_ = rank[j]
        if r_ == 0:
            return sat0[j][w]
        if r_ == 1:
            return tab1[j][rows[w]][w]
        return val2[j][w]

    for r in range(1 << (n * n)):
        if not frame_ok(r):
            continue
        rows = [(r >> (w * n)) & row_mask for w in range(n)]
        for s in rank2_nodes:
            i = idx[s]
            out = val2[i]
            if isinstance(s, Not):
                j = idx[s.arg]
                for w in range(n):
                    out[w] = full ^ value(j, w, rows)
            elif isinstance(s, Or):
                ja, jb = idx[s.left], idx[s.right]
                for w in range(n):
                    out[w] = value(ja, w, rows) | value(jb, w, rows)
            else:  # Box with relation-dependent argument
                j = idx[s.arg]
                for w in range(n):
                    acc = full
                    m = rows[w]
                    while m:
                        u = (m & -m).bit_length() - 1
                        acc &= value(j, u, rows)
                        m &= m - 1
                    out[w] = acc
        miss = [full ^ value(top, w, rows) for w in range(n)]
        hit = first_hit(miss, r)
        if hit is not None:
            return hit
    return None

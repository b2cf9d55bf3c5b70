"""Refutation tableaux for K, KT, KB and KTB with countermodel extraction.

``prove(f, logic)`` saturates a labelled tableau for the negation
normal form of ``~f``.  Beyond the propositional rules, ``[]`` content
is pushed along created edges (K), into the same world on reflexive
logics (T), and back to the parent world on symmetric logics (B).
Loop control is ancestor blocking: a world whose formula set equals
that of one of its ancestors does not spawn successors.  An open
saturated branch yields a countermodel, which is closed under the frame
conditions, re-checked against :func:`ontomodal.kripke.check_frame`,
and re-evaluated with :func:`ontomodal.kripke.eval_formula` before the
Invalid verdict is returned.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .formulas import (
    And,
    Box,
    Diamond,
    Formula,
    Not,
    Or,
    Var,
    print_formula,
)
from .kripke import FrameClass, KripkeModel, check_frame, eval_formula, frame_for


class NodeBudgetExceeded(RuntimeError):
    """The node budget ran out before a verdict was reached."""


# ---------------------------------------------------------------------------
# Internal negation normal form.

@dataclass(frozen=True, slots=True)
class NLit:
    var: str
    neg: bool


@dataclass(frozen=True, slots=True)
class NAnd:
    left: "NForm"
    right: "NForm"


@dataclass(frozen=True, slots=True)
class NOr:
    left: "NForm"
    right: "NForm"


@dataclass(frozen=True, slots=True)
class NBox:
    arg: "NForm"


@dataclass(frozen=True, slots=True)
class NDia:
    arg: "NForm"


NForm = NLit | NAnd | NOr | NBox | NDia


def to_nnf(f: Formula, negate: bool = False) -> NForm:
    if isinstance(f, Var):
        return NLit(f.name, negate)
    if isinstance(f, Not):
        return to_nnf(f.arg, not negate)
    if isinstance(f, Or):
        a, b = to_nnf(f.left, negate), to_nnf(f.right, negate)
        return NAnd(a, b) if negate else NOr(a, b)
    if isinstance(f, Box):
        inner = to_nnf(f.arg, negate)
        return NDia(inner) if negate else NBox(inner)
    raise TypeError(f"not a modal formula: {f!r}")


def from_nnf(n: NForm) -> Formula:
    if isinstance(n, NLit):
        return Not(Var(n.var)) if n.neg else Var(n.var)
    if isinstance(n, NAnd):
        return And(from_nnf(n.left), from_nnf(n.right))
    if isinstance(n, NOr):
        return Or(from_nnf(n.left), from_nnf(n.right))
    if isinstance(n, NBox):
        return Box(from_nnf(n.arg))
    if isinstance(n, NDia):
        return Diamond(from_nnf(n.arg))
    raise TypeError(f"not an NNF node: {n!r}")


def _nsize(n: NForm) -> int:
    if isinstance(n, NLit):
        return 1
    if isinstance(n, (NBox, NDia)):
        return 1 + _nsize(n.arg)
    return 1 + _nsize(n.left) + _nsize(n.right)


# ---------------------------------------------------------------------------
# Verdicts.

@dataclass(frozen=True)
class Valid:
    trace: tuple = ()

    @property
    def is_valid(self) -> bool:
        return True


@dataclass(frozen=True)
class Invalid:
    model: KripkeModel
    world: int
    trace: tuple = ()

    @property
    def is_valid(self) -> bool:
        return False


TableauVerdict = Valid | Invalid

DEFAULT_NODE_BUDGET = 10**6


# ---------------------------------------------------------------------------
# Branch state.

class _Branch:
    __slots__ = (
        "labels",
        "children",
        "parent",
        "next_world",
        "and_q",
        "or_q",
        "t_q",
        "k_q",
        "b_q",
        "dia_q",
        "dia_done",
        "deferred",
        "defer_version",
        "version",
        "closed",
    )

    def __init__(self):
        self.labels: dict[int, set] = {0: set()}
        self.children: dict[int, list[int]] = {0: []}
        self.parent: dict[int, int] = {}
        self.next_world = 1
        self.and_q: list = []
        self.or_q: list = []
        self.t_q: list = []
        self.k_q: list = []
        self.b_q: list = []
        self.dia_q: list = []
        self.dia_done: set = set()
        self.deferred: list = []
        self.defer_version = -1
        self.version = 0
        self.closed = False

    def clone(self) -> "_Branch":
        c = _Branch.__new__(_Branch)
        c.labels = {w: s.copy() for w, s in self.labels.items()}
        c.children = {w: l.copy() for w, l in self.children.items()}
        c.parent = self.parent.copy()
        c.next_world = self.next_world
        c.and_q = self.and_q.copy()
        c.or_q = self.or_q.copy()
        c.t_q = self.t_q.copy()
        c.k_q = self.k_q.copy()
        c.b_q = self.b_q.copy()
        c.dia_q = self.dia_q.copy()
        c.dia_done = self.dia_done.copy()
        c.deferred = self.deferred.copy()
        c.defer_version = self.defer_version
        c.version = self.version
        c.closed = self.closed
        return c

    def blocked_by(self, w: int) -> int | None:
        """Root-most strict ancestor carrying an equal formula set."""
        chain = []
        u = w
        while u in self.parent:
            u = self.parent[u]
            chain.append(u)
        lw = self.labels[w]
        for a in reversed(chain):
            if self.labels[a] == lw:
                return a
        return None


class _Prover:
    def __init__(self, frame: FrameClass, budget: int, trace: list):
        self.frame = frame
        self.budget = budget
        self.trace = trace
        self.keys: dict[NForm, tuple[int, str]] = {}

    def key(self, n: NForm) -> tuple[int, str]:
        """Smallest-formula-first ordering key (size, then text)."""
        k = self.keys.get(n)
        if k is None:
            k = self.keys[n] = (_nsize(n), repr(n))
        return k

    def spend(self):
        self.budget -= 1
        if self.budget < 0:
            raise NodeBudgetExceeded(
                "tableau node budget exceeded; raise node_budget to continue"
            )

    def log(self, rule: str, world: int, n: NForm | None):
        self.trace.append(
            {
                "rule": rule,
                "world": world,
                "formula": None if n is None else print_formula(from_nnf(n)),
            }
        )

    def add(self, st: _Branch, w: int, n: NForm) -> bool:
        """Insert ``n`` at world ``w``; returns True when this closes the branch."""
        label = st.labels[w]
        if n in label:
            return False
        self.spend()
        label.add(n)
        st.version += 1
        if isinstance(n, NLit):
            if NLit(n.var, not n.neg) in label:
                st.closed = True
                self.log("close", w, n)
                return True
            return False
        if isinstance(n, NAnd):
            heapq.heappush(st.and_q, (w, self.key(n), n))
        elif isinstance(n, NOr):
            heapq.heappush(st.or_q, (w, self.key(n), n))
        elif isinstance(n, NBox):
            if self.frame.reflexive:
                heapq.heappush(st.t_q, (w, self.key(n), n))
            for u in st.children[w]:
                heapq.heappush(st.k_q, (w, u, self.key(n), n))
            if self.frame.symmetric and w in st.parent:
                heapq.heappush(st.b_q, (w, st.parent[w], self.key(n), n))
        elif isinstance(n, NDia):
            heapq.heappush(st.dia_q, (w, self.key(n), n))
        return False

    def new_world(self, st: _Branch, w: int, n: NDia) -> bool:
        u = st.next_world
        st.next_world += 1
        st.labels[u] = set()
        st.children[u] = []
        st.children[w].append(u)
        st.parent[u] = w
        st.dia_done.add((w, n))
        self.log("dia", w, n)
        if self.add(st, u, n.arg):
            return True
        # box payload flowing into the fresh world
        for g in sorted(st.labels[w], key=self.key):
            if isinstance(g, NBox):
                heapq.heappush(st.k_q, (w, u, self.key(g), g))
        return False

    # ------------------------------------------------------------------
    def expand(self, start: _Branch):
        """DFS saturation over an explicit stack of pending alternatives;
        returns an open saturated branch or None when everything closes."""
        stack = [start]
        while stack:
            st = stack.pop()
            saturated = self._saturate(st, stack)
            if saturated is not None:
                return saturated
        return None

    def _saturate(self, st: _Branch, stack: list):
        while True:
            if st.closed:
                return None

            if st.and_q:
                w, _, n = heapq.heappop(st.and_q)
                self.log("and", w, n)
                if not self.add(st, w, n.left):
                    self.add(st, w, n.right)
                continue

            if st.or_q:
                w, _, n = heapq.heappop(st.or_q)
                if n.left in st.labels[w] or n.right in st.labels[w]:
                    continue
                self.spend()
                right = st.clone()
                self.log("or-left", w, n)
                left_closed = self.add(st, w, n.left)
                if not self.add(right, w, n.right):
                    stack.append(right)
                if left_closed:
                    return None
                continue

            if st.t_q:
                w, _, n = heapq.heappop(st.t_q)
                if n.arg not in st.labels[w]:
                    self.log("t", w, n)
                    self.add(st, w, n.arg)
                continue

            if st.k_q:
                w, u, _, n = heapq.heappop(st.k_q)
                if n.arg not in st.labels[u]:
                    self.log("k", u, n)
                    self.add(st, u, n.arg)
                continue

            if st.b_q:
                u, w, _, n = heapq.heappop(st.b_q)
                if n.arg not in st.labels[w]:
                    self.log("b", w, n)
                    self.add(st, w, n.arg)
                continue

            if st.dia_q:
                w, _, n = heapq.heappop(st.dia_q)
                if (w, n) in st.dia_done:
                    continue
                if st.blocked_by(w) is not None:
                    st.deferred.append((w, self.key(n), n))
                    continue
                self.new_world(st, w, n)
                continue

            if st.deferred and st.defer_version != st.version:
                st.defer_version = st.version
                for w, k, n in st.deferred:
                    heapq.heappush(st.dia_q, (w, k, n))
                st.deferred = []
                continue

            return st


def prove(f: Formula, logic: str, node_budget: int = DEFAULT_NODE_BUDGET) -> TableauVerdict:
    """Decide validity of a modal formula in K, KT, KB or KTB.

    Returns :class:`Valid` with a rule trace, or :class:`Invalid` with a
    frame-checked, re-evaluated countermodel and its designated world.
    Raises :class:`NodeBudgetExceeded` when the budget runs out, which is
    a resource condition distinct from either verdict.
    """
    frame = frame_for(logic)
    trace: list = []
    prover = _Prover(frame, node_budget, trace)
    st = _Branch()
    root = to_nnf(f, negate=True)
    if prover.add(st, 0, root):
        return Valid(tuple(trace))
    open_branch = prover.expand(st)
    if open_branch is None:
        return Valid(tuple(trace))
    model, world = _extract(open_branch, frame)
    assert check_frame(model, frame), "extracted countermodel violates the frame class"
    assert eval_formula(model, world, f) is False, "extracted countermodel fails to falsify"
    return Invalid(model, world, tuple(trace))


def _extract(st: _Branch, frame: FrameClass) -> tuple[KripkeModel, int]:
    blocker = {}
    for w in sorted(st.labels):
        b = st.blocked_by(w)
        if b is not None:
            blocker[w] = b

    def redirect(u: int) -> int:
        return blocker.get(u, u)

    rel = set()
    for w, kids in st.children.items():
        if w in blocker:
            continue
        for u in kids:
            rel.add((w, redirect(u)))
    kept = [w for w in sorted(st.labels) if w not in blocker]
    if frame.reflexive:
        rel.update((w, w) for w in kept)
    if frame.symmetric:
        rel.update((b, a) for a, b in list(rel))

    # restrict to the part reachable from the root in the closed relation
    reach = {0}
    frontier = [0]
    while frontier:
        w = frontier.pop()
        for a, b in rel:
            if a == w and b not in reach:
                reach.add(b)
                frontier.append(b)
    kept = [w for w in kept if w in reach]
    index = {w: i for i, w in enumerate(kept)}

    variables = sorted(
        {g.var for w in kept for g in st.labels[w] if isinstance(g, NLit)}
    )
    model = KripkeModel(
        worlds=len(kept),
        rel=frozenset(
            (index[a], index[b]) for a, b in rel if a in index and b in index
        ),
        val={
            p: frozenset(
                index[w]
                for w in kept
                if NLit(p, False) in st.labels[w]
            )
            for p in variables
        },
    )
    return model, 0


def prove_necessitation_closure(f: Formula) -> list[Formula]:
    """Helper pair for testing closure under necessitation: proving both
    entries Valid witnesses that validity survives prefixing a box."""
    return [f, Box(f)]

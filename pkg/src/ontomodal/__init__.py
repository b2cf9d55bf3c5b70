"""Workbench for embedding propositional ontology into modal logic.

Two formula languages share one immutable AST core: the ontology
language, whose atoms are copula expressions ``eps(a,b)`` over name
variables, and a propositional modal language with a single primitive
modality.  On top of the core sit the three atom translations (``i``,
``b``, ``im``), tableau decision procedures for K, KT, KB and KTB, an
exhaustive finite-model oracle, a Hilbert-style proof checker, and
harnesses that replay a recorded soundness derivation and search for
faithfulness counterexamples.
"""

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
    formula_from_json,
    formula_size,
    formula_to_json,
    is_l1_formula,
    is_modal_formula,
    is_nnf,
    name_vars,
    nnf,
    print_formula,
    prop_vars,
    subformulas,
)
from .parsing import ParseError, parse_l1, parse_modal
from .translations import TranslationError, default_varmap, translate
from .kripke import (
    EnumerationLimitError,
    Falsified,
    FrameClass,
    KripkeModel,
    LOGICS,
    bounded_validity,
    check_frame,
    eval_formula,
    frame_for,
)
from .tableau import (
    Invalid,
    NodeBudgetExceeded,
    Valid,
    prove,
    prove_necessitation_closure,
)
from .l1 import (
    ProofCheckResult,
    ProofLine,
    check_proof,
    enumerate_theorems,
    is_l1_theorem,
    load_proof,
    match_axiom,
)
from .harness import (
    faithfulness_search,
    replay_soundness_derivation,
    reproduce_i_counterexample,
    soundness_suite,
)

__version__ = "0.1.0"

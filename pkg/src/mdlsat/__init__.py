"""Difference-constraint solving over wraparound machine arithmetic.

Exact modular solving next to the classical integer reading, with
machine-checkable outcomes on both sides, plus 3-colorability reductions as
an instance source.
"""

from .core import (
    Assignment,
    Constraint,
    ConstraintSystem,
    MdlError,
    Modulus,
    ModulusError,
    ParseError,
    Relation,
    SymbolTable,
    Term,
    UndefinedVariableError,
    cmp_mod,
    eval_constraint,
    eval_system,
    eval_term,
    parse_system,
    reduce_mod,
    render_system,
    satisfies,
)
from .idl import IdlConstraint, IdlOutcome, Relaxation, relax_to_idl, solve_idl
from .mdl import (
    BudgetExceededError,
    DomainBound,
    SolveOutcome,
    brute_force_sat,
    compute_clusters,
    normalize_solution,
    small_model_bound,
    solve,
)
from .reductions import (
    Coloring,
    DecodeError,
    EncodingMeta,
    Graph,
    ImproperColoringError,
    ModulusTooSmallError,
    Variant,
    coloring_to_witness,
    decode_coloring,
    encode_3col,
    encode_3col_nonstrict,
    encode_3col_strict,
    parse_dimacs_graph,
    render_dimacs_graph,
    verify_coloring,
)

__version__ = "0.1.0"

"""Command-line front end: solve, reduce, decode, gen.

Decision runs exit 10 (SAT) or 20 (UNSAT); other commands exit 0 on
success.  Usage and parse problems exit 1; a failed internal re-check of a
produced answer exits 2.  Reports go to stdout as ``key = value`` lines
(model lines are plain ``name = value``), wall-clock timing goes to stderr
so stdout stays byte-stable for fixed inputs and seeds.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from . import idl, mdl, reductions
from .core import (
    Constraint,
    ConstraintSystem,
    MdlError,
    Modulus,
    Relation,
    SymbolTable,
    Term,
    parse_system,
    render_constraint,
    render_system,
    satisfies,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INTERNAL = 2
EXIT_SAT = 10
EXIT_UNSAT = 20


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


# --- instance generators ----------------------------------------------------


def gen_intro1(n: int = 16) -> str:
    """Two constraints with no integer solution but a wraparound one."""
    symbols = SymbolTable()
    x = symbols.intern("x")
    constraints = (
        Constraint(Term(x), Relation.GE, 0),
        Constraint(Term(x, 1), Relation.LE, 0),
    )
    return render_system(ConstraintSystem(Modulus(n), symbols, constraints))


def gen_chain(n: int) -> str:
    """x0 < x1 < ... < xN: integer-satisfiable, impossible in N residues."""
    symbols = SymbolTable()
    ids = [symbols.intern(f"x{i}") for i in range(n + 1)]
    constraints = tuple(
        Constraint(Term(ids[i]), Relation.LT, Term(ids[i + 1])) for i in range(n)
    )
    return render_system(ConstraintSystem(Modulus(n), symbols, constraints))


def gen_idl_paper(n: int = 10) -> str:
    """A four-constraint difference cycle, rendered in wraparound syntax.

    Its integer reading sums to -1 around the cycle and is unsatisfiable;
    over the residues it has models.
    """
    symbols = SymbolTable()
    ids = {name: symbols.intern(name) for name in ("x1", "x2", "x3", "x4")}
    constraints = (
        Constraint(Term(ids["x1"], 3), Relation.LE, Term(ids["x2"])),
        Constraint(Term(ids["x2"]), Relation.LE, Term(ids["x3"], 1)),
        Constraint(Term(ids["x3"], 2), Relation.LE, Term(ids["x4"])),
        Constraint(Term(ids["x4"]), Relation.LE, Term(ids["x1"], 3)),
    )
    return render_system(ConstraintSystem(Modulus(n), symbols, constraints))


_RANDOM_SHAPES = (
    ("term", Relation.LE),
    ("term", Relation.LT),
    ("term", Relation.EQ),
    ("const", Relation.LE),
    ("const", Relation.LT),
    ("const", Relation.GE),
    ("const", Relation.GT),
    ("const", Relation.EQ),
)


def gen_random(num_vars: int, num_constraints: int, max_offset: int, n: int, seed: int) -> str:
    """Seeded random system: shapes uniform over the liberalized constraint
    forms, offsets and constants uniform in [-max_offset, max_offset].

    Constant comparisons keep a bare variable on the left.  Variables that
    end up unused simply do not occur in the file.
    """
    rng = random.Random(seed)
    symbols = SymbolTable()
    ids = [symbols.intern(f"x{i}") for i in range(num_vars)]
    constraints = []
    for _ in range(num_constraints):
        kind, rel = rng.choice(_RANDOM_SHAPES)
        if kind == "term":
            lhs = Term(rng.choice(ids), rng.randint(-max_offset, max_offset))
            rhs = Term(rng.choice(ids), rng.randint(-max_offset, max_offset))
            constraints.append(Constraint(lhs, rel, rhs))
        else:
            lhs = Term(rng.choice(ids))
            constraints.append(Constraint(lhs, rel, rng.randint(-max_offset, max_offset)))
    text = render_system(ConstraintSystem(Modulus(n), symbols, tuple(constraints)))
    # unused variables vanish on reparse; renormalize so output is canonical
    return render_system(parse_system(text))


# --- report plumbing --------------------------------------------------------


def _emit(key: str, value) -> None:
    print(f"{key} = {value}")


def _emit_model_residues(system: ConstraintSystem, model) -> None:
    for name in sorted(system.symbols.names):
        _emit(name, model[system.symbols.id_of(name)])


def _render_idl(constraint: idl.IdlConstraint, system: ConstraintSystem, zero_var, zero_name) -> str:
    def name(v):
        return zero_name if v == zero_var else system.symbols.name_of(v)

    return f"{name(constraint.x)} - {name(constraint.y)} <= {constraint.k}"


# --- subcommands ------------------------------------------------------------


def cmd_solve(args) -> int:
    with open(args.file) as handle:
        system = parse_system(handle.read())
    _emit("instance", args.file)
    _emit("modulus", system.modulus.n)
    _emit("variables", system.num_vars)
    _emit("constraints", len(system.constraints))
    _emit("semantics", "modular")

    started = time.monotonic()
    if args.oracle:
        outcome = mdl.brute_force_sat(system, budget=args.budget)
        _emit("method", "enumeration")
    else:
        outcome = mdl.solve(system)
        _emit("method", "backtracking")
    _emit("verdict", "SAT" if outcome.sat else "UNSAT")
    _emit("nodes", outcome.stats.nodes)
    if not args.oracle:
        _emit("conflicts", outcome.stats.conflicts)
        _emit("domain-size", len(outcome.stats.domain.values))
    if outcome.sat:
        model = outcome.model
        if not satisfies(system, model):
            print("internal error: reported model fails re-evaluation", file=sys.stderr)
            return EXIT_INTERNAL
        if args.normalize:
            model = mdl.normalize_solution(system, model)
            allowed = mdl.small_model_bound(system).as_set()
            if not satisfies(system, model) or not set(model.values()) <= allowed:
                print("internal error: normalized model fails re-check", file=sys.stderr)
                return EXIT_INTERNAL
            _emit("normalized", "yes")
        _emit_model_residues(system, model)

    if args.relax:
        code = _solve_relaxation(system)
        if code is not None:
            return code
    print(f"time-ms = {int((time.monotonic() - started) * 1000)}", file=sys.stderr)
    return EXIT_SAT if outcome.sat else EXIT_UNSAT


def _solve_relaxation(system: ConstraintSystem) -> int | None:
    """Print the integer-relaxation section; non-None return is an error exit."""
    relaxation = idl.relax_to_idl(system)
    outcome = idl.solve_idl(relaxation.constraints)
    _emit("semantics", "integer-relaxation")
    _emit("verdict", "SAT" if outcome.sat else "UNSAT")
    if outcome.sat:
        model = dict(outcome.model)
        if relaxation.zero_var is not None and relaxation.zero_var in model:
            shift = model[relaxation.zero_var]
            model = {v: value - shift for v, value in model.items()}
        if not idl.check_idl_model(relaxation.constraints, model):
            print("internal error: relaxation model fails re-evaluation", file=sys.stderr)
            return EXIT_INTERNAL
        for name in sorted(system.symbols.names):
            vid = system.symbols.id_of(name)
            if vid in model:
                _emit(name, model[vid])
    else:
        cycle = outcome.cycle
        if not idl.check_idl_cycle(cycle):
            print("internal error: relaxation certificate fails re-evaluation", file=sys.stderr)
            return EXIT_INTERNAL
        _emit("cycle-length", len(cycle))
        _emit("cycle-weight", sum(c.k for c in cycle))
        for c in cycle:
            if c.origin is not None:
                print(f"core: {render_constraint(system.constraints[c.origin], system.symbols)}")
            else:
                print(f"core: {_render_idl(c, system, relaxation.zero_var, relaxation.zero_name)}")
    return None


def cmd_reduce(args) -> int:
    with open(args.graph) as handle:
        graph = reductions.parse_dimacs_graph(handle.read())
    variant = reductions.Variant(args.variant)
    system, meta = reductions.encode_3col(graph, Modulus(args.mod), variant)
    mdl_path = args.out + ".mdl"
    meta_path = args.out + ".meta"
    with open(mdl_path, "w") as handle:
        handle.write(render_system(system))
    with open(meta_path, "w") as handle:
        handle.write(reductions.render_meta(meta, system.symbols))
    print(f"wrote {mdl_path} ({system.num_vars} variables, {len(system.constraints)} constraints)")
    print(f"wrote {meta_path}")
    return EXIT_OK


def cmd_decode(args) -> int:
    with open(args.meta) as handle:
        info = reductions.parse_meta(handle.read())
    system, meta = reductions.restore_encoding(info)
    with open(args.model) as handle:
        assignment = _read_model_lines(handle.read(), system)
    if not satisfies(system, assignment):
        print("model does not satisfy the encoded system", file=sys.stderr)
        return EXIT_INTERNAL
    coloring = reductions.decode_coloring(meta, assignment)
    if not reductions.verify_coloring(info.graph, coloring):
        print("internal error: decoded coloring is not proper", file=sys.stderr)
        return EXIT_INTERNAL
    for v in range(info.graph.n):
        print(f"color {v} {coloring[v]}")
    return EXIT_OK


def _read_model_lines(text: str, system: ConstraintSystem):
    """Extract ``name = value`` lines for the system's variables.

    Solver reports can be fed back verbatim: report keys that are not
    variables of the system are ignored.
    """
    assignment = {}
    for raw in text.splitlines():
        parts = raw.split()
        if len(parts) != 3 or parts[1] != "=":
            continue
        name, value = parts[0], parts[2]
        if name not in system.symbols:
            continue
        try:
            assignment[system.symbols.id_of(name)] = int(value)
        except ValueError:
            continue
    missing = sorted(
        name for name in system.symbols.names if system.symbols.id_of(name) not in assignment
    )
    if missing:
        shown = ", ".join(missing[:5]) + (", ..." if len(missing) > 5 else "")
        raise MdlError(f"model file lacks values for: {shown}")
    return assignment


def cmd_gen(args) -> int:
    if args.kind == "intro1":
        text = gen_intro1(args.mod if args.mod is not None else 16)
    elif args.kind in ("intro2", "chain"):
        if args.mod is None:
            raise _UsageError(f"gen {args.kind} requires --mod")
        text = gen_chain(args.mod)
    elif args.kind == "idl-paper":
        text = gen_idl_paper(args.mod if args.mod is not None else 10)
    else:
        text = gen_random(
            args.vars,
            args.cons,
            args.m,
            args.mod if args.mod is not None else 12,
            args.seed,
        )
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --- argument wiring --------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="mdlsat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="decide a constraint file")
    solve.add_argument("file")
    solve.add_argument("--oracle", action="store_true", help="exhaustive enumeration instead of search")
    solve.add_argument("--relax", action="store_true", help="also report the integer-relaxation verdict")
    solve.add_argument("--normalize", action="store_true", help="pack a SAT model into the bounded domain")
    solve.add_argument("--budget", type=int, default=10_000_000, help="assignment budget for --oracle")
    solve.set_defaults(func=cmd_solve)

    reduce_ = sub.add_parser("reduce", help="encode a DIMACS graph's 3-colorability")
    reduce_.add_argument("graph")
    reduce_.add_argument("--variant", choices=["nonstrict", "strict"], default="nonstrict")
    reduce_.add_argument("--mod", type=int, required=True)
    reduce_.add_argument("--out", required=True, help="output prefix for .mdl and .meta")
    reduce_.set_defaults(func=cmd_reduce)

    decode = sub.add_parser("decode", help="read a coloring off a model of an encoding")
    decode.add_argument("meta")
    decode.add_argument("model")
    decode.set_defaults(func=cmd_decode)

    gen = sub.add_parser("gen", help="emit a named or random instance")
    gen.add_argument("kind", choices=["intro1", "intro2", "idl-paper", "chain", "random"])
    gen.add_argument("--mod", type=int, default=None)
    gen.add_argument("--vars", type=int, default=3)
    gen.add_argument("--cons", type=int, default=5)
    gen.add_argument("--m", type=int, default=2)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except MdlError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

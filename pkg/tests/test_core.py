import pytest
from hypothesis import given, strategies as st

from mdlsat.core import (
    EQUAL,
    GREATER,
    LESS,
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
)


def test_modulus_rejects_degenerate_values():
    Modulus(2)
    for bad in (1, 0, -3, "10", 2.0):
        with pytest.raises(ModulusError):
            Modulus(bad)


def test_reduce_mod_examples():
    assert reduce_mod(3, Modulus(10)) == 3
    assert reduce_mod(-1, Modulus(10)) == 9
    assert reduce_mod(10, Modulus(10)) == 0


def test_cmp_mod_examples():
    # 9 - 5 reduces to 4, which is below 5
    assert cmp_mod(4, 5, Modulus(10)) == LESS
    # ... but 9 is not below 5 + 5, which wraps to 0
    assert cmp_mod(9, 10, Modulus(10)) == GREATER
    assert cmp_mod(6, 0, Modulus(10)) == GREATER
    assert cmp_mod(13, 3, Modulus(10)) == EQUAL


def test_subtraction_and_comparison_do_not_commute():
    # reduce(i - j) <= k can hold while i <= j + k fails
    assert reduce_mod(9 - 5, Modulus(10)) <= 5
    assert cmp_mod(9, 5 + 5, Modulus(10)) == GREATER


@given(st.integers(), st.integers(min_value=2, max_value=10**6))
def test_reduce_mod_is_the_canonical_residue(i, n):
    r = reduce_mod(i, Modulus(n))
    assert 0 <= r < n
    assert (i - r) % n == 0


@given(st.integers(), st.integers(), st.integers(min_value=2, max_value=10**4))
def test_cmp_mod_matches_reduced_comparison(i, j, n):
    modulus = Modulus(n)
    a, b = reduce_mod(i, modulus), reduce_mod(j, modulus)
    expected = LESS if a < b else GREATER if a > b else EQUAL
    assert cmp_mod(i, j, modulus) == expected


def test_eval_term_examples():
    modulus = Modulus(10)
    assert eval_term(Term(0, 1), {0: 9}, modulus) == 0
    assert eval_term(Term(0, 0), {0: 5}, modulus) == 5
    assert eval_term(Term(0, -1), {0: 0}, modulus) == 9
    with pytest.raises(UndefinedVariableError):
        eval_term(Term(1, 0), {0: 5}, modulus)


def test_eval_constraint_examples():
    modulus = Modulus(10)
    c = Constraint(Term(0), Relation.LE, Term(1, 5))
    assert not eval_constraint(c, {0: 9, 1: 5}, modulus)
    c = Constraint(Term(0), Relation.LE, Term(1, -1))
    assert eval_constraint(c, {0: 5, 1: 0}, modulus)
    c = Constraint(Term(0), Relation.EQ, Term(0, 0))
    assert eval_constraint(c, {0: 7}, Modulus(12))


def test_eval_constraint_normalizes_ge_gt_by_comparison():
    modulus = Modulus(10)
    ge = Constraint(Term(0), Relation.GE, Term(1))
    gt = Constraint(Term(0), Relation.GT, Term(1))
    assert eval_constraint(ge, {0: 5, 1: 5}, modulus)
    assert not eval_constraint(gt, {0: 5, 1: 5}, modulus)
    assert eval_constraint(gt, {0: 6, 1: 5}, modulus)


def _intro_system(n=16):
    return parse_system(f"mod {n}\nx >= 0\nx + 1 <= 0\n")


def test_eval_system_examples():
    empty = parse_system("mod 7\n")
    assert eval_system(empty, {}) is None
    system = _intro_system()
    assert eval_system(system, {0: 15}) is None
    assert eval_system(system, {0: 3}) == 1


@given(st.integers(min_value=0, max_value=15), st.integers(), st.integers(min_value=2, max_value=60))
def test_eval_invariant_under_offset_shifts_by_modulus(x, t, n):
    base = Constraint(Term(0, 3), Relation.LE, Term(1, -2))
    shifted = Constraint(Term(0, 3 + t * n), Relation.LE, Term(1, -2 - t * n))
    a = {0: x % n, 1: (x * 7 + 1) % n}
    assert eval_constraint(base, a, Modulus(n)) == eval_constraint(shifted, a, Modulus(n))


@given(st.integers(min_value=0, max_value=15), st.integers(), st.integers(min_value=2, max_value=60))
def test_eval_invariant_under_constant_shifts_by_modulus(x, t, n):
    base = Constraint(Term(0, 1), Relation.GT, -2)
    shifted = Constraint(Term(0, 1), Relation.GT, -2 + t * n)
    a = {0: x % n}
    assert eval_constraint(base, a, Modulus(n)) == eval_constraint(shifted, a, Modulus(n))


# --- text format ------------------------------------------------------------


def test_parse_basic():
    system = parse_system("mod 10\nx + 1 <= y\n")
    assert system.modulus.n == 10
    assert system.symbols.names == ("x", "y")
    assert system.constraints == (Constraint(Term(0, 1), Relation.LE, Term(1)),)


def test_parse_header_required():
    with pytest.raises(ModulusError):
        parse_system("x <= y\n")
    with pytest.raises(ModulusError):
        parse_system("# only a comment\n")
    with pytest.raises(ModulusError):
        parse_system("mod 1\nx <= y\n")
    with pytest.raises(ModulusError):
        parse_system("mod -5\n")


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as excinfo:
        parse_system("mod 10\nx << y\n")
    assert excinfo.value.line == 2


def test_parse_comments_blanks_and_spacing():
    text = "# header comment\n\nmod 12  # modulus\n  x+3<=y-2 # tight\n\ny = -4\n"
    system = parse_system(text)
    assert system.modulus.n == 12
    assert system.constraints == (
        Constraint(Term(0, 3), Relation.LE, Term(1, -2)),
        Constraint(Term(1), Relation.EQ, -4),
    )


def test_parse_all_relations_and_constant_forms():
    text = "mod 9\na <= b\na < b\na = b\na >= b\na > b\na <= 5\na >= -3\na = +2\n"
    system = parse_system(text)
    rels = [c.rel for c in system.constraints]
    assert rels == [
        Relation.LE,
        Relation.LT,
        Relation.EQ,
        Relation.GE,
        Relation.GT,
        Relation.LE,
        Relation.GE,
        Relation.EQ,
    ]
    assert system.constraints[6].rhs == -3
    assert system.constraints[7].rhs == 2


def test_parse_rejects_junk():
    for bad in ("mod 10\nx <=\n", "mod 10\n<= y\n", "mod 10\nx <= y z\n", "mod 10\nx + y <= z\n"):
        with pytest.raises(ParseError):
            parse_system(bad)


def test_mod_is_reserved():
    with pytest.raises(ParseError):
        parse_system("mod 10\nmod <= x\n")
    with pytest.raises(MdlError):
        SymbolTable().intern("mod")


def test_names_case_sensitive_first_occurrence_order():
    system = parse_system("mod 5\nX <= x\nx <= y\n")
    assert system.symbols.names == ("X", "x", "y")


def test_large_offsets_and_constants_accepted_silently():
    system = parse_system("mod 10\nx + 1000000000000 <= y\nx <= 99\n")
    assert system.max_abs_constant == 1000000000000
    assert eval_constraint(system.constraints[0], {0: 0, 1: 0}, system.modulus)


def test_render_examples():
    system = parse_system("mod 10\nx + 2 < y - 1\n")
    assert render_system(system) == "mod 10\nx + 2 < y - 1\n"
    empty = parse_system("mod 7\n")
    assert render_system(empty) == "mod 7\n"


def test_render_parse_round_trip_is_idempotent():
    noisy = "# c\nmod 10\n  x+2<y-1\nx   <= 5\n# tail\n"
    once = render_system(parse_system(noisy))
    assert render_system(parse_system(once)) == once


@st.composite
def systems(draw):
    n = draw(st.integers(min_value=2, max_value=50))
    num_vars = draw(st.integers(min_value=1, max_value=4))
    symbols = SymbolTable(f"x{i}" for i in range(num_vars))
    offsets = st.integers(min_value=-6, max_value=6)
    var_ids = st.integers(min_value=0, max_value=num_vars - 1)
    terms = st.builds(Term, var_ids, offsets)
    constraints = st.lists(
        st.builds(Constraint, terms, st.sampled_from(list(Relation)), st.one_of(terms, offsets)),
        max_size=6,
    )
    body = tuple(draw(constraints))
    # re-intern in first occurrence order so rendering loses nothing
    table = SymbolTable()
    remap = {}
    for c in body:
        for v in c.variables():
            if v not in remap:
                remap[v] = table.intern(symbols.name_of(v))
    remapped = []
    for c in body:
        rhs = Term(remap[c.rhs.var], c.rhs.offset) if isinstance(c.rhs, Term) else c.rhs
        remapped.append(Constraint(Term(remap[c.lhs.var], c.lhs.offset), c.rel, rhs))
    return ConstraintSystem(Modulus(n), table, tuple(remapped))


@given(systems())
def test_parse_render_identity(system):
    again = parse_system(render_system(system))
    assert again == system


def test_system_caches_p_and_m():
    system = parse_system("mod 10\nx + 2 <= y - 3\nz >= 1\n")
    assert system.num_vars == 3
    assert system.max_abs_constant == 3
    assert parse_system("mod 10\nx <= y\n").max_abs_constant == 0

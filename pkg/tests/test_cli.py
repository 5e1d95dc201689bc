import pytest

from mdlsat.cli import (
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_SAT,
    EXIT_UNSAT,
    EXIT_USAGE,
    gen_chain,
    gen_idl_paper,
    gen_intro1,
    gen_random,
    main,
)
from mdlsat.core import parse_system
from mdlsat.mdl import small_model_bound
from mdlsat.reductions import Graph, render_dimacs_graph


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def report_value(out, key):
    for line in out.splitlines():
        if line.startswith(f"{key} = "):
            return line.split(" = ", 1)[1]
    return None


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


# --- generators -------------------------------------------------------------


def test_gen_intro1_text():
    assert gen_intro1(16) == "mod 16\nx >= 0\nx + 1 <= 0\n"


def test_gen_chain_counts():
    system = parse_system(gen_chain(5))
    assert system.num_vars == 6
    assert len(system.constraints) == 5


def test_gen_idl_paper_text():
    assert gen_idl_paper(10) == (
        "mod 10\nx1 + 3 <= x2\nx2 <= x3 + 1\nx3 + 2 <= x4\nx4 <= x1 + 3\n"
    )


def test_gen_random_is_deterministic_and_bounded():
    a = gen_random(3, 5, 2, 12, 7)
    b = gen_random(3, 5, 2, 12, 7)
    assert a == b
    system = parse_system(a)
    assert system.max_abs_constant <= 2
    assert len(system.constraints) == 5
    assert gen_random(3, 5, 2, 12, 8) != a


# --- solve ------------------------------------------------------------------


def test_solve_intro_sat_with_relaxation_gap(tmp_path, capsys):
    path = write(tmp_path, "intro.mdl", gen_intro1(16))
    code, out, err = run(capsys, "solve", path, "--relax")
    assert code == EXIT_SAT
    assert report_value(out, "verdict") == "SAT"
    assert "x = 15" in out.splitlines()
    relax = out[out.index("integer-relaxation") :]
    assert "verdict = UNSAT" in relax
    assert "cycle-weight = -1" in relax
    assert "core: x >= 0" in relax
    assert "core: x + 1 <= 0" in relax
    assert "time-ms" in err


def test_solve_chain_unsat_relaxation_sat(tmp_path, capsys):
    path = write(tmp_path, "chain.mdl", gen_chain(5))
    code, out, _ = run(capsys, "solve", path, "--relax")
    assert code == EXIT_UNSAT
    head, relax = out.split("semantics = integer-relaxation")
    assert "verdict = UNSAT" in head
    assert "verdict = SAT" in relax
    # integer model is printed zero-based and increasing
    values = [int(report_value(relax, f"x{i}")) for i in range(6)]
    assert values == sorted(values) and len(set(values)) == 6


def test_solve_oracle_agrees(tmp_path, capsys):
    path = write(tmp_path, "r.mdl", gen_random(3, 5, 2, 10, 3))
    code_search, out_search, _ = run(capsys, "solve", path)
    code_oracle, out_oracle, _ = run(capsys, "solve", path, "--oracle")
    assert code_search == code_oracle
    assert report_value(out_search, "verdict") == report_value(out_oracle, "verdict")
    assert report_value(out_oracle, "method") == "enumeration"


def test_solve_normalize_puts_values_in_domain(tmp_path, capsys):
    path = write(tmp_path, "n.mdl", "mod 1000\nx + 5 <= y\n")
    code, out, _ = run(capsys, "solve", path, "--normalize")
    assert code == EXIT_SAT
    assert report_value(out, "normalized") == "yes"
    system = parse_system((tmp_path / "n.mdl").read_text())
    allowed = small_model_bound(system).as_set()
    for name in ("x", "y"):
        assert int(report_value(out, name)) in allowed


def test_solve_reports_are_byte_stable(tmp_path, capsys):
    path = write(tmp_path, "s.mdl", gen_random(3, 6, 2, 12, 41))
    _, first, _ = run(capsys, "solve", path, "--relax")
    _, second, _ = run(capsys, "solve", path, "--relax")
    assert first == second


def test_solve_malformed_file(tmp_path, capsys):
    path = write(tmp_path, "bad.mdl", "mod 10\nx << y\n")
    code, _, err = run(capsys, "solve", path)
    assert code == EXIT_USAGE
    assert "line 2" in err


def test_solve_missing_file(capsys):
    code, _, err = run(capsys, "solve", "/nonexistent/file.mdl")
    assert code == EXIT_USAGE
    assert "error" in err


def test_solve_oracle_budget_exceeded(tmp_path, capsys):
    path = write(tmp_path, "big.mdl", gen_chain(8))
    code, _, err = run(capsys, "solve", path, "--oracle", "--budget", "1000")
    assert code == EXIT_USAGE
    assert "budget" in err


def test_usage_error_is_exit_1(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == EXIT_USAGE


# --- reduce / decode pipeline -------------------------------------------------


def test_reduce_writes_instance_and_meta(tmp_path, capsys):
    graph_path = write(tmp_path, "k3.col", render_dimacs_graph(Graph.complete(3)))
    prefix = str(tmp_path / "k3")
    code, out, _ = run(capsys, "reduce", graph_path, "--variant", "nonstrict", "--mod", "16", "--out", prefix)
    assert code == EXIT_OK
    system = parse_system((tmp_path / "k3.mdl").read_text())
    assert system.num_vars == 27
    assert len(system.constraints) == 36
    assert (tmp_path / "k3.meta").exists()


def test_reduce_modulus_too_small(tmp_path, capsys):
    graph_path = write(tmp_path, "k3.col", render_dimacs_graph(Graph.complete(3)))
    code, _, err = run(capsys, "reduce", graph_path, "--variant", "strict", "--mod", "8", "--out", str(tmp_path / "x"))
    assert code == EXIT_USAGE
    assert "modulus" in err


def test_reduce_empty_graph(tmp_path, capsys):
    graph_path = write(tmp_path, "empty.col", "p edge 0 0\n")
    prefix = str(tmp_path / "empty")
    code, _, _ = run(capsys, "reduce", graph_path, "--mod", "16", "--out", prefix)
    assert code == EXIT_OK
    assert (tmp_path / "empty.mdl").read_text() == "mod 16\n"


def test_reduce_solve_decode_pipeline(tmp_path, capsys):
    graph = Graph.cycle(5)
    graph_path = write(tmp_path, "c5.col", render_dimacs_graph(graph))
    prefix = str(tmp_path / "c5")
    code, _, _ = run(capsys, "reduce", graph_path, "--variant", "strict", "--mod", "9", "--out", prefix)
    assert code == EXIT_OK
    code, solve_out, _ = run(capsys, "solve", prefix + ".mdl")
    assert code == EXIT_SAT
    model_path = write(tmp_path, "model.txt", solve_out)  # full report doubles as model file
    code, decode_out, _ = run(capsys, "decode", prefix + ".meta", model_path)
    assert code == EXIT_OK
    colors = {}
    for line in decode_out.splitlines():
        _, v, c = line.split()
        colors[int(v)] = int(c)
    assert all(colors[v] != colors[w] for v, w in graph.edges)


def test_decode_rejects_non_model(tmp_path, capsys):
    graph_path = write(tmp_path, "k3.col", render_dimacs_graph(Graph.complete(3)))
    prefix = str(tmp_path / "k3")
    run(capsys, "reduce", graph_path, "--mod", "16", "--out", prefix)
    system = parse_system((tmp_path / "k3.mdl").read_text())
    bogus = "\n".join(f"{name} = 0" for name in system.symbols.names) + "\n"
    model_path = write(tmp_path, "bogus.txt", bogus)
    code, _, err = run(capsys, "decode", prefix + ".meta", model_path)
    assert code == EXIT_INTERNAL
    assert "does not satisfy" in err


def test_decode_incomplete_model(tmp_path, capsys):
    graph_path = write(tmp_path, "k3.col", render_dimacs_graph(Graph.complete(3)))
    prefix = str(tmp_path / "k3")
    run(capsys, "reduce", graph_path, "--mod", "16", "--out", prefix)
    model_path = write(tmp_path, "short.txt", "v0_c0 = 15\n")
    code, _, err = run(capsys, "decode", prefix + ".meta", model_path)
    assert code == EXIT_USAGE
    assert "lacks values" in err


# --- gen command ------------------------------------------------------------


def test_gen_to_stdout_and_file(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "intro1", "--mod", "16")
    assert code == EXIT_OK
    assert out == gen_intro1(16)
    target = str(tmp_path / "o.mdl")
    code, out, _ = run(capsys, "gen", "chain", "--mod", "5", "--out", target)
    assert code == EXIT_OK
    assert (tmp_path / "o.mdl").read_text() == gen_chain(5)


def test_gen_intro2_is_the_chain_example(capsys):
    _, a, _ = run(capsys, "gen", "intro2", "--mod", "5")
    assert a == gen_chain(5)


def test_gen_chain_requires_mod(capsys):
    code, _, err = run(capsys, "gen", "chain")
    assert code == EXIT_USAGE


def test_gen_random_cli_deterministic(capsys):
    _, a, _ = run(capsys, "gen", "random", "--vars", "3", "--cons", "5", "--m", "2", "--mod", "12", "--seed", "7")
    _, b, _ = run(capsys, "gen", "random", "--vars", "3", "--cons", "5", "--m", "2", "--mod", "12", "--seed", "7")
    assert a == b == gen_random(3, 5, 2, 12, 7)

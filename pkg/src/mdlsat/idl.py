"""Difference constraints over the integers: a polynomial-time decision
procedure with checkable outcomes.

Constraints have the form x - y <= k.  The solver builds a weighted digraph
(one edge per constraint, plus a zero-weight edge from every variable to a
distinguished Sink), runs Floyd-Warshall, and either extracts a negative
cycle -- an unsatisfiability certificate whose inequalities sum to
0 <= (negative) -- or reads a model off the shortest-path weights to Sink.

``relax_to_idl`` translates a modular system into this integer form by
ignoring wraparound.  That reading is deliberately neither sound nor
complete for the modular semantics; the point of keeping it around is to
exhibit exactly where the two disagree.

All weights are Python integers, so path arithmetic is exact at any size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import ConstraintSystem, MdlError, Relation, Term, VarId


class _SinkType:
    __slots__ = ()

    def __repr__(self):
        return "Sink"


#: Auxiliary graph vertex reachable from every variable by a weight-0 edge.
SINK = _SinkType()


class TrivialUnsatError(MdlError):
    """A constraint x - x <= k with k < 0 is unsatisfiable by itself."""

    def __init__(self, constraint: "IdlConstraint"):
        self.constraint = constraint
        super().__init__(f"self-difference with negative bound: {constraint}")


@dataclass(frozen=True)
class IdlConstraint:
    """x - y <= k over the integers."""

    x: VarId
    y: VarId
    k: int
    #: index of the source constraint this was translated from, if any
    origin: int | None = field(default=None, compare=False, repr=False)

    def __str__(self):
        return f"x{self.x} - x{self.y} <= {self.k}"


@dataclass(frozen=True)
class Relaxation:
    """Integer reading of a modular system.

    Constant comparisons are anchored with a fresh variable standing for 0
    (``zero_var``); a model then reads constants relative to that variable.
    """

    constraints: tuple[IdlConstraint, ...]
    zero_var: VarId | None
    zero_name: str | None


def relax_to_idl(system: ConstraintSystem) -> Relaxation:
    """Read each modular constraint as a plain integer difference constraint.

    x+k <= y+l becomes x-y <= l-k, strict forms tighten the bound by one,
    equalities split into both directions, and constant comparisons are
    rewritten against the fresh zero variable.  No range constraints are
    added: this is the naive integer reading, unsound and incomplete with
    respect to the wraparound semantics.
    """
    zero: VarId | None = None
    zero_name: str | None = None
    out: list[IdlConstraint] = []

    def zero_var() -> VarId:
        nonlocal zero, zero_name
        if zero is None:
            zero = system.num_vars
            name = "zero"
            while name in system.symbols:
                name += "_"
            zero_name = name
        return zero

    for idx, c in enumerate(system.constraints):
        x, k = c.lhs.var, c.lhs.offset
        rel = c.rel
        if isinstance(c.rhs, Term):
            y, l = c.rhs.var, c.rhs.offset
            if rel is Relation.LE:
                out.append(IdlConstraint(x, y, l - k, idx))
            elif rel is Relation.LT:
                out.append(IdlConstraint(x, y, l - k - 1, idx))
            elif rel is Relation.GE:
                out.append(IdlConstraint(y, x, k - l, idx))
            elif rel is Relation.GT:
                out.append(IdlConstraint(y, x, k - l - 1, idx))
            else:
                out.append(IdlConstraint(x, y, l - k, idx))
                out.append(IdlConstraint(y, x, k - l, idx))
        else:
            const = c.rhs
            z = zero_var()
            if rel is Relation.LE:
                out.append(IdlConstraint(x, z, const - k, idx))
            elif rel is Relation.LT:
                out.append(IdlConstraint(x, z, const - k - 1, idx))
            elif rel is Relation.GE:
                out.append(IdlConstraint(z, x, k - const, idx))
            elif rel is Relation.GT:
                out.append(IdlConstraint(z, x, k - const - 1, idx))
            else:
                out.append(IdlConstraint(x, z, const - k, idx))
                out.append(IdlConstraint(z, x, k - const, idx))
    return Relaxation(tuple(out), zero, zero_name)


@dataclass
class DiffGraph:
    """Weighted digraph over variables plus SINK.

    ``edges`` maps (from, to) to (weight, source constraint or None); at most
    one edge per ordered pair, keeping the minimum weight (first seen wins
    ties).  Every variable has a weight-0 edge to SINK.
    """

    nodes: tuple
    edges: dict


def build_graph(constraints) -> DiffGraph:
    variables = sorted({c.x for c in constraints} | {c.y for c in constraints})
    edges: dict = {}
    for c in constraints:
        if c.x == c.y:
            if c.k < 0:
                raise TrivialUnsatError(c)
            continue  # x - x <= k with k >= 0 holds vacuously
        key = (c.x, c.y)
        current = edges.get(key)
        if current is None or c.k < current[0]:
            edges[key] = (c.k, c)
    for x in variables:
        edges[(x, SINK)] = (0, None)
    return DiffGraph(tuple(variables) + (SINK,), edges)


@dataclass
class FwResult:
    """Either a negative cycle or the all-pairs minimal path weights.

    ``dist[i][j]`` follows ``nodes`` order and is math.inf when j is
    unreachable from i; the diagonal is 0.
    """

    nodes: tuple
    dist: list | None
    neg_cycle: tuple | None

    def weight(self, u, v):
        i = self.nodes.index(u)
        j = self.nodes.index(v)
        return self.dist[i][j]


def floyd_warshall(graph: DiffGraph) -> FwResult:
    """All-pairs shortest paths with negative-cycle extraction.

    Each relaxation records how the improved path decomposes (the two
    sub-paths joined at the current pivot vertex), so a negative diagonal
    entry can be expanded back into an actual closed chain of input
    constraints.  The diagonal is checked after every pivot phase; stopping
    at the first negative entry keeps the recorded decompositions exact.
    """
    nodes = graph.nodes
    size = len(nodes)
    index = {u: i for i, u in enumerate(nodes)}
    inf = math.inf
    dist = [[inf] * size for _ in range(size)]
    route = [[None] * size for _ in range(size)]
    for i in range(size):
        dist[i][i] = 0
    for (u, v), (w, c) in graph.edges.items():
        i, j = index[u], index[v]
        if w < dist[i][j]:
            dist[i][j] = w
            route[i][j] = ("edge", c)
    for k in range(size):
        dist_k = dist[k]
        route_k = route[k]
        for i in range(size):
            if i == k:
                continue
            d_ik = dist[i][k]
            if d_ik == inf:
                continue
            dist_i = dist[i]
            route_i = route[i]
            route_ik = route_i[k]
            for j in range(size):
                if j == k:
                    continue
                d_kj = dist_k[j]
                if d_kj == inf:
                    continue
                nd = d_ik + d_kj
                if nd < dist_i[j]:
                    dist_i[j] = nd
                    route_i[j] = ("join", route_ik, route_k[j])
        for v in range(size):
            if dist[v][v] < 0:
                walk = _leaves(route[v][v])
                return FwResult(nodes, None, tuple(_simple_negative_cycle(walk)))
    return FwResult(nodes, dist, None)


def _leaves(node) -> list:
    """Flatten a recorded path decomposition into its constraint sequence."""
    out: list = []
    stack = [node]
    while stack:
        item = stack.pop()
        if item[0] == "edge":
            out.append(item[1])
        else:
            stack.append(item[1])  # popped after item[2]: right side last in
            stack.append(item[2])
    out.reverse()
    return out


def _simple_negative_cycle(walk: list) -> list:
    """Reduce a closed negative-weight chain to a simple negative cycle.

    Excising a closed sub-chain of nonnegative weight keeps the total
    negative; a negative sub-chain can replace the whole.  Either way the
    length shrinks, so this terminates with a cycle visiting no vertex twice.
    The result is rotated to start at its smallest vertex id.
    """
    while True:
        seen: dict = {}
        for pos, c in enumerate(walk):
            if c.x in seen:
                start = seen[c.x]
                sub = walk[start:pos]
                if sum(e.k for e in sub) < 0:
                    walk = sub
                else:
                    walk = walk[:start] + walk[pos:]
                break
            seen[c.x] = pos
        else:
            break
    first = min(range(len(walk)), key=lambda i: walk[i].x)
    return walk[first:] + walk[:first]


@dataclass(frozen=True)
class IdlOutcome:
    """SAT with an integer model, or UNSAT with a negative-cycle certificate."""

    sat: bool
    model: dict | None
    cycle: tuple[IdlConstraint, ...] | None


def solve_idl(constraints) -> IdlOutcome:
    """Decide a list of integer difference constraints.

    The model sets each variable to its minimal path weight to SINK (with
    Sink at 0); values may be negative.  A variable absent from every
    constraint does not appear in the model.
    """
    constraints = list(constraints)
    try:
        graph = build_graph(constraints)
    except TrivialUnsatError as err:
        return IdlOutcome(False, None, (err.constraint,))
    result = floyd_warshall(graph)
    if result.neg_cycle is not None:
        return IdlOutcome(False, None, result.neg_cycle)
    sink = len(result.nodes) - 1
    model = {v: result.dist[i][sink] for i, v in enumerate(result.nodes[:-1])}
    return IdlOutcome(True, model, None)


def check_idl_model(constraints, model: dict) -> bool:
    """Does the model satisfy every constraint over the integers?"""
    return all(model[c.x] - model[c.y] <= c.k for c in constraints)


def check_idl_cycle(cycle) -> bool:
    """Is this a closed chain whose weights sum to a strictly negative value?

    Summing the inequalities along such a chain telescopes the variables
    away, leaving 0 <= (negative): a solver-independent refutation.
    """
    cycle = list(cycle)
    if not cycle:
        return False
    for a, b in zip(cycle, cycle[1:]):
        if a.y != b.x:
            return False
    if cycle[-1].y != cycle[0].x:
        return False
    return sum(c.k for c in cycle) < 0

"""Complete satisfiability for modular difference systems.

The key fact this module builds on: a satisfiable system with p variables
and largest absolute constant m has a solution whose values all lie within
B = (2m+1)*p of an end of the residue range.  Candidate values are therefore
restricted to D = [0,B] u [N-1-B, N-1], which makes exhaustive backtracking
a complete decision procedure regardless of how large N is.

Three entry points:

* ``brute_force_sat`` -- plain enumeration of all N^p assignments, used as an
  independent oracle at desk scale.
* ``solve`` -- backtracking over the bounded candidate domain, with arc
  consistency and conflict-directed backjumping for pruning.  Pruning only
  affects speed; the verdict is determined by the bounded domain.
* ``normalize_solution`` -- rewrites any solution into one inside the bounded
  domain by repeatedly shifting "clusters" (blocks of variables whose values
  sit within 2m of each other) leftward until they pack against each other.

Search state is local to each call; everything here is safe to invoke
concurrently on shared inputs.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .core import (
    Assignment,
    ConstraintSystem,
    MdlError,
    Term,
    eval_system,
    satisfies,
)

#: Synthetic endpoint markers used by cluster analysis; never returned in models.
V_MIN = -1
V_MAX = -2


class BudgetExceededError(MdlError):
    """The requested enumeration is larger than the allowed budget."""


class NotASolutionError(MdlError):
    """normalize_solution was handed an assignment that violates the system."""


@dataclass(frozen=True)
class SearchStats:
    method: str
    nodes: int
    conflicts: int = 0
    domain: "DomainBound | None" = None


@dataclass(frozen=True)
class SolveOutcome:
    """SAT with a model, or UNSAT with the search statistics that exhausted it."""

    sat: bool
    model: Assignment | None
    stats: SearchStats


@dataclass(frozen=True)
class DomainBound:
    """Candidate values near the ends of the residue range.

    ``values`` lists the candidates in search order: ascending from 0 through
    min(B, N-1), then descending from N-1 down to N-1-B, without duplicates.
    At most min(N, 2B+2) candidates.
    """

    bound: int
    values: tuple[int, ...]

    def as_set(self) -> frozenset:
        return frozenset(self.values)


def small_model_bound(system: ConstraintSystem) -> DomainBound:
    """B = (2m+1)*p and the candidate set D = ([0,B] u [N-1-B, N-1]) n [0,N-1]."""
    n = system.modulus.n
    b = (2 * system.max_abs_constant + 1) * system.num_vars
    low_end = min(b, n - 1)
    high_start = max(n - 1 - b, low_end + 1)
    values = tuple(range(0, low_end + 1)) + tuple(range(n - 1, high_start - 1, -1))
    return DomainBound(b, values)


def brute_force_sat(system: ConstraintSystem, budget: int = 10_000_000) -> SolveOutcome:
    """Enumerate all N^p assignments in lexicographic order.

    Returns the first satisfying assignment, or UNSAT after seeing them all.
    Refuses to start when N^p exceeds the budget.
    """
    n = system.modulus.n
    p = system.num_vars
    total = n**p
    if total > budget:
        raise BudgetExceededError(f"{n}^{p} = {total} assignments exceed the budget of {budget}")
    checks = [_compile_constraint(c, n) for c in system.constraints]
    count = 0
    for values in itertools.product(range(n), repeat=p):
        count += 1
        if all(check(values) for check in checks):
            model = dict(enumerate(values))
            return SolveOutcome(True, model, SearchStats("enumeration", count))
    return SolveOutcome(False, None, SearchStats("enumeration", count))


def _compile_constraint(c, n: int):
    """Closure evaluating one constraint against a value tuple indexed by VarId."""
    x, k = c.lhs.var, c.lhs.offset
    holds = c.rel.holds
    if isinstance(c.rhs, Term):
        y, l = c.rhs.var, c.rhs.offset
        return lambda vals: holds((vals[x] + k) % n, (vals[y] + l) % n)
    r = c.rhs % n
    return lambda vals: holds((vals[x] + k) % n, r)


def solve(system: ConstraintSystem) -> SolveOutcome:
    """Decide satisfiability over [0, N-1]^p by bounded backtracking.

    Variables are decided in id (first occurrence) order; values are tried in
    the candidate order of ``small_model_bound``.  After each decision an
    AC-3 pass prunes candidate domains; every pruned value carries the set of
    decisions responsible for it, so when a domain empties the search jumps
    straight back to the deepest decision that actually contributed instead
    of stepping chronologically.  None of this changes the verdict, which is
    fixed by the bounded candidate domain.

    Worst-case time is exponential in the variable count, and the support
    tables take memory quadratic in the candidate count (at most 2B+2 values,
    so large moduli only cost via large offsets times many variables).
    """
    n = system.modulus.n
    p = system.num_vars
    domain = small_model_bound(system)
    cand = domain.values
    d = len(cand)
    full = (1 << d) - 1

    # Compile constraints: unary ones filter a variable's initial candidates;
    # binary ones become support masks over candidate indices, merged per
    # unordered variable pair.
    unary = [full] * p
    pair_constraints: dict = {}
    for c in system.constraints:
        x, k = c.lhs.var, c.lhs.offset
        if isinstance(c.rhs, Term):
            y, l = c.rhs.var, c.rhs.offset
            if x == y:
                mask = 0
                for i, u in enumerate(cand):
                    if c.rel.holds((u + k) % n, (u + l) % n):
                        mask |= 1 << i
                unary[x] &= mask
            else:
                key = (x, y) if x < y else (y, x)
                pair_constraints.setdefault(key, []).append(c)
        else:
            r = c.rhs % n
            mask = 0
            for i, u in enumerate(cand):
                if c.rel.holds((u + k) % n, r):
                    mask |= 1 << i
            unary[x] &= mask

    arc_table: dict = {}  # (target, source) -> per-target-value support masks
    neighbors: list = [[] for _ in range(p)]
    for (a, b), cons in pair_constraints.items():
        t_ab = [0] * d
        for ia, ua in enumerate(cand):
            mask = 0
            for ib, ub in enumerate(cand):
                ok = True
                for c in cons:
                    u = ua if c.lhs.var == a else ub
                    w = ua if c.rhs.var == a else ub
                    if not c.rel.holds((u + c.lhs.offset) % n, (w + c.rhs.offset) % n):
                        ok = False
                        break
                if ok:
                    mask |= 1 << ib
            t_ab[ia] = mask
        t_ba = [0] * d
        for ia in range(d):
            rest = t_ab[ia]
            while rest:
                low = rest & -rest
                rest ^= low
                t_ba[low.bit_length() - 1] |= 1 << ia
        arc_table[(a, b)] = t_ab
        arc_table[(b, a)] = t_ba
        neighbors[a].append(b)
        neighbors[b].append(a)

    dom = list(unary)
    reasons: list = [dict() for _ in range(p)]  # removed index -> decision bitmask
    trail: list = []
    nodes = 0
    conflicts = 0

    def agg_reason(v: int) -> int:
        r = 0
        for mask in reasons[v].values():
            r |= mask
        return r

    def propagate(seeds) -> int | None:
        """AC-3 from the given variables; returns a conflict mask or None."""
        queue = deque()
        queued = set()
        for s in seeds:
            for t in neighbors[s]:
                if (t, s) not in queued:
                    queue.append((t, s))
                    queued.add((t, s))
        while queue:
            t, s = queue.popleft()
            queued.discard((t, s))
            table = arc_table[(t, s)]
            dom_s = dom[s]
            removed = False
            rest = dom[t]
            while rest:
                low = rest & -rest
                rest ^= low
                ti = low.bit_length() - 1
                support = table[ti]
                if support & dom_s:
                    continue
                # every potential support is gone; blame their removals
                why = 0
                sm = support
                while sm:
                    sl = sm & -sm
                    sm ^= sl
                    why |= reasons[s].get(sl.bit_length() - 1, 0)
                dom[t] &= ~low
                reasons[t][ti] = why
                trail.append((t, ti))
                removed = True
            if dom[t] == 0:
                return agg_reason(t)
            if removed:
                for u in neighbors[t]:
                    if u != s and (u, t) not in queued:
                        queue.append((u, t))
                        queued.add((u, t))
        return None

    def undo(mark: int) -> None:
        while len(trail) > mark:
            v, i = trail.pop()
            dom[v] |= 1 << i
            del reasons[v][i]

    if any(dom[v] == 0 for v in range(p)):
        return SolveOutcome(False, None, SearchStats("backtracking", 0, 0, domain))
    conflict = propagate(range(p))
    if conflict is not None:
        # no decisions made yet, so the conflict is unconditional
        return SolveOutcome(False, None, SearchStats("backtracking", 0, 1, domain))

    pending = [0] * p
    fail = [0] * p
    mark = [0] * p
    level = 0
    if p:
        pending[0] = dom[0]
    while True:
        if level == p:
            model = {v: cand[dom[v].bit_length() - 1] for v in range(p)}
            if eval_system(system, model) is not None:
                raise MdlError("internal error: search produced a non-model")
            return SolveOutcome(True, model, SearchStats("backtracking", nodes, conflicts, domain))
        if pending[level] == 0:
            exhausted = (fail[level] | agg_reason(level)) & ~(1 << level)
            if exhausted == 0:
                return SolveOutcome(False, None, SearchStats("backtracking", nodes, conflicts, domain))
            target = exhausted.bit_length() - 1
            undo(mark[target])
            fail[target] |= exhausted & ~(1 << target)
            level = target
            continue
        low = pending[level] & -pending[level]
        pending[level] ^= low
        nodes += 1
        mark[level] = len(trail)
        others = dom[level] & ~low
        while others:
            ol = others & -others
            others ^= ol
            reasons[level][ol.bit_length() - 1] = 1 << level
            trail.append((level, ol.bit_length() - 1))
        dom[level] = low
        conflict = propagate((level,))
        if conflict is None:
            level += 1
            if level < p:
                pending[level] = dom[level]
                fail[level] = 0
            continue
        conflicts += 1
        undo(mark[level])
        fail[level] |= conflict & ~(1 << level)


@dataclass(frozen=True)
class Cluster:
    """A block of variables whose assigned values sit within 2m of each other.

    The domain [lo, hi] pads the occupied value range by m on both sides,
    clipped to [0, N-1]; distinct clusters have disjoint domains.  Members
    may include the synthetic endpoints V_MIN (pinned to 0) and V_MAX
    (pinned to N-1).
    """

    members: frozenset
    lo: int
    hi: int

    def is_inner(self) -> bool:
        return V_MIN not in self.members and V_MAX not in self.members


def compute_clusters(system: ConstraintSystem, assignment: Assignment) -> list[Cluster]:
    """Partition the variables (plus both synthetic endpoints) into clusters.

    Two variables are linked when their values differ by at most 2m; clusters
    are the connected components, returned left to right.
    """
    n = system.modulus.n
    m = system.max_abs_constant
    points = {V_MIN: 0, V_MAX: n - 1}
    for v in range(system.num_vars):
        if v not in assignment:
            raise MdlError(f"assignment is missing variable id {v}")
        points[v] = assignment[v]
    order = sorted(points, key=lambda v: (points[v], v))
    clusters: list[Cluster] = []
    group = [order[0]]
    for v in order[1:]:
        if points[v] - points[group[-1]] <= 2 * m:
            group.append(v)
        else:
            clusters.append(_make_cluster(group, points, m, n))
            group = [v]
    clusters.append(_make_cluster(group, points, m, n))
    return clusters


def _make_cluster(group: list, points: dict, m: int, n: int) -> Cluster:
    lo = max(0, points[group[0]] - m)
    hi = min(n - 1, points[group[-1]] + m)
    return Cluster(frozenset(group), lo, hi)


def left_pack_steps(system: ConstraintSystem, assignment: Assignment) -> Iterator[Assignment]:
    """Yield the assignment after each single cluster shift, until packed.

    Each step takes the leftmost inner cluster whose domain is separated from
    its left neighbor's and shifts it so its domain starts one past that
    neighbor's right end.  Clusters are recomputed from scratch after every
    shift.  Each intermediate assignment is still a solution.
    """
    current = dict(assignment)
    while True:
        clusters = compute_clusters(system, current)
        for i, cluster in enumerate(clusters):
            if not cluster.is_inner():
                continue
            # i >= 1: the V_MIN cluster owns value 0 and sorts first
            gap = cluster.lo - (clusters[i - 1].hi + 1)
            if gap > 0:
                for v in cluster.members:
                    current[v] -= gap
                yield dict(current)
                break
        else:
            return


def normalize_solution(system: ConstraintSystem, assignment: Assignment) -> Assignment:
    """Shift a solution's clusters leftward until every value is in the
    bounded candidate domain of ``small_model_bound``.

    Raises NotASolutionError when the input does not satisfy the system.
    """
    if not satisfies(system, assignment):
        raise NotASolutionError("input assignment does not satisfy the system")
    result = dict(assignment)
    for step in left_pack_steps(system, assignment):
        result = step
    if not satisfies(system, result):
        raise MdlError("internal error: packing broke the solution")
    return result

"""Identity subelections: verification, search, counting and signatures."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional, Sequence

from .core import Election, Signature, SubelectionWitness, pareto_frontier
from .errors import BadVoterCount, BadWidth, BudgetExceeded, EmptySelection

__all__ = [
    "DEFAULT_BUDGET",
    "UnanimityGraph",
    "unanimity_graph",
    "longest_chain",
    "group_by_order",
    "verify_identity_voters",
    "verify_identity_candidates",
    "hidden_id",
    "count_identity_candidate_subsets",
    "count_identity_voter_subsets",
    "count_hidden_id",
    "max_id",
    "identity_signature",
]

DEFAULT_BUDGET = 5_000_000
STRATEGIES = ("auto", "by_voters", "by_candidates")


@dataclass(frozen=True)
class UnanimityGraph:
    """Edge ``(c, d)`` iff every generating voter ranks ``c`` above ``d``."""

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    def successors(self, c: int) -> list[int]:
        return sorted(d for a, d in self.edges if a == c)

    def predecessors(self, c: int) -> list[int]:
        return sorted(a for a, d in self.edges if d == c)


def _nonempty(voters) -> list[int]:
    voters = sorted(set(voters))
    if not voters:
        raise EmptySelection("voter set is empty")
    return voters


def unanimity_graph(e: Election, voters: Iterable[int]) -> UnanimityGraph:
    voters = _nonempty(voters)
    rows = [e.inverse_ranks[i] for i in voters]
    edges = set()
    for a in range(e.m):
        for b in range(e.m):
            if a != b and all(inv[a] < inv[b] for inv in rows):
                edges.add((a, b))
    return UnanimityGraph(tuple(range(e.m)), frozenset(edges))


def longest_chain(rows: Sequence[Sequence[int]], candidates: Iterable[int]) -> list[int]:
    """Longest chain of ``candidates`` ranked the same way by every row.

    ``rows`` are inverse-rank rows (position of each candidate). Unanimous
    preference is transitive, so any row's order is a topological order
    of the unanimity graph and a chain is a path in it. Ties go to the
    smaller candidate index.
    """
    first = rows[0]
    topo = sorted(candidates, key=first.__getitem__)
    if not topo:
        return []
    length: dict[int, int] = {}
    pred: dict[int, Optional[int]] = {}
    for k, c in enumerate(topo):
        best_len, best_p = 0, None
        for p in topo[:k]:
            if all(inv[p] < inv[c] for inv in rows):
                lp = length[p]
                if lp > best_len or (lp == best_len and p < best_p):
                    best_len, best_p = lp, p
        length[c] = best_len + 1
        pred[c] = best_p
    end = min(topo, key=lambda c: (-length[c], c))
    chain = []
    cur: Optional[int] = end
    while cur is not None:
        chain.append(cur)
        cur = pred[cur]
    return chain[::-1]


def group_by_order(
    e: Election, candidates: Iterable[int], voters: Optional[Iterable[int]] = None
) -> dict[tuple[int, ...], list[int]]:
    """Map each induced order of ``candidates`` to the voters casting it.

    Keys appear in order of their first voter; voter lists are ascending.
    """
    cands = list(candidates)
    groups: dict[tuple[int, ...], list[int]] = {}
    for i in sorted(voters) if voters is not None else range(e.n):
        key = tuple(sorted(cands, key=e.inverse_ranks[i].__getitem__))
        groups.setdefault(key, []).append(i)
    return groups


def _check_sizes(e: Election, m_prime: Optional[int], n_prime: Optional[int]):
    if m_prime is not None and not 1 <= m_prime <= e.m:
        raise BadWidth(f"m'={m_prime} outside [1, {e.m}]")
    if n_prime is not None and not 1 <= n_prime <= e.n:
        raise BadVoterCount(f"n'={n_prime} outside [1, {e.n}]")


def verify_identity_voters(e: Election, voters: Iterable[int], m_prime: int) -> Optional[list[int]]:
    """Longest common order of the given voters, if it has ``m_prime`` candidates."""
    voters = _nonempty(voters)
    _check_sizes(e, m_prime, None)
    chain = longest_chain([e.inverse_ranks[i] for i in voters], range(e.m))
    return chain if len(chain) >= m_prime else None


def verify_identity_candidates(
    e: Election, candidates: Iterable[int], n_prime: int
) -> Optional[tuple[tuple[int, ...], list[int]]]:
    """Largest group of voters ordering ``candidates`` identically, if big enough."""
    cands = sorted(set(candidates))
    if not cands:
        raise EmptySelection("candidate set is empty")
    _check_sizes(e, None, n_prime)
    groups = group_by_order(e, cands)
    order, group = max(groups.items(), key=lambda kv: len(kv[1]))
    if len(group) < n_prime:
        return None
    return order, group


def _subsets(total: int, k: int, budget: int):
    for visited, combo in enumerate(itertools.combinations(range(total), k), 1):
        if visited > budget:
            raise BudgetExceeded(f"more than {budget} subsets of size {k} out of {total}")
        yield combo


def choose_strategy(e: Election, m_prime: int, n_prime: int, strategy: str, budget: int) -> str:
    """Resolve ``auto`` to the cheaper of the two enumerations.

    Costs follow the verifier run times: ``C(n, n') * n' * m^2`` when
    enumerating voters and ``C(m, m') * n * m`` for candidates. A strategy
    whose subset count is over budget is avoided when the other fits.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy != "auto":
        return strategy
    nv, nc = comb(e.n, n_prime), comb(e.m, m_prime)
    by_v = nv * n_prime * e.m * e.m
    by_c = nc * e.n * e.m
    order = ["by_voters", "by_candidates"] if by_v < by_c else ["by_candidates", "by_voters"]
    fits = {"by_voters": nv <= budget, "by_candidates": nc <= budget}
    for name in order:
        if fits[name]:
            return name
    return order[0]


def _over_budget(e: Election, m_prime: int, n_prime: int, strategy: str, budget: int) -> bool:
    if strategy == "by_voters":
        return comb(e.n, n_prime) > budget
    return comb(e.m, m_prime) > budget


def hidden_id(
    e: Election,
    m_prime: int,
    n_prime: int,
    strategy: str = "auto",
    budget: int = DEFAULT_BUDGET,
    ilp_fallback: bool = False,
    node_budget: Optional[int] = None,
) -> Optional[SubelectionWitness]:
    """Find an identity subelection with at least ``m_prime`` candidates
    and ``n_prime`` voters.

    ``by_voters`` enumerates voter subsets and checks the longest
    unanimous chain; ``by_candidates`` enumerates candidate subsets and
    groups voters by induced order. With ``strategy="auto"`` and
    ``ilp_fallback=True`` an over-budget instance goes to the 0-1 solver
    instead of raising :class:`BudgetExceeded`.
    """
    _check_sizes(e, m_prime, n_prime)
    chosen = choose_strategy(e, m_prime, n_prime, strategy, budget)
    if strategy == "auto" and ilp_fallback and _over_budget(e, m_prime, n_prime, chosen, budget):
        return _hidden_id_ilp(e, m_prime, n_prime, node_budget)
    if chosen == "by_voters":
        for vs in _subsets(e.n, n_prime, budget):
            chain = verify_identity_voters(e, vs, m_prime)
            if chain is not None:
                return SubelectionWitness("identity", chain, vs)
        return None
    for cs in _subsets(e.m, m_prime, budget):
        found = verify_identity_candidates(e, cs, n_prime)
        if found is not None:
            order, group = found
            return SubelectionWitness("identity", order, group)
    return None


def _hidden_id_ilp(e, m_prime, n_prime, node_budget):
    from .ilp import build_hidden_id, decode_witness, solve

    model = build_hidden_id(e, m_prime, n_prime)
    sol = solve(model, node_budget) if node_budget else solve(model)
    if sol.status == "budget_exceeded":
        raise BudgetExceeded("solver node budget exhausted")
    if sol.status != "optimal" or sol.objective_value != 0:
        return None
    return decode_witness(model, sol)


def count_identity_candidate_subsets(e: Election, voters: Iterable[int], m_prime: int) -> int:
    """Number of ``m_prime``-candidate sets all given voters rank identically.

    Counts chains of the unanimity graph: ``chains[c][j]`` is the number of
    ``j``-element chains ending at ``c``; the graph is transitive, so
    predecessors on a chain are exactly the in-neighbours.
    """
    voters = _nonempty(voters)
    if m_prime < 1:
        raise BadWidth("m' must be positive")
    if m_prime > e.m:
        return 0
    rows = [e.inverse_ranks[i] for i in voters]
    topo = sorted(range(e.m), key=rows[0].__getitem__)
    chains: dict[int, list[int]] = {}
    for k, c in enumerate(topo):
        row = [0] * (m_prime + 1)
        row[1] = 1
        for p in topo[:k]:
            if all(inv[p] < inv[c] for inv in rows):
                prow = chains[p]
                for j in range(2, m_prime + 1):
                    row[j] += prow[j - 1]
        chains[c] = row
    return sum(row[m_prime] for row in chains.values())


def count_identity_voter_subsets(
    e: Election, candidates: Iterable[int], n_prime: int, order: Optional[Sequence[int]] = None
) -> int:
    """Number of ``n_prime``-voter sets ranking ``candidates`` identically.

    With ``order`` given, only voter sets casting that order count.
    """
    cands = sorted(set(candidates))
    if not cands:
        raise EmptySelection("candidate set is empty")
    if n_prime < 1:
        raise BadVoterCount("n' must be positive")
    groups = group_by_order(e, cands)
    if order is not None:
        return comb(len(groups.get(tuple(order), [])), n_prime)
    return sum(comb(len(g), n_prime) for g in groups.values())


def count_hidden_id(
    e: Election, m_prime: int, n_prime: int, strategy: str = "auto", budget: int = DEFAULT_BUDGET
) -> int:
    """Number of (candidate set, voter set) pairs of exact sizes forming an identity."""
    if m_prime < 1:
        raise BadWidth("m' must be positive")
    if n_prime < 1:
        raise BadVoterCount("n' must be positive")
    if m_prime > e.m or n_prime > e.n:
        return 0
    chosen = choose_strategy(e, m_prime, n_prime, strategy, budget)
    if chosen == "by_voters":
        return sum(count_identity_candidate_subsets(e, vs, m_prime) for vs in _subsets(e.n, n_prime, budget))
    return sum(count_identity_voter_subsets(e, cs, n_prime) for cs in _subsets(e.m, m_prime, budget))


def max_id(
    e: Election,
    m_prime: int,
    budget: int = DEFAULT_BUDGET,
    backend: str = "internal",
    node_budget: Optional[int] = None,
) -> tuple[int, SubelectionWitness]:
    """Most voters sharing one order over some ``m_prime`` candidates.

    Exact by candidate-subset enumeration when ``C(m, m')`` fits the
    budget. Otherwise the 0-1 model is solved with the internal backend;
    ``backend="none"`` raises :class:`BudgetExceeded` instead.
    """
    _check_sizes(e, m_prime, None)
    if comb(e.m, m_prime) > budget:
        if backend != "internal":
            raise BudgetExceeded(f"C({e.m}, {m_prime}) subsets exceed the budget")
        return _max_id_ilp(e, m_prime, node_budget)
    best = None
    for cs in itertools.combinations(range(e.m), m_prime):
        for order, group in group_by_order(e, cs).items():
            if best is None or len(group) > len(best[1]):
                best = (order, group)
        if len(best[1]) == e.n:
            break
    order, group = best
    return len(group), SubelectionWitness("identity", order, group)


def _max_id_ilp(e, m_prime, node_budget):
    from .ilp import build_max_id, decode_witness, solve

    model = build_max_id(e, m_prime)
    sol = solve(model, node_budget) if node_budget else solve(model)
    if sol.status != "optimal":
        raise BudgetExceeded("solver node budget exhausted")
    w = decode_witness(model, sol)
    return len(w.voters), w


def identity_signature(e: Election, budget: int = DEFAULT_BUDGET, backend: str = "internal") -> Signature:
    points = [(1, e.n)]
    full = max(len(g) for g in group_by_order(e, range(e.m)).values())
    points.append((e.m, full))
    for mp in range(2, e.m):
        points.append((mp, max_id(e, mp, budget, backend)[0]))
    return pareto_frontier(points)

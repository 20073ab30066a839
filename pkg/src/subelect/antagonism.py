"""Antagonism subelections: one half of the voters agrees on an order,
the other half casts its exact reverse."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional

from .core import Election, Signature, SubelectionWitness, pareto_frontier
from .errors import BadVoterCount, BadWidth, BudgetExceeded, EmptySelection, OddVoterCount
from .identity import DEFAULT_BUDGET, _subsets, choose_strategy, group_by_order, longest_chain

__all__ = [
    "PermGroupTable",
    "perm_group_table",
    "verify_antagonism_voters",
    "verify_antagonism_candidates",
    "hidden_an",
    "max_an",
    "antagonism_signature",
    "VARIANTS",
]

VARIANTS = ("rigid", "sum", "product")


@dataclass(frozen=True)
class PermGroupTable:
    """Induced orders of a fixed candidate set and the voters casting them."""

    candidates: tuple[int, ...]
    groups: dict[tuple[int, ...], tuple[int, ...]]

    def get(self, order) -> tuple[int, ...]:
        return self.groups.get(tuple(order), ())


def perm_group_table(e: Election, candidates: Iterable[int], voters: Optional[Iterable[int]] = None) -> PermGroupTable:
    cands = tuple(sorted(set(candidates)))
    if not cands:
        raise EmptySelection("candidate set is empty")
    groups = group_by_order(e, cands, voters)
    return PermGroupTable(cands, {k: tuple(v) for k, v in groups.items()})


def _split_evenly(voters):
    voters = sorted(voters)
    half = len(voters) // 2
    return voters[:half], voters[half:]


def verify_antagonism_voters(e: Election, voters: Iterable[int], m_prime: int) -> Optional[SubelectionWitness]:
    """Antagonism over at least ``m_prime`` candidates for exactly these voters.

    Each candidate pair ``(b, f)`` is tried as the first and last element
    of the order. The voters must split evenly on ``b`` versus ``f``; only
    candidates every voter ranks strictly between them survive, and the
    votes preferring ``f`` are reversed before looking for a common chain.
    """
    voters = sorted(set(voters))
    if not voters:
        raise EmptySelection("voter set is empty")
    if len(voters) % 2:
        raise OddVoterCount(f"{len(voters)} voters cannot split into two equal groups")
    if not 1 <= m_prime <= e.m:
        raise BadWidth(f"m'={m_prime} outside [1, {e.m}]")
    if m_prime == 1:
        a, b = _split_evenly(voters)
        return SubelectionWitness("antagonism", (0,), voters, a, b)
    inv = e.inverse_ranks
    half = len(voters) // 2
    last = e.m - 1
    # (b, f) and (f, b) describe the same subelection, so unordered pairs suffice
    for first, final in itertools.combinations(range(e.m), 2):
        forward = [i for i in voters if inv[i][first] < inv[i][final]]
        if len(forward) != half:
            continue
        backward = [i for i in voters if inv[i][first] > inv[i][final]]
        rows = [inv[i] for i in forward] + [tuple(last - r for r in inv[i]) for i in backward]
        lo = [row[first] for row in rows]
        hi = [row[final] for row in rows]
        inner = [
            c
            for c in range(e.m)
            if c not in (first, final) and all(lo[k] < row[c] < hi[k] for k, row in enumerate(rows))
        ]
        if len(inner) + 2 < m_prime:
            continue
        chain = longest_chain(rows, [first, *inner, final])
        if len(chain) >= m_prime:
            return SubelectionWitness("antagonism", chain, voters, forward, backward)
    return None


def _reverse_classes(table: PermGroupTable):
    """Yield ``(order, base voters, reverse voters)`` for every realized order."""
    for order, base in table.groups.items():
        yield order, base, table.get(order[::-1])


def verify_antagonism_candidates(e: Election, candidates: Iterable[int], n_prime: int) -> Optional[SubelectionWitness]:
    """Antagonism over exactly these candidates with ``n_prime`` voters.

    Takes the first ``n'/2`` voters (by index) of an order class and of its
    reverse class. A single candidate is its own reverse, so both halves
    come from the one class.
    """
    if n_prime % 2:
        raise OddVoterCount(f"n'={n_prime} is odd")
    if not 2 <= n_prime <= e.n:
        raise BadVoterCount(f"n'={n_prime} outside [2, {e.n}]")
    half = n_prime // 2
    table = perm_group_table(e, candidates)
    for order, base, rev in _reverse_classes(table):
        if len(order) == 1:
            if len(base) >= n_prime:
                return SubelectionWitness("antagonism", order, base[:n_prime], base[:half], base[half:n_prime])
            continue
        if len(base) >= half and len(rev) >= half:
            return SubelectionWitness("antagonism", order, base[:half] + rev[:half], base[:half], rev[:half])
    return None


def hidden_an(
    e: Election,
    m_prime: int,
    n_prime: int,
    strategy: str = "auto",
    budget: int = DEFAULT_BUDGET,
    ilp_fallback: bool = False,
    node_budget: Optional[int] = None,
) -> Optional[SubelectionWitness]:
    """Find an antagonism with at least ``m_prime`` candidates and ``n_prime`` voters."""
    if n_prime % 2:
        raise OddVoterCount(f"n'={n_prime} is odd")
    if not 1 <= m_prime <= e.m:
        raise BadWidth(f"m'={m_prime} outside [1, {e.m}]")
    if not 2 <= n_prime <= e.n:
        raise BadVoterCount(f"n'={n_prime} outside [2, {e.n}]")
    chosen = choose_strategy(e, m_prime, n_prime, strategy, budget)
    over = comb(e.n, n_prime) if chosen == "by_voters" else comb(e.m, m_prime)
    if strategy == "auto" and ilp_fallback and over > budget:
        return _hidden_an_ilp(e, m_prime, n_prime, node_budget)
    if chosen == "by_voters":
        for vs in _subsets(e.n, n_prime, budget):
            found = verify_antagonism_voters(e, vs, m_prime)
            if found is not None:
                return found
        return None
    for cs in _subsets(e.m, m_prime, budget):
        found = verify_antagonism_candidates(e, cs, n_prime)
        if found is not None:
            return found
    return None


def _hidden_an_ilp(e, m_prime, n_prime, node_budget):
    from .ilp import build_hidden_an, decode_witness, solve

    model = build_hidden_an(e, m_prime, n_prime)
    sol = solve(model, node_budget) if node_budget else solve(model)
    if sol.status == "budget_exceeded":
        raise BudgetExceeded("solver node budget exhausted")
    if sol.status != "optimal" or sol.objective_value != 0:
        return None
    return decode_witness(model, sol)


def _score(variant: str, base: int, rev: int) -> int:
    if variant == "rigid":
        return 2 * min(base, rev)
    if variant == "sum":
        return base + rev
    return base * rev


def _self_reverse_score(variant: str, n: int) -> tuple[int, int, int]:
    # one candidate: voters may be split freely between the two halves
    if variant == "rigid":
        return 2 * (n // 2), n // 2, n // 2
    if variant == "sum":
        return n, n - n // 2, n // 2
    return (n // 2) * (n - n // 2), n - n // 2, n // 2


def max_an(
    e: Election,
    m_prime: int,
    variant: str = "rigid",
    budget: int = DEFAULT_BUDGET,
    backend: str = "internal",
    node_budget: Optional[int] = None,
) -> tuple[int, Optional[SubelectionWitness]]:
    """Best antagonism score over all ``m_prime``-candidate sets.

    For an order ``p`` cast by ``b`` voters whose reverse is cast by ``r``
    voters the score is ``2*min(b, r)`` (rigid), ``b + r`` (sum) or
    ``b * r`` (product). Rigid witnesses keep ``min(b, r)`` voters per side,
    lowest indices first; the other variants keep both classes whole. A
    zero score comes back without a witness.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if not 1 <= m_prime <= e.m:
        raise BadWidth(f"m'={m_prime} outside [1, {e.m}]")
    if m_prime == 1:
        score, nb, nr = _self_reverse_score(variant, e.n)
        if score == 0:
            return 0, None
        a, b = tuple(range(nb)), tuple(range(nb, nb + nr))
        return score, SubelectionWitness("antagonism", (0,), a + b, a, b)
    if comb(e.m, m_prime) > budget:
        if variant != "rigid" or backend != "internal":
            raise BudgetExceeded(f"C({e.m}, {m_prime}) subsets exceed the budget")
        return _max_an_ilp(e, m_prime, node_budget)
    best = (0, None, (), ())
    for cs in itertools.combinations(range(e.m), m_prime):
        table = perm_group_table(e, cs)
        for order, base, rev in _reverse_classes(table):
            if not rev:
                continue
            score = _score(variant, len(base), len(rev))
            if score > best[0]:
                best = (score, order, base, rev)
    score, order, base, rev = best
    if score == 0:
        return 0, None
    if variant == "rigid":
        k = score // 2
        base, rev = base[:k], rev[:k]
    return score, SubelectionWitness("antagonism", order, base + rev, base, rev)


def _max_an_ilp(e, m_prime, node_budget):
    from .ilp import build_max_an, decode_witness, solve

    model = build_max_an(e, m_prime)
    sol = solve(model, node_budget) if node_budget else solve(model)
    if sol.status != "optimal":
        raise BudgetExceeded("solver node budget exhausted")
    if sol.objective_value == 0:
        return 0, None
    w = decode_witness(model, sol)
    return len(w.voters), w


def antagonism_signature(e: Election, budget: int = DEFAULT_BUDGET, backend: str = "internal") -> Signature:
    """Pareto frontier of ``(m', Max-AN(E, m'))`` with the rigid score.

    Sizes scoring zero are left out, apart from the single-candidate point
    ``(1, 2*floor(n/2))`` which is kept whenever it is positive.
    """
    points = []
    if e.n >= 2:
        points.append((1, 2 * (e.n // 2)))
    for mp in range(2, e.m + 1):
        score, _ = max_an(e, mp, "rigid", budget, backend)
        if score > 0:
            points.append((mp, score))
    return pareto_frontier(points)

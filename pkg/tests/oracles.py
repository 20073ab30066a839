"""Exhaustive reference implementations used to check the fast code paths.

Nothing here imports the algorithms under test; the only shared piece is
the ``Election`` container.
"""

from __future__ import annotations

import itertools
import random
from collections import deque

from subelect.core import Election


def induced(e: Election, voter: int, cands) -> tuple[int, ...]:
    row = e.rankings[voter]
    keep = set(cands)
    return tuple(c for c in row if c in keep)


def kendall(a, b) -> int:
    pos = {c: k for k, c in enumerate(b)}
    seq = [pos[c] for c in a]
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def is_identity_pair(e, cands, voters) -> bool:
    return len({induced(e, v, cands) for v in voters}) == 1


def is_antagonism_pair(e, cands, voters) -> bool:
    voters = list(voters)
    if len(voters) % 2 or not voters:
        return False
    half = len(voters) // 2
    for group in itertools.combinations(voters, half):
        rest = [v for v in voters if v not in group]
        orders = {induced(e, v, cands) for v in group}
        if len(orders) != 1:
            continue
        (p,) = orders
        if all(induced(e, v, cands) == p[::-1] for v in rest):
            return True
    return False


def is_clone_pair(e, cands, voters) -> bool:
    cands = set(cands)
    for v in voters:
        pos = sorted(k for k, c in enumerate(e.rankings[v]) if c in cands)
        if pos[-1] - pos[0] + 1 != len(pos):
            return False
    return True


def all_pairs(e, m_prime, n_prime):
    for cs in itertools.combinations(range(e.m), m_prime):
        for vs in itertools.combinations(range(e.n), n_prime):
            yield cs, vs


def count_pairs(e, m_prime, n_prime, pred) -> int:
    return sum(1 for cs, vs in all_pairs(e, m_prime, n_prime) if pred(e, cs, vs))


def exists_pair(e, m_prime, n_prime, pred) -> bool:
    return any(pred(e, cs, vs) for cs, vs in all_pairs(e, m_prime, n_prime))


def max_voters(e, m_prime, pred) -> int:
    best = 0
    for n_prime in range(1, e.n + 1):
        if exists_pair(e, m_prime, n_prime, pred):
            best = n_prime
    return best


def max_clone(e, m_prime) -> int:
    best = 0
    for cs in itertools.combinations(range(e.m), m_prime):
        best = max(best, sum(1 for v in range(e.n) if is_clone_pair(e, cs, [v])))
    return best


def rigid_antagonism(e, m_prime) -> int:
    """Largest even voter count forming an antagonism on some m'-set."""
    best = 0
    for n_prime in range(2, e.n + 1, 2):
        if exists_pair(e, m_prime, n_prime, is_antagonism_pair):
            best = n_prime
    return best


def min_swap_identity(e, m_prime, n_prime) -> int:
    best = None
    for cs in itertools.combinations(range(e.m), m_prime):
        for pi in itertools.permutations(cs):
            costs = sorted(kendall(induced(e, v, cs), pi) for v in range(e.n))
            total = sum(costs[:n_prime])
            if best is None or total < best:
                best = total
    return best


def min_swap_antagonism(e, m_prime, n_prime) -> int:
    half = n_prime // 2
    best = None
    for cs in itertools.combinations(range(e.m), m_prime):
        for pi in itertools.permutations(cs):
            rev = pi[::-1]
            for vs in itertools.combinations(range(e.n), n_prime):
                for ga in itertools.combinations(vs, half):
                    gb = [v for v in vs if v not in ga]
                    total = sum(kendall(induced(e, v, cs), pi) for v in ga)
                    total += sum(kendall(induced(e, v, cs), rev) for v in gb)
                    if best is None or total < best:
                        best = total
    return best


def unanimity_edges(e, voters) -> set[tuple[int, int]]:
    return {
        (a, b)
        for a in range(e.m)
        for b in range(e.m)
        if a != b and all(e.inverse_ranks[v][a] < e.inverse_ranks[v][b] for v in voters)
    }


def bfs_clone_cost(ranking, members) -> int:
    """Fewest adjacent swaps making ``members`` contiguous, by breadth-first search."""
    members = set(members)

    def done(r):
        pos = [k for k, c in enumerate(r) if c in members]
        return pos[-1] - pos[0] + 1 == len(pos)

    start = tuple(ranking)
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        r, d = queue.popleft()
        if done(r):
            return d
        for k in range(len(r) - 1):
            nxt = list(r)
            nxt[k], nxt[k + 1] = nxt[k + 1], nxt[k]
            nxt = tuple(nxt)
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, d + 1))
    raise AssertionError("unreachable")


def random_election(rng: random.Random, m: int, n: int, pool: int | None = None) -> Election:
    """Impartial votes, optionally drawn from a small pool so structure shows up."""
    if pool:
        base = [rng.sample(range(m), m) for _ in range(pool)]
        rows = [list(rng.choice(base)) for _ in range(n)]
    else:
        rows = [rng.sample(range(m), m) for _ in range(n)]
    return Election.from_rankings(rows)

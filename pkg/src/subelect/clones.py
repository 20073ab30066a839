"""Hidden clone sets found by scanning contiguous segments of each vote."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Optional

from .core import Election, SubelectionWitness
from .errors import BadVoterCount, BadWidth

__all__ = [
    "SegmentIndex",
    "build_segment_index",
    "hidden_clones",
    "max_clone",
    "count_hidden_clones",
    "vote_clone_cost",
    "clone_swap_distance",
    "closest_clone_set",
]

EXHAUSTIVE_MAX_M = 20


@dataclass
class SegmentIndex:
    """Occurrences of each candidate set as a width-``width`` segment.

    Keys are sorted candidate tuples. ``voters[key]`` lists the voters
    realizing the key in ascending order, and ``steps`` counts the
    candidate visits the scan performed.
    """

    width: int
    counts: dict[tuple[int, ...], int] = field(default_factory=dict)
    voters: dict[tuple[int, ...], list[int]] = field(default_factory=dict)
    steps: int = 0

    def best(self) -> tuple[tuple[int, ...], int]:
        """Max-count key, lexicographically smallest among ties."""
        return min(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))


def _check_width(e: Election, width: int):
    if not 1 <= width <= e.m:
        raise BadWidth(f"m'={width} outside [1, {e.m}]")


def build_segment_index(e: Election, width: int) -> SegmentIndex:
    _check_width(e, width)
    index = SegmentIndex(width)
    counts, voters = index.counts, index.voters
    steps = 0
    for i, row in enumerate(e.rankings):
        # a set can occupy only one window per vote
        for start in range(e.m - width + 1):
            key = tuple(sorted(row[start : start + width]))
            steps += width
            if key in counts:
                counts[key] += 1
                voters[key].append(i)
            else:
                counts[key] = 1
                voters[key] = [i]
    index.steps = steps
    return index


def hidden_clones(e: Election, width: int, n_voters: int) -> Optional[SubelectionWitness]:
    """Find a clone set of ``width`` candidates shared by ``n_voters`` voters.

    Returns the most frequent segment set together with every voter
    realizing it, or ``None`` when no set reaches ``n_voters``.
    """
    _check_width(e, width)
    if not 1 <= n_voters <= e.n:
        raise BadVoterCount(f"n'={n_voters} outside [1, {e.n}]")
    index = build_segment_index(e, width)
    key, count = index.best()
    if count < n_voters:
        return None
    return SubelectionWitness("clone", key, index.voters[key], count=count)


def max_clone(e: Election, width: int) -> tuple[int, SubelectionWitness]:
    index = build_segment_index(e, width)
    key, count = index.best()
    return count, SubelectionWitness("clone", key, index.voters[key], count=count)


def count_hidden_clones(e: Election, width: int, n_voters: int) -> int:
    """Number of (candidate set, voter set) pairs of sizes (width, n_voters)
    where the candidates are clones for those voters."""
    _check_width(e, width)
    if n_voters < 1:
        raise BadVoterCount(f"n'={n_voters} must be positive")
    if n_voters > e.n:
        return 0
    index = build_segment_index(e, width)
    return sum(comb(c, n_voters) for c in index.counts.values())


def vote_clone_cost(ranking, members) -> int:
    """Adjacent swaps needed to make ``members`` contiguous in one vote.

    Every outsider lying between the outermost members moves out on its
    cheaper side, jumping over the members on that side.
    """
    members = set(members)
    positions = [p for p, c in enumerate(ranking) if c in members]
    if not positions:
        return 0
    lo, hi = positions[0], positions[-1]
    total = len(members)
    cost = 0
    left = 0
    for p in range(lo, hi + 1):
        if ranking[p] in members:
            left += 1
        else:
            cost += min(left, total - left)
    return cost


def clone_swap_distance(e: Election, clone_set: Iterable[int], n_voters: int) -> tuple[int, tuple[int, ...]]:
    """Swap distance to making ``clone_set`` a clone set for ``n_voters`` voters.

    Returns the summed cost of the ``n_voters`` cheapest votes (ties to
    lower voter index) and those voters.
    """
    if not 1 <= n_voters <= e.n:
        raise BadVoterCount(f"n'={n_voters} outside [1, {e.n}]")
    members = set(clone_set)
    costs = sorted((vote_clone_cost(row, members), i) for i, row in enumerate(e.rankings))
    chosen = costs[:n_voters]
    return sum(c for c, _ in chosen), tuple(sorted(i for _, i in chosen))


def closest_clone_set(
    e: Election, width: int, n_voters: int, exhaustive: bool = False
) -> tuple[tuple[int, ...], int]:
    """Candidate set of size ``width`` closest to a clone set for ``n_voters`` voters.

    By default only sets appearing as a segment in some vote are scored.
    The true optimum may lie outside that family; ``exhaustive=True``
    scores all subsets (allowed for at most 20 candidates).
    """
    _check_width(e, width)
    if not 1 <= n_voters <= e.n:
        raise BadVoterCount(f"n'={n_voters} outside [1, {e.n}]")
    if exhaustive:
        if e.m > EXHAUSTIVE_MAX_M:
            raise BadWidth(f"exhaustive search limited to m <= {EXHAUSTIVE_MAX_M}")
        family = itertools.combinations(range(e.m), width)
    else:
        family = sorted(build_segment_index(e, width).counts)
    best = None
    for key in family:
        dist, _ = clone_swap_distance(e, key, n_voters)
        if best is None or dist < best[1]:
            best = (tuple(key), dist)
            if dist == 0:
                break
    return best

import random

import pytest

from oracles import bfs_clone_cost, count_pairs, is_clone_pair, max_clone as bf_max_clone, random_election
from subelect.clones import (
    build_segment_index,
    clone_swap_distance,
    closest_clone_set,
    count_hidden_clones,
    hidden_clones,
    max_clone,
    vote_clone_cost,
)
from subelect.core import Election
from subelect.errors import BadVoterCount, BadWidth

NINE = Election.from_labels(
    list("abcdefghi"),
    ["abcdefghi", "dfgiabche", "abcfeidhg"],
)


def test_max_clone_example(estar):
    # frozen from the exhaustive oracle
    assert [max_clone(estar, k)[0] for k in range(1, 7)] == [6, 6, 5, 3, 4, 6]
    assert [bf_max_clone(estar, k) for k in range(1, 7)] == [6, 6, 5, 3, 4, 6]


def test_max_clone_three_witness(estar):
    count, w = max_clone(estar, 3)
    assert count == 5
    assert estar.labels_of(w.candidates) == list("abc")
    assert w.voters == (0, 1, 3, 4, 5)


def test_max_clone_ties_go_lexicographic(estar):
    _, w = max_clone(estar, 2)
    assert estar.labels_of(w.candidates) == ["b", "c"]


def test_hidden_clones(estar):
    w = hidden_clones(estar, 2, 6)
    assert w is not None and w.count == 6
    assert hidden_clones(estar, 3, 6) is None
    assert hidden_clones(estar, 4, 3) is not None


def test_hidden_clones_bad_sizes(estar):
    with pytest.raises(BadWidth):
        hidden_clones(estar, 0, 1)
    with pytest.raises(BadVoterCount):
        hidden_clones(estar, 2, 7)


def test_count_example(estar):
    assert count_hidden_clones(estar, 2, 6) == 2
    assert count_hidden_clones(estar, 6, 6) == 1
    assert count_hidden_clones(estar, 2, 7) == 0
    assert count_hidden_clones(estar, 3, 4) == count_pairs(estar, 3, 4, is_clone_pair)


def test_count_matches_brute_force_up_to_seven():
    rng = random.Random(11)
    for _ in range(25):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        e = random_election(rng, m, n, pool=rng.choice([None, 2, 3]))
        for w in range(1, m + 1):
            for k in range(1, n + 1):
                assert count_hidden_clones(e, w, k) == count_pairs(e, w, k, is_clone_pair)


def test_nonmonotone_cyclic_profile():
    e = Election.from_rankings([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert max_clone(e, 1)[0] == 3
    assert max_clone(e, 2)[0] == 2
    assert max_clone(e, 3)[0] == 3


def test_segment_index_steps():
    rng = random.Random(3)
    for m, n, w in [(10, 7, 3), (25, 4, 1), (12, 12, 12)]:
        e = random_election(rng, m, n)
        idx = build_segment_index(e, w)
        assert idx.steps == n * (m - w + 1) * w
        assert sum(idx.counts.values()) == n * (m - w + 1)


def test_vote_cost_examples():
    assert vote_clone_cost([0, 5, 1, 2], {0, 1, 2}) == 1
    assert vote_clone_cost([0, 5, 6, 1, 7, 2], {0, 1, 2}) == 3
    assert vote_clone_cost([3, 4], {9}) == 0


def test_vote_cost_matches_bfs():
    rng = random.Random(5)
    for _ in range(120):
        m = rng.randint(1, 6)
        ranking = rng.sample(range(m), m)
        members = rng.sample(range(m), rng.randint(1, m))
        assert vote_clone_cost(ranking, members) == bfs_clone_cost(ranking, members)


def test_swap_distance_nine_candidates():
    dist, voters = clone_swap_distance(NINE, NINE.candidate_indices("abce"), 3)
    assert (dist, voters) == (3, (0, 1, 2))


def test_swap_distance_examples(estar):
    assert clone_swap_distance(estar, estar.candidate_indices("ef"), 6)[0] == 0
    assert clone_swap_distance(estar, estar.candidate_indices("ac"), 1) == (0, (4,))


def test_swap_distance_zero_iff_witness(estar):
    for w in range(1, 7):
        for k in range(1, 7):
            found = hidden_clones(estar, w, k)
            if found is not None:
                assert clone_swap_distance(estar, found.candidates, k)[0] == 0
            else:
                index = build_segment_index(estar, w)
                assert all(clone_swap_distance(estar, key, k)[0] > 0 for key in index.counts)


def test_closest_clone_set_segment_family_misses_optimum():
    key, dist = closest_clone_set(NINE, 4, 3)
    assert dist == 4 and NINE.labels_of(key) == list("abcf")
    key, dist = closest_clone_set(NINE, 4, 3, exhaustive=True)
    assert dist == 3 and NINE.labels_of(key) == list("abce")


def test_closest_clone_set_example(estar):
    key, dist = closest_clone_set(estar, 2, 6)
    assert dist == 0 and estar.labels_of(key) in (["b", "c"], ["e", "f"])
    assert closest_clone_set(estar, 6, 6) == ((0, 1, 2, 3, 4, 5), 0)

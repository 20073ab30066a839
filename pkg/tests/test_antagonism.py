import itertools
import random
from collections import Counter

import pytest

from oracles import exists_pair, induced, is_antagonism_pair, random_election, rigid_antagonism
from subelect.antagonism import (
    antagonism_signature,
    hidden_an,
    max_an,
    perm_group_table,
    verify_antagonism_candidates,
    verify_antagonism_voters,
)
from subelect.core import Election, is_antagonism, restrict
from subelect.errors import BadVoterCount, BadWidth, BudgetExceeded, OddVoterCount


def variant_scores(e, m_prime):
    """Exhaustive rigid/sum/product maxima over (set, order) pairs with m' >= 2."""
    best = {"rigid": 0, "sum": 0, "product": 0}
    for cs in itertools.combinations(range(e.m), m_prime):
        counts = Counter(induced(e, v, cs) for v in range(e.n))
        for p, b in counts.items():
            r = counts.get(p[::-1], 0)
            if r == 0:
                continue
            best["rigid"] = max(best["rigid"], 2 * min(b, r))
            best["sum"] = max(best["sum"], b + r)
            best["product"] = max(best["product"], b * r)
    return best


def check_witness(e, w, m_prime, n_prime=None):
    assert len(w.candidates) >= m_prime
    sub = restrict(e, w.candidates, w.voters)
    assert is_antagonism(sub) is not None
    if n_prime is not None:
        assert len(w.voters) >= n_prime and w.balanced


def test_hidden_an_def(estar):
    w = hidden_an(estar, 3, 6)
    assert estar.labels_of(w.candidates) == list("def")
    assert w.group_a == (1, 3, 4) and w.group_b == (0, 2, 5)


def test_hidden_an_by_candidates(estar):
    w = hidden_an(estar, 3, 6, "by_candidates")
    assert sorted(estar.labels_of(w.candidates)) == list("def")
    assert {w.group_a, w.group_b} == {(1, 3, 4), (0, 2, 5)}


def test_hidden_an_absent_and_present(estar):
    assert hidden_an(estar, 4, 6) is None
    check_witness(estar, hidden_an(estar, 4, 4), 4, 4)
    assert hidden_an(estar, 5, 4) is None


def test_hidden_an_errors(estar):
    with pytest.raises(OddVoterCount):
        hidden_an(estar, 2, 3)
    with pytest.raises(BadWidth):
        hidden_an(estar, 0, 2)
    with pytest.raises(BadVoterCount):
        hidden_an(estar, 2, 8)


def test_abc_not_antagonistic_for_everyone(estar):
    assert verify_antagonism_candidates(estar, estar.candidate_indices("abc"), 6) is None
    assert not is_antagonism_pair(estar, estar.candidate_indices("abc"), range(6))


def test_verify_voters(estar):
    w = verify_antagonism_voters(estar, range(6), 3)
    assert w is not None and w.size == (3, 6)
    assert verify_antagonism_voters(estar, range(6), 4) is None
    with pytest.raises(OddVoterCount):
        verify_antagonism_voters(estar, [0, 1, 2], 2)


def test_verify_voters_single_candidate(estar):
    w = verify_antagonism_voters(estar, [0, 1], 1)
    assert w.candidates == (0,) and w.balanced


def test_verify_voters_matches_brute_force():
    rng = random.Random(17)
    for _ in range(40):
        e = random_election(rng, rng.randint(1, 6), rng.choice([2, 4, 6]), pool=rng.choice([None, 2]))
        for vs in itertools.combinations(range(e.n), rng.choice(range(2, e.n + 1, 2))):
            for mp in range(1, e.m + 1):
                expect = any(is_antagonism_pair(e, cs, vs) for cs in itertools.combinations(range(e.m), mp))
                got = verify_antagonism_voters(e, vs, mp)
                assert (got is not None) == expect
                if got is not None:
                    check_witness(e, got, mp)


def test_perm_group_table(estar):
    table = perm_group_table(estar, estar.candidate_indices("def"))
    sizes = {"".join(estar.labels_of(p)): g for p, g in table.groups.items()}
    assert sizes == {"fed": (0, 2, 5), "def": (1, 3, 4)}


def test_max_an_example(estar):
    assert [max_an(estar, k)[0] for k in range(1, 7)] == [6, 6, 6, 4, 2, 2]
    assert [rigid_antagonism(estar, k) for k in range(1, 7)] == [6, 6, 6, 4, 2, 2]


def test_max_an_variants_match_exhaustive():
    rng = random.Random(31)
    for _ in range(25):
        e = random_election(rng, rng.randint(2, 6), rng.randint(1, 7), pool=rng.choice([None, 2, 3]))
        for mp in range(2, e.m + 1):
            expect = variant_scores(e, mp)
            for variant in ("rigid", "sum", "product"):
                score, w = max_an(e, mp, variant)
                assert score == expect[variant]
                if score:
                    if variant == "rigid":
                        check_witness(e, w, mp)
                    b, r = len(w.group_a), len(w.group_b)
                    assert score == {"rigid": 2 * min(b, r), "sum": b + r, "product": b * r}[variant]


def test_variant_ordering():
    rng = random.Random(9)
    for _ in range(20):
        e = random_election(rng, rng.randint(2, 5), rng.randint(2, 7), pool=2)
        for mp in range(1, e.m + 1):
            rigid = max_an(e, mp, "rigid")[0]
            assert rigid % 2 == 0
            assert rigid <= max_an(e, mp, "sum")[0]


def test_max_an_single_candidate():
    e = Election.from_rankings([[0, 1]] * 5)
    assert max_an(e, 1, "rigid")[0] == 4
    assert max_an(e, 1, "sum")[0] == 5
    assert max_an(e, 1, "product")[0] == 6
    assert max_an(Election.from_rankings([[0]]), 1)[0] == 0


def test_max_an_reversal_symmetry():
    rng = random.Random(12)
    for _ in range(20):
        e = random_election(rng, rng.randint(1, 6), rng.randint(1, 6), pool=rng.choice([None, 2]))
        rev = e.reversed()
        for mp in range(1, e.m + 1):
            assert max_an(e, mp)[0] == max_an(rev, mp)[0]


def test_max_an_ilp_fallback(estar):
    assert max_an(estar, 4, budget=1)[0] == 4
    with pytest.raises(BudgetExceeded):
        max_an(estar, 4, "sum", budget=1)


def test_antagonism_signature(estar):
    assert antagonism_signature(estar).points == ((3, 6), (4, 4), (6, 2))


def test_antagonism_monotone():
    rng = random.Random(23)
    for _ in range(15):
        e = random_election(rng, rng.randint(2, 5), rng.choice([2, 4, 6]), pool=2)
        for mp in range(1, e.m + 1):
            for np_ in range(2, e.n + 1, 2):
                if hidden_an(e, mp, np_) is not None:
                    for a in range(1, mp + 1):
                        for b in range(2, np_ + 1, 2):
                            assert exists_pair(e, a, b, is_antagonism_pair)

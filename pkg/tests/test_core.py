import pytest

from subelect.core import (
    Election,
    Signature,
    SubelectionWitness,
    format_election,
    is_antagonism,
    is_identity,
    pareto_frontier,
    parse_election,
    parse_preflib_soc,
    read_election,
    restrict,
)
from subelect.errors import (
    EmptySelection,
    MalformedHeader,
    NotAPermutation,
    ParseError,
    UnknownCandidate,
)


def test_example_shape(estar):
    assert (estar.m, estar.n) == (6, 6)
    assert estar.candidate_labels == tuple("abcdef")
    assert estar.labels_of(estar.rankings[3]) == list("defcba")
    assert estar.inverse_ranks[0][estar.candidate_index("d")] == 5


def test_prefers_and_induced_order(estar):
    a, b, d = estar.candidate_indices("abd")
    assert estar.prefers(0, a, b)
    assert not estar.prefers(1, a, b)
    assert estar.induced_order(3, [a, b, d]) == (d, b, a)


def test_format_parse_round_trip(estar):
    assert parse_election(format_election(estar)) == estar


def test_parse_tolerates_spacing_and_comments():
    text = "# comment\n3 2\nx\ny\nz\n\nx>y >  z\n# mid\nz > y > x\n"
    e = parse_election(text)
    assert e.rankings == ((0, 1, 2), (2, 1, 0))


@pytest.mark.parametrize(
    "text, exc",
    [
        ("", MalformedHeader),
        ("3\na\nb\nc\n", MalformedHeader),
        ("2 1\na\nb\na > c\n", UnknownCandidate),
        ("2 1\na\nb\na > a\n", NotAPermutation),
        ("2 2\na\nb\na > b\n", MalformedHeader),
        ("2 1\na\nb\na\n", NotAPermutation),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_election(text)


def test_not_a_permutation_reports_voter():
    with pytest.raises(NotAPermutation) as info:
        parse_election("2 2\na\nb\na > b\nb > b\n")
    assert info.value.voter_index == 1


def test_parse_errors_are_value_errors():
    assert issubclass(ParseError, ValueError)


def test_preflib_soc():
    text = (
        "# FILE NAME: toy.soc\n"
        "# ALTERNATIVE NAME 1: fatty tuna\n"
        "# ALTERNATIVE NAME 2: egg\n"
        "# ALTERNATIVE NAME 3: squid\n"
        "2: 1,2,3\n"
        "1: 3,1,2\n"
    )
    e = parse_preflib_soc(text)
    assert e.candidate_labels == ("fatty_tuna", "egg", "squid")
    assert e.rankings == ((0, 1, 2), (0, 1, 2), (2, 0, 1))


def test_preflib_unknown_id():
    with pytest.raises(UnknownCandidate):
        parse_preflib_soc("# ALTERNATIVE NAME 1: x\n# ALTERNATIVE NAME 2: y\n1: 1,3\n")


def test_read_election_formats(tmp_path, estar):
    p = tmp_path / "e.txt"
    p.write_text(format_election(estar))
    assert read_election(p) == estar
    q = tmp_path / "e.soc"
    q.write_text("3: 2,1\n")
    assert read_election(q, "preflib-soc").n == 3


def test_restrict_renumbers(estar):
    sub = restrict(estar, estar.candidate_indices("fda"), [5, 0])
    assert sub.candidate_labels == ("a", "d", "f")
    assert [sub.labels_of(r) for r in sub.rankings] == [list("afd"), list("fad")]


def test_restrict_full_is_identity_and_idempotent(estar):
    everything = restrict(estar, range(estar.m), range(estar.n))
    assert everything == estar
    once = restrict(estar, [0, 2, 4], [1, 3])
    assert restrict(once, range(once.m), range(once.n)) == once


def test_restrict_empty(estar):
    with pytest.raises(EmptySelection):
        restrict(estar, [], [0])


def test_is_identity(estar):
    assert is_identity(restrict(estar, estar.candidate_indices("abcd"), [0, 2, 5]))
    assert not is_identity(estar)


def test_is_antagonism_def(estar):
    sub = restrict(estar, estar.candidate_indices("def"), range(6))
    assert is_antagonism(sub) == ((1, 3, 4), (0, 2, 5))


def test_is_antagonism_needs_balance():
    e = Election.from_rankings([[0, 1], [0, 1], [1, 0]])
    assert is_antagonism(e) is None
    e = Election.from_rankings([[0, 1], [0, 1], [1, 0], [0, 1]])
    assert is_antagonism(e) is None


def test_abc_is_not_an_antagonism(estar):
    sub = restrict(estar, estar.candidate_indices("abc"), range(6))
    assert is_antagonism(sub) is None


def test_is_antagonism_single_candidate():
    e = Election.from_rankings([[0]] * 4)
    assert is_antagonism(e) == ((0, 1), (2, 3))


def test_witness_validation():
    with pytest.raises(ValueError):
        SubelectionWitness("antagonism", (0, 1), (0, 1), (0,), (0,))
    w = SubelectionWitness("identity", (2, 0), (3, 1))
    assert w.voters == (1, 3) and w.size == (2, 2)


def test_witness_json(estar):
    w = SubelectionWitness("antagonism", (3, 4, 5), (0, 1, 2, 3, 4, 5), (1, 3, 4), (0, 2, 5))
    assert w.to_json(estar) == {
        "kind": "antagonism",
        "order": ["d", "e", "f"],
        "group_a": [1, 3, 4],
        "group_b": [0, 2, 5],
    }


def test_pareto_frontier():
    sig = pareto_frontier([(1, 6), (2, 5), (2, 4), (3, 4), (4, 1), (4, 3), (6, 1)])
    assert sig.points == ((1, 6), (2, 5), (3, 4), (4, 3), (6, 1))
    assert (4, 3) in sig and (4, 1) not in sig


def test_signature_sorted():
    assert Signature(((3, 1), (1, 3))).points == ((1, 3), (3, 1))


def test_election_rejects_bad_rows():
    with pytest.raises(NotAPermutation):
        Election.from_rankings([[0, 1], [1, 1]])
    with pytest.raises(MalformedHeader):
        Election(("a", "a"), ((0, 1),))

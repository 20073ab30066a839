"""Ordinal elections, subelections, witnesses and signatures.

Candidates and voters are addressed by 0-based index everywhere; labels
only matter when reading or writing files and reports.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    EmptySelection,
    MalformedHeader,
    NotAPermutation,
    UnknownCandidate,
)

__all__ = [
    "Election",
    "SubelectionWitness",
    "Signature",
    "parse_election",
    "parse_preflib_soc",
    "format_election",
    "restrict",
    "is_identity",
    "is_antagonism",
    "pareto_frontier",
    "EXAMPLE_PROFILE",
    "example_election",
]


@dataclass(frozen=True)
class Election:
    """Complete strict rankings of ``m`` candidates by ``n`` voters.

    ``rankings[i]`` lists candidate indices best first and
    ``inverse_ranks[i][c]`` is the 0-based position of ``c`` in that list.
    """

    candidate_labels: tuple[str, ...]
    rankings: tuple[tuple[int, ...], ...]
    inverse_ranks: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(self.candidate_labels)
        rankings = tuple(tuple(int(c) for c in row) for row in self.rankings)
        m = len(labels)
        if m < 1:
            raise MalformedHeader("an election needs at least one candidate")
        if len(set(labels)) != m:
            raise MalformedHeader("candidate labels must be unique")
        if len(rankings) < 1:
            raise MalformedHeader("an election needs at least one voter")
        full = set(range(m))
        inverse = []
        for i, row in enumerate(rankings):
            if len(row) != m or set(row) != full:
                raise NotAPermutation(i)
            inv = [0] * m
            for pos, c in enumerate(row):
                inv[c] = pos
            inverse.append(tuple(inv))
        object.__setattr__(self, "candidate_labels", labels)
        object.__setattr__(self, "rankings", rankings)
        object.__setattr__(self, "inverse_ranks", tuple(inverse))

    @classmethod
    def from_rankings(cls, rankings, labels: Optional[Sequence[str]] = None) -> "Election":
        rankings = [list(r) for r in rankings]
        if labels is None:
            m = len(rankings[0]) if rankings else 0
            labels = [str(c) for c in range(m)]
        return cls(tuple(labels), tuple(tuple(r) for r in rankings))

    @classmethod
    def from_labels(cls, labels: Sequence[str], votes: Iterable[Sequence[str]]) -> "Election":
        """Build from votes written as label sequences, best first."""
        index = {lab: j for j, lab in enumerate(labels)}
        rows = []
        for i, vote in enumerate(votes):
            row = []
            for lab in vote:
                if lab not in index:
                    raise UnknownCandidate(lab)
                row.append(index[lab])
            if len(row) != len(labels) or len(set(row)) != len(row):
                raise NotAPermutation(i)
            rows.append(tuple(row))
        return cls(tuple(labels), tuple(rows))

    @property
    def m(self) -> int:
        return len(self.candidate_labels)

    @property
    def n(self) -> int:
        return len(self.rankings)

    def candidate_index(self, label: str) -> int:
        try:
            return self.candidate_labels.index(label)
        except ValueError:
            raise UnknownCandidate(label) from None

    def candidate_indices(self, labels: Iterable[str]) -> list[int]:
        return [self.candidate_index(lab) for lab in labels]

    def labels_of(self, candidates: Iterable[int]) -> list[str]:
        return [self.candidate_labels[c] for c in candidates]

    def prefers(self, voter: int, a: int, b: int) -> bool:
        """True if ``voter`` ranks ``a`` above ``b``."""
        inv = self.inverse_ranks[voter]
        return inv[a] < inv[b]

    def induced_order(self, voter: int, candidates: Iterable[int]) -> tuple[int, ...]:
        """The voter's ranking restricted to ``candidates``."""
        inv = self.inverse_ranks[voter]
        return tuple(sorted(candidates, key=inv.__getitem__))

    def reversed(self) -> "Election":
        return Election(self.candidate_labels, tuple(row[::-1] for row in self.rankings))


@dataclass(frozen=True)
class SubelectionWitness:
    """A candidate subset plus voter subset certifying a property.

    For ``identity`` and ``antagonism`` the candidate tuple is an order
    (best first, as ranked by ``group_a`` for antagonism); for ``clone`` it
    is a sorted set.
    """

    kind: str
    candidates: tuple[int, ...]
    voters: tuple[int, ...]
    group_a: tuple[int, ...] = ()
    group_b: tuple[int, ...] = ()
    count: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("identity", "antagonism", "clone"):
            raise ValueError(f"unknown witness kind {self.kind!r}")
        object.__setattr__(self, "candidates", tuple(self.candidates))
        object.__setattr__(self, "voters", tuple(sorted(self.voters)))
        object.__setattr__(self, "group_a", tuple(sorted(self.group_a)))
        object.__setattr__(self, "group_b", tuple(sorted(self.group_b)))
        if self.kind == "antagonism":
            a, b = set(self.group_a), set(self.group_b)
            if a & b:
                raise ValueError("antagonism groups must be disjoint")
            if a | b != set(self.voters):
                raise ValueError("antagonism groups must cover the voters")

    @property
    def size(self) -> tuple[int, int]:
        return len(self.candidates), len(self.voters)

    @property
    def balanced(self) -> bool:
        return len(self.group_a) == len(self.group_b)

    def to_json(self, election: Election) -> dict:
        labels = election.labels_of(self.candidates)
        if self.kind == "clone":
            count = self.count if self.count is not None else len(self.voters)
            return {"kind": "clone", "candidates": labels, "voters": list(self.voters), "count": count}
        if self.kind == "identity":
            return {"kind": "identity", "order": labels, "voters": list(self.voters)}
        return {
            "kind": "antagonism",
            "order": labels,
            "group_a": list(self.group_a),
            "group_b": list(self.group_b),
        }


@dataclass(frozen=True)
class Signature:
    """Pareto frontier of achievable ``(m', n')`` sizes, sorted by ``m'``."""

    points: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(sorted(set(map(tuple, self.points)))))

    def __contains__(self, point) -> bool:
        return tuple(point) in self.points

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def as_set(self) -> set[tuple[int, int]]:
        return set(self.points)


def pareto_frontier(points: Iterable[tuple[int, int]]) -> Signature:
    """Keep the pairs not dominated in both coordinates by another pair."""
    pts = sorted(set(points), key=lambda p: (-p[0], -p[1]))
    front = []
    best_n = None
    for mp, np_ in pts:
        if best_n is None or np_ > best_n:
            front.append((mp, np_))
            best_n = np_
    return Signature(tuple(front))


# -- file formats -------------------------------------------------------------

_SPLIT_VOTE = re.compile(r"\s*>\s*")


def _content_lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        out.append(s)
    return out


def parse_election(text: str) -> Election:
    """Parse the plain profile format.

    Line 1 holds ``"m n"``, the next ``m`` lines the candidate labels and
    the following ``n`` lines one vote each, labels separated by ``>``
    best first. Lines starting with ``#`` and blank lines are skipped.
    """
    lines = _content_lines(text)
    if not lines:
        raise MalformedHeader("empty profile")
    header = lines[0].split()
    if len(header) != 2 or not all(tok.isdigit() for tok in header):
        raise MalformedHeader(f"expected 'm n' header, got {lines[0]!r}")
    m, n = int(header[0]), int(header[1])
    if m < 1 or n < 1:
        raise MalformedHeader("m and n must be positive")
    if len(lines) != 1 + m + n:
        raise MalformedHeader(f"expected {m} labels and {n} votes, found {len(lines) - 1} lines")
    labels = lines[1 : 1 + m]
    for lab in labels:
        if any(ch.isspace() for ch in lab) or ">" in lab:
            raise MalformedHeader(f"invalid candidate label {lab!r}")
    if len(set(labels)) != m:
        raise MalformedHeader("duplicate candidate label")
    index = {lab: j for j, lab in enumerate(labels)}
    rows = []
    for i, line in enumerate(lines[1 + m :]):
        row = []
        for lab in _SPLIT_VOTE.split(line):
            if lab not in index:
                raise UnknownCandidate(lab)
            row.append(index[lab])
        if len(row) != m or len(set(row)) != m:
            raise NotAPermutation(i)
        rows.append(tuple(row))
    return Election(tuple(labels), tuple(rows))


_PREFLIB_NAME = re.compile(r"#\s*ALTERNATIVE NAME\s+(\d+)\s*:\s*(.*)$", re.IGNORECASE)


def parse_preflib_soc(text: str) -> Election:
    """Parse a PrefLib SOC file (``count: i1,i2,...`` lines, 1-based ids).

    ``# ALTERNATIVE NAME k: label`` metadata supplies labels; whitespace in
    names is replaced by underscores. Without metadata the ids are used.
    """
    names: dict[int, str] = {}
    blocks = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            mo = _PREFLIB_NAME.match(line)
            if mo:
                names[int(mo.group(1))] = re.sub(r"\s+", "_", mo.group(2).strip())
            continue
        if ":" not in line:
            raise MalformedHeader(f"expected 'count: order' line, got {line!r}")
        count_s, order_s = line.split(":", 1)
        try:
            count = int(count_s)
            ids = [int(tok) for tok in order_s.split(",")]
        except ValueError:
            raise MalformedHeader(f"cannot read line {line!r}") from None
        blocks.append((count, ids))
    if not blocks:
        raise MalformedHeader("no votes in PrefLib file")
    m = len(names) if names else max(len(ids) for _, ids in blocks)
    labels = [names.get(k, str(k)) for k in range(1, m + 1)]
    rows = []
    for count, ids in blocks:
        if any(k < 1 or k > m for k in ids):
            bad = next(k for k in ids if k < 1 or k > m)
            raise UnknownCandidate(str(bad))
        row = tuple(k - 1 for k in ids)
        if len(row) != m or len(set(row)) != m:
            raise NotAPermutation(len(rows))
        rows.extend([row] * count)
    return Election(tuple(labels), tuple(rows))


def format_election(e: Election) -> str:
    lines = [f"{e.m} {e.n}", *e.candidate_labels]
    for row in e.rankings:
        lines.append(" > ".join(e.candidate_labels[c] for c in row))
    return "\n".join(lines) + "\n"


def read_election(path, fmt: str = "profile") -> Election:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "preflib-soc":
        return parse_preflib_soc(text)
    return parse_election(text)


# -- subelections --------------------------------------------------------------


def restrict(e: Election, candidates: Iterable[int], voters: Iterable[int]) -> Election:
    """Restrict ``e`` to the given candidates and voters.

    Kept candidates are renumbered in ascending original index order and
    keep their labels; kept voters appear in ascending index order.
    """
    cands = sorted(set(candidates))
    vots = sorted(set(voters))
    if not cands or not vots:
        raise EmptySelection("restriction needs at least one candidate and one voter")
    if cands[0] < 0 or cands[-1] >= e.m or vots[0] < 0 or vots[-1] >= e.n:
        raise IndexError("candidate or voter index out of range")
    renum = {c: k for k, c in enumerate(cands)}
    keep = set(cands)
    rows = tuple(tuple(renum[c] for c in e.rankings[i] if c in keep) for i in vots)
    return Election(tuple(e.candidate_labels[c] for c in cands), rows)


def is_identity(e: Election) -> bool:
    first = e.rankings[0]
    return all(row == first for row in e.rankings)


def is_antagonism(e: Election) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Return a balanced split into a ranking class and its reverse, if any.

    ``group_a`` is the class whose ranking is lexicographically smaller.
    With one candidate every balanced split works; the first half of the
    voters goes to ``group_a``.
    """
    n = e.n
    if n % 2:
        return None
    if e.m == 1:
        return tuple(range(n // 2)), tuple(range(n // 2, n))
    base = e.rankings[0]
    rev = base[::-1]
    g_base, g_rev = [], []
    for i, row in enumerate(e.rankings):
        if row == base:
            g_base.append(i)
        elif row == rev:
            g_rev.append(i)
        else:
            return None
    if len(g_base) != len(g_rev):
        return None
    if rev < base:
        g_base, g_rev = g_rev, g_base
    return tuple(g_base), tuple(g_rev)


# -- the running example ---------------------------------------------------------

EXAMPLE_PROFILE = """\
# six voters over six candidates
6 6
a
b
c
d
e
f
a > b > c > f > e > d
c > b > a > d > e > f
a > f > e > b > c > d
d > e > f > c > b > a
a > c > b > d > e > f
f > e > a > b > c > d
"""


def example_election() -> Election:
    return parse_election(EXAMPLE_PROFILE)

"""Seeded samplers for statistical cultures of ordinal elections.

Each election draws from one PCG64 stream seeded with ``splitmix64(seed)``.
Batches give sample ``k`` the seed ``seed + k`` (mod 2**64), so the first
element of a batch equals :func:`sample` on the original spec.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from .core import Election
from .errors import InvalidSpec

__all__ = ["CultureSpec", "CULTURES", "sample", "sample_batch", "splitmix64", "mallows_phi_from_norm"]

MASK64 = (1 << 64) - 1

CULTURES = (
    "impartial",
    "urn",
    "mallows",
    "sp_conitzer",
    "sp_walsh",
    "spoc",
    "single_crossing",
    "euclidean",
    "gs_balanced",
    "gs_caterpillar",
    "compass_id",
    "compass_an",
)


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


@dataclass(frozen=True)
class CultureSpec:
    """Culture name, election size, seed and culture parameters.

    Parameters: ``alpha`` (urn), ``phi`` and ``normalized`` (mallows),
    ``dim`` in ``{1, 2, 3, "circle"}`` (euclidean).
    """

    kind: str
    m: int
    n: int
    seed: int = 0
    params: dict[str, Any] = field(default_factory=dict)

    def validate(self) -> None:
        if self.kind not in CULTURES:
            raise InvalidSpec(f"unknown culture {self.kind!r}")
        if self.m < 1 or self.n < 1:
            raise InvalidSpec("m and n must be positive")
        if not 0 <= self.seed <= MASK64:
            raise InvalidSpec("seed must fit in 64 bits")
        p = self.params
        if self.kind == "urn":
            if float(p.get("alpha", 0.0)) < 0:
                raise InvalidSpec("urn alpha must be nonnegative")
        elif self.kind == "mallows":
            phi = float(p.get("phi", 0.5))
            if not 0.0 <= phi <= 1.0:
                raise InvalidSpec("mallows phi must lie in [0, 1]")
        elif self.kind == "euclidean":
            if str(p.get("dim", 2)) not in ("1", "2", "3", "circle"):
                raise InvalidSpec("euclidean dim must be 1, 2, 3 or circle")
        elif self.kind == "gs_balanced":
            if self.m & (self.m - 1):
                raise InvalidSpec("gs_balanced needs m to be a power of two")
        elif self.kind == "compass_an":
            if self.n % 2:
                raise InvalidSpec("compass_an needs an even number of voters")


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(splitmix64(seed)))


# -- individual cultures --------------------------------------------------------


def _impartial(m, n, rng, _p):
    return [rng.permutation(m).tolist() for _ in range(n)]


def _urn(m, n, rng, p):
    alpha = float(p.get("alpha", 0.0))
    votes = []
    for k in range(n):
        if rng.random() < 1.0 / (1.0 + k * alpha):
            votes.append(rng.permutation(m).tolist())
        else:
            votes.append(list(votes[rng.integers(k)]))
    return votes


def _expected_swaps(phi: float, m: int) -> float:
    total = 0.0
    for i in range(1, m + 1):
        w = [phi**d for d in range(i)]
        total += sum(d * wd for d, wd in enumerate(w)) / sum(w)
    return total


def mallows_phi_from_norm(norm_phi: float, m: int) -> float:
    """Dispersion whose expected swap distance is ``norm_phi * m(m-1)/4``."""
    if not 0.0 <= norm_phi <= 1.0:
        raise InvalidSpec("normalized phi must lie in [0, 1]")
    target = norm_phi * m * (m - 1) / 4.0
    lo, hi = 0.0, 1.0
    while hi - lo > 1e-9:
        mid = (lo + hi) / 2
        if _expected_swaps(mid, m) < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def _mallows(m, n, rng, p):
    phi = float(p.get("phi", 0.5))
    if _truthy(p.get("normalized", False)):
        phi = mallows_phi_from_norm(phi, m)
    # insertion probabilities for candidate i (1-based) at slot j = 1..i
    tables = []
    for i in range(1, m + 1):
        w = np.array([phi ** (i - j) for j in range(1, i + 1)], dtype=float)
        tables.append(w / w.sum())
    votes = []
    for _ in range(n):
        vote: list[int] = []
        for i in range(1, m + 1):
            j = int(rng.choice(i, p=tables[i - 1]))
            vote.insert(j, i - 1)
        votes.append(vote)
    return votes


def _sp_conitzer(m, n, rng, _p):
    votes = []
    for _ in range(n):
        peak = int(rng.integers(m))
        vote = [peak]
        left, right = peak - 1, peak + 1
        while left >= 0 and right < m:
            if rng.random() < 0.5:
                vote.append(left)
                left -= 1
            else:
                vote.append(right)
                right += 1
        vote.extend(range(left, -1, -1))
        vote.extend(range(right, m))
        votes.append(vote)
    return votes


def _sp_walsh(m, n, rng, _p):
    votes = []
    for _ in range(n):
        lo, hi = 0, m - 1
        bottom_up = []
        while lo < hi:
            if rng.random() < 0.5:
                bottom_up.append(lo)
                lo += 1
            else:
                bottom_up.append(hi)
                hi -= 1
        bottom_up.append(lo)
        votes.append(bottom_up[::-1])
    return votes


def _spoc(m, n, rng, _p):
    votes = []
    for _ in range(n):
        peak = int(rng.integers(m))
        vote = [peak]
        left, right = (peak - 1) % m, (peak + 1) % m
        while len(vote) < m:
            if rng.random() < 0.5:
                vote.append(left)
                left = (left - 1) % m
            else:
                vote.append(right)
                right = (right + 1) % m
        votes.append(vote)
    return votes


def _single_crossing(m, n, rng, _p):
    current = list(range(m))
    chain = [list(current)]
    while True:
        open_steps = [k for k in range(m - 1) if current[k] < current[k + 1]]
        if not open_steps:
            break
        k = open_steps[int(rng.integers(len(open_steps)))]
        current[k], current[k + 1] = current[k + 1], current[k]
        chain.append(list(current))
    picks = np.sort(rng.integers(len(chain), size=n))
    return [list(chain[int(t)]) for t in picks]


def _euclidean(m, n, rng, p):
    dim = str(p.get("dim", 2))
    if dim == "circle":
        cand_ang = rng.uniform(0, 2 * np.pi, size=m)
        vot_ang = rng.uniform(0, 2 * np.pi, size=n)
        cands = np.stack([np.cos(cand_ang), np.sin(cand_ang)], axis=1)
        voters = np.stack([np.cos(vot_ang), np.sin(vot_ang)], axis=1)
    else:
        d = int(dim)
        cands = rng.random((m, d))
        voters = rng.random((n, d))
    votes = []
    for v in voters:
        dist = ((cands - v) ** 2).sum(axis=1)
        votes.append(np.lexsort((np.arange(m), dist)).tolist())
    return votes


def _read_tree(node, flips):
    if isinstance(node, int):
        return [node]
    left, right = node
    a, b = _read_tree(left, flips), _read_tree(right, flips)
    return b + a if next(flips) else a + b


def _balanced_tree(lo, hi):
    if hi - lo == 1:
        return lo
    mid = (lo + hi) // 2
    return (_balanced_tree(lo, mid), _balanced_tree(mid, hi))


def _caterpillar_tree(m):
    node = m - 1
    for leaf in range(m - 2, -1, -1):
        node = (leaf, node)
    return node


def _gs(tree, m, n, rng):
    internal = m - 1
    votes = []
    for _ in range(n):
        flips = iter((rng.random(internal) < 0.5).tolist())
        votes.append(_read_tree(tree, flips))
    return votes


def _gs_balanced(m, n, rng, _p):
    return _gs(_balanced_tree(0, m), m, n, rng)


def _gs_caterpillar(m, n, rng, _p):
    return _gs(_caterpillar_tree(m), m, n, rng)


def _compass_id(m, n, _rng, _p):
    return [list(range(m)) for _ in range(n)]


def _compass_an(m, n, _rng, _p):
    half = n // 2
    return [list(range(m)) for _ in range(half)] + [list(range(m - 1, -1, -1)) for _ in range(half)]


_SAMPLERS = {
    "impartial": _impartial,
    "urn": _urn,
    "mallows": _mallows,
    "sp_conitzer": _sp_conitzer,
    "sp_walsh": _sp_walsh,
    "spoc": _spoc,
    "single_crossing": _single_crossing,
    "euclidean": _euclidean,
    "gs_balanced": _gs_balanced,
    "gs_caterpillar": _gs_caterpillar,
    "compass_id": _compass_id,
    "compass_an": _compass_an,
}


def _truthy(value) -> bool:
    if isinstance(value, str):
        return value.lower() in ("1", "true", "yes", "on")
    return bool(value)


def sample(spec: CultureSpec) -> Election:
    """Draw one election; identical specs give identical profiles."""
    spec.validate()
    votes = _SAMPLERS[spec.kind](spec.m, spec.n, _rng(spec.seed), spec.params)
    return Election.from_rankings(votes, [f"c{j}" for j in range(spec.m)])


def sample_batch(spec: CultureSpec, count: int) -> list[Election]:
    if count < 0:
        raise InvalidSpec("count must be nonnegative")
    spec.validate()
    return [sample(replace(spec, seed=(spec.seed + k) & MASK64)) for k in range(count)]

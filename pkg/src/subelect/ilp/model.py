"""Binary linear models for hidden identity and antagonism.

Variable families (0-based indices):

* ``V_i`` voter ``i`` selected (first group for antagonism)
* ``U_i`` voter ``i`` in the second antagonism group
* ``C_j`` candidate ``j`` selected
* ``S_a_b`` candidate ``a`` precedes ``b`` in the common order
* ``P_i_a_b = V_i * S_a_b`` and ``R_i_a_b = U_i * S_b_a``

A vote disagreeing with the common order on a selected pair costs one
unit, so a model's optimum is the swap distance of the closest
subelection of the requested size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..core import Election, SubelectionWitness
from ..errors import BadVoterCount, BadWidth, NotOptimal, OddVoterCount

__all__ = [
    "Constraint",
    "IlpModel",
    "build_hidden_id",
    "build_hidden_an",
    "build_max_id",
    "build_max_an",
    "decode_witness",
]

SENSES = ("<=", ">=", "=")


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple[tuple[str, int], ...]
    sense: str
    rhs: int

    def evaluate(self, assignment: dict[str, int]) -> bool:
        lhs = sum(coef * assignment[var] for var, coef in self.terms)
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class IlpModel:
    """Named binaries, integer linear constraints and a linear objective."""

    sense: str = "min"
    objective: tuple[tuple[str, int], ...] = ()
    variables: list[str] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    kind: str = ""
    m_prime: Optional[int] = None
    n_prime: Optional[int] = None
    _declared: set = field(default_factory=set, repr=False, compare=False)

    def add_var(self, name: str) -> str:
        if name in self._declared:
            raise ValueError(f"variable {name} declared twice")
        self._declared.add(name)
        self.variables.append(name)
        return name

    def add_constraint(self, name: str, terms, sense: str, rhs: int) -> None:
        if sense not in SENSES:
            raise ValueError(f"bad constraint sense {sense!r}")
        terms = tuple((v, int(c)) for v, c in terms if c != 0)
        for v, _ in terms:
            if v not in self._declared:
                raise ValueError(f"constraint {name} uses undeclared variable {v}")
        self.constraints.append(Constraint(name, terms, sense, int(rhs)))

    def set_objective(self, sense: str, terms) -> None:
        if sense not in ("min", "max"):
            raise ValueError(f"bad objective sense {sense!r}")
        self.sense = sense
        self.objective = tuple((v, int(c)) for v, c in terms if c != 0)

    def objective_value(self, assignment: dict[str, int]) -> int:
        return sum(c * assignment[v] for v, c in self.objective)

    def is_feasible(self, assignment: dict[str, int]) -> bool:
        return all(con.evaluate(assignment) for con in self.constraints)

    def same_as(self, other: "IlpModel") -> bool:
        """Structural equality: variables, constraints and objective."""
        return (
            self.sense == other.sense
            and self.objective == other.objective
            and self.variables == other.variables
            and self.constraints == other.constraints
        )


def V(i):
    return f"V_{i}"


def U(i):
    return f"U_{i}"


def C(j):
    return f"C_{j}"


def S(a, b):
    return f"S_{a}_{b}"


def P(i, a, b):
    return f"P_{i}_{a}_{b}"


def R(i, a, b):
    return f"R_{i}_{a}_{b}"


def _pairs(m):
    return [(a, b) for a in range(m) for b in range(m) if a != b]


def _disagrees(e: Election, i: int, a: int, b: int) -> int:
    """1 when voter ``i`` ranks ``b`` above ``a``."""
    inv = e.inverse_ranks[i]
    return int(inv[a] > inv[b])


def _add_product(model: IlpModel, z: str, x: str, y: str) -> None:
    model.add_constraint(f"{z}_lx", [(z, 1), (x, -1)], "<=", 0)
    model.add_constraint(f"{z}_ly", [(z, 1), (y, -1)], "<=", 0)
    model.add_constraint(f"{z}_g", [(x, 1), (y, 1), (z, -1)], "<=", 1)


def _check(e: Election, m_prime: int, n_prime: Optional[int] = None, even: bool = False):
    if not 1 <= m_prime <= e.m:
        raise BadWidth(f"m'={m_prime} outside [1, {e.m}]")
    if n_prime is not None:
        if even and n_prime % 2:
            raise OddVoterCount(f"n'={n_prime} is odd")
        if not 1 <= n_prime <= e.n:
            raise BadVoterCount(f"n'={n_prime} outside [1, {e.n}]")


def _new_model(e: Election, kind: str, m_prime: int, n_prime: Optional[int], two_groups: bool) -> IlpModel:
    model = IlpModel(kind=kind, m_prime=m_prime, n_prime=n_prime)
    for i in range(e.n):
        model.add_var(V(i))
    if two_groups:
        for i in range(e.n):
            model.add_var(U(i))
    for j in range(e.m):
        model.add_var(C(j))
    for a, b in _pairs(e.m):
        model.add_var(S(a, b))
    for i in range(e.n):
        for a, b in _pairs(e.m):
            model.add_var(P(i, a, b))
    if two_groups:
        for i in range(e.n):
            for a, b in _pairs(e.m):
                model.add_var(R(i, a, b))
    return model


def _order_constraints(e: Election, model: IlpModel, two_groups: bool) -> None:
    model.add_constraint("sel_candidates", [(C(j), 1) for j in range(e.m)], "=", model.m_prime)
    # S_ab + S_ba = C_a * C_b
    for a in range(e.m):
        for b in range(a + 1, e.m):
            both = [(S(a, b), 1), (S(b, a), 1)]
            model.add_constraint(f"pair_{a}_{b}_la", both + [(C(a), -1)], "<=", 0)
            model.add_constraint(f"pair_{a}_{b}_lb", both + [(C(b), -1)], "<=", 0)
            model.add_constraint(f"pair_{a}_{b}_g", both + [(C(a), -1), (C(b), -1)], ">=", -1)
    # no 3-cycles, so the order on selected candidates is a linear order
    for a, b in _pairs(e.m):
        for c in range(e.m):
            if c != a and c != b:
                model.add_constraint(f"trans_{a}_{b}_{c}", [(S(a, b), 1), (S(b, c), 1), (S(a, c), -1)], "<=", 1)
    for i in range(e.n):
        for a, b in _pairs(e.m):
            _add_product(model, P(i, a, b), V(i), S(a, b))
    if two_groups:
        for i in range(e.n):
            for a, b in _pairs(e.m):
                _add_product(model, R(i, a, b), U(i), S(b, a))
        for i in range(e.n):
            model.add_constraint(f"disjoint_{i}", [(V(i), 1), (U(i), 1)], "<=", 1)


def _cost_terms(e: Election, two_groups: bool):
    terms = []
    for i in range(e.n):
        for a, b in _pairs(e.m):
            if _disagrees(e, i, a, b):
                terms.append((P(i, a, b), 1))
    if two_groups:
        for i in range(e.n):
            for a, b in _pairs(e.m):
                if _disagrees(e, i, a, b):
                    terms.append((R(i, a, b), 1))
    return terms


def build_hidden_id(e: Election, m_prime: int, n_prime: int) -> IlpModel:
    """Closest identity subelection with exactly ``m_prime`` candidates and
    ``n_prime`` voters; optimum 0 iff such an identity exists."""
    _check(e, m_prime, n_prime)
    model = _new_model(e, "hidden_id", m_prime, n_prime, two_groups=False)
    model.add_constraint("sel_voters", [(V(i), 1) for i in range(e.n)], "=", n_prime)
    _order_constraints(e, model, two_groups=False)
    model.set_objective("min", _cost_terms(e, two_groups=False))
    return model


def build_hidden_an(e: Election, m_prime: int, n_prime: int) -> IlpModel:
    """Closest antagonism subelection of size ``(m_prime, n_prime)``.

    A voter may sit in at most one group.
    """
    _check(e, m_prime, n_prime, even=True)
    model = _new_model(e, "hidden_an", m_prime, n_prime, two_groups=True)
    half = n_prime // 2
    model.add_constraint("sel_voters", [(V(i), 1) for i in range(e.n)], "=", half)
    model.add_constraint("sel_reverse", [(U(i), 1) for i in range(e.n)], "=", half)
    _order_constraints(e, model, two_groups=True)
    model.set_objective("min", _cost_terms(e, two_groups=True))
    return model


def build_max_id(e: Election, m_prime: int) -> IlpModel:
    """Most voters in an exact identity over ``m_prime`` candidates."""
    _check(e, m_prime)
    model = _new_model(e, "max_id", m_prime, None, two_groups=False)
    _order_constraints(e, model, two_groups=False)
    model.add_constraint("zero_cost", _cost_terms(e, two_groups=False), "=", 0)
    model.set_objective("max", [(V(i), 1) for i in range(e.n)])
    return model


def build_max_an(e: Election, m_prime: int) -> IlpModel:
    """Most voters in an exact, balanced antagonism over ``m_prime`` candidates."""
    _check(e, m_prime)
    model = _new_model(e, "max_an", m_prime, None, two_groups=True)
    model.add_constraint("balance", [(V(i), 1) for i in range(e.n)] + [(U(i), -1) for i in range(e.n)], "=", 0)
    _order_constraints(e, model, two_groups=True)
    model.add_constraint("zero_cost", _cost_terms(e, two_groups=True), "=", 0)
    model.set_objective("max", [(V(i), 1) for i in range(e.n)] + [(U(i), 1) for i in range(e.n)])
    return model


def _indices(name: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in name.split("_")[1:])


def decode_witness(model: IlpModel, sol) -> SubelectionWitness:
    """Read the selected candidates, their order and the voter groups."""
    if sol.status != "optimal":
        raise NotOptimal(f"solution status is {sol.status}")
    x = sol.assignment
    chosen = [_indices(v)[0] for v in model.variables if v.startswith("C_") and x[v]]
    wins = {c: 0 for c in chosen}
    for v in model.variables:
        if v.startswith("S_") and x[v]:
            a, _ = _indices(v)
            wins[a] += 1
    order = sorted(chosen, key=lambda c: (-wins[c], c))
    group_a = [_indices(v)[0] for v in model.variables if v.startswith("V_") and x[v]]
    if model.kind in ("hidden_an", "max_an"):
        group_b = [_indices(v)[0] for v in model.variables if v.startswith("U_") and x[v]]
        return SubelectionWitness("antagonism", order, group_a + group_b, group_a, group_b)
    return SubelectionWitness("identity", order, group_a)

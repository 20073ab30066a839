"""Exact depth-first branch-and-bound for small pure 0-1 models.

Every constraint is normalised to ``sum(a_k x_k) <= b`` rows. Each row
tracks its minimum activity over the free variables; a row whose slack
drops below a free variable's coefficient forces that variable. The
objective becomes one more row with right-hand side ``incumbent - 1``,
which yields both the additive lower bound and objective-driven fixing.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Optional

from .model import IlpModel

__all__ = ["IlpSolution", "solve", "DEFAULT_NODE_BUDGET"]

DEFAULT_NODE_BUDGET = 2_000_000

# branching priority by variable family, candidates first
_FAMILY_RANK = {"C": 0, "V": 1, "U": 2, "S": 3}


@dataclass
class IlpSolution:
    assignment: dict[str, int] = field(default_factory=dict)
    objective_value: Optional[int] = None
    status: str = "infeasible"
    nodes: int = 0


class _Budget(Exception):
    pass


class _Search:
    def __init__(self, model: IlpModel, node_budget: int):
        names = list(model.variables)
        self.names = names
        idx = {v: k for k, v in enumerate(names)}
        nv = len(names)
        self.value = [-1] * nv
        self.var_rows: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
        self.row_vars: list[list[int]] = []
        self.row_coefs: list[list[int]] = []
        self.rhs: list[int] = []
        self.minact: list[int] = []
        self.maxabs: list[int] = []

        for con in model.constraints:
            terms = [(idx[v], c) for v, c in con.terms]
            if con.sense in ("<=", "="):
                self._add_row(terms, con.rhs)
            if con.sense in (">=", "="):
                self._add_row([(k, -c) for k, c in terms], -con.rhs)

        sign = -1 if model.sense == "max" else 1
        self.sign = sign
        obj = [(idx[v], sign * c) for v, c in model.objective]
        self.obj_row = self._add_row(obj, sum(c for _, c in obj if c > 0) + 1)
        self.obj = obj

        self.order = sorted(range(nv), key=lambda k: (_FAMILY_RANK.get(names[k].split("_")[0], 9), k))
        self.trail: list[int] = []
        self.queue: list[int] = []
        self.nodes = 0
        self.node_budget = node_budget
        self.best: Optional[int] = None
        self.best_values: Optional[list[int]] = None

    def _add_row(self, terms, rhs) -> int:
        r = len(self.rhs)
        merged: dict[int, int] = {}
        for k, c in terms:
            merged[k] = merged.get(k, 0) + c
        terms = [(k, c) for k, c in merged.items() if c]
        self.row_vars.append([k for k, _ in terms])
        self.row_coefs.append([c for _, c in terms])
        self.rhs.append(rhs)
        self.minact.append(sum(c for _, c in terms if c < 0))
        self.maxabs.append(max((abs(c) for _, c in terms), default=0))
        for k, c in terms:
            self.var_rows[k].append((r, c))
        return r

    def assign(self, k: int, v: int) -> bool:
        self.value[k] = v
        self.trail.append(k)
        minact, rhs, maxabs, queue = self.minact, self.rhs, self.maxabs, self.queue
        ok = True
        for r, c in self.var_rows[k]:
            # contribution moves from min(c, 0) to c * v
            if v:
                if c > 0:
                    minact[r] += c
                else:
                    continue
            elif c < 0:
                minact[r] -= c
            else:
                continue
            slack = rhs[r] - minact[r]
            if slack < 0:
                ok = False
            elif slack < maxabs[r]:
                queue.append(r)
        return ok

    def undo(self, mark: int) -> None:
        trail, value, minact = self.trail, self.value, self.minact
        while len(trail) > mark:
            k = trail.pop()
            v = value[k]
            for r, c in self.var_rows[k]:
                if v:
                    if c > 0:
                        minact[r] -= c
                elif c < 0:
                    minact[r] += c
            value[k] = -1

    def propagate(self) -> bool:
        queue, value = self.queue, self.value
        rhs, minact, maxabs = self.rhs, self.minact, self.maxabs
        while queue:
            r = queue.pop()
            slack = rhs[r] - minact[r]
            if slack < 0:
                queue.clear()
                return False
            if slack >= maxabs[r]:
                continue
            for k, c in zip(self.row_vars[r], self.row_coefs[r]):
                if value[k] < 0 and (c if c > 0 else -c) > slack:
                    if not self.assign(k, 0 if c > 0 else 1):
                        queue.clear()
                        return False
        return True

    def run(self) -> None:
        self.queue.extend(range(len(self.rhs)))
        if not self.propagate():
            return
        self.dfs(0)

    def dfs(self, pos: int) -> None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise _Budget
        order, value = self.order, self.value
        while pos < len(order) and value[order[pos]] >= 0:
            pos += 1
        if pos == len(order):
            score = sum(c * value[k] for k, c in self.obj)
            self.best = score
            self.best_values = list(value)
            self.rhs[self.obj_row] = score - 1
            return
        k = order[pos]
        for v in (1, 0):
            mark = len(self.trail)
            self.queue.append(self.obj_row)
            if self.assign(k, v) and self.propagate():
                self.dfs(pos + 1)
            else:
                self.queue.clear()
            self.undo(mark)


def solve(model: IlpModel, node_budget: int = DEFAULT_NODE_BUDGET) -> IlpSolution:
    """Solve ``model`` exactly or report ``budget_exceeded``.

    Branches on candidates, then voters, then order variables, trying 1
    before 0. Product variables are normally fixed by propagation.
    """
    search = _Search(model, node_budget)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, len(model.variables) + 500))
    status = "optimal"
    try:
        search.run()
    except _Budget:
        status = "budget_exceeded"
    finally:
        sys.setrecursionlimit(limit)
    if search.best_values is None:
        return IlpSolution({}, None, "infeasible" if status == "optimal" else status, search.nodes)
    assignment = {name: search.best_values[k] for k, name in enumerate(search.names)}
    return IlpSolution(assignment, search.sign * search.best, status, search.nodes)

"""0-1 integer programs for hidden identity and antagonism."""

from .lpformat import export_lp, parse_lp
from .model import (
    Constraint,
    IlpModel,
    build_hidden_an,
    build_hidden_id,
    build_max_an,
    build_max_id,
    decode_witness,
)
from .solver import DEFAULT_NODE_BUDGET, IlpSolution, solve

__all__ = [
    "Constraint",
    "IlpModel",
    "IlpSolution",
    "DEFAULT_NODE_BUDGET",
    "build_hidden_id",
    "build_hidden_an",
    "build_max_id",
    "build_max_an",
    "decode_witness",
    "export_lp",
    "parse_lp",
    "solve",
]

"""Hidden consistent subelections: clones, identity and antagonism."""

from .antagonism import antagonism_signature, hidden_an, max_an, verify_antagonism_voters
from .clones import closest_clone_set, count_hidden_clones, hidden_clones, max_clone
from .core import (
    Election,
    Signature,
    SubelectionWitness,
    example_election,
    format_election,
    parse_election,
    parse_preflib_soc,
    read_election,
    restrict,
)
from .errors import (
    BudgetExceeded,
    InvalidSpec,
    NotOptimal,
    ParseError,
    SizeError,
    SubelectError,
)
from .generators import CultureSpec, sample, sample_batch
from .identity import count_hidden_id, hidden_id, identity_signature, max_id, unanimity_graph

__all__ = [
    "Election",
    "Signature",
    "SubelectionWitness",
    "example_election",
    "format_election",
    "parse_election",
    "parse_preflib_soc",
    "read_election",
    "restrict",
    "hidden_clones",
    "max_clone",
    "count_hidden_clones",
    "closest_clone_set",
    "hidden_id",
    "max_id",
    "count_hidden_id",
    "identity_signature",
    "unanimity_graph",
    "hidden_an",
    "max_an",
    "verify_antagonism_voters",
    "antagonism_signature",
    "CultureSpec",
    "sample",
    "sample_batch",
    "SubelectError",
    "ParseError",
    "SizeError",
    "BudgetExceeded",
    "InvalidSpec",
    "NotOptimal",
]

"""knottab: knot-number classification table and number-theory audits."""

from .knots import (
    Atom,
    CATALOG,
    KnotCatalog,
    KnotExpr,
    ParseError,
    PrimeKnotId,
    Star,
    Times,
    TREFOIL,
    alt_crossings,
    atom,
    is_times_rooted,
    normalize,
    parse,
    render,
    star,
    star_factors,
    times,
)
from .dyadic import (
    Factorization,
    Sieve,
    factorize,
    jump_first_kind,
    jump_general_kind,
    jumpers,
    related_number,
    room_constructions,
    sieve_primes,
    step_of,
    step_range,
)
from .table import (
    BuildError,
    ClassificationTable,
    StepBuild,
    build_step,
    build_table,
    nominal_number,
    preordering_sequences,
    to_json,
    to_tsv,
    verify_against_fixtures,
)
from .audit import (
    AuditReport,
    TwinPair,
    audit_range,
    goldbach_witness,
    strong_twin_goldbach_check,
    twin_pairs_in_step,
)

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "AuditReport",
    "BuildError",
    "CATALOG",
    "ClassificationTable",
    "Factorization",
    "KnotCatalog",
    "KnotExpr",
    "ParseError",
    "PrimeKnotId",
    "Sieve",
    "Star",
    "StepBuild",
    "Times",
    "TREFOIL",
    "TwinPair",
    "alt_crossings",
    "atom",
    "audit_range",
    "build_step",
    "build_table",
    "factorize",
    "goldbach_witness",
    "is_times_rooted",
    "jump_first_kind",
    "jump_general_kind",
    "jumpers",
    "nominal_number",
    "normalize",
    "parse",
    "preordering_sequences",
    "related_number",
    "render",
    "room_constructions",
    "sieve_primes",
    "star",
    "star_factors",
    "step_of",
    "step_range",
    "strong_twin_goldbach_check",
    "times",
    "to_json",
    "to_tsv",
    "twin_pairs_in_step",
    "verify_against_fixtures",
]

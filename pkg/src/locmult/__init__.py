"""Exact computations with piecewise-linear functions, the positive monoid M,
intervals in its order-ideals, their localization, and an oscillating
function that admits no continuous extension.

All arithmetic is exact (``gmpy2.mpq``).  The main entry points are
re-exported here; see the submodules for the rest.
"""
from .pwl import (
    F0, HALF, ONE, ZERO, Comparison, Interval, PwlFn, RSet, compare, cozero,
    from_text, join, meet, rat, to_text,
)
from .urysohn import Derivation, generate_G, local_form_at_zero, urysohn, verify_group_properties
from .monoid import (
    IdealCtx, MElem, PreconditionError, Rejection, alg_leq, alg_lt, ideal_ctx,
    in_Df, in_M, in_Nf, prime_witness, riesz_decompose,
)
from .tailfn import Oscillator, TailFn
from .intervals import (
    approx_on_compact, complement_split, has_property_C, in_Ifh, in_Lf,
    realize_sup, restrict_interval, sub_has_C, upward_direct,
)
from .localization import (
    LocalClass, add_classes, equivalent, fundamental_sequence, make_class,
    minimal_ideal_dominates,
)
from .monster import (
    build_monster, dominated, ideal_split, interval_sum_check, locally_in_M_witness,
    monster_tower, oscillation,
)

__version__ = "0.1.0"

__all__ = [
    "F0",
    "HALF",
    "ONE",
    "ZERO",
    "Comparison",
    "Interval",
    "PwlFn",
    "RSet",
    "compare",
    "cozero",
    "from_text",
    "join",
    "meet",
    "rat",
    "to_text",
    "Derivation",
    "generate_G",
    "local_form_at_zero",
    "urysohn",
    "verify_group_properties",
    "IdealCtx",
    "MElem",
    "PreconditionError",
    "Rejection",
    "alg_leq",
    "alg_lt",
    "ideal_ctx",
    "in_Df",
    "in_M",
    "in_Nf",
    "prime_witness",
    "riesz_decompose",
    "Oscillator",
    "TailFn",
    "approx_on_compact",
    "complement_split",
    "has_property_C",
    "in_Ifh",
    "in_Lf",
    "realize_sup",
    "restrict_interval",
    "sub_has_C",
    "upward_direct",
    "LocalClass",
    "add_classes",
    "equivalent",
    "fundamental_sequence",
    "make_class",
    "minimal_ideal_dominates",
    "build_monster",
    "dominated",
    "ideal_split",
    "interval_sum_check",
    "locally_in_M_witness",
    "monster_tower",
    "oscillation",
]

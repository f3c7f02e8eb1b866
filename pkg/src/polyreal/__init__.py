"""Exact-real evaluation of a tiered algebra of real functions.

Dyadic numbers, outward-rounded intervals, Cauchy reals, the term language W with
its tier checker, a guaranteed-precision evaluator, a reference interpreter for
safe recursion on notation, and grid checks of definability and smoothness.
"""

from .bc import bc_eval, peaceful_wrap, translate_to_W
from .creal import CauchyReal
from .dyadic import Dyadic
from .errors import BudgetExceeded, DomainError, DyadicOverflow, NeedsRefinement, ParseError, PolyrealError
from .evaluator import EvalContext, eval_interval, eval_to_precision, evaluate
from .interval import Interval, cospi_enclosure, pi_enclosure, sinpi_enclosure
from .syntax import parse, parse_bc, pretty_print
from .terms import Signature
from .tiers import check_tiers, signature_of

__all__ = [
    "BudgetExceeded",
    "CauchyReal",
    "DomainError",
    "Dyadic",
    "DyadicOverflow",
    "EvalContext",
    "Interval",
    "NeedsRefinement",
    "ParseError",
    "PolyrealError",
    "Signature",
    "bc_eval",
    "check_tiers",
    "cospi_enclosure",
    "eval_interval",
    "eval_to_precision",
    "evaluate",
    "parse",
    "parse_bc",
    "peaceful_wrap",
    "pi_enclosure",
    "pretty_print",
    "signature_of",
    "sinpi_enclosure",
    "translate_to_W",
]

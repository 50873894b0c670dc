"""q-deformed rationals, q-Farey determinants, Springborn operations and the
rational Markov tree, in exact Laurent-polynomial arithmetic."""

from .errors import (
    IdentityViolation,
    NotExactError,
    PreconditionError,
    QError,
    SearchExhaustedError,
    ZeroPolynomialError,
)
from .farey import q_farey_add, q_farey_det
from .geom import disk_of, fundamental_domain, gap_partial_sum, modular_surface_stats, render_svg
from .laurent import LaurentPoly, equiv_q, gcd_primitive
from .markov import check_q_markov, companion, markov_fractions, markov_tree
from .qrat import INF, Frac, QRational, epsilon, jump, quantize
from .springborn import main_theorem_check, qgcd_reduce, regularity, springborn_diff, springborn_sum

__version__ = "0.1.0"

__all__ = [
    "INF",
    "Frac",
    "IdentityViolation",
    "LaurentPoly",
    "NotExactError",
    "PreconditionError",
    "QError",
    "QRational",
    "SearchExhaustedError",
    "ZeroPolynomialError",
    "check_q_markov",
    "companion",
    "disk_of",
    "epsilon",
    "equiv_q",
    "fundamental_domain",
    "gap_partial_sum",
    "gcd_primitive",
    "jump",
    "main_theorem_check",
    "markov_fractions",
    "markov_tree",
    "modular_surface_stats",
    "q_farey_add",
    "q_farey_det",
    "qgcd_reduce",
    "quantize",
    "regularity",
    "render_svg",
    "springborn_diff",
    "springborn_sum",
]

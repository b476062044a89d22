"""String/tree serialization: rationals as "p/q" or "p" strings,
polynomials as ascending arrays of such strings, operators as
array-of-arrays a[nu][i], recurrences as beta/alpha/gamma arrays.
All I/O is exact; no floating point anywhere."""
from __future__ import annotations

import re

from .backend import Rat as Rational
from .diffop import DiffOperator
from .forms import MomentForm
from .poly import Polynomial
from .two_orth import RecurrenceCoeffs

__all__ = [
    "rat_to_str", "rat_from_str", "poly_to_list", "poly_from_list",
    "operator_to_tree", "operator_from_tree", "rc_to_tree", "rc_from_tree",
    "form_to_list", "mps_to_tree",
]


_RAT_FORM = re.compile(r"^[+-]?\d+(/\d+)?$")


def rat_to_str(r) -> str:
    return str(r)


def rat_from_str(s) -> Rational:
    """Parse "p/q" or "p"; JSON integers are accepted, floats are not."""
    if isinstance(s, bool) or isinstance(s, float):
        raise ValueError(f"floating point is not accepted: {s!r}")
    if isinstance(s, int):
        return Rational(s)
    if isinstance(s, str) and _RAT_FORM.match(s.strip()):
        return Rational(s.strip())
    raise ValueError(f"not a p/q rational string: {s!r}")


def poly_to_list(p: Polynomial) -> list:
    return [str(c) for c in p.coeffs]


def poly_from_list(items) -> Polynomial:
    return Polynomial([rat_from_str(c) for c in items])


def operator_to_tree(J: DiffOperator) -> list:
    return [poly_to_list(a) for a in J.a]


def operator_from_tree(tree) -> DiffOperator:
    return DiffOperator([poly_from_list(row) for row in tree])


def rc_to_tree(rc: RecurrenceCoeffs) -> dict:
    return {
        "beta": [str(v) for v in rc.betas],
        "alpha": [str(v) for v in rc.alphas],
        "gamma": [str(v) for v in rc.gammas],
    }


def rc_from_tree(tree) -> RecurrenceCoeffs:
    return RecurrenceCoeffs(
        [rat_from_str(v) for v in tree["beta"]],
        [rat_from_str(v) for v in tree["alpha"]],
        [rat_from_str(v) for v in tree["gamma"]],
    )


def form_to_list(u: MomentForm) -> list:
    return [str(m) for m in u.moments]


def mps_to_tree(P) -> list:
    return [poly_to_list(p) for p in P]

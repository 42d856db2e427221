"""Expected k-flat counts on random p-adic complete intersections.

Thin wrappers over the compiled core: rational results come back as
``fractions.Fraction`` instead of "num/den" strings.
"""

from fractions import Fraction

from . import _core
from ._core import (
    DEFAULT_GUARD,
    InvalidArgument,
    LengthMismatch,
    NonUnitDenominator,
    NotAdmissible,
    NotInvertible,
    NotSquare,
    PadicFlatsError,
    SingularAtPrecision,
    TooLarge,
    A_formula,
    B_formula,
    check_codim,
    count_A,
    count_B,
    count_singular_2x2,
    det_histogram_all_matrices,
    det_residue,
    exact_det_histogram,
    is_prime,
    mean_smooth_zero_count,
    minor_fibers_3x2,
    minor_fibers_4x3,
    smith_decompose,
    valuation,
)

__all__ = [
    "DEFAULT_GUARD", "InvalidArgument", "LengthMismatch", "NonUnitDenominator", "NotAdmissible",
    "NotInvertible", "NotSquare", "PadicFlatsError", "SingularAtPrecision", "TooLarge",
    "A_formula", "B_formula", "abs_p", "check_codim", "closed_form", "count_A", "count_B",
    "count_singular_2x2", "cubic_det_partial", "det_histogram_all_matrices", "det_level_volume",
    "det_residue", "exact_det_histogram", "expected_flats", "gl_volume", "grassmannian_volume",
    "is_prime", "jacobian_template", "mean_smooth_zero_count", "minor_fibers_3x2",
    "minor_fibers_4x3", "padic_limit_check", "padic_of_rational", "smith_decompose", "valuation",
    "volkenborn_partial",
]


def _frac(text):
    return Fraction(text)


def _bracket(d):
    return (_frac(d["lo"]), _frac(d["hi"]))


def _fmt(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def padic_of_rational(q, p, m):
    return _core.padic_of_rational(_fmt(q), p, m)


def abs_p(x, p, m):
    """|x|_p as a (lo, hi) pair; a zero residue gives (0, p^-m)."""
    return _bracket(_core.abs_p(x, p, m))


def gl_volume(n, p):
    return _frac(_core.gl_volume(n, p))


def det_level_volume(n, ell, p):
    return _frac(_core.det_level_volume(n, ell, p))


def grassmannian_volume(k, n, p):
    return _frac(_core.grassmannian_volume(k, n, p))


def closed_form(kind, p, n=0, k=0):
    return _frac(_core.closed_form(kind, p, n, k))


def jacobian_template(n, k, degrees):
    import json

    return json.loads(_core.template_json(n, k, list(degrees)))


def expected_flats(p, n, k, degrees, method="exact", precision=0, samples=200_000, seed=0,
                   guard=DEFAULT_GUARD, workers=0):
    r = _core.expected_flats(p, n, k, list(degrees), method, precision, samples, seed, guard, workers)
    r["count"] = _bracket(r["count"])
    r["det"] = _bracket(r["det"])
    r["grassmannian_volume"] = _frac(r["grassmannian_volume"])
    if r["reference"] is not None:
        r["reference"] = _frac(r["reference"])
    return r


def _partial(d):
    return {"level": d["level"], "raw_sum": _frac(d["raw_sum"]),
            "normalized_sum": _frac(d["normalized_sum"])}


def volkenborn_partial(variables, terms, p, level):
    """terms: iterable of (coefficient, exponent tuple)."""
    return _partial(_core.volkenborn_partial(
        variables, [(_fmt(c), list(e)) for c, e in terms], p, level))


def cubic_det_partial(p, level):
    return _partial(_core.cubic_det_partial(p, level))


def padic_limit_check(partials, target, p):
    """partials: dicts from volkenborn_partial. Returns (pass, [(level, valuation or None)])."""
    return _core.padic_limit_check(
        [(s["level"], _fmt(s["normalized_sum"])) for s in partials], _fmt(target), p)

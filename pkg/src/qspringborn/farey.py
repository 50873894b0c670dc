"""Classical and q-deformed Farey determinants, Farey sums and their q-lifts."""

from __future__ import annotations

import math
from typing import Literal, NamedTuple

from .errors import IdentityViolation, NotExactError, PreconditionError, SearchExhaustedError
from .laurent import (
    ONE,
    Q,
    LaurentPoly,
    equiv_q,
    equiv_q_signed,
    eval_sigma,
    exact_div,
    subst_qinv,
)
from .qrat import (
    INF,
    Frac,
    QRational,
    Side,
    epsilon,
    quantize,
    ratio_equal,
    reduce_ratio,
)

Kind = Literal["ss", "sf", "fs", "ff"]
KINDS: tuple[Kind, ...] = ("ss", "sf", "fs", "ff")
_SIDE = {"s": "sharp", "f": "flat"}

Q2_Q_1 = LaurentPoly({0: 1, 1: -1, 2: 1})  # q^2 - q + 1


def farey_det(x: Frac, y: Frac) -> int:
    """``|ad - bc|``."""
    return abs(x.num * y.den - x.den * y.num)


def farey_sum(x: Frac, y: Frac) -> Frac:
    return Frac(x.num + y.num, x.den + y.den)


def farey_diff(x: Frac, y: Frac) -> Frac:
    return Frac(x.num - y.num, x.den - y.den)


class FareyDistance(NamedTuple):
    """``distance`` is 1, 2, or ``None`` when the pair is farther apart."""

    distance: int | None
    witness: Frac | None


def graph_distance_le2(x: Frac, y: Frac) -> FareyDistance:
    """Distance in the Farey graph when it is at most 2, with a middle vertex."""
    if x == y:
        raise PreconditionError("distance of a point to itself")
    a, b, c, d = x.num, x.den, y.num, y.den
    df = farey_det(x, y)
    if df == 1:
        return FareyDistance(1, None)
    for s in (1, -1):
        if math.gcd(a + s * c, b + s * d) == df:
            return FareyDistance(2, Frac((a + s * c) // df, (b + s * d) // df))
    return FareyDistance(None, None)


def _sides(kind: str) -> tuple[Side, Side]:
    if kind not in KINDS:
        raise PreconditionError(f"kind must be one of {KINDS}, got {kind!r}")
    return _SIDE[kind[0]], _SIDE[kind[1]]  # type: ignore[return-value]


def q_farey_det(x: Frac | str, y: Frac | str, kind: Kind = "ss") -> LaurentPoly:
    """Signed ``A D - B C`` with ``A/B`` on side ``kind[0]`` of ``x`` and
    ``C/D`` on side ``kind[1]`` of ``y``.  For ``ff`` the result is divided by
    ``q^2 - q + 1``, which always divides exactly."""
    x, y = Frac.of(x), Frac.of(y)
    s1, s2 = _sides(kind)
    r1, r2 = quantize(x, s1), quantize(y, s2)
    d = r1.num * r2.den - r1.den * r2.num
    if kind == "ff":
        try:
            d = exact_div(d, Q2_Q_1)
        except NotExactError:
            raise IdentityViolation(f"q^2-q+1 does not divide the flat determinant of {x}, {y}")
    return d


def q_farey_det_duality_check(x: Frac, y: Frac) -> bool:
    """Left/right exchange under ``q -> 1/q``, up to powers of ``q``."""
    ok1 = equiv_q(q_farey_det(x, y, "fs"), subst_qinv(q_farey_det(x, y, "sf")))
    ok2 = equiv_q(q_farey_det(x, y, "ff"), subst_qinv(q_farey_det(x, y, "ss")))
    return ok1 and ok2


def is_natural(p: LaurentPoly) -> bool:
    """``p`` lies in ``N[q]``."""
    return p.is_polynomial() and all(c >= 0 for c in p.dense)


def q_farey_det_positive(x: Frac, y: Frac) -> bool:
    """For ``x > y`` all four determinants have nonnegative coefficients."""
    if not x > y:
        raise PreconditionError("positivity is stated for x > y")
    return all(is_natural(q_farey_det(x, y, k)) for k in KINDS)


# --- special values at the sixth root of unity ------------------------------------


class SpecialValues(NamedTuple):
    sharp_combination_is_unit: bool
    flat_combination_is_zero: bool
    flat_parts_are_units: bool

    def all(self) -> bool:
        return all(self)


def special_values_check(x: Frac | str) -> SpecialValues:
    x = Frac.of(x)
    if x.is_inf:
        raise PreconditionError("special values are stated for rational x")
    s, f = quantize(x, "sharp"), quantize(x, "flat")
    sm1 = eval_sigma(Q - ONE)
    v1 = eval_sigma(s.den) + sm1 * eval_sigma(s.num)
    v2 = eval_sigma(f.den) + sm1 * eval_sigma(f.num)
    return SpecialValues(
        v1.is_unit(),
        v2.is_zero(),
        eval_sigma(f.num).is_unit() and eval_sigma(f.den).is_unit(),
    )


# --- palindromicity corollaries ---------------------------------------------------------


def palindromic_corollary_check(k: int, n: int) -> dict[str, bool | None]:
    """Identities for ``k/n`` under ``n | k^2 + 1`` and ``n | k^2 - 1``.

    A value of ``None`` marks a hypothesis that does not hold for this input.
    """
    x = Frac(k, n)
    if x.den != n or n <= 0:
        raise PreconditionError("expects reduced k/n with n > 0")
    s, f = quantize(x, "sharp"), quantize(x, "flat")
    out: dict[str, bool | None] = {"plus": None, "minus": None}
    if (k * k + 1) % n == 0:
        out["plus"] = equiv_q(s.den + (Q - ONE) * s.num, f.den)
    if (k * k - 1) % n == 0:
        out["minus"] = equiv_q(f.den + (Q - ONE) * f.num, Q2_Q_1 * s.den)
    return out


# --- q-Farey addition -------------------------------------------------------------------


class QFareyAddResult(NamedTuple):
    result: QRational
    alpha: int
    beta: int
    sign: int
    solutions: int


def _span(*polys: LaurentPoly) -> int:
    return max(max(abs(p.valuation), abs(p.degree)) for p in polys if not p.is_zero())


def _log2_ratio(num: int, den: int) -> int | None:
    """``k`` with ``num == den * 2**k``, if any."""
    if num == 0 or (num > 0) != (den > 0):
        return None
    num, den = abs(num), abs(den)
    if num % den == 0:
        r = num // den
        return r.bit_length() - 1 if r & (r - 1) == 0 else None
    if den % num == 0:
        r = den // num
        return 1 - r.bit_length() if r & (r - 1) == 0 else None
    return None


def _solve_shifts(
    target: QRational,
    r1: QRational,
    r2: QRational,
    det: LaurentPoly,
    window: int,
) -> list[tuple[int, int, int]]:
    """All ``(alpha, beta, sign)`` in the window with
    ``det * target == sign * (q^alpha r1 + q^beta r2)`` on both components.

    Candidates are screened by evaluating at ``q = 2`` (scaled to integers)
    before the exact polynomial check.
    """
    lhs_n, lhs_d = det * target.num, det * target.den
    w = window
    # values at q = 2, scaled by a power of 2 large enough that every shift
    # by up to w places stays an exact integer
    low = min(p.valuation for p in (lhs_n, lhs_d, r1.num, r1.den, r2.num, r2.den) if p)
    scale = 2 * w + 4 + max(0, -low)

    def ev(p: LaurentPoly) -> int:
        if p.is_zero():
            return 0
        acc = 0
        for c in reversed(p.dense):
            acc = 2 * acc + c
        return acc << (p.valuation + scale)

    tn, td = ev(lhs_n), ev(lhs_d)
    an, ad = ev(r1.num), ev(r1.den)
    cn, cd = ev(r2.num), ev(r2.den)
    pivot, pivot_t, pivot_a = (cn, tn, an) if cn else (cd, td, ad)
    sols = []
    for sign in (1, -1):
        for alpha in range(-w, w + 1):
            shifted = pivot_a << alpha if alpha >= 0 else pivot_a >> -alpha
            rest = sign * pivot_t - shifted
            beta = _log2_ratio(rest, pivot)
            if beta is None or abs(beta) > w:
                continue
            n_ok = sign * lhs_n == r1.num.shift(alpha) + r2.num.shift(beta)
            if n_ok and sign * lhs_d == r1.den.shift(alpha) + r2.den.shift(beta):
                sols.append((alpha, beta, sign))
    return sols


def q_farey_add(
    x: Frac | str,
    y: Frac | str,
    side: Side = "sharp",
    slots: Kind = "ss",
    difference: bool = False,
    window: int | None = None,
) -> QFareyAddResult:
    """q-lift of the Farey sum (or difference) of a distance-2 pair.

    Requires ``gcd(a+c, b+d) = d_F`` (``gcd(a-c, b-d) = d_F`` for the
    difference).  Searches exponents ``alpha, beta`` in ``[-window, window]``
    (by default twice the largest exponent involved, plus 4)
    with ``d * R = +-(q^alpha A + q^beta C)`` and the same for the
    denominators, where ``A/B``, ``C/D`` sit on the sides named by ``slots``
    and ``d`` is the matching q-Farey determinant.  The first solution is
    returned together with how many were found.
    """
    x, y = Frac.of(x), Frac.of(y)
    a, b, c, d = x.num, x.den, y.num, y.den
    s = -1 if difference else 1
    df = farey_det(x, y)
    if df == 0 or math.gcd(a + s * c, b + s * d) != df:
        raise PreconditionError(f"{x}, {y} do not satisfy the Farey gcd hypothesis")
    target_frac = farey_diff(x, y) if difference else farey_sum(x, y)
    s1, s2 = _sides(slots)
    r1, r2 = quantize(x, s1), quantize(y, s2)
    if difference:
        r2 = QRational(-r2.num, -r2.den, r2.side, _reduced=True)
    target = quantize(target_frac, side)
    det = q_farey_det(x, y, slots)
    if window is None:
        window = _span(det, target.num, target.den, r1.num, r1.den, r2.num, r2.den) * 2 + 4
    sols = _solve_shifts(target, r1, r2, det, window)
    if not sols:
        raise SearchExhaustedError(
            f"no exponents in [-{window}, {window}] for {x}, {y} ({slots} -> {side})"
        )
    alpha, beta, sign = sols[0]
    return QFareyAddResult(target, alpha, beta, sign, len(sols))


def recalled_sum_rule(x: Frac, y: Frac) -> bool:
    """For adjacent ``x < y`` the right Farey sum is ``A# + q^alpha C#``
    over ``B# + q^alpha D#`` with ``alpha = eps(x) - eps(y) + 1`` when
    ``eps(x) >= eps(y)`` and ``alpha = 1`` otherwise."""
    if farey_det(x, y) != 1 or not x < y:
        raise PreconditionError("needs Farey neighbours x < y")
    e1, e2 = epsilon(x), epsilon(y)
    alpha = e1 - e2 + 1 if e1 >= e2 else 1
    r1, r2 = quantize(x, "sharp"), quantize(y, "sharp")
    cand = (r1.num + r2.num.shift(alpha), r1.den + r2.den.shift(alpha))
    return ratio_equal(cand, quantize(farey_sum(x, y), "sharp").ratio)


def invariance_check(x: Frac, y: Frac, kind: Kind) -> bool:
    """Determinants are unchanged, up to a unit, by ``T`` and ``S``."""
    base = q_farey_det(x, y, kind)
    ok = True
    for g in (_t, _s):
        gx, gy = g(x), g(y)
        ok = ok and equiv_q_signed(q_farey_det(gx, gy, kind), base)
    return ok


def _t(x: Frac) -> Frac:
    return INF if x.is_inf else Frac(x.num + x.den, x.den)


def _s(x: Frac) -> Frac:
    return Frac(-x.den, x.num)


def well_ordered(x: Frac, y: Frac, q: float) -> bool:
    """For ``x > y`` and ``0 < q < 1``: ``[y]b < [y]# < [x]b < [x]#``."""
    if not x > y:
        raise PreconditionError("well-orderedness is stated for x > y")
    vals = [quantize(y, "flat")(q), quantize(y, "sharp")(q), quantize(x, "flat")(q), quantize(x, "sharp")(q)]
    return all(u < v for u, v in zip(vals, vals[1:]))


__all__ = [
    "KINDS",
    "FareyDistance",
    "QFareyAddResult",
    "SpecialValues",
    "farey_det",
    "farey_diff",
    "farey_sum",
    "graph_distance_le2",
    "invariance_check",
    "is_natural",
    "palindromic_corollary_check",
    "q_farey_add",
    "q_farey_det",
    "q_farey_det_duality_check",
    "q_farey_det_positive",
    "recalled_sum_rule",
    "special_values_check",
    "well_ordered",
]

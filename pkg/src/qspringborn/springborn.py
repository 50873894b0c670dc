"""Springborn sum and difference, regular pairs and their q-deformation.

For ``x = a/b`` and ``y = c/d`` the Springborn sum is ``(ab+cd)/(b^2+d^2)`` and
the difference is ``(ab-cd)/(b^2-d^2)``.  Seen on Ford circles these are the
inner and outer centres of homothety; the q-deformed disks ``[[x]b, [x]#]``
give q-analogues whose reduced forms are controlled by q-Farey determinants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, NamedTuple

from .errors import IdentityViolation, PreconditionError
from .farey import farey_det, farey_diff, farey_sum, q_farey_det
from .laurent import (
    LaurentPoly,
    GaussianInt,
    equiv_q_signed,
    exact_div,
    gaussian_gcd,
    gcd_many,
    gcd_primitive,
)
from .qrat import (
    INF,
    Frac,
    QRational,
    epsilon,
    quantize,
    ratio_equal,
    subst_qinv,
    transition_map,
)

Mode = Literal["inner", "outer"]


def _check_mode(mode: str) -> Mode:
    if mode not in ("inner", "outer"):
        raise PreconditionError(f"mode must be 'inner' or 'outer', got {mode!r}")
    return mode  # type: ignore[return-value]


# --- classical operations ---------------------------------------------------------


def springborn_sum_raw(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    return a * b + c * d, b * b + d * d


def springborn_diff_raw(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    return a * b - c * d, b * b - d * d


def springborn_sum(x: Frac | str, y: Frac | str) -> Frac:
    x, y = Frac.of(x), Frac.of(y)
    if x == y:
        raise PreconditionError("Springborn operations need distinct points")
    return Frac(*springborn_sum_raw(x.num, x.den, y.num, y.den))


def springborn_diff(x: Frac | str, y: Frac | str) -> Frac:
    x, y = Frac.of(x), Frac.of(y)
    if x == y:
        raise PreconditionError("Springborn operations need distinct points")
    return Frac(*springborn_diff_raw(x.num, x.den, y.num, y.den))


def _bracket(z: Frac, w: Frac) -> int:
    return z.num * w.den - w.num * z.den


def cross_ratio(z1: Frac, z2: Frac, z3: Frac, z4: Frac) -> Fraction | None:
    """``(z3-z1)(z4-z2) / ((z3-z2)(z4-z1))`` in projective coordinates.

    ``None`` stands for infinity; coincident points raise.
    """
    num = _bracket(z3, z1) * _bracket(z4, z2)
    den = _bracket(z3, z2) * _bracket(z4, z1)
    if num == 0 and den == 0:
        raise PreconditionError("cross ratio of coincident points")
    return None if den == 0 else Fraction(num, den)


def harmonic_check(x: Frac, y: Frac) -> bool:
    """The sum and difference separate ``x, y`` harmonically."""
    return cross_ratio(x, y, springborn_sum(x, y), springborn_diff(x, y)) == -1


def ford_circle(x: Frac) -> tuple[Fraction, Fraction, Fraction]:
    """Centre ``(a/b, 1/(2b^2))`` and radius of the Ford circle at finite ``x``."""
    if x.is_inf:
        raise PreconditionError("the Ford circle at infinity is a line")
    r = Fraction(1, 2 * x.den * x.den)
    return Fraction(x.num, x.den), r, r


def ford_homothety(x: Frac, y: Frac, mode: Mode) -> Frac:
    """Homothety centre of two Ford circles on the real axis."""
    _check_mode(mode)
    m1, _, r1 = ford_circle(x)
    m2, _, r2 = ford_circle(y)
    if mode == "inner":
        return Frac.of((r1 * m2 + r2 * m1) / (r1 + r2))
    if r1 == r2:
        return INF
    return Frac.of((r1 * m2 - r2 * m1) / (r1 - r2))


# --- regularity -----------------------------------------------------------------------


@dataclass(frozen=True)
class RegularityReport:
    inner: bool
    outer: bool
    d_f: int
    inner_gcd: int
    outer_gcd: int
    gaussian_check: bool
    farey_gcd_product: int
    farey_witness_det: int

    def regular(self, mode: Mode) -> bool:
        return self.inner if mode == "inner" else self.outer


def regularity(x: Frac | str, y: Frac | str) -> RegularityReport:
    """Inner/outer regularity, cross-checked against the Farey and Gaussian
    characterizations; disagreement raises :class:`IdentityViolation`."""
    x, y = Frac.of(x), Frac.of(y)
    if x == y:
        raise PreconditionError("regularity needs distinct points")
    a, b, c, d = x.num, x.den, y.num, y.den
    df = farey_det(x, y)
    ig = math.gcd(a * b + c * d, b * b + d * d, a * a + c * c)
    og = math.gcd(a * b - c * d, b * b - d * d, a * a - c * c)
    inner, outer = ig == df, og == df

    g = gaussian_gcd(GaussianInt(a, c), GaussianInt(b, d))
    gh = gaussian_gcd(GaussianInt(a, -c), GaussianInt(b, -d))
    gaussian = (g * gh).normalized() == GaussianInt(df, 0)

    prod = math.gcd(a + c, b + d) * math.gcd(a - c, b - d)
    witness = farey_det(farey_sum(x, y), farey_diff(x, y))

    if gaussian != inner:
        raise IdentityViolation(f"Gaussian test disagrees with inner regularity for {x}, {y}")
    if (prod in (df, 2 * df)) != outer or (witness in (1, 2)) != outer:
        raise IdentityViolation(f"Farey tests disagree with outer regularity for {x}, {y}")
    if math.gcd(b, d) == 1 and inner != ((b * b + d * d) % df == 0):
        raise IdentityViolation(f"coprime-denominator shortcut fails for {x}, {y}")
    if df in (1, 2) and not (inner and outer):
        raise IdentityViolation(f"small Farey determinant but not regular: {x}, {y}")
    return RegularityReport(inner, outer, df, ig, og, gaussian, prod, witness)


# --- q-deformed homothety centres --------------------------------------------------------


class _Parts(NamedTuple):
    As: LaurentPoly
    Bs: LaurentPoly
    Af: LaurentPoly
    Bf: LaurentPoly
    Cs: LaurentPoly
    Ds: LaurentPoly
    Cf: LaurentPoly
    Df: LaurentPoly
    e1: int
    e2: int


def _parts(x: Frac, y: Frac) -> _Parts:
    xs, xf = quantize(x, "sharp"), quantize(x, "flat")
    ys, yf = quantize(y, "sharp"), quantize(y, "flat")
    return _Parts(xs.num, xs.den, xf.num, xf.den, ys.num, ys.den, yf.num, yf.den, epsilon(x), epsilon(y))


def homothety_symbolic(x: Frac | str, y: Frac | str, mode: Mode) -> tuple[LaurentPoly, LaurentPoly]:
    """Unreduced ``(numerator, denominator)`` of the q-homothety centre.

    The alternative numerator obtained by swapping sides is computed too and
    must agree.
    """
    x, y = Frac.of(x), Frac.of(y)
    _check_mode(mode)
    p = _parts(x, y)
    sg = 1 if mode == "inner" else -1
    if mode == "inner":
        num = p.As * p.Bf * _m(p.e2) + p.Cf * p.Ds * _m(p.e1)
        alt = p.Af * p.Bs * _m(p.e2) + p.Cs * p.Df * _m(p.e1)
    else:
        num = p.As * p.Bf * _m(p.e2) - p.Cs * p.Df * _m(p.e1)
        alt = p.Af * p.Bs * _m(p.e2) - p.Cf * p.Ds * _m(p.e1)
    den = p.Bs * p.Bf * _m(p.e2) + sg * (p.Ds * p.Df * _m(p.e1))
    if num != alt:
        raise IdentityViolation(f"the two {mode} homothety numerators differ for {x}, {y}")
    return num, den


def homothety_inner_symbolic(x, y):
    return homothety_symbolic(x, y, "inner")


def homothety_outer_symbolic(x, y):
    return homothety_symbolic(x, y, "outer")


def _m(e: int) -> LaurentPoly:
    return LaurentPoly.monomial(e)


class QGcdResult(NamedTuple):
    reduced: QRational
    gcd: LaurentPoly
    predicted: LaurentPoly


def qgcd_reduce(x: Frac | str, y: Frac | str, mode: Mode) -> QGcdResult:
    """Reduce the q-homothety centre of a regular pair.

    The three-term gcd must match the q-Farey determinant the theory
    predicts (``sf`` for inner, ``ss`` for outer), up to a unit.
    """
    x, y = Frac.of(x), Frac.of(y)
    _check_mode(mode)
    if not regularity(x, y).regular(mode):
        raise PreconditionError(f"({x}, {y}) is not {mode} regular")
    num, den = homothety_symbolic(x, y, mode)
    p = _parts(x, y)
    if mode == "inner":
        third = p.As * p.Af * _m(p.e2) + p.Cf * p.Cs * _m(p.e1)
        predicted = q_farey_det(x, y, "sf")
        also = q_farey_det(x, y, "fs")
    else:
        third = p.As * p.Af * _m(p.e2) - p.Cf * p.Cs * _m(p.e1)
        predicted = q_farey_det(x, y, "ss")
        also = q_farey_det(x, y, "ff")
    g = gcd_many(num, den, third)
    if not (equiv_q_signed(g, predicted) and equiv_q_signed(g, also)):
        raise IdentityViolation(f"{mode} q-gcd of {x}, {y} is {g}, expected {predicted}")
    g2 = gcd_primitive(num, den)
    if g2 != g:
        raise IdentityViolation(f"numerator/denominator gcd {g2} exceeds three-term gcd {g}")
    side = "sharp" if mode == "inner" else "flat"
    reduced = QRational(exact_div(num, g), exact_div(den, g), side)
    return QGcdResult(reduced, g, predicted)


Outcome = Literal["regular-verified", "exceptional-holds", "fails"]


@dataclass(frozen=True)
class MainTheoremReport:
    x: Frac
    y: Frac
    inner: Outcome
    outer: Outcome


def main_theorem_check(x: Frac | str, y: Frac | str) -> MainTheoremReport:
    """Compare the q-homothety centres with the quantized Springborn sum
    (right version) and difference (left version)."""
    x, y = Frac.of(x), Frac.of(y)
    reg = regularity(x, y)
    out: dict[str, Outcome] = {}
    for mode, op, side in (("inner", springborn_sum, "sharp"), ("outer", springborn_diff, "flat")):
        expected = quantize(op(x, y), side)
        if reg.regular(mode):
            got = qgcd_reduce(x, y, mode).reduced
            if not got.same_function(expected):
                raise IdentityViolation(f"{mode} centre of regular pair {x}, {y} is {got}, expected {expected}")
            out[mode] = "regular-verified"
        else:
            holds = ratio_equal(homothety_symbolic(x, y, mode), expected.ratio)
            out[mode] = "exceptional-holds" if holds else "fails"
    return MainTheoremReport(x, y, out["inner"], out["outer"])


class QMidpoint(NamedTuple):
    flat: QRational
    sharp: QRational


def q_midpoint(x: Frac | str, y: Frac | str) -> QMidpoint:
    """Both q-versions of the midpoint of Farey neighbours.

    The left version is the outer centre of the Farey sum and difference; the
    right one follows through the transition map and ``q -> 1/q``.
    """
    x, y = Frac.of(x), Frac.of(y)
    if farey_det(x, y) != 1:
        raise PreconditionError("q-midpoint needs Farey neighbours")
    flat = qgcd_reduce(farey_sum(x, y), farey_diff(x, y), "outer").reduced
    n, d = transition_map(flat.ratio)
    sharp = QRational(subst_qinv(n), subst_qinv(d), "sharp")
    return QMidpoint(flat, sharp)


def midpoint(x: Frac, y: Frac) -> Frac:
    if x.is_inf or y.is_inf:
        return INF
    return Frac.of((x.to_fraction() + y.to_fraction()) / 2)


# --- solving for the second operand ------------------------------------------------------


def springborn_solve(target: Frac | str, given: Frac | str, op: Literal["sum", "diff"]) -> Frac | None:
    """``y`` with ``given (+)_S y == target`` (or the difference); ``None``
    when no reduced solution exists."""
    t, g = Frac.of(target), Frac.of(given)
    x, y, a, b = t.num, t.den, g.num, g.den
    if op == "sum":
        if y == 0:
            return None
        if (b * (1 + x * x)) % y:
            return None
        c, d = a * x - b * (1 + x * x) // y, a * y - b * x
    elif op == "diff":
        if y == 0:
            if b == 0:
                return None
            # any c/b with c != a works; take the nearest one above a
            c = a + 1
            while math.gcd(c, b) != 1:
                c += 1
            return Frac(c, b)
        if (b * (x * x - 1)) % y:
            return None
        c, d = -a * x + b * (x * x - 1) // y, b * x - a * y
        if abs(d) == b:
            return None
    else:
        raise PreconditionError(f"op must be 'sum' or 'diff', got {op!r}")
    if math.gcd(c, d) != 1:
        return None
    sol = Frac(c, d)
    if sol == g:
        return None
    check = springborn_sum(g, sol) if op == "sum" else springborn_diff(g, sol)
    if check != t:
        raise IdentityViolation(f"solution {sol} does not reproduce {t}")
    return sol


def bezout_decomposition(x: Frac, op: Literal["sum", "diff"] = "sum") -> tuple[Frac, Frac]:
    """Write ``x = p/y`` as a Springborn sum or difference with first operand
    over ``y``.

    With ``alpha p + beta y == 1``: ``alpha/y (+)_S (p^2 + beta y)/(y (p - alpha))``
    and ``-alpha/y (-)_S (p^2 - beta y)/(y (p + alpha))`` both equal ``x``
    (``p - alpha`` or ``p + alpha`` may vanish; the second operand is then
    infinity).
    """
    if x.is_inf or x.den < 2:
        raise PreconditionError("needs a non-integer rational")
    p, y = x.num, x.den
    alpha0 = pow(p, -1, y)
    # alpha is only fixed mod y; skip choices where the two operands coincide
    for k in (0, 1, -1, 2, -2):
        alpha = alpha0 + k * y
        beta = (1 - alpha * p) // y
        if op == "sum":
            first, second = Frac(alpha, y), Frac(p * p + beta * y, y * (p - alpha))
            if first != second and springborn_sum(first, second) == x:
                return first, second
        else:
            first, second = Frac(-alpha, y), Frac(p * p - beta * y, y * (p + alpha))
            if first != second and springborn_diff(first, second) == x:
                return first, second
    raise IdentityViolation(f"no Bezout decomposition found for {x}")


def iteration_check(x: Frac | str, y: Frac | str, mode: Mode) -> bool:
    """Whether the hypotheses for iterating hold; when they do the two child
    pairs are confirmed regular (a failure raises)."""
    x, y = Frac.of(x), Frac.of(y)
    _check_mode(mode)
    if math.gcd(x.den, y.den) != 1 or not regularity(x, y).regular(mode):
        raise PreconditionError(f"({x}, {y}) is not a {mode} regular pair with coprime denominators")
    s = 1 if mode == "inner" else -1
    a, b, c, d = x.num, x.den, y.num, y.den
    if (a * a + s) % b or (c * c + s) % d:
        return False
    z = springborn_sum(x, y) if mode == "inner" else springborn_diff(x, y)
    for pair in ((x, z), (z, y)):
        if not regularity(*pair).regular(mode):
            raise IdentityViolation(f"child pair {pair[0]}, {pair[1]} is not {mode} regular")
    return True

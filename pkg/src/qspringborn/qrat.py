"""Left and right q-deformed rationals.

Every extended rational ``x`` is reached from infinity by a word in the
generators of PGL(2, Z).  Replacing each generator by its q-matrix and
applying the product to ``(1, 0)`` gives the right version ``[x]#``; applying
it to ``(1, 1 - q)`` gives the left version ``[x]b``.  The two are called the
``sharp`` and ``flat`` sides below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Literal, NamedTuple

from .errors import IdentityViolation, PreconditionError, ZeroPolynomialError
from .laurent import (
    ONE,
    Q,
    ZERO,
    LaurentPoly,
    equiv_q,
    exact_div,
    gcd_primitive,
    subst_qinv,
)

Side = Literal["sharp", "flat"]
SIDES: tuple[Side, Side] = ("sharp", "flat")


def other_side(side: Side) -> Side:
    return "flat" if side == "sharp" else "sharp"


def check_side(side: str) -> Side:
    if side not in SIDES:
        raise PreconditionError(f"side must be 'sharp' or 'flat', got {side!r}")
    return side  # type: ignore[return-value]


# --- extended rationals -----------------------------------------------------------


@dataclass(frozen=True)
class Frac:
    """Reduced fraction ``num/den`` with ``den >= 0``; infinity is ``1/0``."""

    num: int
    den: int

    def __post_init__(self):
        a, b = int(self.num), int(self.den)
        if a == 0 and b == 0:
            raise PreconditionError("0/0 is not an extended rational")
        g = math.gcd(a, b)
        a, b = a // g, b // g
        if b < 0 or (b == 0 and a < 0):
            a, b = -a, -b
        object.__setattr__(self, "num", a)
        object.__setattr__(self, "den", b)

    @classmethod
    def parse(cls, text: str) -> "Frac":
        """Accept ``a/b``, ``-a/b``, an integer, ``inf`` or ``1/0``."""
        s = text.strip().replace(" ", "")
        if s.lower() in ("inf", "infinity", "oo", "+inf"):
            return INF
        try:
            if "/" in s:
                a, b = s.split("/")
                return cls(int(a), int(b))
            return cls(int(s), 1)
        except ValueError:
            raise PreconditionError(f"not a fraction: {text!r}") from None

    @classmethod
    def of(cls, x: "Frac | Fraction | int | str") -> "Frac":
        if isinstance(x, Frac):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        if isinstance(x, int):
            return cls(x, 1)
        return cls(x.numerator, x.denominator)

    @property
    def is_inf(self) -> bool:
        return self.den == 0

    def to_fraction(self) -> Fraction:
        if self.is_inf:
            raise PreconditionError("infinity has no Fraction value")
        return Fraction(self.num, self.den)

    def __float__(self) -> float:
        return math.inf if self.is_inf else self.num / self.den

    def sort_key(self) -> tuple[int, int]:
        return (self.den, self.num)

    def _cmp_key(self):
        return (1, 0) if self.is_inf else (0, Fraction(self.num, self.den))

    def __lt__(self, other: "Frac") -> bool:
        return self._cmp_key() < other._cmp_key()

    def __le__(self, other: "Frac") -> bool:
        return self._cmp_key() <= other._cmp_key()

    def __gt__(self, other: "Frac") -> bool:
        return self._cmp_key() > other._cmp_key()

    def __ge__(self, other: "Frac") -> bool:
        return self._cmp_key() >= other._cmp_key()

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


INF = Frac(1, 0)


def farey_fractions(max_den: int, lo: Fraction | int, hi: Fraction | int) -> list[Frac]:
    """Reduced fractions in ``[lo, hi]`` with ``den <= max_den``, sorted by value."""
    lo, hi = Fraction(lo), Fraction(hi)
    out = []
    for b in range(1, max_den + 1):
        for a in range(math.floor(lo * b), math.ceil(hi * b) + 1):
            if math.gcd(a, b) == 1 and lo <= Fraction(a, b) <= hi:
                out.append(Frac(a, b))
    out.sort()
    return out


# --- continued fractions and words ---------------------------------------------------


def continued_fraction(x: Frac) -> list[int]:
    """Regular expansion ``[a1, ..., an]``; the last entry is >= 2 when n > 1."""
    if x.is_inf:
        raise PreconditionError("infinity has no continued fraction")
    a, b = x.num, x.den
    out = []
    while b:
        t, r = divmod(a, b)
        out.append(t)
        a, b = b, r
    return out


def continued_fraction_even(x: Frac) -> list[int]:
    """Expansion of even length, splitting the last entry ``n -> n-1, 1``."""
    cf = continued_fraction(x)
    if len(cf) % 2:
        cf[-1:] = [cf[-1] - 1, 1]
    return cf


def cf_value(cf: Iterable[int]) -> Frac:
    """Evaluate ``[a1, a2, ...]`` back to a fraction (entries after the first >= 1)."""
    seq = list(cf)
    p, r = 1, 0  # value p/r of the tail, starting from infinity
    for a in reversed(seq):
        p, r = a * p + r, p
    return Frac(p, r)


_LETTERS = {"T": "T", "t": "t", "S": "S", "N": "N"}


@dataclass(frozen=True)
class ModularWord:
    """Word over ``T``, ``t`` (= T^-1), ``S`` and ``N``; rightmost acts first."""

    letters: str

    def __post_init__(self):
        s = "".join(ch for ch in self.letters if not ch.isspace())
        if any(ch not in _LETTERS for ch in s):
            raise PreconditionError(f"bad letter in word {self.letters!r}")
        object.__setattr__(self, "letters", s)

    def integer_matrix(self) -> tuple[int, int, int, int]:
        m = (1, 0, 0, 1)
        for ch in self.letters:
            m = _imul(m, _INT_GEN[ch])
        return m

    def act_on_infinity(self) -> Frac:
        a, _, c, _ = self.integer_matrix()
        return Frac(a, c)

    def determinant(self) -> int:
        a, b, c, d = self.integer_matrix()
        return a * d - b * c

    def __str__(self) -> str:
        return " ".join(self.letters) if self.letters else "(empty)"


_INT_GEN = {
    "T": (1, 1, 0, 1),
    "t": (1, -1, 0, 1),
    "S": (0, -1, 1, 0),
    "N": (-1, 0, 0, 1),
}


def _imul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def word_for(x: Frac) -> ModularWord:
    """A word sending infinity to ``x``.

    Non-positive integers use ``T^x S``; everything else uses the even
    expansion ``[a1, ..., a2s]`` with ``T^a1 L^a2 T^a3 ... L^a2s`` and
    ``L = T S T``.
    """
    x = Frac.of(x)
    if x.is_inf:
        w = ModularWord("")
    elif x.den == 1 and x.num <= 0:
        w = ModularWord("t" * (-x.num) + "S")
    else:
        cf = continued_fraction_even(x)
        parts = []
        for i, a in enumerate(cf):
            if i % 2 == 0:
                parts.append("T" * a if a >= 0 else "t" * (-a))
            else:
                parts.append("TST" * a)
        w = ModularWord("".join(parts))
    if w.act_on_infinity() != x:
        raise IdentityViolation(f"word {w} does not reach {x}")
    return w


# --- q-matrices ------------------------------------------------------------------------


@dataclass(frozen=True)
class QMatrix:
    a: LaurentPoly
    b: LaurentPoly
    c: LaurentPoly
    d: LaurentPoly

    def __matmul__(self, o: "QMatrix") -> "QMatrix":
        return QMatrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def det(self) -> LaurentPoly:
        return self.a * self.d - self.b * self.c

    def at_one(self) -> tuple[int, int, int, int]:
        return (self.a.at_one(), self.b.at_one(), self.c.at_one(), self.d.at_one())

    def det_at_one(self) -> int:
        a, b, c, d = self.at_one()
        return a * d - b * c

    def normalized(self) -> "QMatrix":
        """Divide all entries by the largest common power of ``q``."""
        vals = [p.valuation for p in (self.a, self.b, self.c, self.d) if not p.is_zero()]
        s = min(vals)
        return QMatrix(self.a.shift(-s), self.b.shift(-s), self.c.shift(-s), self.d.shift(-s))

    def entries(self) -> tuple[LaurentPoly, ...]:
        return (self.a, self.b, self.c, self.d)


QI = QMatrix(ONE, ZERO, ZERO, ONE)
T_Q = QMatrix(Q, ONE, ZERO, ONE)
T_Q_INV = QMatrix(LaurentPoly.monomial(-1), LaurentPoly.monomial(-1, -1), ZERO, ONE)
S_Q = QMatrix(ZERO, -ONE, Q, ZERO)
N_Q = QMatrix(-ONE, ONE - LaurentPoly.monomial(-1), Q - ONE, ONE)
L_Q = (T_Q @ S_Q @ T_Q).normalized()

_Q_GEN = {"T": T_Q, "t": T_Q_INV, "S": S_Q, "N": N_Q}


def matrix_quantize(word: ModularWord | str) -> QMatrix:
    """Product of the q-generators along ``word``, up to a common monomial."""
    if isinstance(word, str):
        word = ModularWord(word)
    m = QI
    for ch in word.letters:
        m = m @ _Q_GEN[ch]
    return m.normalized()


# --- q-rationals -------------------------------------------------------------------------


def reduce_ratio(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Lowest terms over ``Z[q]``.

    Both parts become polynomials, coprime in ``Z[q]`` (so not both divisible
    by ``q`` and without common integer content), with the sign fixed by the
    lowest-order coefficient of the denominator being positive.  A zero
    denominator gives ``(1, 0)``; a zero numerator gives ``(0, 1)``.
    """
    if num.is_zero() and den.is_zero():
        raise ZeroPolynomialError("0/0 is not a rational function")
    if den.is_zero():
        return ONE, ZERO
    if num.is_zero():
        return ZERO, ONE
    g = gcd_primitive(num, den)
    if g != ONE:
        num, den = exact_div(num, g), exact_div(den, g)
    k = math.gcd(num.content(), den.content())
    if k > 1:
        num, den = num.scale_div(k), den.scale_div(k)
    s = min(num.valuation, den.valuation)
    num, den = num.shift(-s), den.shift(-s)
    if den.trailing < 0:
        num, den = -num, -den
    return num, den


def ratio_equal(a: tuple[LaurentPoly, LaurentPoly], b: tuple[LaurentPoly, LaurentPoly]) -> bool:
    """Equality of rational functions by cross-multiplication."""
    return a[0] * b[1] == a[1] * b[0]


@dataclass(frozen=True)
class QRational:
    """``num/den`` in lowest terms, tagged with the side it came from."""

    num: LaurentPoly
    den: LaurentPoly
    side: Side | None = None
    _reduced: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if not self._reduced:
            n, d = reduce_ratio(self.num, self.den)
            object.__setattr__(self, "num", n)
            object.__setattr__(self, "den", d)
            object.__setattr__(self, "_reduced", True)

    @property
    def ratio(self) -> tuple[LaurentPoly, LaurentPoly]:
        return (self.num, self.den)

    def at_one(self) -> Frac:
        return Frac(self.num.at_one(), self.den.at_one())

    def __call__(self, q):
        """Numeric value at ``q`` (float, Fraction, ...); infinity for ``1/0``."""
        d = self.den(q)
        if d == 0:
            return math.inf
        return self.num(q) / d

    def same_function(self, other: "QRational") -> bool:
        return self.num == other.num and self.den == other.den

    def subst_qinv(self) -> "QRational":
        return QRational(subst_qinv(self.num), subst_qinv(self.den), self.side)

    def to_json(self) -> dict:
        from .laurent import poly_to_json

        return {"num": poly_to_json(self.num), "den": poly_to_json(self.den), "side": self.side}

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"


def _column(m: QMatrix, side: Side) -> tuple[LaurentPoly, LaurentPoly]:
    if side == "sharp":
        return m.a, m.c
    v = ONE - Q
    return m.a + m.b * v, m.c + m.d * v


@lru_cache(maxsize=65536)
def _quantize_cached(num: int, den: int, side: Side) -> QRational:
    x = Frac(num, den)
    m = matrix_quantize(word_for(x))
    a, b = _column(m, side)
    r = QRational(a, b, side)
    if r.at_one() != x:
        raise IdentityViolation(f"quantization of {x} evaluates to {r.at_one()} at q=1")
    return r


def quantize(x: Frac | str | int | Fraction, side: Side = "sharp") -> QRational:
    """``[x]#`` (``side='sharp'``) or ``[x]b`` (``side='flat'``)."""
    x = Frac.of(x)
    return _quantize_cached(x.num, x.den, check_side(side))


def apply(m: QMatrix, r: QRational) -> QRational:
    """Moebius action of a q-matrix; orientation reversing matrices swap sides."""
    num = m.a * r.num + m.b * r.den
    den = m.c * r.num + m.d * r.den
    if num.is_zero() and den.is_zero():
        raise ZeroPolynomialError("matrix sends the q-rational to 0/0")
    side = r.side
    if side is not None and m.det_at_one() == -1:
        side = other_side(side)
    return QRational(num, den, side)


def transition_map(r: tuple[LaurentPoly, LaurentPoly]) -> tuple[LaurentPoly, LaurentPoly]:
    """``g_q(X) = (1 + (X - 1) q) / (1 + (q - 1) X)`` applied to ``X = A/B``."""
    a, b = r
    return reduce_ratio(b + (a - b) * Q, b + (Q - ONE) * a)


def epsilon(x: Frac | str) -> int:
    """Exponent with ``A# Bb - Ab B# = q^eps (1 - q)``."""
    x = Frac.of(x)
    s, f = quantize(x, "sharp"), quantize(x, "flat")
    det = s.num * f.den - f.num * s.den
    mono = exact_div(det, ONE - Q)
    if not mono.is_monomial() or mono.trailing != 1:
        raise IdentityViolation(f"determinant of {x} is not q^n (1 - q): {det}")
    return mono.valuation


def epsilon_from_cf(x: Frac | str) -> int:
    """Closed form ``|a1| + a2 + ... + a2s - 1`` from the even expansion."""
    x = Frac.of(x)
    if x.is_inf:
        return 0
    cf = continued_fraction_even(x)
    return abs(cf[0]) + sum(cf[1:]) - 1


class Jump(NamedTuple):
    """``|[x]# - [x]b| = num / den`` as a rational function."""

    num: LaurentPoly
    den: LaurentPoly

    def __call__(self, q: float) -> float:
        return abs(self.num(q) / self.den(q))


def jump(x: Frac | str) -> Jump:
    x = Frac.of(x)
    if x.is_inf:
        raise PreconditionError("the jump at infinity is unbounded")
    e = epsilon(x)
    s, f = quantize(x, "sharp"), quantize(x, "flat")
    return Jump((ONE - Q).shift(e), s.den * f.den)


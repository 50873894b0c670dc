"""Laurent polynomials in one variable ``q`` with integer coefficients.

A :class:`LaurentPoly` is stored densely: a valuation (lowest exponent) and a
tuple of big-int coefficients whose first and last entries are nonzero.  The
zero polynomial has an empty tuple.  Instances are immutable and hashable.

The module also carries the two small rings the rest of the package evaluates
into: :class:`Eisenstein` for ``Z[sigma]`` with ``sigma**2 == sigma - 1`` (a
primitive sixth root of unity) and :class:`GaussianInt` for ``Z[i]``.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Union

from .errors import NotExactError, ZeroPolynomialError

IntLike = int
Coerce = Union["LaurentPoly", int]


class LaurentPoly:
    """Element of ``Z[q, q^-1]``.

    >>> p = LaurentPoly({0: 1, 1: 1})
    >>> p * p
    LaurentPoly('q^2 + 2*q + 1')
    """

    __slots__ = ("_val", "_c", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        if not terms:
            self._set(0, ())
            return
        items = {int(e): int(c) for e, c in terms.items() if c}
        if not items:
            self._set(0, ())
            return
        lo, hi = min(items), max(items)
        self._set(lo, tuple(items.get(e, 0) for e in range(lo, hi + 1)))

    def _set(self, val: int, coeffs: tuple[int, ...]) -> None:
        self._val = val
        self._c = coeffs
        self._hash = None

    @classmethod
    def from_dense(cls, coeffs: Iterable[int], shift: int = 0) -> "LaurentPoly":
        """Build from coefficients listed from exponent ``shift`` upward."""
        c = list(coeffs)
        lo = 0
        while lo < len(c) and c[lo] == 0:
            lo += 1
        hi = len(c)
        while hi > lo and c[hi - 1] == 0:
            hi -= 1
        out = cls.__new__(cls)
        if lo == hi:
            out._set(0, ())
        else:
            out._set(shift + lo, tuple(c[lo:hi]))
        return out

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls.from_dense((coeff,), exp)

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls.from_dense((c,), 0)

    # --- inspection -------------------------------------------------------

    @property
    def valuation(self) -> int:
        """Lowest exponent.  Raises on the zero polynomial."""
        if not self._c:
            raise ZeroPolynomialError("zero polynomial has no valuation")
        return self._val

    @property
    def degree(self) -> int:
        """Highest exponent.  Raises on the zero polynomial."""
        if not self._c:
            raise ZeroPolynomialError("zero polynomial has no degree")
        return self._val + len(self._c) - 1

    @property
    def dense(self) -> tuple[int, ...]:
        """Coefficients from :attr:`valuation` upward."""
        return self._c

    @property
    def leading(self) -> int:
        if not self._c:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self._c[-1]

    @property
    def trailing(self) -> int:
        """Coefficient of the lowest power present."""
        if not self._c:
            raise ZeroPolynomialError("zero polynomial has no trailing coefficient")
        return self._c[0]

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_polynomial(self) -> bool:
        """True when no negative powers occur."""
        return not self._c or self._val >= 0

    def terms(self) -> dict[int, int]:
        """Sparse view ``{exponent: coefficient}`` with nonzero entries only."""
        return {self._val + i: c for i, c in enumerate(self._c) if c}

    def coeff(self, exp: int) -> int:
        i = exp - self._val
        return self._c[i] if 0 <= i < len(self._c) else 0

    def content(self) -> int:
        """Gcd of the coefficients (0 for the zero polynomial)."""
        return math.gcd(*self._c) if self._c else 0

    # --- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other: Coerce) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Coerce) -> "LaurentPoly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not o._c:
            return self
        if not self._c:
            return o
        lo = min(self._val, o._val)
        hi = max(self.degree, o.degree)
        acc = [0] * (hi - lo + 1)
        for i, c in enumerate(self._c):
            acc[self._val - lo + i] += c
        for i, c in enumerate(o._c):
            acc[o._val - lo + i] += c
        return LaurentPoly.from_dense(acc, lo)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out._set(self._val, tuple(-c for c in self._c))
        return out

    def __sub__(self, other: Coerce) -> "LaurentPoly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Coerce) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: Coerce) -> "LaurentPoly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not self._c or not o._c:
            return ZERO
        a, b = self._c, o._c
        if len(b) == 1:
            k = b[0]
            out = LaurentPoly.__new__(LaurentPoly)
            out._set(self._val + o._val, tuple(k * c for c in a))
            return out
        if len(a) == 1:
            return o * self
        acc = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    acc[i + j] += x * y
        return LaurentPoly.from_dense(acc, self._val + o._val)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            c = self._c[0]
            if c not in (1, -1):
                raise ValueError("negative power of a non-unit monomial")
            return LaurentPoly.monomial(self._val * n, c ** (-n))
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by ``q**n``."""
        if not self._c or n == 0:
            return self
        out = LaurentPoly.__new__(LaurentPoly)
        out._set(self._val + n, self._c)
        return out

    def scale_div(self, k: int) -> "LaurentPoly":
        """Divide every coefficient by the integer ``k`` exactly."""
        if any(c % k for c in self._c):
            raise NotExactError(f"{self} is not divisible by {k}")
        out = LaurentPoly.__new__(LaurentPoly)
        out._set(self._val, tuple(c // k for c in self._c))
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c and (not self._c or self._val == other._val)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._val if self._c else 0, self._c))
        return self._hash

    # --- evaluation ---------------------------------------------------------

    def __call__(self, q):
        """Evaluate at a number (int, Fraction, float or complex)."""
        if not self._c:
            return 0
        acc = 0
        for c in reversed(self._c):
            acc = acc * q + c
        return acc * (q ** self._val) if self._val else acc

    def at_one(self) -> int:
        return sum(self._c)

    # --- formatting -----------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r})"

    def to_json(self) -> dict:
        return poly_to_json(self)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
Q = LaurentPoly.monomial(1)


def q_int(n: int) -> LaurentPoly:
    """Quantum integer ``[n]_q = 1 + q + ... + q^(n-1)`` for ``n >= 0``."""
    if n < 0:
        raise ValueError("q_int expects n >= 0")
    return LaurentPoly.from_dense([1] * n)


# --- normalization and comparison up to q-powers ------------------------------


class Normalized(NamedTuple):
    poly: LaurentPoly
    shift: int
    sign: int


def normalize(p: LaurentPoly, positive: bool = False) -> Normalized:
    """Return ``poly`` with ``p == sign * q**shift * poly`` and valuation 0.

    With ``positive=True`` the leading coefficient of ``poly`` is made
    positive; otherwise ``sign`` is always +1.
    """
    if p.is_zero():
        raise ZeroPolynomialError("cannot normalize the zero polynomial")
    s = p.valuation
    r = p.shift(-s)
    sign = 1
    if positive and r.leading < 0:
        r, sign = -r, -1
    return Normalized(r, s, sign)


def equiv_q(a: LaurentPoly, b: LaurentPoly) -> bool:
    """True iff ``a == q**n * b`` for some integer ``n`` (no sign change)."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.dense == b.dense


def equiv_q_signed(a: LaurentPoly, b: LaurentPoly) -> bool:
    """True iff ``a == +-q**n * b``, i.e. equality up to a unit of the ring."""
    return equiv_q(a, b) or equiv_q(a, -b)


def subst_qinv(p: LaurentPoly) -> LaurentPoly:
    """``p(1/q)``."""
    if p.is_zero():
        return p
    return LaurentPoly.from_dense(reversed(p.dense), -p.degree)


def is_palindromic(p: LaurentPoly) -> bool:
    """Coefficient sequence reads the same both ways (zero is not)."""
    c = p.dense
    return bool(c) and c == c[::-1]


# --- exact division and gcd ----------------------------------------------------


def _divmod_dense(a: list[int], b: tuple[int, ...]) -> tuple[list[int], list[int]]:
    """Long division over Z of dense lists (low to high); exact steps only."""
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    quot = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c == 0:
            continue
        qk, r = divmod(c, lb)
        if r:
            raise NotExactError("quotient is not integral")
        quot[k - db] = qk
        base = k - db
        for j, y in enumerate(b):
            a[base + j] -= qk * y
    return quot, a[:db]


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """``a / b`` when ``b`` divides ``a`` in ``Z[q, q^-1]``; raises otherwise."""
    if b.is_zero():
        raise ZeroPolynomialError("division by the zero polynomial")
    if a.is_zero():
        return ZERO
    quot, rem = _divmod_dense(list(a.dense), b.dense)
    if any(rem):
        raise NotExactError(f"({a}) is not divisible by ({b})")
    return LaurentPoly.from_dense(quot, a.valuation - b.valuation)


def divides(b: LaurentPoly, a: LaurentPoly) -> bool:
    try:
        exact_div(a, b)
    except NotExactError:
        return False
    return True


def _primitive(c: list[int]) -> list[int]:
    g = math.gcd(*c)
    if c[-1] < 0:
        g = -g
    return [x // g for x in c]


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of dense integer lists; result is trimmed."""
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        k = len(a) - 1
        c = a[k]
        a = [x * lb for x in a]
        for j, y in enumerate(b):
            a[k - db + j] -= c * y
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def gcd_primitive(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd in ``Z[q]`` up to units, normalized.

    Powers of ``q`` are units of the Laurent ring and are dropped; the
    result is primitive, has valuation 0 and a positive leading coefficient.
    ``gcd(p, 0)`` is the normalized primitive part of ``p``.
    """
    if a.is_zero() and b.is_zero():
        raise ZeroPolynomialError("gcd of two zero polynomials")
    if a.is_zero():
        a, b = b, a
    x = _primitive(list(a.dense))
    if b.is_zero():
        return LaurentPoly.from_dense(x)
    y = _primitive(list(b.dense))
    if len(x) < len(y):
        x, y = y, x
    while len(y) > 1:
        r = _prem(x, y)
        while r and r[0] == 0:
            r.pop(0)
        x, y = y, (_primitive(r) if r else [])
        if not y:
            break
    if len(y) == 1:
        return ONE
    return LaurentPoly.from_dense(x)


def gcd_many(*polys: LaurentPoly) -> LaurentPoly:
    nz = [p for p in polys if not p.is_zero()]
    if not nz:
        raise ZeroPolynomialError("gcd of zero polynomials")
    g = gcd_primitive(nz[0], ZERO)
    for p in nz[1:]:
        if g == ONE:
            break
        g = gcd_primitive(g, p)
    return g


# --- Z[sigma], sigma a primitive sixth root of unity -----------------------------


class Eisenstein(NamedTuple):
    """``a + b*sigma`` with ``sigma**2 == sigma - 1``."""

    a: int
    b: int

    def __add__(self, o: "Eisenstein") -> "Eisenstein":  # type: ignore[override]
        return Eisenstein(self.a + o.a, self.b + o.b)

    def __sub__(self, o: "Eisenstein") -> "Eisenstein":
        return Eisenstein(self.a - o.a, self.b - o.b)

    def __neg__(self) -> "Eisenstein":
        return Eisenstein(-self.a, -self.b)

    def __mul__(self, o: "Eisenstein") -> "Eisenstein":  # type: ignore[override]
        a, b, c, d = self.a, self.b, o.a, o.b
        return Eisenstein(a * c - b * d, a * d + b * c + b * d)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        """Membership in the six units ``{+-1, +-sigma, +-(sigma-1)}``."""
        return self in _UNITS

    def to_complex(self) -> complex:
        return self.a + self.b * complex(0.5, math.sqrt(3) / 2)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        s = {1: "s", -1: "-s"}.get(self.b, f"{self.b}*s")
        if self.a == 0:
            return s
        return f"{self.a} + {s}" if self.b > 0 else f"{self.a} - {s[1:]}"


# sigma**k for k = 0..5
SIGMA_POWERS = (
    Eisenstein(1, 0),
    Eisenstein(0, 1),
    Eisenstein(-1, 1),
    Eisenstein(-1, 0),
    Eisenstein(0, -1),
    Eisenstein(1, -1),
)
_UNITS = frozenset(SIGMA_POWERS)


def eval_sigma(p: LaurentPoly) -> Eisenstein:
    """Evaluate at the sixth root of unity ``sigma``; exact in ``Z[sigma]``."""
    acc = [0] * 6
    for e, c in p.terms().items():
        acc[e % 6] += c
    a = acc[0] - acc[2] - acc[3] + acc[5]
    b = acc[1] + acc[2] - acc[4] - acc[5]
    return Eisenstein(a, b)


# --- Gaussian integers ---------------------------------------------------------


class GaussianInt(NamedTuple):
    re: int
    im: int

    def __add__(self, o: "GaussianInt") -> "GaussianInt":  # type: ignore[override]
        return GaussianInt(self.re + o.re, self.im + o.im)

    def __sub__(self, o: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re - o.re, self.im - o.im)

    def __mul__(self, o: "GaussianInt") -> "GaussianInt":  # type: ignore[override]
        return GaussianInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def conj(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def divmod(self, o: "GaussianInt") -> tuple["GaussianInt", "GaussianInt"]:
        """Euclidean division with the nearest-integer quotient."""
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("Gaussian division by zero")
        num = self * o.conj()
        qt = GaussianInt(_round_div(num.re, n), _round_div(num.im, n))
        return qt, self - qt * o

    def normalized(self) -> "GaussianInt":
        """The associate with ``re > 0, im >= 0`` (zero maps to zero)."""
        z = self
        for _ in range(4):
            if z.re > 0 and z.im >= 0:
                return z
            z = GaussianInt(-z.im, z.re)
        return z


def _round_div(a: int, n: int) -> int:
    return (2 * a + n) // (2 * n)


def gaussian_gcd(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.normalized()


# --- text and JSON formats -----------------------------------------------------


def format_poly(p: LaurentPoly) -> str:
    """Render in descending powers, e.g. ``q^3 + 2*q^2 + q + 1``."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for e in range(p.degree, p.valuation - 1, -1):
        c = p.coeff(e)
        if not c:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            var = "q" if e == 1 else f"q^{e}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


_TERM = re.compile(r"([+-]?)\s*(\d+)?\s*(\*?\s*q(?:\s*\^\s*(-?\d+))?)?")


def parse_poly(text: str) -> LaurentPoly:
    """Inverse of :func:`format_poly`; tolerant about whitespace."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    terms: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos >= len(s):
            break
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        sign, digits, var, exp = m.groups()
        if not first and not sign:
            raise ValueError(f"missing operator near {s[pos:]!r}")
        c = int(digits) if digits else 1
        if var is None:
            e = 0
        else:
            if digits and not var.lstrip().startswith("*"):
                raise ValueError(f"missing '*' near {s[pos:]!r}")
            e = int(exp) if exp is not None else 1
        if sign == "-":
            c = -c
        terms[e] = terms.get(e, 0) + c
        pos = m.end()
        first = False
    return LaurentPoly(terms)


def poly_to_json(p: LaurentPoly) -> dict:
    return {"coeffs": {str(e): str(c) for e, c in sorted(p.terms().items())}}


def poly_from_json(obj: dict | str) -> LaurentPoly:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return LaurentPoly({int(e): int(c) for e, c in obj["coeffs"].items()})


def eval_exact(p: LaurentPoly, q: Fraction | int) -> Fraction:
    return Fraction(p(Fraction(q)))

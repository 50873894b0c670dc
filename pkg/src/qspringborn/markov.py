"""Rational Markov tree, its q-deformation, fence posets and companions.

The tree starts from the triple ``(0/1, 2/5, 1/2)``; each triple
``(x0, x1, x2)`` with ``x1 = x0 (+)_S x2`` has the two children
``(x0, x0 (+)_S x1, x1)`` and ``(x1, x1 (+)_S x2, x2)``.  Triples are always
listed in increasing order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal

from .errors import IdentityViolation, PreconditionError
from .laurent import ONE, Q, LaurentPoly, equiv_q, q_int
from .qrat import Frac, QRational, cf_value, continued_fraction, quantize
from .springborn import regularity, springborn_diff_raw, springborn_sum

MAX_DEPTH = 8
ROOT = (Frac(0, 1), Frac(2, 5), Frac(1, 2))
Q3 = q_int(3)


@dataclass(frozen=True)
class MarkovNode:
    triple: tuple[Frac, Frac, Frac]
    depth: int
    children: tuple["MarkovNode", ...] = ()

    @property
    def middle(self) -> Frac:
        return self.triple[1]

    def q_sharp(self) -> tuple[QRational, ...]:
        return tuple(quantize(x, "sharp") for x in self.triple)

    def q_flat(self) -> tuple[QRational, ...]:
        return tuple(quantize(x, "flat") for x in self.triple)


def _grow(triple: tuple[Frac, Frac, Frac], depth: int, max_depth: int) -> MarkovNode:
    x0, x1, x2 = triple
    a0, b0 = x0.num, x0.den
    a1, b1 = x1.num, x1.den
    a2, b2 = x2.num, x2.den
    if b1 * b1 + b2 * b2 + b0 * b0 != 3 * b0 * b1 * b2:
        raise IdentityViolation(f"Markov equation fails at {triple}")
    if b0 != b1 * a2 - a1 * b2 or b2 != b0 * a1 - a0 * b1:
        raise IdentityViolation(f"Markov linear relations fail at {triple}")
    if depth == max_depth:
        return MarkovNode(triple, depth)
    kids = []
    for left, right in ((x0, x1), (x1, x2)):
        if not regularity(left, right).inner:
            raise IdentityViolation(f"child pair {left}, {right} is not inner regular")
        kids.append(_grow((left, springborn_sum(left, right), right), depth + 1, max_depth))
    return MarkovNode(triple, depth, tuple(kids))


def markov_tree(depth: int) -> MarkovNode:
    """Tree of triples down to ``depth`` levels (the root triple is level 1)."""
    if not 1 <= depth <= MAX_DEPTH:
        raise PreconditionError(f"depth must lie in 1..{MAX_DEPTH}")
    return _grow(ROOT, 1, depth)


def iter_nodes(root: MarkovNode) -> Iterator[MarkovNode]:
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def markov_fractions(depth: int) -> list[Frac]:
    """Distinct fractions of the tree, sorted by ``(den, num)``."""
    seen = {x for n in iter_nodes(markov_tree(depth)) for x in n.triple}
    return sorted(seen, key=Frac.sort_key)


# --- q-deformed Markov relations ---------------------------------------------------------


def _zero_flat() -> tuple[LaurentPoly, LaurentPoly]:
    # [0]b rescaled so the denominator is 1: (q - 1)/q = (1 - q^-1)/1
    return ONE - LaurentPoly.monomial(-1), ONE


def _flat_parts(x: Frac) -> tuple[LaurentPoly, LaurentPoly]:
    if x == Frac(0, 1):
        return _zero_flat()
    r = quantize(x, "flat")
    return r.num, r.den


def _eps(As: LaurentPoly, Bs: LaurentPoly, Af: LaurentPoly, Bf: LaurentPoly) -> int:
    det = As * Bf - Af * Bs
    e = det.valuation
    if det != (ONE - Q).shift(e):
        raise IdentityViolation(f"determinant {det} is not q^e (1 - q)")
    return e


def check_q_markov(node: MarkovNode | tuple[Frac, Frac, Frac]) -> dict[str, bool]:
    """Evaluate each q-Markov relation on a triple.

    For ``x0 = 0/1`` the left version is taken as ``(1 - q^-1)/1``, which is
    the scaling the relations need.
    """
    triple = node.triple if isinstance(node, MarkovNode) else node
    x0, x1, x2 = (Frac.of(x) for x in triple)
    s0, s1, s2 = (quantize(x, "sharp") for x in (x0, x1, x2))
    A0, B0 = s0.num, s0.den
    A1, B1 = s1.num, s1.den
    A2, B2 = s2.num, s2.den
    A0f, B0f = _flat_parts(x0)
    A1f, B1f = _flat_parts(x1)
    A2f, B2f = _flat_parts(x2)
    e0 = _eps(A0, B0, A0f, B0f)
    e1 = _eps(A1, B1, A1f, B1f)
    e2 = _eps(A2, B2, A2f, B2f)
    q3 = LaurentPoly.monomial(3)
    r0_lhs = B1 * B1f + B2 * B2f * LaurentPoly.monomial(e0 + 3) + B0f * (B1 * A2 - q3 * A1 * B2)
    return {
        "r0": r0_lhs == Q3 * B1 * B2 * B0f,
        "r1": equiv_q(B0, B1 * A2 - A1 * B2),
        "r1_flat": equiv_q(B0f, B1 * A2f - A1 * B2f) and equiv_q(B0f, B1f * A2 - A1f * B2),
        "r2": equiv_q(B2, A1 * B0 - B1 * A0),
        "r2_flat": equiv_q(B2f, A1f * B0 - B1f * A0) and equiv_q(B2f, A1 * B0f - B1 * A0f),
        "eps": e1 == e0 + e2 + 3,
        "fence_sharp": B1 == Q3 * B0 * B2 - B0 * A2 + q3 * A0 * B2,
        "fence_flat": B1f == Q3 * B0 * B2f - B0 * A2f + q3 * A0 * B2f
        and B1f == Q3 * B0f * B2 - B0f * A2 + q3 * A0f * B2,
    }


# --- continued fractions of Markov fractions ---------------------------------------------


def canonical_markov_cf(x: Frac) -> list[int]:
    """``[0, a1, ..., an]`` with ``n`` even, for ``0 < x < 1``; the special
    cases are ``0 -> [0]`` and ``1/2 -> [0, 2]``."""
    x = Frac.of(x)
    if x == Frac(0, 1):
        return [0]
    if x == Frac(1, 2):
        return [0, 2]
    if not (Frac(0, 1) < x < Frac(1, 1)):
        raise PreconditionError("Markov fractions lie in [0, 1/2]")
    cf = continued_fraction(x)
    if len(cf) % 2 == 0:  # odd number of entries after the leading 0
        cf[-1:] = [cf[-1] - 1, 1]
    return cf


def concatenate_cf(left: list[int], right: list[int]) -> list[int]:
    """Expansion of ``x0 (+)_S x2`` from those of its Markov parents."""
    beta = right[1:]
    return [0, *left[1:], 2, 1, beta[0] - 1, *beta[1:]]


def check_markov_cf(node: MarkovNode) -> bool:
    x0, x1, x2 = node.triple
    cat = concatenate_cf(canonical_markov_cf(x0), canonical_markov_cf(x2))
    cf = canonical_markov_cf(x1)
    body = cf[1:]
    return cf_value(cat) == x1 and body == body[::-1] and body[0] == 2 and body[-1] == 2


# --- fence posets -------------------------------------------------------------------------


def fence_sequence(x: Frac) -> list[int]:
    """Segment lengths ``(0, a1 - 1, a2, ..., a_{n-1}, an - 1)`` for ``x = [0, a1, ..., an]``."""
    cf = canonical_markov_cf(x) if Frac(0, 1) < x <= Frac(1, 2) else continued_fraction(x)
    if cf[0] != 0 or len(cf) < 2:
        raise PreconditionError("fence posets are defined for 0 < x < 1")
    a = cf[1:]
    if len(a) == 1:
        return [0, a[0] - 2]
    return [0, a[0] - 1, *a[1:-1], a[-1] - 1]


def fence_edges(seq: list[int]) -> list[bool]:
    """Edge directions along the chain: ``True`` when the next vertex is higher.

    Segments alternate up, down, up, ... starting with the first entry.
    """
    out: list[bool] = []
    for i, k in enumerate(seq):
        out.extend([i % 2 == 0] * k)
    return out


def _ideal_ok(mask: int, ups: list[bool]) -> bool:
    for i, up in enumerate(ups):
        lo, hi = (i, i + 1) if up else (i + 1, i)
        if mask >> hi & 1 and not mask >> lo & 1:
            return False
    return True


def order_ideals_bruteforce(ups: list[bool], last_twice: bool = False) -> LaurentPoly:
    """Enumerate all subsets of the chain; practical up to ~20 vertices."""
    n = len(ups) + 1
    counts: dict[int, int] = {}
    for mask in range(1 << n):
        if _ideal_ok(mask, ups):
            w = bin(mask).count("1") + (last_twice and mask >> (n - 1) & 1)
            counts[w] = counts.get(w, 0) + 1
    return LaurentPoly(counts)


def order_ideals_transfer(ups: list[bool], last_twice: bool = False) -> LaurentPoly:
    """Transfer-matrix count along the chain, linear in the number of vertices."""
    out_, in_ = ONE, Q  # vertex 0 outside / inside the ideal
    n = len(ups) + 1
    for i, up in enumerate(ups):
        w = Q * Q if last_twice and i + 1 == n - 1 else Q
        if up:  # v_i < v_{i+1}: v_{i+1} in I forces v_i in I
            out_, in_ = out_ + in_, in_ * w
        else:  # v_i > v_{i+1}: v_i in I forces v_{i+1} in I
            out_, in_ = out_, (out_ + in_) * w
    if last_twice and n == 1:
        in_ = Q * Q
    return out_ + in_


def fence_genfun(x: Frac | str, last_twice: bool = False, method: Literal["auto", "enumerate", "transfer"] = "auto") -> LaurentPoly:
    """Rank generating function of order ideals of the fence poset of ``x``."""
    ups = fence_edges(fence_sequence(Frac.of(x)))
    if method == "enumerate" or (method == "auto" and len(ups) < 16):
        return order_ideals_bruteforce(ups, last_twice)
    return order_ideals_transfer(ups, last_twice)


def check_fence(x: Frac | str) -> bool:
    """Plain count gives the right denominator; counting the last vertex
    twice gives the left denominator."""
    x = Frac.of(x)
    return fence_genfun(x) == quantize(x, "sharp").den and fence_genfun(x, True) == quantize(x, "flat").den


# --- companions -----------------------------------------------------------------------------


def companion_u(b: int, k: int) -> int:
    """``u_0 = 0, u_1 = 1, u_{k+1} = 3 b u_k - u_{k-1}``."""
    if k < 0:
        raise PreconditionError("k must be >= 0")
    u0, u1 = 0, 1
    for _ in range(k):
        u0, u1 = u1, 3 * b * u1 - u0
    return u0


def companion_pair(x: Frac, k: int, sign: Literal[1, -1] = 1) -> tuple[int, int]:
    """Numerator and denominator of ``a/b + sign * u_{k-1}/u_k`` over ``b u_k``."""
    if k < 1:
        raise PreconditionError("companions are indexed from k = 1")
    a, b = x.num, x.den
    uk, ukm1 = companion_u(b, k), companion_u(b, k - 1)
    return a * uk + sign * b * ukm1, b * uk


def companion(x: Frac | str, k: int, sign: Literal[1, -1] = 1) -> Frac:
    return Frac(*companion_pair(Frac.of(x), k, sign))


def companion_springborn_check(x: Frac | str, k: int, l: int, reduced: bool = False) -> bool:
    """``c_k (-)_S c_l == c_{k+l}`` for right companions.

    By default the companions enter the Springborn difference written over
    ``b u_k`` as in their definition; ``reduced=True`` uses lowest terms
    instead, for which the identity only holds when ``b == 1``.
    """
    x = Frac.of(x)
    if k == l:
        raise PreconditionError("k and l must differ (the difference is 0/0)")
    if reduced:
        ck, cl = companion(x, k), companion(x, l)
        lhs = Frac(*springborn_diff_raw(ck.num, ck.den, cl.num, cl.den))
    else:
        lhs = Frac(*springborn_diff_raw(*companion_pair(x, k), *companion_pair(x, l)))
    return lhs == companion(x, k + l)


def companion_identity_check(b: int, kmax: int = 12) -> bool:
    """``u_k^2 - u_l^2 == u_{k-l} u_{k+l}`` for ``0 <= l <= k <= kmax``."""
    u = [companion_u(b, i) for i in range(2 * kmax + 1)]
    return all(u[k] ** 2 - u[l] ** 2 == u[k - l] * u[k + l] for k in range(kmax + 1) for l in range(k + 1))


def first_markov_fractions(count: int) -> list[Frac]:
    depth = 1
    while True:
        fr = markov_fractions(depth)
        if len(fr) >= count or depth == MAX_DEPTH:
            return fr[:count]
        depth += 1


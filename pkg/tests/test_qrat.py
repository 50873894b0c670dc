from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import fractions
from qspringborn.errors import PreconditionError
from qspringborn.laurent import ONE, Q, ZERO, LaurentPoly, gcd_primitive, parse_poly, subst_qinv
from qspringborn.qrat import (
    INF,
    L_Q,
    N_Q,
    S_Q,
    T_Q,
    Frac,
    ModularWord,
    QRational,
    apply,
    cf_value,
    continued_fraction_even,
    epsilon,
    epsilon_from_cf,
    farey_fractions,
    jump,
    matrix_quantize,
    quantize,
    reduce_ratio,
    transition_map,
    word_for,
)


def P(text):
    return parse_poly(text)


def qr(num, den):
    return QRational(P(num), P(den))


# --- fractions and words -------------------------------------------------------------


@pytest.mark.parametrize(
    "text, num, den",
    [("-3/6", -1, 2), ("3/-6", -1, 2), ("4", 4, 1), ("inf", 1, 0), ("-1/0", 1, 0), (" 2 / 4 ", 1, 2)],
)
def test_parse(text, num, den):
    x = Frac.parse(text)
    assert (x.num, x.den) == (num, den)


@pytest.mark.parametrize("text", ["0/0", "a/b", "1/2/3", ""])
def test_parse_rejects(text):
    with pytest.raises(PreconditionError):
        Frac.parse(text)


def test_ordering_puts_infinity_last():
    xs = [INF, Frac(1, 2), Frac(-3, 1), Frac(0, 1)]
    assert sorted(xs) == [Frac(-3, 1), Frac(0, 1), Frac(1, 2), INF]
    assert sorted(xs, key=Frac.sort_key) == [INF, Frac(-3, 1), Frac(0, 1), Frac(1, 2)]


def test_farey_fractions_counts():
    # Farey sequence of order 5 has 11 terms on [0, 1]
    assert len(farey_fractions(5, 0, 1)) == 11


@pytest.mark.parametrize(
    "x, cf",
    [("7/5", [1, 2, 1, 1]), ("1/2", [0, 2]), ("0", [-1, 1]), ("-3/2", [-2, 2]), ("5", [4, 1])],
)
def test_even_continued_fraction(x, cf):
    assert continued_fraction_even(Frac.parse(x)) == cf
    assert cf_value(cf) == Frac.parse(x)


@given(fractions())
def test_even_expansion_round_trip(x):
    cf = continued_fraction_even(x)
    assert len(cf) % 2 == 0 and all(a >= 1 for a in cf[1:])
    assert cf_value(cf) == x


def test_words():
    assert word_for(INF).letters == ""
    assert word_for(Frac(-2, 1)).act_on_infinity() == Frac(-2, 1)
    assert word_for(Frac(1, 2)).act_on_infinity() == Frac(1, 2)
    assert ModularWord("N").determinant() == -1
    with pytest.raises(PreconditionError):
        ModularWord("TX")


@given(fractions(allow_inf=True))
def test_word_reaches_x(x):
    w = word_for(x)
    assert w.act_on_infinity() == x and w.determinant() == 1


def test_generator_matrices():
    assert matrix_quantize("T") == T_Q
    ss = matrix_quantize("SS")
    assert ss.b == ZERO and ss.c == ZERO and ss.a == ss.d
    assert L_Q.entries() == (Q, ZERO, Q, ONE)
    assert matrix_quantize("TST") == L_Q
    assert N_Q.at_one() == (-1, 0, 0, 1)


# --- quantization: reference examples ----------------------------------------------------


def test_reference_examples():
    assert quantize("1/2", "sharp").same_function(qr("q", "1 + q"))
    assert quantize("1/2", "flat").same_function(qr("q^2", "1 + q^2"))
    assert quantize("7/5", "sharp").same_function(qr("q^4 + 2*q^3 + 2*q^2 + q + 1", "q^3 + 2*q^2 + q + 1"))
    assert quantize("7/5", "flat").same_function(
        qr("q^5 + q^4 + 2*q^3 + q^2 + q + 1", "q^4 + q^3 + q^2 + q + 1")
    )


@pytest.mark.parametrize("n", range(1, 11))
def test_integers(n):
    sharp = quantize(Frac(n, 1), "sharp")
    flat = quantize(Frac(n, 1), "flat")
    assert sharp.num == LaurentPoly.from_dense([1] * n) and sharp.den == ONE
    assert flat.num == LaurentPoly.from_dense([1] * (n - 1) + [0, 1]) and flat.den == ONE


def test_infinity_and_zero():
    assert quantize(INF, "sharp").ratio == (ONE, ZERO)
    assert quantize(INF, "flat").ratio == (ONE, ONE - Q)
    assert quantize("0", "sharp").ratio == (ZERO, ONE)
    assert quantize("0", "flat").ratio == (Q - ONE, Q)
    assert quantize("1", "flat").ratio == (Q, ONE)


@given(fractions(allow_inf=True))
def test_normal_form(x):
    for side in ("sharp", "flat"):
        r = quantize(x, side)
        assert r.at_one() == x
        if not r.num.is_zero() and not r.den.is_zero():
            assert gcd_primitive(r.num, r.den) == ONE
        assert r.den.is_zero() or r.den.trailing > 0
        vals = [p.valuation for p in r.ratio if not p.is_zero()]
        assert min(vals) == 0


@given(fractions(max_num=20, max_den=15))
def test_positive_fractions_have_positive_coefficients(x):
    if x.num <= 0:
        return
    for side in ("sharp", "flat"):
        r = quantize(x, side)
        assert all(c >= 0 for c in r.num.dense + r.den.dense)


# --- equivariance, duality --------------------------------------------------------------


@given(fractions(max_num=15, max_den=15))
def test_translation_equivariance(x):
    for side in ("sharp", "flat"):
        r = quantize(x, side)
        shifted = quantize(Frac(x.num + x.den, x.den), side)
        assert shifted.same_function(QRational(Q * r.num + r.den, r.den))
        assert apply(T_Q, r).same_function(shifted)


@given(fractions(max_num=15, max_den=15))
def test_inversion_equivariance(x):
    if x.num == 0:
        return
    for side in ("sharp", "flat"):
        r = quantize(x, side)
        inv = quantize(Frac(-x.den, x.num), side)
        assert inv.same_function(QRational(-r.den, Q * r.num))
        assert apply(S_Q, r).same_function(inv)


@given(fractions(max_num=15, max_den=15))
def test_reflection_swaps_sides(x):
    got = apply(N_Q, quantize(x, "sharp"))
    assert got.side == "flat"
    assert got.same_function(quantize(Frac(-x.num, x.den), "flat"))


def test_apply_examples():
    assert apply(T_Q, quantize("1")).same_function(quantize("2"))
    assert apply(S_Q, quantize("1")).same_function(quantize("-1"))
    assert quantize("-1").ratio == (-ONE, Q)


def _g_inverse(r):
    # g_{1/q} written through g_q and q -> 1/q on both sides
    n, d = transition_map((subst_qinv(r[0]), subst_qinv(r[1])))
    return reduce_ratio(subst_qinv(n), subst_qinv(d))


@given(fractions(max_num=20, max_den=20, allow_inf=True))
@settings(max_examples=150)
def test_transition_map_duality(x):
    s, f = quantize(x, "sharp"), quantize(x, "flat")
    assert transition_map(s.ratio) == reduce_ratio(subst_qinv(f.num), subst_qinv(f.den))
    assert _g_inverse(transition_map(s.ratio)) == s.ratio


def test_transition_map_examples():
    half = quantize("1/2", "sharp")
    assert transition_map(half.ratio) == (ONE, ONE + Q * Q)
    # 1 is not fixed: g_q(1) = 1/q, which is [1]b at 1/q
    assert transition_map((ONE, ONE)) == (ONE, Q)
    assert transition_map(quantize("1", "sharp").ratio) == (ONE, Q)


@given(fractions(max_num=20, max_den=20, allow_inf=True))
def test_transition_map_numeric(x):
    q = 0.6
    g = lambda v: (1 + (v - 1) * q) / (1 + (q - 1) * v)
    s = quantize(x, "sharp")(q)
    if s == float("inf"):
        return
    assert g(s) == pytest.approx(quantize(x, "flat")(1 / q), rel=1e-9, abs=1e-9)


# --- epsilon and jumps -----------------------------------------------------------------------


def test_epsilon_examples():
    assert epsilon("1/2") == 1
    assert epsilon(INF) == 0
    for n in range(1, 8):
        assert epsilon(Frac(n, 1)) == n - 1


@given(fractions())
def test_epsilon_matches_continued_fraction_off_nonpositive_integers(x):
    if x.den == 1 and x.num <= 0:
        return
    assert epsilon(x) == epsilon_from_cf(x)


def test_epsilon_on_nonpositive_integers():
    # the operational definition differs from the cf closed form by one here
    assert [epsilon(Frac(-n, 1)) for n in range(4)] == [0, 1, 2, 3]
    assert [epsilon_from_cf(Frac(-n, 1)) for n in range(4)] == [1, 2, 3, 4]


def test_jump_examples():
    assert jump("1/2") == (Q - Q * Q, (ONE + Q) * (ONE + Q * Q))
    assert jump("1") == (ONE - Q, ONE)
    assert jump("0") == (ONE - Q, Q)
    with pytest.raises(PreconditionError):
        jump(INF)


@given(fractions())
def test_jump_is_the_gap(x):
    for q in (Fraction(1, 3), Fraction(7, 10)):
        s, f = quantize(x, "sharp"), quantize(x, "flat")
        from qspringborn.laurent import eval_exact

        exact = eval_exact(s.num, q) / eval_exact(s.den, q) - eval_exact(f.num, q) / eval_exact(f.den, q)
        j = jump(x)
        assert exact == eval_exact(j.num, q) / eval_exact(j.den, q)
        assert exact > 0

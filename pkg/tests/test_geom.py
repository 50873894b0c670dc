import itertools
import math
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from conftest import fractions
from qspringborn.errors import PreconditionError
from qspringborn.geom import (
    Disk,
    common_tangents,
    disk_of,
    fractions_between,
    fundamental_domain,
    gap_limit,
    gap_partial_sum,
    homothety_numeric,
    jump_numeric,
    modular_surface_stats,
    render_svg,
    sqrt2_convergents,
    word_matrix_numeric,
)
from qspringborn.qrat import INF, Frac, farey_fractions, jump, matrix_quantize, quantize, word_for
from qspringborn.springborn import regularity, springborn_diff, springborn_sum

F = Frac.parse
DATA = Path(__file__).parent / "data"
SVG = "{http://www.w3.org/2000/svg}"


# --- disks -------------------------------------------------------------------------------------


def test_disk_examples():
    q = 0.45
    d = disk_of("1/2", q)
    assert d.left == pytest.approx(q * q / (1 + q * q), abs=1e-15)
    assert d.right == pytest.approx(q / (1 + q), abs=1e-15)
    assert d.radius == pytest.approx((d.right - d.left) / 2)
    d = disk_of(INF, q)
    assert d.is_halfplane and d.left == pytest.approx(1 / 0.55)
    d = disk_of("0", q)
    assert d.left == pytest.approx((q - 1) / q) and d.right == 0


def test_disk_rejects_bad_q():
    for q in (0, -1, 1, math.inf):
        with pytest.raises(PreconditionError):
            disk_of("1/2", q)


@given(fractions(max_num=20, max_den=20), st.sampled_from([0.3, 0.45, 0.7]))
def test_radius_matches_the_jump(x, q):
    d = disk_of(x, q)
    assert d.left < d.right
    assert 2 * d.radius == pytest.approx(jump(x)(q), rel=1e-9)
    assert 2 * d.radius == pytest.approx(jump_numeric(x, q), rel=1e-9)


@given(fractions(max_num=20, max_den=20), st.sampled_from([1.5, 2.0, 3.0]))
def test_q_above_one_uses_the_duality(x, q):
    d = disk_of(x, q)
    vals = sorted([quantize(x, "sharp")(q), quantize(x, "flat")(q)])
    assert d.left == pytest.approx(vals[0], rel=1e-9, abs=1e-12)
    assert d.right == pytest.approx(vals[1], rel=1e-9, abs=1e-12)


@given(fractions(max_num=30, max_den=30, allow_inf=True))
@settings(max_examples=60)
def test_closed_form_powers_match_the_symbolic_matrix(x):
    q = 0.6
    (a, b, c, d), det = word_matrix_numeric(x, q)
    m = matrix_quantize(word_for(x))
    # the symbolic matrix is normalized by a monomial, so compare ratios
    ref = [p(q) for p in m.entries()]
    k = next(i for i, v in enumerate(ref) if abs(v) > 1e-9)
    scale = (a, b, c, d)[k] / ref[k]
    assert [v * scale for v in ref] == pytest.approx([a, b, c, d], rel=1e-9, abs=1e-12)
    assert a * d - b * c == pytest.approx(det, rel=1e-9)


def test_disjoint_and_well_ordered():
    q = 0.45
    xs = sorted(farey_fractions(12, -2, 2))
    disks = [disk_of(x, q) for x in xs] + [disk_of(INF, q)]
    for d1, d2 in zip(disks, disks[1:]):
        assert d1.right < d2.left


# --- homothety centres -------------------------------------------------------------------------


def test_homothety_examples():
    q = 0.45
    d0, d1, dh = disk_of("0", q), disk_of("1", q), disk_of("1/2", q)
    assert homothety_numeric(d0, d1, "inner") == pytest.approx(q / 1.45, abs=1e-12)
    assert homothety_numeric(d0, dh, "outer") == pytest.approx(quantize("2/3", "flat")(q), abs=1e-12)
    a, b = Disk(F("0"), 0.0, 1.0), Disk(F("1"), 2.0, 3.0)
    assert homothety_numeric(a, b, "outer") == math.inf
    with pytest.raises(PreconditionError):
        homothety_numeric(Disk(F("0"), 0.0, 2.0), Disk(F("1"), 1.0, 3.0), "inner")
    with pytest.raises(PreconditionError):
        homothety_numeric(d0, d1, "middle")


def test_homothety_with_the_half_plane():
    q = 0.45
    for x in ("1/3", "-2/5"):
        d, h = disk_of(x, q), disk_of(INF, q)
        assert homothety_numeric(d, h, "inner") == pytest.approx(quantize(x, "sharp")(q))
        assert homothety_numeric(h, d, "outer") == pytest.approx(quantize(x, "flat")(q))


@pytest.mark.parametrize("q", [0.3, 0.45, 0.7])
def test_centres_match_quantized_springborn(q):
    xs = sorted(farey_fractions(6, -2, 2), key=Frac.sort_key)
    for x, y in itertools.combinations(xs, 2):
        reg = regularity(x, y)
        d1, d2 = disk_of(x, q), disk_of(y, q)
        if reg.inner:
            got = homothety_numeric(d1, d2, "inner")
            assert got == pytest.approx(quantize(springborn_sum(x, y), "sharp")(q), abs=1e-9)
        if reg.outer:
            got = homothety_numeric(d1, d2, "outer")
            want = quantize(springborn_diff(x, y), "flat")(q)
            assert got == pytest.approx(want, abs=1e-9, rel=1e-9)


@pytest.mark.parametrize("mode", ["inner", "outer"])
def test_tangents_touch_both_disks(mode):
    q = 0.45
    d1, d2 = disk_of("0", q), disk_of("1", q)
    h = homothety_numeric(d1, d2, mode)
    for line in common_tangents(d1, d2, mode):
        assert line.distance((h, 0.0)) < 1e-9
        assert line.distance((d1.center, 0.0)) == pytest.approx(d1.radius, abs=1e-9)
        assert line.distance((d2.center, 0.0)) == pytest.approx(d2.radius, abs=1e-9)


# --- fundamental domain and surface --------------------------------------------------------------


def test_classical_limit():
    fd = fundamental_domain(1.0)
    assert fd.i_vertex == 1j and fd.sigma == complex(0.5, math.sqrt(3) / 2)
    assert fd.p1 == math.inf and fd.unit_circle == (0.0, 1.0)


@pytest.mark.parametrize("q", [0.3, 0.45, 0.7, 0.95])
def test_fundamental_domain_circles(q):
    fd = fundamental_domain(q)
    k = q * q - q + 1

    def on(eq, z):
        return abs(eq(z.real, z.imag)) < 1e-12

    unit = lambda x, y: (x - (q - 1) / q) ** 2 + y**2 - k / q**2
    imag = lambda x, y: (x - 1 / (1 - q)) ** 2 + y**2 - k / (q * (1 - q) ** 2)
    crit = lambda x, y: (x - 1 / (1 - q)) ** 2 + y**2 - k / (1 - q) ** 2
    assert on(unit, fd.i_vertex) and on(unit, fd.sigma)
    assert on(imag, fd.i_vertex) and on(imag, complex(fd.p2))
    assert on(crit, fd.sigma) and on(crit, complex(fd.p1))
    assert fd.i_vertex == pytest.approx(1j / math.sqrt(q))


@pytest.mark.parametrize("q", [0.3, 0.45, 0.7])
def test_circles_are_fixed_by_the_reflections(q):
    fd = fundamental_domain(q)
    maps = (
        (fd.unit_circle, lambda z: ((q - 1) * z.conjugate() + 1) / (q * z.conjugate() + 1 - q)),
        (fd.imaginary_axis, lambda z: (-z.conjugate() + 1 - 1 / q) / ((q - 1) * z.conjugate() + 1)),
        (fd.critical_axis, lambda z: (-z.conjugate() + q) / ((q - 1) * z.conjugate() + 1)),
    )
    for circ, f in maps:
        for t in (0.2, 1.0, 2.5):
            z = circ.center + circ.radius * complex(math.cos(t), math.sin(t))
            assert abs(f(z) - z) < 1e-12


@pytest.mark.parametrize("q", [0.3, 0.45, 0.7])
def test_funnel_geodesic_is_orthogonal(q):
    fd = fundamental_domain(q)
    x0 = fd.funnel_geodesic
    for circ in (fd.imaginary_axis, fd.critical_axis):
        assert abs((x0 - circ.center) / circ.radius) < 1e-10


def test_surface_stats():
    assert modular_surface_stats(1) == (0.0, pytest.approx(math.pi / 3, abs=1e-12))
    assert modular_surface_stats(0.45)[0] == pytest.approx(math.log(1 / 0.45))
    for q in (0.3, 0.45, 0.7):
        a, b = modular_surface_stats(q), modular_surface_stats(1 / q)
        assert a == pytest.approx(b, abs=1e-12)


@pytest.mark.parametrize("q", [0.3, 0.45, 0.7, 0.9])
def test_area_against_quadrature(q):
    # hyperbolic area of the region above C1/C2 and below the image of C2 under S_q
    k = q * q - q + 1
    c1, r1 = (q - 1) / q, math.sqrt(k) / q
    c2, r2 = 1 / (1 - q), math.sqrt(k) / (1 - q)
    r3 = math.sqrt(k) / (q * (1 - q))

    def y(x, c, r):
        return math.sqrt(max(r * r - (x - c) ** 2, 0.0))

    left = quad(lambda x: 1 / y(x, c1, r1) - 1 / y(x, c2, r3), -1 / (2 * q), 0.5)[0]
    right = quad(lambda x: 1 / y(x, c2, r2) - 1 / y(x, c2, r3), 0.5, c2)[0]
    assert left + right == pytest.approx(modular_surface_stats(q)[1], abs=1e-8)


# --- gap sums -------------------------------------------------------------------------------------


def test_gap_sum_examples():
    assert gap_partial_sum("0", "1", 0.45, 1) == 0
    assert list(fractions_between(F("0"), F("1"), 1)) == []
    with pytest.raises(PreconditionError):
        gap_partial_sum("1", "0", 0.45, 5)


def test_gap_sum_is_monotone_and_bounded():
    q = 0.45
    prev = 0.0
    for m in (5, 10, 20, 40, 80):
        s = gap_partial_sum("0", "1", q, m)
        assert prev <= s <= gap_limit("0", "1", q)
        prev = s
    # truncation at den <= 80 leaves about 1e-2
    assert gap_limit("0", "1", q) - prev < 1.5e-2


def test_gap_limit_on_the_half_line():
    q = 0.45
    assert gap_limit("1", INF, q) == pytest.approx(q / (1 - q))
    assert gap_partial_sum("1", INF, q, 100) < q / (1 - q)


def test_sqrt2_convergents():
    cs = sqrt2_convergents(11)
    assert [str(c) for c in cs[:4]] == ["1/1", "3/2", "7/5", "17/12"]
    big = next(c for c in cs if c.den >= 1000)
    assert abs(quantize(big, "sharp")(0.45) - quantize(big, "flat")(0.45)) < 1e-8


# --- SVG --------------------------------------------------------------------------------------------


def test_default_svg_matches_golden():
    assert render_svg(0.45) == (DATA / "disks_q045_default.svg").read_text()


def test_svg_is_deterministic_and_parses():
    a = render_svg(0.45, -1, 2, 6, tangents=(F("0"), F("1")), domain=True)
    assert a == render_svg(0.45, -1, 2, 6, tangents=(F("0"), F("1")), domain=True)
    root = ET.fromstring(a)
    assert root.tag == SVG + "svg"
    labels = {c.get("data-label") for c in root.iter(SVG + "circle")}
    assert {"0/1", "1/2", "-1/1"} <= labels
    assert len(list(root.iter(SVG + "path"))) == 3


def test_empty_range_is_a_valid_document():
    root = ET.fromstring(render_svg(0.45, 2, 2, 5))
    assert root.tag == SVG + "svg"
    assert not list(root.iter(SVG + "circle"))


def test_tangent_overlay_passes_through_centres():
    q = 0.45
    svg = ET.fromstring(render_svg(q, -1, 2, 4, tangents=(F("0"), F("1"))))
    width = float(svg.get("width"))
    # recover the affine map from the axis line and a known disk
    axis = next(svg.iter(SVG + "line"))
    y_axis = float(axis.get("y1"))
    circles = {c.get("data-label"): c for c in svg.iter(SVG + "circle")}
    d0 = disk_of("0", q)
    c0 = circles["0/1"]
    scale = float(c0.get("r")) / d0.radius
    x_off = float(c0.get("cx")) - d0.center * scale
    for line in svg.iter(SVG + "line"):
        mode = line.get("data-mode")
        if mode is None:
            continue
        h = homothety_numeric(d0, disk_of("1", q), mode)
        hx = x_off + h * scale
        x1, y1, x2, y2 = (float(line.get(k)) for k in ("x1", "y1", "x2", "y2"))
        # distance from the centre (hx, y_axis) to the drawn segment's line, back in plane units
        num = abs((x2 - x1) * (y1 - y_axis) - (x1 - hx) * (y2 - y1))
        dist = num / math.hypot(x2 - x1, y2 - y1) / scale
        assert dist < 1e-6
    assert width == 800

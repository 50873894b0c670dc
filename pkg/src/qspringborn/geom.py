"""Numeric geometry of q-deformed rationals for real ``q``.

Each extended rational ``x`` owns the disk on the real axis spanned by
``[x]b(q)`` and ``[x]#(q)``; for ``x = inf`` this is the half-plane right of
``1/(1 - q)``.  Everything here works in floating point.  Exact questions are
answered in :mod:`qrat` and :mod:`springborn`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, NamedTuple

from .errors import PreconditionError
from .qrat import INF, Frac, continued_fraction_even, farey_fractions, quantize

Mode = Literal["inner", "outer"]


def _check_q(q: float) -> float:
    q = float(q)
    if not q > 0 or q == 1 or not math.isfinite(q):
        raise PreconditionError(f"q must be positive and different from 1, got {q}")
    return q


class Disk(NamedTuple):
    """``left = [x]b(q)`` and ``right = [x]#(q)`` for ``q < 1`` (reordered
    for ``q > 1``); ``right`` is ``inf`` for the half-plane at infinity."""

    label: Frac
    left: float
    right: float

    @property
    def is_halfplane(self) -> bool:
        return math.isinf(self.right)

    @property
    def center(self) -> float:
        return (self.left + self.right) / 2

    @property
    def radius(self) -> float:
        return (self.right - self.left) / 2


def _transition(x: float, q: float) -> float:
    den = 1 + (q - 1) * x
    return math.inf if den == 0 else (1 + (x - 1) * q) / den


def disk_of(x: Frac | str, q: float) -> Disk:
    """Disk of ``x``.  For ``q > 1`` the endpoints are obtained from the
    values at ``1/q`` through the transition map."""
    x = Frac.of(x)
    q = _check_q(q)
    if q < 1:
        lo, hi = quantize(x, "flat")(q), quantize(x, "sharp")(q)
    else:
        p = 1 / q
        lo = _transition(quantize(x, "sharp")(p), p)
        hi = _transition(quantize(x, "flat")(p), p)
    if x.is_inf:
        return Disk(x, 1 / (1 - q), math.inf)
    return Disk(x, min(lo, hi), max(lo, hi))


# --- fast numeric jumps via closed-form matrix powers --------------------------------------


def _mat_mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _qint(n: int, q: float) -> float:
    return (1 - q**n) / (1 - q)


def word_matrix_numeric(x: Frac, q: float) -> tuple[tuple[float, float, float, float], float]:
    """The q-matrix of ``x`` evaluated at ``q``, and its determinant.

    Uses ``T^n = (q^n, [n]; 0, 1)`` and ``L^n = (q^n, 0; q[n], 1)`` so the cost
    is linear in the length of the continued fraction, not in its entries.
    """
    if x.is_inf:
        return (1.0, 0.0, 0.0, 1.0), 1.0
    if x.den == 1 and x.num <= 0:
        n = x.num
        t = (q**n, _qint(n, q), 0.0, 1.0)
        return _mat_mul(t, (0.0, -1.0, q, 0.0)), q ** (n + 1)
    m = (1.0, 0.0, 0.0, 1.0)
    det = 1.0
    for i, a in enumerate(continued_fraction_even(x)):
        if i % 2 == 0:
            g = (q**a, _qint(a, q), 0.0, 1.0)
        else:
            g = (q**a, 0.0, q * _qint(a, q), 1.0)
        m = _mat_mul(m, g)
        det *= q**a
    return m, det


def jump_numeric(x: Frac, q: float) -> float:
    """``|[x]# - [x]b|`` at ``q`` as ``|det M (1 - q) / (B# Bb)|``, free of the
    cancellation a direct difference would suffer."""
    if x.is_inf:
        return math.inf
    (a, b, c, d), det = word_matrix_numeric(x, q)
    u2 = c
    v2 = c + d * (1 - q)
    return abs(det * (1 - q) / (u2 * v2))


def fractions_between(x: Frac, y: Frac, max_den: int) -> Iterable[Frac]:
    """Reduced ``z`` with ``x < z < y`` and ``den <= max_den``; on an unbounded
    interval the numerator is bounded by ``max_den`` as well."""
    lo = x.to_fraction()
    if y.is_inf:
        for b in range(1, max_den + 1):
            for a in range(math.floor(lo * b) + 1, max_den + 1):
                if math.gcd(a, b) == 1:
                    yield Frac(a, b)
    else:
        hi = y.to_fraction()
        for z in farey_fractions(max_den, lo, hi):
            if lo < z.to_fraction() < hi:
                yield z


def gap_partial_sum(x: Frac | str, y: Frac | str, q: float, max_den: int) -> float:
    """Partial sum of jumps over ``x < z < y``; it increases towards
    ``[y]b - [x]#`` as ``max_den`` grows (``q < 1``)."""
    x, y = Frac.of(x), Frac.of(y)
    q = _check_q(q)
    if x.is_inf or not x < y:
        raise PreconditionError("need finite x < y")
    return math.fsum(jump_numeric(z, q) for z in fractions_between(x, y, max_den))


def gap_limit(x: Frac | str, y: Frac | str, q: float) -> float:
    x, y = Frac.of(x), Frac.of(y)
    if q < 1:
        return quantize(y, "flat")(q) - quantize(x, "sharp")(q)
    return quantize(y, "sharp")(q) - quantize(x, "flat")(q)


# --- homothety centres --------------------------------------------------------------------


def homothety_numeric(d1: Disk, d2: Disk, mode: Mode) -> float:
    """Inner ``(r1 M2 + r2 M1)/(r1 + r2)`` or outer ``(r1 M2 - r2 M1)/(r1 - r2)``.

    A half-plane contributes through the limit: the centre is then the
    near (inner) or far (outer) endpoint of the finite disk.
    """
    if mode not in ("inner", "outer"):
        raise PreconditionError("mode must be 'inner' or 'outer'")
    if d1.is_halfplane and d2.is_halfplane:
        raise PreconditionError("two half-planes")
    if d1.is_halfplane or d2.is_halfplane:
        fin = d2 if d1.is_halfplane else d1
        return fin.right if mode == "inner" else fin.left
    if d1.left < d2.right and d2.left < d1.right:
        raise PreconditionError("disks overlap")
    m1, r1, m2, r2 = d1.center, d1.radius, d2.center, d2.radius
    if mode == "inner":
        return (r1 * m2 + r2 * m1) / (r1 + r2)
    if r1 == r2:
        return math.inf
    return (r1 * m2 - r2 * m1) / (r1 - r2)


class Line(NamedTuple):
    """Line through ``point`` (on the real axis) with unit ``direction``."""

    point: tuple[float, float]
    direction: tuple[float, float]

    def distance(self, p: tuple[float, float]) -> float:
        dx, dy = p[0] - self.point[0], p[1] - self.point[1]
        return abs(dx * self.direction[1] - dy * self.direction[0])


def common_tangents(d1: Disk, d2: Disk, mode: Mode) -> list[Line]:
    """The two common tangents through the inner or outer homothety centre."""
    h = homothety_numeric(d1, d2, mode)
    if math.isinf(h):
        return [Line((d1.center, s * d1.radius), (1.0, 0.0)) for s in (1, -1)]
    dist = abs(d1.center - h)
    theta = math.asin(min(1.0, d1.radius / dist))
    base = 0.0 if d1.center > h else math.pi
    out = []
    for s in (1, -1):
        ang = base + s * theta
        out.append(Line((h, 0.0), (math.cos(ang), math.sin(ang))))
    return out


# --- fundamental domain and modular surface ---------------------------------------------


class Circle(NamedTuple):
    center: float
    radius: float

    def contains(self, z: complex, tol: float = 1e-12) -> bool:
        return abs(abs(z - self.center) - self.radius) <= tol * max(1.0, self.radius)


@dataclass(frozen=True)
class FundamentalDomain:
    """Quadrilateral with vertices ``i/sqrt(q)``, ``sigma``, ``P1``, ``P2``,
    bounded by arcs of the three fixed circles and by the real axis between
    ``P1`` and ``P2``.  At ``q = 1`` the classical triangle is returned with
    ``P1 = P2 = inf`` and straight sides marked by ``None``."""

    q: float
    i_vertex: complex
    sigma: complex
    p1: float
    p2: float
    unit_circle: Circle
    imaginary_axis: Circle | None
    critical_axis: Circle | None

    @property
    def funnel_geodesic(self) -> float:
        """Abscissa of the vertical geodesic cutting the funnel."""
        return math.inf if self.q == 1 else 1 / (1 - self.q)


SIGMA = complex(0.5, math.sqrt(3) / 2)


def fundamental_domain(q: float) -> FundamentalDomain:
    q = float(q)
    if not 0 < q <= 1:
        raise PreconditionError("the fundamental domain is computed for 0 < q <= 1")
    if q == 1:
        return FundamentalDomain(1.0, 1j, SIGMA, math.inf, math.inf, Circle(0.0, 1.0), None, None)
    k = q * q - q + 1
    c1 = Circle((q - 1) / q, math.sqrt(k) / q)
    im = Circle(1 / (1 - q), math.sqrt(k / (q * (1 - q) ** 2)))
    c2 = Circle(1 / (1 - q), math.sqrt(k) / (1 - q))
    p1 = (1 + math.sqrt(k)) / (1 - q)
    p2 = (1 + math.sqrt(q - 1 + 1 / q)) / (1 - q)
    return FundamentalDomain(q, 1j / math.sqrt(q), SIGMA, p1, p2, c1, im, c2)


def modular_surface_stats(q: float) -> tuple[float, float]:
    """Boundary length ``|ln q|`` and area of the deformed modular surface."""
    q = float(q)
    if not q > 0:
        raise PreconditionError("q must be positive")
    s3 = math.sqrt(3)
    return abs(math.log(q)), math.atan((2 * q - 1) / s3) + math.atan((2 / q - 1) / s3)


# --- convergence demo -----------------------------------------------------------------------


def sqrt2_convergents(count: int) -> list[Frac]:
    """``1, 3/2, 7/5, 17/12, ...``."""
    out = []
    p0, q0, p1, q1 = 1, 0, 1, 1
    for _ in range(count):
        out.append(Frac(p1, q1))
        p0, q0, p1, q1 = p1, q1, 2 * p1 + p0, 2 * q1 + q0
    return out


# --- SVG rendering ----------------------------------------------------------------------------


def _fmt(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def disks_in_range(q: float, lo: Fraction, hi: Fraction, max_den: int) -> list[Disk]:
    """Disks of all fractions in ``[lo, hi]`` with ``den <= max_den``, ordered
    by ``(den, num)``."""
    fr = sorted(farey_fractions(max_den, lo, hi), key=Frac.sort_key)
    return [disk_of(x, q) for x in fr]


def render_svg(
    q: float,
    lo: Fraction | int = -1,
    hi: Fraction | int = 3,
    max_den: int = 20,
    tangents: tuple[Frac, Frac] | None = None,
    domain: bool = False,
    width: int = 800,
) -> str:
    """Deterministic SVG of the q-disks (mirrored below the axis).

    Mathematical ``y`` points up; the SVG y axis points down.  The view box
    is the bounding box of the disks (and, for ``q < 1``, a strip of the
    half-plane at infinity) plus a 5% margin.
    """
    q = _check_q(q)
    lo, hi = Fraction(lo), Fraction(hi)
    if max_den < 1:
        raise PreconditionError("max_den must be positive")
    if lo < hi:
        disks = disks_in_range(q, lo, hi, max_den)
    else:
        # empty range: keep a unit-wide frame so the document stays valid
        disks, hi = [], lo + 1
    finite = [d for d in disks if not d.is_halfplane]
    left = min([d.left for d in finite], default=float(lo))
    right = max([d.right for d in finite], default=float(hi))
    if q < 1:
        # leave a strip of the half-plane at infinity in view
        right = max(right, 1 / (1 - q)) + 0.05 * (right - left)
    span = right - left
    margin = 0.05 * span
    x0, x1 = left - margin, right + margin
    ymax = max([d.radius for d in finite] + [0.1 * span]) + margin
    if domain and q < 1:
        ymax = max(ymax, 1 / math.sqrt(q) + margin)
    scale = width / (x1 - x0)
    height = int(round(2 * ymax * scale))

    def px(x: float) -> str:
        return _fmt((x - x0) * scale)

    def py(y: float) -> str:
        return _fmt((ymax - y) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<!-- q-disks q={q} range={lo}..{hi} max_den={max_den} -->",
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="0" y1="{py(0)}" x2="{width}" y2="{py(0)}" stroke="black" stroke-width="1"/>',
    ]
    if q < 1:
        bx = 1 / (1 - q)
        if bx < x1:
            out.append(
                f'<rect x="{px(bx)}" y="0" width="{_fmt(max(0.0, (x1 - bx) * scale))}" '
                f'height="{height}" fill="#d9d9d9" stroke="#444444" data-label="1/0"/>'
            )
    for d in disks:
        if d.is_halfplane:
            continue
        out.append(
            f'<circle cx="{px(d.center)}" cy="{py(0)}" r="{_fmt(d.radius * scale)}" '
            f'fill="#d9d9d9" stroke="#444444" stroke-width="0.5" data-label="{d.label}"/>'
        )
        if d.radius * scale > 12:
            out.append(
                f'<text x="{px(d.center)}" y="{py(0)}" font-size="10" text-anchor="middle">{d.label}</text>'
            )
    if tangents is not None:
        d1, d2 = disk_of(tangents[0], q), disk_of(tangents[1], q)
        for mode, colour in (("inner", "#1f77b4"), ("outer", "#d62728")):
            for ln in common_tangents(d1, d2, mode):
                (hx, hy), (ux, uy) = ln.point, ln.direction
                t = 2 * (x1 - x0)
                out.append(
                    f'<line x1="{px(hx - t * ux)}" y1="{py(hy - t * uy)}" x2="{px(hx + t * ux)}" '
                    f'y2="{py(hy + t * uy)}" stroke="{colour}" stroke-width="0.75" data-mode="{mode}"/>'
                )
    if domain and q < 1:
        fd = fundamental_domain(q)
        arcs = (
            (fd.unit_circle, fd.i_vertex, fd.sigma),
            (fd.critical_axis, fd.sigma, complex(fd.p1, 0)),
            (fd.imaginary_axis, fd.i_vertex, complex(fd.p2, 0)),
        )
        for circ, a, b in arcs:
            r = _fmt(circ.radius * scale)
            sweep = 1 if a.real < b.real else 0
            out.append(
                f'<path d="M {px(a.real)} {py(a.imag)} A {r} {r} 0 0 {sweep} {px(b.real)} {py(b.imag)}" '
                f'fill="none" stroke="#7b2d8b" stroke-width="1.5"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


__all__ = [
    "Circle",
    "Disk",
    "FundamentalDomain",
    "INF",
    "Line",
    "common_tangents",
    "disk_of",
    "disks_in_range",
    "fractions_between",
    "fundamental_domain",
    "gap_limit",
    "gap_partial_sum",
    "homothety_numeric",
    "jump_numeric",
    "modular_surface_stats",
    "render_svg",
    "sqrt2_convergents",
    "word_matrix_numeric",
]

"""9j symbols: exact contraction oracle, the two-variable five-point
recurrence, and its reduction to the screen recursion at h = 0."""

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .exact import SqrtRational, sixj_exact
from .spins import ScreenParams, triad_ok


def _ninej_triads(tjs):
    a, b, c, d, e, f, g, h, j = tjs
    return ((a, b, c), (d, e, f), (g, h, j), (a, d, g), (b, e, h), (c, f, j))


def ninej_valid(*tjs):
    return all(triad_ok(*t) for t in _ninej_triads(tjs))


def ninej_exact(ta, tb, tc, td, te, tf, tg, th, tj):
    """Exact 9j as the single-sum contraction of three 6j symbols.

    Every term shares the same square-free radicand (the x-dependent
    triangle factors pair into rationals), so the sum stays exact.
    """
    tjs = (ta, tb, tc, td, te, tf, tg, th, tj)
    if min(tjs) < 0 or not ninej_valid(*tjs):
        return SqrtRational.zero()
    lo = max(abs(ta - tj), abs(td - th), abs(tb - tf))
    hi = min(ta + tj, td + th, tb + tf)
    total = SqrtRational.zero()
    for tx in range(lo, hi + 1, 2):
        sign = -1 if tx % 2 else 1
        term = sixj_exact(ta, tb, tc, tf, tj, tx) \
            * sixj_exact(td, te, tf, tb, tx, th) \
            * sixj_exact(tg, th, tj, tx, ta, td)
        total = total + term * Fraction(sign * (tx + 1))
    return total


def ninej_oracle(ta, tb, tc, td, te, tf, tg, th, tj):
    """9j value as a double; exact arithmetic internally."""
    return ninej_exact(ta, tb, tc, td, te, tf, tg, th, tj).to_real()


@dataclass(frozen=True)
class RecurrenceCoeffs9j:
    """One A and one B coefficient of the five-point 9j recurrence."""

    a_q: float
    b_q: float


def _a_q(q, p, r, s, t):
    """[( -p+r+q)(p-r+q)(p+r-q+1)(p+r+q+1)]^(1/2) x (same with s,t)."""
    v1 = (-p + r + q) * (p - r + q) * (p + r - q + 1) * (p + r + q + 1)
    v2 = (-s + t + q) * (s - t + q) * (s + t - q + 1) * (s + t + q + 1)
    if v1 < 0 or v2 < 0:
        return 0.0
    return math.sqrt(v1) * math.sqrt(v2)


def _b_q(q, p, r, s, t):
    """[q(q+1)-p(p+1)+r(r+1)] [q(q+1)-s(s+1)+t(t+1)]."""
    return ((q * (q + 1) - p * (p + 1) + r * (r + 1))
            * (q * (q + 1) - s * (s + 1) + t * (t + 1)))


def ninej_coeffs(two_q, two_p, two_r, two_s, two_t):
    """A_q(pr, st) and B_q(pr, st) for two-j arguments."""
    q, p, r, s, t = (v / 2.0 for v in (two_q, two_p, two_r, two_s, two_t))
    return RecurrenceCoeffs9j(a_q=_a_q(q, p, r, s, t), b_q=_b_q(q, p, r, s, t))


@dataclass
class NinejResidual:
    """Five-point recurrence defect at one stencil."""

    residual: float
    max_term: float

    @property
    def relative(self):
        return self.residual / self.max_term if self.max_term else 0.0


def _stencil_coeffs(ta, tb, tc, td, te, tf, tg, tj):
    """The five recurrence coefficients at a (c,d) stencil center.

    Order: [c+1, c-1, d+1, d-1, center].  The center combination uses the
    B products with pair orders (ga, ef) and (ba, jf); the other orders fail
    the residual test (see the package notes on argument conventions).
    """
    a, b, c, d, e, f, g, j = (v / 2.0 for v in (ta, tb, tc, td, te, tf, tg, tj))
    out = [
        _a_q(c + 1, a, b, f, j) / ((c + 1) * (2 * c + 1)),
        _a_q(c, a, b, f, j) / (c * (2 * c + 1)) if c > 0 else 0.0,
        -_a_q(d + 1, e, f, a, g) / ((d + 1) * (2 * d + 1)),
        -_a_q(d, e, f, a, g) / (d * (2 * d + 1)) if d > 0 else 0.0,
    ]
    center = 0.0
    if c > 0 and d > 0:
        center = -(_b_q(d, g, a, e, f) / (d * (d + 1))
                   - _b_q(c, b, a, j, f) / (c * (c + 1)))
    out.append(center)
    return out


def ninej_residual(ta, tb, tc, td, te, tf, tg, th, tj):
    """|five-point combination| of oracle 9j values around (c, d)."""
    coeffs = _stencil_coeffs(ta, tb, tc, td, te, tf, tg, tj)
    vals = [
        ninej_oracle(ta, tb, tc + 2, td, te, tf, tg, th, tj),
        ninej_oracle(ta, tb, tc - 2, td, te, tf, tg, th, tj) if tc >= 2 else 0.0,
        ninej_oracle(ta, tb, tc, td + 2, te, tf, tg, th, tj),
        ninej_oracle(ta, tb, tc, td - 2, te, tf, tg, th, tj) if td >= 2 else 0.0,
        ninej_oracle(ta, tb, tc, td, te, tf, tg, th, tj),
    ]
    terms = [c * v for c, v in zip(coeffs, vals)]
    max_term = max(abs(t) for t in terms)
    return NinejResidual(residual=abs(sum(terms)), max_term=max_term)


def random_stencils(count, two_j_max=12, seed=0):
    """Admissible 9j argument tuples for residual sweeps."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        tjs = tuple(rng.randint(1, two_j_max) for _ in range(9))
        if ninej_valid(*tjs):
            out.append(tjs)
    return out


# --- h = 0 reduction ------------------------------------------------------
#
# With h = 0 the 9j forces e = b and j = g and collapses onto the screen
# {a b x; f g y} with x = c and y = d.  The five-point recurrence then
# matches the screen's cross recursion coefficient by coefficient up to one
# common factor per stencil.

def _screen_raw_coeffs(params: ScreenParams, two_x, two_y):
    """Screen cross-recursion coefficients rewritten for plain 6j values.

    Order [x+1, x-1, y+1, y-1, center]; multiplying each U coefficient by
    sqrt((2x'+1)(2y'+1)) converts the identity to the unnormalized symbols.
    """
    ta, tb, tc, td = params.as_tuple()
    phx = (-1.0) ** two_x
    phy = (-1.0) ** two_y
    def xcoeff(dt):
        txp = two_x + dt
        if txp < 0:
            return 0.0
        pair = (exact.sixj_unit_float(tb, txp, ta, 2, ta, two_x)
                * exact.sixj_unit_float(td, txp, tc, 2, tc, two_x))
        return phx * (txp + 1) * pair

    def ycoeff(dt):
        typ = two_y + dt
        if typ < 0:
            return 0.0
        pair = (exact.sixj_unit_float(tb, typ, tc, 2, tc, two_y)
                * exact.sixj_unit_float(td, typ, ta, 2, ta, two_y))
        return -phy * (typ + 1) * pair

    coeffs = [xcoeff(2), xcoeff(-2), ycoeff(2), ycoeff(-2),
              xcoeff(0) + ycoeff(0)]
    return coeffs


@dataclass
class ReductionReport:
    """Constancy of per-stencil coefficient ratios at h = 0."""

    params: ScreenParams
    n_checked: int
    n_skipped: int
    max_ratio_deviation: float


def reduction_check(params: ScreenParams, n_stencils=50, seed=0):
    """Compare h=0 five-point coefficients against the screen recursion.

    For each random interior stencil the ratio of the 9j-form coefficient to
    the screen-form coefficient must be one constant across all five slots;
    the report carries the worst deviation from constancy.
    """
    ta, tb, tc, td = params.as_tuple()
    rng = random.Random(seed)
    xs = [int(t) for t in params.x_lattice()[1:-1]]
    ys = [int(t) for t in params.y_lattice()[1:-1]]
    checked = 0
    skipped = 0
    worst = 0.0
    if not xs or not ys:
        return ReductionReport(params, 0, 0, 0.0)
    for _ in range(n_stencils):
        two_x = rng.choice(xs)
        two_y = rng.choice(ys)
        raw = _screen_raw_coeffs(params, two_x, two_y)
        # 9j dictionary: {a b c=x; d=y e=b f=c_s; g=d_s h=0 j=d_s}
        nine = _stencil_coeffs(ta, tb, two_x, two_y, tb, tc, td, td)
        ratios = []
        degenerate = False
        for r15, r9 in zip(raw, nine):
            if r15 == 0.0 and r9 == 0.0:
                continue
            if r15 == 0.0 or r9 == 0.0:
                degenerate = True
                break
            ratios.append(r9 / r15)
        if degenerate or len(ratios) < 2:
            skipped += 1
            continue
        base = ratios[0]
        worst = max(worst, max(abs(r / base - 1.0) for r in ratios))
        checked += 1
    return ReductionReport(params=params, n_checked=checked,
                           n_skipped=skipped, max_ratio_deviation=worst)

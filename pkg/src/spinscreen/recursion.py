"""Fast screen generation: tridiagonal eigenproblem, three-term rows, and the
two-dimensional five-term cross recursion."""

import decimal
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

import numpy as np
import scipy.linalg

from . import exact
from .errors import ConvergenceFailure, MatchFailure, SeedMismatch
from .screen import Screen
from .spins import ScreenParams

_RESCALE = 1e250


@dataclass
class TridiagCoeffs:
    """Coefficient arrays of the symmetric three-term recursion (j units).

    p_plus[k] couples lattice point k to k+1 and vanishes at the last point;
    p_minus(x) = p_plus(x-1).  lam is indexed by the y lattice and is strictly
    increasing.
    """

    params: ScreenParams
    p_plus: np.ndarray
    w: np.ndarray
    lam: np.ndarray

    def w_lambda(self):
        """w(x) - lambda(y) on the full grid, shape (nx, ny)."""
        return self.w[:, None] - self.lam[None, :]


def tridiag_coeffs(params: ScreenParams):
    """Recursion coefficients p_plus, w and eigenvalues lambda for a screen."""
    a, b, c, d = (t / 2.0 for t in params.as_tuple())
    x = params.x_lattice() / 2.0
    y = params.y_lattice() / 2.0
    f_ab = (a + b + x + 2) * (a + b - x) * (a - b + x + 1) * (-a + b + x + 1)
    f_cd = (d + c + x + 2) * (d + c - x) * (d - c + x + 1) * (-d + c + x + 1)
    p_plus = np.sqrt(np.maximum(f_ab, 0.0) * np.maximum(f_cd, 0.0)) \
        / ((x + 1) * np.sqrt((2 * x + 1) * (2 * x + 3)))
    xx = x * (x + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = (b * (b + 1) - a * (a + 1) + xx) * (d * (d + 1) - c * (c + 1) - xx) / xx
    if params.two_x_min == 0:
        # x=0 occurs only for a=b, c=d, where w(x) = -x(x+1) exactly
        w[0] = 0.0
    lam = 2 * (y * (y + 1) - b * (b + 1) - c * (c + 1))
    return TridiagCoeffs(params=params, p_plus=p_plus, w=w, lam=lam)


def _stretched_sign(params: ScreenParams):
    """Sign of U(x_max, y), constant in y: (-1)^(a+b+c+d) in j units."""
    return (-1) ** ((params.two_a + params.two_b + params.two_c + params.two_d) // 2)


def _backward_reference(coeffs: TridiagCoeffs, lam_y, stop_index):
    """Backward two-sided-stable recursion from x_max down to stop_index.

    Seeded with the exact stretched-boundary sign, so its signs match the
    true U row wherever the magnitudes are representable.
    """
    w, pp = coeffs.w, coeffs.p_plus
    n = len(w)
    r = np.zeros(n)
    r[n - 1] = _stretched_sign(coeffs.params)
    if n == 1 or stop_index >= n - 1:
        return r
    r[n - 2] = (lam_y - w[n - 1]) * r[n - 1] / pp[n - 2]
    for k in range(n - 2, stop_index, -1):
        r[k - 1] = ((lam_y - w[k]) * r[k] - pp[k] * r[k + 1]) / pp[k - 1]
        if abs(r[k - 1]) > _RESCALE:
            r[k - 1:] /= _RESCALE
    return r


def screen_by_eigensolve(params: ScreenParams):
    """Screen from diagonalizing the symmetric tridiagonal matrix.

    Eigenvalues sorted ascending are assigned to ascending y (lambda is
    monotone); each eigenvector's global sign is anchored to the exact sign
    of the stretched boundary value U(x_max, y).
    """
    coeffs = tridiag_coeffs(params)
    n = len(coeffs.w)
    if n == 1:
        values = np.array([[float(_stretched_sign(params))]])
        evals = coeffs.w.copy()
    else:
        try:
            evals, vecs = scipy.linalg.eigh_tridiagonal(
                coeffs.w, coeffs.p_plus[:-1])
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as err:
            raise ConvergenceFailure(str(err)) from err
        values = vecs
        for iy in range(n):
            istar = int(np.argmax(np.abs(values[:, iy])))
            ref = _backward_reference(coeffs, evals[iy], istar)
            if values[istar, iy] * ref[istar] < 0:
                values[:, iy] = -values[:, iy]
    spectrum_err = float(np.max(np.abs(evals - coeffs.lam)
                                / np.maximum(np.abs(coeffs.lam), 1.0)))
    screen = Screen(params=params, values=values, method="eigensolve",
                    diagnostics={"spectrum_rel_error": spectrum_err})
    screen.diagnostics["residual_max"] = float(residual_threeterm(screen, coeffs))
    screen.diagnostics["orthonormality_defect"] = screen.orthonormality_defect()
    return screen


def residual_threeterm(screen: Screen, coeffs: TridiagCoeffs = None):
    """max over interior points of |p+ U(x+1) + (w - lambda) U(x) + p- U(x-1)|."""
    if coeffs is None:
        coeffs = tridiag_coeffs(screen.params)
    U = screen.values
    n = U.shape[0]
    if n < 3:
        return 0.0
    res = (coeffs.p_plus[1:-1, None] * U[2:, :]
           + (coeffs.w[1:-1, None] - coeffs.lam[None, :]) * U[1:-1, :]
           + coeffs.p_plus[:-2, None] * U[:-2, :])
    return float(np.max(np.abs(res)))


def row_by_threeterm(two_y, params: ScreenParams, coeffs: TridiagCoeffs = None):
    """One row of U by three-term recursion seeded at both range ends.

    Forward from x_min and backward from x_max (both are the numerically
    stable growth directions), matched near the row maximum, normalized to
    unit sum of squares.  Signs follow the same stretched-boundary anchor as
    the eigensolver.
    """
    if coeffs is None:
        coeffs = tridiag_coeffs(params)
    iy = params.y_index(two_y)
    lam_y = coeffs.lam[iy]
    w, pp = coeffs.w, coeffs.p_plus
    n = len(w)
    sig = _stretched_sign(params)
    if n == 1:
        return np.array([float(sig)])
    fwd = np.zeros(n)
    fwd[0] = 1.0
    fwd[1] = (lam_y - w[0]) * fwd[0] / pp[0]
    for k in range(1, n - 1):
        fwd[k + 1] = ((lam_y - w[k]) * fwd[k] - pp[k - 1] * fwd[k - 1]) / pp[k]
        if abs(fwd[k + 1]) > _RESCALE:
            fwd[:k + 2] /= _RESCALE
    bwd = _backward_reference(coeffs, lam_y, 0)
    istar = (int(np.argmax(np.abs(fwd))) + int(np.argmax(np.abs(bwd)))) // 2
    if fwd[istar] == 0.0 or abs(fwd[istar]) < 1e-280 * np.max(np.abs(fwd)):
        raise MatchFailure(
            "branches numerically orthogonal at match index %d" % istar)
    row = np.concatenate((fwd[:istar] * (bwd[istar] / fwd[istar]), bwd[istar:]))
    norm = np.linalg.norm(row)
    if not np.isfinite(norm) or norm == 0.0:
        raise MatchFailure("row normalization failed for two_y=%d" % two_y)
    return row / norm


def _unit_pair_exact(tp, tq, tr, ts, t, dt):
    """{p t+dt q; 1 q t} {r t+dt s; 1 s t} as (prefactor, radicand) exact."""
    first = exact._unit_parts((tp, t + dt, tq, 2, tq, t)) if t + dt >= 0 else None
    second = exact._unit_parts((tr, t + dt, ts, 2, ts, t)) if t + dt >= 0 else None
    if first is None or second is None:
        return Fraction(0), Fraction(0)
    q1, n1, d1 = first
    q2, n2, d2 = second
    return q1 * q2, Fraction(n1 * n2, d1 * d2)


def _cross_coeffs_exact(params: ScreenParams):
    """Exact five-term coefficients: lists of (prefactor, radicand) pairs.

    The equation is multiplied through by sqrt((2x+1)(2y+1)), so the x-side
    coefficient at offset dt is sqrt((2x+1)(2x+2dt+1)) {b x' a; 1 a x}
    {d x' c; 1 c x}, and symmetrically in y with (b,c) and (d,a) pairings.
    """
    ta, tb, tc, td = params.as_tuple()
    xs = [int(t) for t in params.x_lattice()]
    ys = [int(t) for t in params.y_lattice()]
    cx = [[(Fraction(0), Fraction(0))] * len(xs) for _ in range(3)]
    cy = [[(Fraction(0), Fraction(0))] * len(ys) for _ in range(3)]
    for k, dt in enumerate((-2, 0, 2)):
        for i, tx in enumerate(xs):
            pref, rad = _unit_pair_exact(tb, ta, td, tc, tx, dt)
            cx[k][i] = (pref, rad * (tx + 1) * (tx + dt + 1))
        for i, ty in enumerate(ys):
            pref, rad = _unit_pair_exact(tb, tc, td, ta, ty, dt)
            cy[k][i] = (pref, rad * (ty + 1) * (ty + dt + 1))
    return cx, cy


def _cross_coeffs(params: ScreenParams):
    """Float arrays (3, n) of the five-term coefficients."""
    cx_e, cy_e = _cross_coeffs_exact(params)
    cx = np.array([[float(p) * math.sqrt(r) for p, r in row] for row in cx_e])
    cy = np.array([[float(p) * math.sqrt(r) for p, r in row] for row in cy_e])
    return cx, cy


def _decimal_digits(params: ScreenParams):
    """Working precision for the cross propagation.

    The stencil amplifies off-band noise by roughly e per row and the
    forbidden-corner values decay exponentially, both linear in the side
    length, so guard digits scale with the side.
    """
    return 40 + params.side


def _dec_coeff(pair):
    """Decimal value of an exact (prefactor, radicand) coefficient pair."""
    pref, rad = pair
    if pref == 0 or rad == 0:
        return Decimal(0)
    root = (Decimal(rad.numerator) / Decimal(rad.denominator)).sqrt()
    return Decimal(pref.numerator) / Decimal(pref.denominator) * root


def _threeterm_decimal(params, coeffs, iy, ctx):
    """Two-sided three-term row evaluated in Decimal precision."""
    ta, tb, tc, td = params.as_tuple()
    xs = [int(t) for t in params.x_lattice()]
    n = len(xs)
    lam = _lam_fraction(tb, tc, int(params.y_lattice()[iy]))
    lam_d = ctx.divide(Decimal(lam.numerator), Decimal(lam.denominator))
    w_d = []
    pp_d = []
    for tx in xs:
        wf = _w_fraction(ta, tb, tc, td, tx)
        w_d.append(ctx.divide(Decimal(wf.numerator), Decimal(wf.denominator)))
        p2 = _p_plus_sq_fraction(ta, tb, tc, td, tx)
        if p2 <= 0:
            pp_d.append(Decimal(0))
        else:
            pp_d.append(ctx.sqrt(ctx.divide(Decimal(p2.numerator),
                                            Decimal(p2.denominator))))
    sig = Decimal(_stretched_sign(params))
    if n == 1:
        return [sig]
    fwd = [Decimal(0)] * n
    fwd[0] = Decimal(1)
    fwd[1] = (lam_d - w_d[0]) * fwd[0] / pp_d[0]
    for k in range(1, n - 1):
        fwd[k + 1] = ((lam_d - w_d[k]) * fwd[k] - pp_d[k - 1] * fwd[k - 1]) / pp_d[k]
    bwd = [Decimal(0)] * n
    bwd[n - 1] = sig
    bwd[n - 2] = (lam_d - w_d[n - 1]) * bwd[n - 1] / pp_d[n - 2]
    for k in range(n - 2, 0, -1):
        bwd[k - 1] = ((lam_d - w_d[k]) * bwd[k] - pp_d[k] * bwd[k + 1]) / pp_d[k - 1]
    imax_f = max(range(n), key=lambda i: abs(fwd[i]))
    imax_b = max(range(n), key=lambda i: abs(bwd[i]))
    istar = (imax_f + imax_b) // 2
    if fwd[istar] == 0:
        raise MatchFailure("branches do not overlap at index %d" % istar)
    scale = bwd[istar] / fwd[istar]
    row = [fwd[k] * scale for k in range(istar)] + bwd[istar:]
    norm = ctx.sqrt(sum(v * v for v in row))
    return [v / norm for v in row]


def _p_plus_sq_fraction(ta, tb, tc, td, tx):
    """Exact square of the off-diagonal coefficient, two-j arguments."""
    f_ab = Fraction((ta + tb + tx + 4) * (ta + tb - tx) * (ta - tb + tx + 2)
                    * (-ta + tb + tx + 2), 16)
    f_cd = Fraction((td + tc + tx + 4) * (td + tc - tx) * (td - tc + tx + 2)
                    * (-td + tc + tx + 2), 16)
    if f_ab <= 0 or f_cd <= 0:
        return Fraction(0)
    return f_ab * f_cd / (Fraction(tx + 2, 2) ** 2 * (tx + 1) * (tx + 3))


def _w_fraction(ta, tb, tc, td, tx):
    """Exact diagonal coefficient; the x=0 limit (a=b, c=d) is -x(x+1)."""
    xx = Fraction(tx * (tx + 2), 4)
    if tx == 0:
        return Fraction(0)
    return ((Fraction(tb * (tb + 2) - ta * (ta + 2), 4) + xx)
            * (Fraction(td * (td + 2) - tc * (tc + 2), 4) - xx) / xx)


def _lam_fraction(tb, tc, ty):
    return Fraction(ty * (ty + 2) - tb * (tb + 2) - tc * (tc + 2), 2)


def screen_by_2d(params: ScreenParams, seed=None):
    """Screen from the five-term cross recursion, seeded with two rows.

    The stencil links three x-neighbors at row y to three y-neighbors at
    column x; rows y_min and y_min+1 determine the rest.  The pointwise
    sweep amplifies round-off exponentially across forbidden regions, so
    the propagation (and its default three-term seed rows) runs in Decimal
    arithmetic with side-proportional guard digits; coefficients enter as
    exact rationals and square roots.  The (-1)^(2x), (-1)^(2y) phases are
    lattice constants and are applied exactly.

    seed: optional pair of float rows (y_min, y_min+1); float seeds limit
    the attainable accuracy to float propagation error.
    """
    n = params.side
    diagnostics = {"seed_method": "threeterm-decimal",
                   "zero_pivot_points": 0,
                   "precision_digits": _decimal_digits(params)}
    ctx = decimal.Context(prec=diagnostics["precision_digits"],
                          Emax=decimal.MAX_EMAX, Emin=decimal.MIN_EMIN)
    with decimal.localcontext(ctx):
        coeffs = tridiag_coeffs(params)
        work = [[Decimal(0)] * n for _ in range(n)]  # work[iy][ix]
        if seed is None:
            work[0] = _threeterm_decimal(params, coeffs, 0, ctx)
            if n > 1:
                work[1] = _threeterm_decimal(params, coeffs, 1, ctx)
        else:
            diagnostics["seed_method"] = "caller"
            work[0] = [Decimal(v) for v in np.asarray(seed[0], dtype=float)]
            if n > 1:
                work[1] = [Decimal(v) for v in np.asarray(seed[1], dtype=float)]
        if n > 1:
            for j in (0, 1):
                norm = float(sum(float(v) ** 2 for v in work[j]))
                if abs(norm - 1.0) > 1e-8:
                    raise SeedMismatch("seed row %d is not normalized" % j)
            dot = float(sum(float(a) * float(b)
                            for a, b in zip(work[0], work[1])))
            if abs(dot) > 1e-8:
                raise SeedMismatch("seed rows are not orthogonal")
            cx_e, cy_e = _cross_coeffs_exact(params)
            cx = [[_dec_coeff(pair) for pair in row] for row in cx_e]
            cy = [[_dec_coeff(pair) for pair in row] for row in cy_e]
            phase = Decimal((-1) ** (params.two_x_min + params.two_y_min))
            for j in range(1, n - 1):
                u = work[j]
                prev = work[j - 1]
                pivot = cy[2][j]
                if pivot == 0:
                    work[j + 1] = [Decimal(repr(v))
                                   for v in _oracle_row(params, j + 1)]
                    diagnostics["zero_pivot_points"] += n
                    continue
                nxt = work[j + 1]
                cym, cy0 = cy[0][j], cy[1][j]
                cxm, cx0, cxp = cx
                for i in range(n):
                    acc = cx0[i] * u[i]
                    if i > 0:
                        acc += cxm[i] * u[i - 1]
                    if i < n - 1:
                        acc += cxp[i] * u[i + 1]
                    nxt[i] = (phase * acc - cym * prev[i] - cy0 * u[i]) / pivot
        # row norms in Decimal, conversion to float afterwards
        values = np.zeros((n, n))
        raw_norms = np.empty(n)
        for j in range(n):
            norm = ctx.sqrt(sum(v * v for v in work[j]))
            if norm == 0:
                raise MatchFailure("2D propagation produced a null row")
            raw_norms[j] = float(norm)
            values[:, j] = [float(v / norm) for v in work[j]]
    diagnostics["renorm_drift_max"] = float(np.max(np.abs(raw_norms - 1.0)))
    diagnostics["residual_cross_max"] = _cross_residual_max(params, values)
    return Screen(params=params, values=values, method="recur2d",
                  diagnostics=diagnostics)


def _oracle_row(params: ScreenParams, iy):
    two_y = int(params.y_lattice()[iy])
    return np.array([exact.u_exact(int(tx), two_y, params).to_real()
                     for tx in params.x_lattice()])


def _cross_residual_max(params: ScreenParams, values):
    """Largest five-term stencil residual over propagated rows (float)."""
    n = params.side
    if n < 3:
        return 0.0
    cx, cy = _cross_coeffs(params)
    phase = (-1.0) ** (params.two_x_min + params.two_y_min)
    worst = 0.0
    for j in range(1, n - 1):
        u = values[:, j]
        lhs = cx[1] * u
        lhs[:-1] += cx[2, :-1] * u[1:]
        lhs[1:] += cx[0, 1:] * u[:-1]
        rhs = cy[0, j] * values[:, j - 1] + cy[1, j] * u + cy[2, j] * values[:, j + 1]
        worst = max(worst, float(np.max(np.abs(phase * lhs - rhs))))
    return worst

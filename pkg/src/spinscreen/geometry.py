"""Tetrahedral geometry behind a screen: areas, volumes, ridges, caustics,
dihedral cosine, potential curves and geometric recursion coefficients.

All geometric lengths carry the half-unit shift E = e + 1/2; the conversion
from two-j quantum numbers happens at this module's boundary, so quantum
callers never see shifted values.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFace, NegativeRadicand
from .spins import ScreenParams


def edge_length(two_j):
    """Geometric edge for a quantum number: j + 1/2."""
    return (two_j + 1) / 2.0


@dataclass(frozen=True)
class Tetrahedron:
    """Edge lengths with the pairing (A,C), (B,D), (X,Y) opposite.

    Faces are (A,B,X), (C,D,X), (A,D,Y), (B,C,Y) -- one per 6j triad.
    """

    A: float
    B: float
    C: float
    D: float
    X: float
    Y: float

    @classmethod
    def from_two_j(cls, params: ScreenParams, two_x, two_y):
        ta, tb, tc, td = params.as_tuple()
        return cls(edge_length(ta), edge_length(tb), edge_length(tc),
                   edge_length(td), edge_length(two_x), edge_length(two_y))


def heron_area(A, B, C):
    """Triangle area; 0 for degenerate, NegativeRadicand for non-triangles."""
    s = (A + B + C) * (-A + B + C) * (A - B + C) * (A + B - C)
    if s < 0:
        raise NegativeRadicand("no triangle with sides %g, %g, %g" % (A, B, C))
    return math.sqrt(s) / 4.0


def lambda_quartic(alpha, beta, gamma):
    """(a^2-b^2)^2 - 2 g^2 (a^2+b^2) + g^4; identically -16 * area^2."""
    a2, b2, g2 = alpha * alpha, beta * beta, gamma * gamma
    return (a2 - b2) ** 2 - 2 * g2 * (a2 + b2) + g2 * g2


def _area_sq(a2, b2, c2):
    """Squared triangle area from squared sides (may be negative)."""
    return (2 * (a2 * b2 + a2 * c2 + b2 * c2) - a2 * a2 - b2 * b2 - c2 * c2) / 16.0


def volume_sq(t: Tetrahedron):
    """Squared volume from the 5x5 Cayley-Menger determinant.

    Negative values are legal: they mark classically forbidden points.
    """
    C2, D2, Y2, X2, B2, A2 = t.C ** 2, t.D ** 2, t.Y ** 2, t.X ** 2, t.B ** 2, t.A ** 2
    M = np.array([
        [0.0, C2, D2, Y2, 1.0],
        [C2, 0.0, X2, B2, 1.0],
        [D2, X2, 0.0, A2, 1.0],
        [Y2, B2, A2, 0.0, 1.0],
        [1.0, 1.0, 1.0, 1.0, 0.0],
    ])
    return float(np.linalg.det(M)) / 288.0


def volume_sq_gram(t: Tetrahedron):
    """Squared volume from the Gramian of vertex vectors (independent route)."""
    C2, D2, Y2, X2, B2, A2 = t.C ** 2, t.D ** 2, t.Y ** 2, t.X ** 2, t.B ** 2, t.A ** 2
    G = np.array([
        [C2, (C2 + D2 - X2) / 2, (C2 + Y2 - B2) / 2],
        [(C2 + D2 - X2) / 2, D2, (D2 + Y2 - A2) / 2],
        [(C2 + Y2 - B2) / 2, (D2 + Y2 - A2) / 2, Y2],
    ])
    return float(np.linalg.det(G)) / 36.0


@dataclass
class CausticData:
    """Ridge and caustic curves sampled along shifted coordinates.

    Entries outside the geometric domain are NaN.
    """

    params: ScreenParams
    x_samples: np.ndarray
    y_ridge: np.ndarray
    v_max: np.ndarray
    y_caustic_lower: np.ndarray
    y_caustic_upper: np.ndarray
    y_samples: np.ndarray
    x_ridge: np.ndarray


def ridges_and_caustics(params: ScreenParams, samples_per_step=1, polish=True):
    """Ridge curves, maximal volume, and the V=0 caustic branches.

    Caustic roots are polished by bisection on V^2 to 1e-12 of a lattice
    step (the closed form already solves V^2=0; polishing certifies it
    against the determinant route).
    """
    A, B, C, D = (edge_length(t) for t in params.as_tuple())
    A2, B2, C2, D2 = A * A, B * B, C * C, D * D
    X = np.linspace(edge_length(params.two_x_min), edge_length(params.two_x_max),
                    (params.side - 1) * samples_per_step + 1)
    Y = np.linspace(edge_length(params.two_y_min), edge_length(params.two_y_max),
                    (params.side - 1) * samples_per_step + 1)
    X2s = X * X
    with np.errstate(invalid="ignore"):
        y_ridge_sq = ((A2 - B2) * (C2 - D2) + (A2 + B2 + C2 + D2) * X2s
                      - X2s * X2s) / (2 * X2s)
        lam_prod = lambda_quartic(A, B, X) * lambda_quartic(C, D, X)
        root = np.sqrt(np.where(lam_prod >= 0, lam_prod, np.nan))
        v_max = root / (24 * X)
        y_lo_sq = y_ridge_sq - root / (2 * X2s)
        y_hi_sq = y_ridge_sq + root / (2 * X2s)
        y_ridge = np.sqrt(np.where(y_ridge_sq >= 0, y_ridge_sq, np.nan))
        y_lo = np.sqrt(np.where(y_lo_sq >= 0, y_lo_sq, np.nan))
        y_hi = np.sqrt(np.where(y_hi_sq >= 0, y_hi_sq, np.nan))
        Y2s = Y * Y
        x_ridge_sq = ((A2 - D2) * (C2 - B2) + (A2 + B2 + C2 + D2) * Y2s
                      - Y2s * Y2s) / (2 * Y2s)
        x_ridge = np.sqrt(np.where(x_ridge_sq >= 0, x_ridge_sq, np.nan))
    if polish:
        for arr in (y_lo, y_hi):
            for i, (xv, yv) in enumerate(zip(X, arr)):
                if np.isfinite(yv):
                    arr[i] = _polish_caustic(params, float(xv), float(yv))
    return CausticData(params=params, x_samples=X, y_ridge=y_ridge, v_max=v_max,
                       y_caustic_lower=y_lo, y_caustic_upper=y_hi,
                       y_samples=Y, x_ridge=x_ridge)


def _polish_caustic(params, Xv, Yv, tol=1e-12):
    """Bisection refinement of a V^2 = 0 root in Y at fixed X."""
    A, B, C, D = (edge_length(t) for t in params.as_tuple())

    def v2(y):
        return volume_sq(Tetrahedron(A, B, C, D, Xv, y))

    if v2(Yv) == 0.0:
        return Yv
    step = 1e-6 * max(1.0, Yv)
    lo = hi = Yv
    for _ in range(60):
        lo, hi = Yv - step, Yv + step
        if v2(lo) * v2(hi) <= 0:
            break
        step *= 2
    else:
        return Yv
    flo = v2(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = v2(mid)
        if fm == 0.0 or (hi - lo) < tol:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _xprime_sq(X, mode):
    if mode == "shifted":
        return X * X - 0.25
    if mode == "plain":
        return X * X
    raise ValueError("xprime_mode must be 'shifted' or 'plain'")


def cos_theta3(t: Tetrahedron, xprime_mode="shifted"):
    """Cosine at edge X from the bilinear form; may exceed 1 in magnitude
    outside the classical region (that is the forbidden-zone signal)."""
    Xp2 = _xprime_sq(t.X, xprime_mode)
    A2, B2, C2, D2, Y2 = t.A ** 2, t.B ** 2, t.C ** 2, t.D ** 2, t.Y ** 2
    f1sq = _area_sq(Xp2, A2, B2)
    f2sq = _area_sq(Xp2, C2, D2)
    if f1sq <= 0 or f2sq <= 0:
        raise DegenerateFace("face area vanishes at edge X' (mode %s)" % xprime_mode)
    num = (2 * Xp2 * Y2 - Xp2 * (-Xp2 + D2 + C2)
           - B2 * (Xp2 + D2 - C2) - A2 * (Xp2 - D2 + C2))
    return num / (16 * math.sqrt(f1sq) * math.sqrt(f2sq))


def sin_theta3(t: Tetrahedron, xprime_mode="plain"):
    """Sine at edge X from 3VX'/2 = F F sin(theta3); nonnegative branch."""
    v2 = volume_sq(t)
    if v2 < 0:
        raise DegenerateFace("sin(theta3) undefined outside classical region")
    Xp2 = _xprime_sq(t.X, xprime_mode)
    f1sq = _area_sq(Xp2, t.A ** 2, t.B ** 2)
    f2sq = _area_sq(Xp2, t.C ** 2, t.D ** 2)
    if f1sq <= 0 or f2sq <= 0:
        raise DegenerateFace("face area vanishes at edge X'")
    return 1.5 * math.sqrt(v2) * math.sqrt(Xp2) / math.sqrt(f1sq * f2sq)


def cos_theta3_magnitude(t: Tetrahedron):
    """|cos(theta3)| from the volume route: sqrt(1 - (3VX/(2 F F))^2)."""
    v2 = volume_sq(t)
    f1sq = _area_sq(t.X ** 2, t.A ** 2, t.B ** 2)
    f2sq = _area_sq(t.X ** 2, t.C ** 2, t.D ** 2)
    if f1sq <= 0 or f2sq <= 0:
        raise DegenerateFace("face area vanishes at edge X")
    val = 1.0 - (9.0 * v2 * t.X ** 2) / (4.0 * f1sq * f2sq)
    return math.sqrt(max(val, 0.0))


def cos_theta3_grid(params: ScreenParams, xprime_mode="plain"):
    """Vectorized cos(theta3) over the whole lattice, shape (nx, ny).

    NaN where a face degenerates; magnitudes above 1 mark forbidden points.
    """
    A, B, C, D = (edge_length(t) for t in params.as_tuple())
    A2, B2, C2, D2 = A * A, B * B, C * C, D * D
    X = (params.x_lattice() + 1) / 2.0
    Y = (params.y_lattice() + 1) / 2.0
    Xp2 = X * X - 0.25 if xprime_mode == "shifted" else X * X
    f1sq = _area_sq(Xp2, A2, B2)
    f2sq = _area_sq(Xp2, C2, D2)
    Y2 = Y * Y
    num = (2 * Xp2[:, None] * Y2[None, :]
           - (Xp2 * (-Xp2 + D2 + C2))[:, None]
           - (B2 * (Xp2 + D2 - C2))[:, None]
           - (A2 * (Xp2 - D2 + C2))[:, None])
    den = 16 * np.sqrt(np.maximum(f1sq, 0.0) * np.maximum(f2sq, 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        out = num / den[:, None]
    out[~np.isfinite(out)] = np.nan
    return out


def volume_sq_grid(params: ScreenParams):
    """Vectorized squared volume over the whole lattice, shape (nx, ny)."""
    A, B, C, D = (edge_length(t) for t in params.as_tuple())
    X = (params.x_lattice() + 1) / 2.0
    Y = (params.y_lattice() + 1) / 2.0
    A2, B2, C2, D2 = A * A, B * B, C * C, D * D
    X2 = X * X
    Y2 = Y * Y
    # Cayley-Menger expanded: V^2 as quadratic in Y^2 at fixed X^2
    #   288 V^2 = -2 X^2 Y^4 + 2 [(A^2-B^2)(C^2-D^2) + (A^2+B^2+C^2+D^2) X^2
    #             - X^4] Y^2 + (X^2-independent-and-lambda terms)
    c2 = -2.0 * X2
    c1 = 2.0 * ((A2 - B2) * (C2 - D2) + (A2 + B2 + C2 + D2) * X2 - X2 * X2)
    lamAB = (A2 - B2) ** 2 - 2 * X2 * (A2 + B2) + X2 * X2
    lamCD = (C2 - D2) ** 2 - 2 * X2 * (C2 + D2) + X2 * X2
    # at the ridge Y^2 = -c1/(2 c2), 288 V^2 = lamAB*lamCD/(2X^2); solve c0
    c0 = lamAB * lamCD / (2.0 * X2) + c1 ** 2 / (4.0 * c2)
    out = (c2[:, None] * Y2[None, :] ** 2 + c1[:, None] * Y2[None, :]
           + c0[:, None]) / 288.0
    return out


@dataclass
class GeometricCoeffs:
    """Geometric approximations to the recursion coefficients (x8 scale)."""

    p_minus: float
    p_plus: float
    w_lambda: float
    p_minus_gm: float
    p_plus_gm: float
    w_lambda_gm: float


def geometric_coeffs(two_x, two_y, params: ScreenParams, xprime_mode="shifted"):
    """Area-form and geometric-mean-form coefficient approximations.

    Both are scaled by 8 to compare directly with the exact three-term
    coefficients; the area form is the accurate one, the geometric-mean
    form (which uses X' = X) is the rougher comparison target.
    """
    t = Tetrahedron.from_two_j(params, two_x, two_y)
    A2, B2, C2, D2 = t.A ** 2, t.B ** 2, t.C ** 2, t.D ** 2
    X = t.X

    def area(x2_edge, e1sq, e2sq):
        s = _area_sq(x2_edge, e1sq, e2sq)
        if s <= 0:
            raise DegenerateFace("face degenerates at X=%g" % X)
        return math.sqrt(s)

    f_ab = {dx: area((X + dx) ** 2, A2, B2) for dx in (-1.0, -0.5, 0.0, 0.5, 1.0)}
    f_cd = {dx: area((X + dx) ** 2, C2, D2) for dx in (-1.0, -0.5, 0.0, 0.5, 1.0)}
    p_minus = 8 * f_ab[-0.5] * f_cd[-0.5] / (X - 0.5) ** 2
    p_plus = 8 * f_ab[0.5] * f_cd[0.5] / (X + 0.5) ** 2
    ct_sel = cos_theta3(t, xprime_mode)
    xp2 = _xprime_sq(X, xprime_mode)
    f1p = area(xp2, A2, B2)
    f2p = area(xp2, C2, D2)
    w_lambda = -16 * ct_sel * f1p * f2p / xp2
    p_minus_gm = 8 * math.sqrt(f_ab[-1.0] * f_ab[0.0] * f_cd[-1.0] * f_cd[0.0]) \
        / (X * (X - 1))
    p_plus_gm = 8 * math.sqrt(f_ab[1.0] * f_ab[0.0] * f_cd[1.0] * f_cd[0.0]) \
        / (X * (X + 1))
    ct_plain = cos_theta3(t, "plain")
    w_lambda_gm = -16 * ct_plain * f_ab[0.0] * f_cd[0.0] / (X * X)
    return GeometricCoeffs(p_minus=p_minus, p_plus=p_plus, w_lambda=w_lambda,
                           p_minus_gm=p_minus_gm, p_plus_gm=p_plus_gm,
                           w_lambda_gm=w_lambda_gm)


@dataclass
class PotentialCurves:
    """Upper and lower potential curves over the x lattice."""

    params: ScreenParams
    x_lattice: np.ndarray
    w_plus: np.ndarray
    w_minus: np.ndarray
    pbar_mode: str


def potentials(params: ScreenParams, pbar_mode="geometric"):
    """W(+-)(x) = w(x) +- 2|pbar(x)| for either mean of p+ and p-."""
    from .recursion import tridiag_coeffs
    coeffs = tridiag_coeffs(params)
    pp = coeffs.p_plus
    pm = np.concatenate(([0.0], pp[:-1]))
    if pbar_mode == "arithmetic":
        pbar = 0.5 * (pp + pm)
    elif pbar_mode == "geometric":
        pbar = np.sqrt(np.maximum(pp * pm, 0.0))
    else:
        raise ValueError("pbar_mode must be 'arithmetic' or 'geometric'")
    return PotentialCurves(params=params, x_lattice=params.x_lattice(),
                           w_plus=coeffs.w + 2 * np.abs(pbar),
                           w_minus=coeffs.w - 2 * np.abs(pbar),
                           pbar_mode=pbar_mode)


def f_transform(u_row, params: ScreenParams, two_y):
    """Wavefunction transform f(X) = sqrt(F(X,A,B) F(X,C,D))/X * U(x,y).

    The area form stays finite on caustics (the volume form diverges there).
    Points outside the geometric domain become NaN.
    """
    A, B, C, D = (edge_length(t) for t in params.as_tuple())
    X = (params.x_lattice() + 1) / 2.0
    f1sq = _area_sq(X * X, A * A, B * B)
    f2sq = _area_sq(X * X, C * C, D * D)
    good = (f1sq > 0) & (f2sq > 0)
    out = np.full(len(X), np.nan)
    out[good] = (f1sq[good] * f2sq[good]) ** 0.25 / X[good] \
        * np.asarray(u_row)[good]
    return out


def f_residual(f_values, params: ScreenParams, two_y):
    """Residual of the finite-difference equation [D2 + 2 - 2cos(theta3)] f."""
    c3 = cos_theta3_grid(params, "plain")[:, params.y_index(two_y)]
    res = np.full(len(f_values), np.nan)
    for k in range(1, len(f_values) - 1):
        trio = f_values[k - 1:k + 2]
        if np.isfinite(trio).all() and np.isfinite(c3[k]):
            res[k] = trio[2] - 2 * c3[k] * trio[1] + trio[0]
    return res

"""Discrete WKB layer: local momentum, quantization ladder, dihedral angles
and the stationary-phase amplitude estimate compared against exact values."""

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import geometry, recursion
from .errors import (CausticProximityWarning, NoClassicalWindow, OutOfRange,
                     OutsideDomain)
from .geometry import Tetrahedron, edge_length
from .spins import ScreenParams


def local_momentum(two_x, two_y, params: ScreenParams):
    """Lattice momentum p = sqrt(2 - 2 cos(theta3)), nonnegative branch."""
    t = Tetrahedron.from_two_j(params, two_x, two_y)
    if geometry.volume_sq(t) < 0:
        raise OutsideDomain("(%d,%d) is classically forbidden" % (two_x, two_y))
    c3 = geometry.cos_theta3(t, "plain")
    return math.sqrt(max(2.0 - 2.0 * min(c3, 1.0), 0.0))


class BohrSommerfeld(NamedTuple):
    action: float
    n_estimate: float


def bohr_sommerfeld(two_y, params: ScreenParams):
    """Closed-loop action over a row's classical window and its mode number.

    The phase per lattice step is the Bloch angle of the three-term
    recursion, i.e. the interior dihedral angle at edge X (arccos of the
    negated dihedral cosine).  Trapezoid on the unit lattice with linear
    interpolation of cos(theta3) to the fractional turning points; the loop
    doubles the one-way integral and action = (n + 1/2) pi defines n.
    """
    if not (params.two_y_min <= two_y <= params.two_y_max
            and (two_y - params.two_y_min) % 2 == 0):
        raise OutOfRange("two_y=%d is not a lattice row" % two_y)
    iy = params.y_index(two_y)
    c3 = geometry.cos_theta3_grid(params, "plain")[:, iy]
    xs = (params.x_lattice() + 1) / 2.0
    inside = np.isfinite(c3) & (np.abs(c3) <= 1.0)
    if not inside.any():
        raise NoClassicalWindow("row two_y=%d has no classical points" % two_y)
    idx = np.flatnonzero(inside)
    i0, i1 = int(idx[0]), int(idx[-1])
    k = math.pi - np.arccos(np.clip(c3[i0:i1 + 1], -1.0, 1.0))
    action = float(np.trapezoid(k, xs[i0:i1 + 1])) if i1 > i0 else 0.0
    for edge, step in ((i0, -1), (i1, +1)):
        nb = edge + step
        if 0 <= nb < len(xs) and np.isfinite(c3[nb]) and abs(c3[nb]) > 1.0:
            target = 1.0 if c3[nb] > 1.0 else -1.0
            frac = (target - c3[edge]) / (c3[nb] - c3[edge])
            k_star = math.pi if target > 0 else 0.0
            action += abs(frac) * 0.5 * (k[edge - i0] + k_star)
    action *= 2.0
    return BohrSommerfeld(action=action, n_estimate=action / math.pi - 0.5)


@dataclass(frozen=True)
class DihedralAngles:
    """The six dihedral angles, outward-normal convention, radians.

    theta1..theta3 sit at edges A, B, X; eta1..eta3 at C, D, Y.
    """

    theta1: float
    theta2: float
    theta3: float
    eta1: float
    eta2: float
    eta3: float

    def as_dict(self):
        return {"A": self.theta1, "B": self.theta2, "X": self.theta3,
                "C": self.eta1, "D": self.eta2, "Y": self.eta3}


def _edge_cos(e2, eop2, u2, v2, ub2, vb2, f1sq, f2sq):
    """Dihedral cosine at an edge from squared lengths and face areas.

    (u, ub) and (v, vb) are the opposite side-edge pairs; faces at the edge
    are (u, v, e) and (ub, vb, e).
    """
    num = (2 * e2 * eop2 + e2 * e2 - e2 * (ub2 + vb2)
           - v2 * (e2 + vb2 - ub2) - u2 * (e2 - vb2 + ub2))
    return num / (16.0 * math.sqrt(f1sq * f2sq))


def dihedral_angles(t: Tetrahedron):
    """All six angles; sine from the volume relation, cosine sign from the
    edge-permuted bilinear form.  Requires a classically allowed point."""
    v2 = geometry.volume_sq(t)
    if v2 <= 0:
        raise OutsideDomain("volume squared is not positive")
    v = math.sqrt(v2)
    A2, B2, C2, D2 = t.A ** 2, t.B ** 2, t.C ** 2, t.D ** 2
    X2, Y2 = t.X ** 2, t.Y ** 2
    f_abx = geometry._area_sq(A2, B2, X2)
    f_cdx = geometry._area_sq(C2, D2, X2)
    f_ady = geometry._area_sq(A2, D2, Y2)
    f_bcy = geometry._area_sq(B2, C2, Y2)
    edge_table = {
        # edge: (e2, eop2, u2, v2, ub2, vb2, face1 sq, face2 sq)
        "A": (A2, C2, B2, X2, D2, Y2, f_abx, f_ady),
        "B": (B2, D2, A2, X2, C2, Y2, f_abx, f_bcy),
        "X": (X2, Y2, A2, B2, C2, D2, f_abx, f_cdx),
        "C": (C2, A2, D2, X2, B2, Y2, f_cdx, f_bcy),
        "D": (D2, B2, C2, X2, A2, Y2, f_cdx, f_ady),
        "Y": (Y2, X2, A2, D2, C2, B2, f_ady, f_bcy),
    }
    lengths = {"A": t.A, "B": t.B, "X": t.X, "C": t.C, "D": t.D, "Y": t.Y}
    angles = {}
    for edge, (e2, eop2, u2, v2e, ub2, vb2, f1, f2) in edge_table.items():
        cos_e = _edge_cos(e2, eop2, u2, v2e, ub2, vb2, f1, f2)
        sin_e = 1.5 * v * lengths[edge] / math.sqrt(f1 * f2)
        angles[edge] = math.atan2(sin_e, cos_e)
    return DihedralAngles(theta1=angles["A"], theta2=angles["B"],
                          theta3=angles["X"], eta1=angles["C"],
                          eta2=angles["D"], eta3=angles["Y"])


def pr_phase(two_x, two_y, params: ScreenParams):
    """Stationary phase: sum of edge * angle over all six edges, plus pi/4."""
    t = Tetrahedron.from_two_j(params, two_x, two_y)
    ang = dihedral_angles(t)
    return (t.A * ang.theta1 + t.B * ang.theta2 + t.X * ang.theta3
            + t.C * ang.eta1 + t.D * ang.eta2 + t.Y * ang.eta3 + math.pi / 4)


def pr_amplitude(two_x, two_y, params: ScreenParams):
    """Asymptotic estimate of the plain 6j: cos(Phi)/sqrt(12 pi |V|).

    Multiply by sqrt((2x+1)(2y+1)) for the orthonormal-form estimate.  Emits
    CausticProximityWarning when |cos(theta3)| > 0.9.
    """
    t = Tetrahedron.from_two_j(params, two_x, two_y)
    v2 = geometry.volume_sq(t)
    if v2 <= 0:
        raise OutsideDomain("(%d,%d) is outside the classical region"
                            % (two_x, two_y))
    c3 = geometry.cos_theta3(t, "plain")
    if abs(c3) > 0.9:
        warnings.warn("point (%d,%d) is close to a caustic" % (two_x, two_y),
                      CausticProximityWarning, stacklevel=2)
    return math.cos(pr_phase(two_x, two_y, params)) \
        / math.sqrt(12 * math.pi * math.sqrt(v2))


@dataclass
class PRComparison:
    """Pointwise semiclassical-vs-reference comparison over a screen."""

    params: ScreenParams
    estimate: np.ndarray
    reference: np.ndarray
    abs_error: np.ndarray
    rel_error: np.ndarray
    cos_theta3: np.ndarray
    classical: np.ndarray
    excluded_near_zero: np.ndarray
    summary: dict


def _pr_grid(params: ScreenParams):
    """Vectorized PR estimate of the plain 6j over the classical region."""
    A, B, C, D = (edge_length(t) for t in params.as_tuple())
    X = (params.x_lattice() + 1) / 2.0
    Y = (params.y_lattice() + 1) / 2.0
    A2, B2, C2, D2 = A * A, B * B, C * C, D * D
    X2g, Y2g = np.meshgrid(X * X, Y * Y, indexing="ij")
    v2 = geometry.volume_sq_grid(params)
    classical = v2 > 0
    v = np.sqrt(np.where(classical, v2, np.nan))
    f_abx = geometry._area_sq(A2, B2, X2g)
    f_cdx = geometry._area_sq(C2, D2, X2g)
    f_ady = geometry._area_sq(A2, D2, Y2g)
    f_bcy = geometry._area_sq(B2, C2, Y2g)
    edge_table = {
        "A": (A2, C2, B2, X2g, D2, Y2g, f_abx, f_ady, A),
        "B": (B2, D2, A2, X2g, C2, Y2g, f_abx, f_bcy, B),
        "X": (X2g, Y2g, A2, B2, C2, D2, f_abx, f_cdx, X[:, None]),
        "C": (C2, A2, D2, X2g, B2, Y2g, f_cdx, f_bcy, C),
        "D": (D2, B2, C2, X2g, A2, Y2g, f_cdx, f_ady, D),
        "Y": (Y2g, X2g, A2, D2, C2, B2, f_ady, f_bcy, Y[None, :]),
    }
    phase = np.full(v2.shape, math.pi / 4)
    cos_x = None
    with np.errstate(invalid="ignore", divide="ignore"):
        for edge, (e2, eop2, u2, v2e, ub2, vb2, f1, f2, length) in edge_table.items():
            num = (2 * e2 * eop2 + e2 * e2 - e2 * (ub2 + vb2)
                   - v2e * (e2 + vb2 - ub2) - u2 * (e2 - vb2 + ub2))
            cos_e = num / (16.0 * np.sqrt(f1 * f2))
            sin_e = 1.5 * v * length / np.sqrt(f1 * f2)
            if edge == "X":
                cos_x = cos_e
            phase += length * np.arctan2(sin_e, cos_e)
        est = np.cos(phase) / np.sqrt(12 * math.pi * v)
    return est, cos_x, v, classical


def pr_compare(params: ScreenParams, reference=None, edge_margin=None):
    """Full-screen error report of the stationary-phase estimate.

    reference: a Screen of exact-method or eigensolver values (defaults to
    the eigensolver, whose 1e-10 accuracy is negligible at semiclassical
    error scales).  Relative errors exclude near-zeros of the oscillation:
    points where |reference| < 5% of the local envelope.  The "core"
    statistics additionally restrict to |cos(theta3)| <= 0.5 and keep
    edge_margin lattice steps away from the screen boundary, where the
    estimate degrades with the face areas.
    """
    if reference is None:
        reference = recursion.screen_by_eigensolve(params)
    if edge_margin is None:
        edge_margin = max(2, params.side // 100)
    est, cos_x, v, classical = _pr_grid(params)
    xs = params.x_lattice()
    ys = params.y_lattice()
    norm = np.sqrt((xs[:, None] + 1.0) * (ys[None, :] + 1.0))
    ref_6j = reference.values / norm
    abs_err = np.abs(est - ref_6j)
    envelope = 1.0 / np.sqrt(12 * math.pi * v)
    near_zero = classical & (np.abs(ref_6j) < 0.05 * envelope)
    with np.errstate(invalid="ignore", divide="ignore"):
        rel = np.where(classical & ~near_zero, abs_err / np.abs(ref_6j), np.nan)
    interior = classical & ~near_zero & (np.abs(cos_x) <= 0.9)
    caustic_band = classical & ~near_zero & (np.abs(cos_x) > 0.9)
    inset = np.zeros(est.shape, dtype=bool)
    n = params.side
    m = min(edge_margin, (n - 1) // 2)
    inset[m:n - m, m:n - m] = True
    core = classical & ~near_zero & (np.abs(cos_x) <= 0.5) & inset
    sign_ok = np.sign(est) == np.sign(ref_6j)
    core_rel = rel[core]
    summary = {
        "n_classical": int(np.count_nonzero(classical)),
        "n_excluded_near_zero": int(np.count_nonzero(near_zero)),
        "n_core": int(np.count_nonzero(core)),
        "interior_max_rel_error": _nanmax(rel[interior]),
        "caustic_band_max_rel_error": _nanmax(rel[caustic_band]),
        "core_max_rel_error": _nanmax(core_rel),
        "core_p99_rel_error": (float(np.nanquantile(core_rel, 0.99))
                               if core_rel.size else 0.0),
        "core_sign_agreement": float(np.mean(sign_ok[core])) if core.any() else 1.0,
        "reference_method": reference.method,
        "edge_margin": int(m),
    }
    return PRComparison(params=params, estimate=est, reference=ref_6j,
                        abs_error=abs_err, rel_error=rel, cos_theta3=cos_x,
                        classical=classical, excluded_near_zero=near_zero,
                        summary=summary)


def _nanmax(arr):
    return float(np.nanmax(arr)) if arr.size and np.isfinite(arr).any() else 0.0

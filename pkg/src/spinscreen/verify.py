"""Named invariant checks runnable from the library or the command line."""

import json
import random
from dataclasses import asdict, dataclass
from importlib import resources

import numpy as np

from . import exact, geometry, ninej, recursion, spins
from .errors import PatternError
from .geometry import Tetrahedron
from .spins import ScreenParams


@dataclass
class CheckResult:
    name: str
    value: float
    threshold: float
    passed: bool
    detail: str = ""


def _result(name, value, threshold, detail=""):
    return CheckResult(name=name, value=float(value), threshold=threshold,
                       passed=bool(value <= threshold), detail=detail)


def random_screen_params(rng, two_j_max=40):
    """A uniformly sampled valid parameter quadruple."""
    while True:
        quad = tuple(rng.randint(0, two_j_max) for _ in range(4))
        if sum(quad) % 2:
            continue
        try:
            return ScreenParams(*quad)
        except Exception:
            continue


def random_screen_point(rng, params):
    tx = rng.randrange(params.two_x_min, params.two_x_max + 1, 2) \
        if params.two_x_max > params.two_x_min else params.two_x_min
    ty = rng.randrange(params.two_y_min, params.two_y_max + 1, 2) \
        if params.two_y_max > params.two_y_min else params.two_y_min
    return tx, ty


def check_spectrum(params, rng, n_random):
    screen = recursion.screen_by_eigensolve(params)
    return [_result("spectrum-match", screen.diagnostics["spectrum_rel_error"],
                    1e-8, "eigenvalues vs closed-form lambda(y)")]


def check_orthonormality(params, rng, n_random):
    screen = recursion.screen_by_eigensolve(params)
    return [_result("orthonormality", screen.orthonormality_defect(), 1e-10,
                    "max |U^T U - I| for the eigensolver screen")]


def check_cross_methods(params, rng, n_random):
    eig = recursion.screen_by_eigensolve(params)
    two_d = recursion.screen_by_2d(params)
    out = [_result("cross-methods-eig-2d",
                   np.max(np.abs(eig.values - two_d.values)), 1e-8)]
    if params.two_kappa <= 280:
        oracle = exact.screen_oracle(params)
        out.append(_result("cross-methods-oracle-eig",
                           np.max(np.abs(oracle.values - eig.values)), 1e-8))
        out.append(_result("cross-methods-oracle-2d",
                           np.max(np.abs(oracle.values - two_d.values)), 1e-8))
    return out


def check_threeterm(params, rng, n_random):
    eig = recursion.screen_by_eigensolve(params)
    ys = params.y_lattice()
    picks = sorted({int(ys[0]), int(ys[len(ys) // 2]), int(ys[-1])})
    worst = 0.0
    for ty in picks:
        row = recursion.row_by_threeterm(ty, params)
        worst = max(worst, float(np.max(np.abs(row - eig.values[:, params.y_index(ty)]))))
    return [_result("threeterm-rows", worst, 1e-8,
                    "sampled rows vs eigensolver")]


def check_exact_symmetries(params, rng, n_random):
    bad = 0
    for _ in range(n_random):
        p = random_screen_params(rng, two_j_max=24)
        tx, ty = random_screen_point(rng, p)
        ta, tb, tc, td = p.as_tuple()
        ra, rb, rc, rd = spins.regge_conjugate(ta, tb, tc, td)
        base = exact.sixj_exact(ta, tb, tx, tc, td, ty)
        images = [
            exact.sixj_exact(tb, ta, tx, td, tc, ty),
            exact.sixj_exact(td, tc, tx, tb, ta, ty),
            exact.sixj_exact(tc, td, tx, ta, tb, ty),
            exact.sixj_exact(ra, rb, tx, rc, rd, ty),
            exact.sixj_exact(ta, td, ty, tc, tb, tx),
        ]
        if any(img != base for img in images):
            bad += 1
    return [_result("exact-symmetries", bad, 0,
                    "%d random argument sets" % n_random)]


def check_unit_sixj(params, rng, n_random):
    bad = 0
    done = 0
    while done < n_random:
        ta = rng.randint(0, 20)
        tb = rng.randint(0, 20)
        txs = [t for t in range(abs(ta - tb), ta + tb + 1, 2)]
        if not txs:
            continue
        tx = rng.choice(txs)
        dt = rng.choice((-2, 0, 2))
        args = (tb, tx + dt, ta, 2, ta, tx)
        if min(args) < 0:
            continue
        try:
            closed = exact.sixj_unit(*args)
        except PatternError:
            continue
        if closed != exact.sixj_exact(*args):
            bad += 1
        done += 1
    return [_result("unit-sixj", bad, 0, "closed forms vs single-sum")]


def check_regge_invariance(params, rng, n_random):
    conj = ScreenParams(*spins.regge_conjugate(*params.as_tuple()))
    eig = recursion.screen_by_eigensolve(params)
    eig_c = recursion.screen_by_eigensolve(conj)
    worst = float(np.max(np.abs(eig.values - eig_c.values)))
    ca = geometry.ridges_and_caustics(params, polish=False)
    cb = geometry.ridges_and_caustics(conj, polish=False)
    for fa, fb in ((ca.y_ridge, cb.y_ridge), (ca.v_max, cb.v_max),
                   (ca.y_caustic_lower, cb.y_caustic_lower),
                   (ca.y_caustic_upper, cb.y_caustic_upper),
                   (ca.x_ridge, cb.x_ridge)):
        both = np.isfinite(fa) & np.isfinite(fb)
        if not np.array_equal(np.isfinite(fa), np.isfinite(fb)):
            worst = max(worst, 1.0)
        if both.any():
            worst = max(worst, float(np.max(np.abs(fa[both] - fb[both]))))
    return [_result("regge-invariance", worst, 1e-12,
                    "U grid and geometric curves under parameter conjugation")]


def check_geometry_identities(params, rng, n_random):
    worst_lambda = worst_gram = worst_root = worst_ridge = 0.0
    for _ in range(n_random):
        pts = np.array([[rng.uniform(-2, 2) for _ in range(3)] for _ in range(4)])
        d = lambda i, j: float(np.linalg.norm(pts[i] - pts[j]))
        t = Tetrahedron(A=d(2, 3), B=d(1, 3), C=d(0, 1), D=d(0, 2),
                        X=d(1, 2), Y=d(0, 3))
        sides = (rng.uniform(0.1, 3), rng.uniform(0.1, 3), 0.0)
        a, b = sides[0], sides[1]
        g = rng.uniform(abs(a - b), a + b)
        lam = geometry.lambda_quartic(a, b, g)
        f = geometry.heron_area(a, b, g)
        worst_lambda = max(worst_lambda,
                           abs(lam + 16 * f * f) / max(abs(lam), 1e-30))
        v_cm = geometry.volume_sq(t)
        v_gr = geometry.volume_sq_gram(t)
        worst_gram = max(worst_gram, abs(v_cm - v_gr) / max(abs(v_cm), 1e-12))
    caustics = geometry.ridges_and_caustics(params)
    A, B, C, D = (geometry.edge_length(t) for t in params.as_tuple())
    for i, Xv in enumerate(caustics.x_samples):
        vmax = caustics.v_max[i]
        if not np.isfinite(vmax) or vmax <= 0:
            continue
        for Yv in (caustics.y_caustic_lower[i], caustics.y_caustic_upper[i]):
            if np.isfinite(Yv):
                v2 = geometry.volume_sq(Tetrahedron(A, B, C, D, float(Xv), float(Yv)))
                worst_root = max(worst_root, abs(v2) / vmax ** 2)
        yr = caustics.y_ridge[i]
        if np.isfinite(yr):
            v2 = geometry.volume_sq(Tetrahedron(A, B, C, D, float(Xv), float(yr)))
            worst_ridge = max(worst_ridge,
                              abs(np.sqrt(max(v2, 0.0)) - vmax) / vmax)
    return [
        _result("geometry-lambda-heron", worst_lambda, 1e-12),
        _result("geometry-cm-gram", worst_gram, 1e-10),
        _result("geometry-caustic-roots", worst_root, 1e-9,
                "V^2 at caustic roots over Vmax^2"),
        _result("geometry-ridge-volume", worst_ridge, 1e-10,
                "V at ridge vs closed-form Vmax"),
    ]


def check_cross_identity(params, rng, n_random):
    small = ScreenParams(8, 10, 12, 10)
    oracle = exact.screen_oracle(small)
    res = recursion._cross_residual_max(small, oracle.values)
    return [_result("cross-identity", res, 1e-12,
                    "cross-recursion residual on exact values")]


def check_golden(params, rng, n_random, golden_path=None):
    if golden_path is None:
        ref = resources.files("spinscreen").joinpath("data/golden_reference.json")
        payload = json.loads(ref.read_text())
    else:
        with open(golden_path) as fh:
            payload = json.load(fh)
    p = ScreenParams(payload["two_a"], payload["two_b"],
                     payload["two_c"], payload["two_d"])
    bad = 0
    for pt in payload["points"]:
        val = exact.u_exact(pt["two_x"], pt["two_y"], p)
        if (str(val.q) != pt["q"] or str(val.p) != pt["p"]
                or format(val.to_real(), ".17g") != pt["u"]):
            bad += 1
    return [_result("golden", bad, 0,
                    "%d stored exact values" % len(payload["points"]))]


CHECKS = {
    "spectrum": check_spectrum,
    "orthonormality": check_orthonormality,
    "cross-methods": check_cross_methods,
    "threeterm": check_threeterm,
    "exact-symmetries": check_exact_symmetries,
    "unit-sixj": check_unit_sixj,
    "regge-invariance": check_regge_invariance,
    "geometry-identities": check_geometry_identities,
    "cross-identity": check_cross_identity,
    "golden": check_golden,
}


def run_checks(names=None, params=None, n_random=200, seed=1234,
               golden_path=None):
    """Run the selected named checks and return their results."""
    if params is None:
        params = ScreenParams(60, 90, 120, 110)
    selected = list(CHECKS) if not names else [
        k for k in CHECKS if any(n in k for n in names)]
    results = []
    for name in selected:
        rng = random.Random(seed)
        fn = CHECKS[name]
        if name == "golden":
            results.extend(fn(params, rng, n_random, golden_path=golden_path))
        else:
            results.extend(fn(params, rng, n_random))
    return results


def run_ninej_checks(count=100, two_j_max=12, seed=0, two_h=None, reduce_check=False,
                     params=None):
    """Residual sweep over random stencils, plus the h=0 reduction report."""
    results = []
    if two_h is None:
        stencils = ninej.random_stencils(count, two_j_max=two_j_max, seed=seed)
    else:
        rng = random.Random(seed)
        stencils = []
        attempts = 0
        while len(stencils) < count and attempts < 200000:
            attempts += 1
            tjs = [rng.randint(0, two_j_max) for _ in range(9)]
            tjs[7] = two_h
            if two_h == 0:
                tjs[4] = tjs[1]
                tjs[8] = tjs[6]
            if ninej.ninej_valid(*tjs):
                stencils.append(tuple(tjs))
    if not stencils:
        return None
    worst = 0.0
    for tjs in stencils:
        worst = max(worst, ninej.ninej_residual(*tjs).relative)
    results.append(_result("ninej-residual", worst, 1e-10,
                           "%d stencils, two_j_max=%d" % (len(stencils), two_j_max)))
    if reduce_check:
        if params is None:
            params = ScreenParams(60, 90, 120, 110)
        rep = ninej.reduction_check(params, n_stencils=50, seed=seed)
        results.append(_result("ninej-reduction", rep.max_ratio_deviation, 1e-9,
                               "%d stencils checked, %d skipped"
                               % (rep.n_checked, rep.n_skipped)))
    return results


def results_report(results):
    """JSON-ready report structure."""
    return {"checks": [asdict(r) for r in results],
            "passed": all(r.passed for r in results)}

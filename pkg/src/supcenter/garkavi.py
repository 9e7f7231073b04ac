"""Renormed-ball model with the half-ball projection property.

Classical construction (Garkavi's example, desk scale): inside R^n with the
sup norm, fix the hyperplane Y = ker(first coordinate) and a norm-one
functional Phi on Y.  A slab U inside the unit ball of Y, a small cube
V = x0 + B_gamma around the unit vector x0, and their reflections generate a
symmetric convex body B = conv(U, V, -V) whose Minkowski gauge renorms the
space.  Under the gauge, the nearest-point map onto Y at x0 is exactly
B_gamma, and near-projections are uniformly close to exact ones (the
"half-ball" identity P_Y(x, eps) = {y : d(y, P_Y(x)) <= eps}).

In finite dimension the slab must stop strictly short of the critical level
alpha = min(Phi over the certificate ball): the infimum is attained, so the
verbatim threshold would touch the ball.  The builder therefore shrinks the
slab to alpha - theta and certifies disjointness by an infeasibility LP;
theta = 0 reproduces the failure on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lp
from .constraints import Functional, Polytope, Subspace
from .errors import LPNumericalError, ModelBuildError
from .space import _hausdorff_points, as_vector
from .tolerances import DEFAULT_TOL

SET_TOL = 1e-7  # default tolerance for gauge and set comparisons


@dataclass(eq=False)
class GarkaviModel:
    n: int
    seed: int
    gamma: float
    theta: float
    phi: Functional
    x0: np.ndarray
    y0: np.ndarray
    alpha: float
    subspace: Subspace
    slab: Polytope           # U
    cube: Polytope           # V = x0 + B_gamma
    small_ball: Polytope     # B_gamma
    ball_facets: np.ndarray     # rows a with B = {z : a.z <= 1}
    section_facets: np.ndarray  # rows s with B cap Y = {y in Y : s.y <= 1}
    section_vertices: np.ndarray
    hull_points: np.ndarray
    certificates: dict[str, float]
    c_lower: float           # c_lower * |x|_inf <= gauge(x)
    c_upper: float           # gauge(x) <= c_upper * |x|_inf


def _extreme_values(poly: Polytope, direction: np.ndarray, tol: float) -> float:
    sol = lp.solve(lp.LinearProgram(
        c=direction, sense="max", a_ub=poly.a_ub, b_ub=poly.b_ub,
        a_eq=poly.a_eq if poly.a_eq.size else None,
        b_eq=poly.b_eq if poly.b_eq.size else None), tol=tol)
    if sol.status != lp.OPTIMAL:
        raise LPNumericalError(f"extreme-value LP ended with status {sol.status}")
    return float(sol.value)


def build_model(n: int, seed: int = 0, gamma: float = 1.0 / 16.0, theta: float = 1e-3,
                tol: float = DEFAULT_TOL) -> GarkaviModel:
    """Construct and certify the renormed-ball model in dimension n >= 3.

    Every geometric prerequisite is certified by an LP; a failed certificate
    raises ModelBuildError naming it (build with theta = 0 to see the
    attained-infimum failure).
    """
    if n < 3:
        raise ValueError(f"the model needs dimension >= 3, got {n}")
    if not 0 < gamma < 1.0 / 12.0:
        raise ValueError(f"gamma must sit in (0, 1/12), got {gamma}")
    if theta < 0:
        raise ValueError(f"theta must be nonnegative, got {theta}")
    rng = np.random.default_rng(seed)
    raw = rng.uniform(0.3, 1.0, n - 1) * rng.choice([-1.0, 1.0], n - 1)
    weights = raw / np.sum(np.abs(raw))
    phi = Functional(support=tuple(range(1, n)), weights=tuple(weights))
    subspace = Subspace(dim=n, functionals=(Functional(support=(0,), weights=(1.0,)),))

    x0 = np.zeros(n)
    x0[0] = 1.0
    y0 = np.zeros(n)
    y0[1:] = (1.0 - 2.0 * gamma) * np.sign(weights)

    certificates: dict[str, float] = {}

    # ball around y0 inside Y
    eye = np.eye(n)
    box_rows = np.vstack([eye[1:], -eye[1:]])
    ball_y0 = Polytope(a_ub=box_rows, b_ub=np.concatenate([y0[1:] + gamma, gamma - y0[1:]]),
                       a_eq=eye[:1], b_eq=np.zeros(1), bounded_hint=True)

    # certificate: the ball stays strictly inside the unit ball of Y
    max_norm = 0.0
    for j in range(1, n):
        max_norm = max(max_norm, _extreme_values(ball_y0, eye[j], tol),
                       _extreme_values(ball_y0, -eye[j], tol))
    certificates["interior-margin"] = 1.0 - max_norm
    if certificates["interior-margin"] <= 0:
        raise ModelBuildError(
            f"certificate ball around y0 leaves the unit ball (max norm {max_norm})",
            certificate="interior")

    # certificate: Phi stays strictly above 3/4 on the ball, and alpha < 1
    phi_row = phi.dense(n)
    alpha = -_extreme_values(ball_y0, -phi_row, tol)  # min Phi over the ball
    certificates["level-margin"] = alpha - 0.75
    certificates["alpha-below-one"] = 1.0 - alpha
    if certificates["level-margin"] <= 0:
        raise ModelBuildError(f"Phi dips to {alpha} <= 3/4 on the certificate ball",
                              certificate="level")
    if certificates["alpha-below-one"] <= 0:
        raise ModelBuildError(f"alpha = {alpha} not strictly below 1", certificate="alpha")

    shrink = alpha - theta
    certificates["shrink-positive"] = shrink
    if shrink <= 0:
        raise ModelBuildError(f"slab level alpha - theta = {shrink} not positive",
                              certificate="shrink")
    certificates["gamma-inside-slab"] = shrink - gamma
    if certificates["gamma-inside-slab"] <= 0:
        raise ModelBuildError(
            f"B_gamma must sit inside the slab: gamma = {gamma} >= alpha - theta = {shrink}",
            certificate="gamma-slab")

    # certificate: the shrunk slab misses the ball around y0 (infeasibility LP)
    slab_rows = np.vstack([np.vstack([eye[1:], -eye[1:]]), phi_row, -phi_row])
    slab_rhs = np.concatenate([np.ones(2 * (n - 1)), [shrink, shrink]])
    meet = Polytope(
        a_ub=np.vstack([slab_rows, ball_y0.a_ub]),
        b_ub=np.concatenate([slab_rhs, ball_y0.b_ub]),
        a_eq=eye[:1], b_eq=np.zeros(1))
    feas = lp.solve(lp.LinearProgram(c=np.zeros(n), a_ub=meet.a_ub, b_ub=meet.b_ub,
                                     a_eq=meet.a_eq, b_eq=meet.b_eq), tol=tol)
    certificates["disjoint"] = theta
    if feas.status != lp.INFEASIBLE:
        raise ModelBuildError(
            "slab meets the certificate ball (the critical level is attained); "
            "a positive shrink theta is required in finite dimension",
            certificate="disjoint")

    slab = Polytope(a_ub=slab_rows, b_ub=slab_rhs, a_eq=eye[:1], b_eq=np.zeros(1),
                    bounded_hint=True)
    cube = Polytope(a_ub=box_rows, b_ub=np.full(2 * (n - 1), gamma),
                    a_eq=eye[:1], b_eq=np.ones(1), bounded_hint=True)
    small_ball = Polytope(a_ub=box_rows, b_ub=np.full(2 * (n - 1), gamma),
                          a_eq=eye[:1], b_eq=np.zeros(1), bounded_hint=True)

    from scipy.spatial import ConvexHull

    cube_verts = cube.vertices(tol)
    hull_points = np.vstack([slab.vertices(tol), cube_verts, -cube_verts])
    hull = ConvexHull(hull_points)
    offsets = -hull.equations[:, n]
    certificates["ball-interior"] = float(np.min(offsets))
    if certificates["ball-interior"] <= 1e-12:
        raise ModelBuildError("origin is not interior to the renormed ball",
                              certificate="ball-interior")
    ball_facets = hull.equations[:, :n] / offsets[:, None]
    ball_facets.setflags(write=False)

    # facet description of the section B cap Y: gauge of differences inside Y
    # only needs these few rows instead of every facet of B
    section = Polytope(a_ub=ball_facets, b_ub=np.ones(ball_facets.shape[0]),
                       a_eq=eye[:1], b_eq=np.zeros(1), bounded_hint=True)
    section_vertices = section.vertices(tol)
    section_hull = ConvexHull(section_vertices[:, 1:])
    section_offsets = -section_hull.equations[:, n - 1]
    certificates["section-interior"] = float(np.min(section_offsets))
    if certificates["section-interior"] <= 1e-12:
        raise ModelBuildError("origin is not interior to the ball section in Y",
                              certificate="section-interior")
    section_facets = np.hstack([np.zeros((section_hull.equations.shape[0], 1)),
                                section_hull.equations[:, : n - 1] / section_offsets[:, None]])
    section_facets.setflags(write=False)

    model = GarkaviModel(n=n, seed=seed, gamma=gamma, theta=theta, phi=phi, x0=x0, y0=y0,
                         alpha=alpha, subspace=subspace, slab=slab, cube=cube,
                         small_ball=small_ball, ball_facets=ball_facets,
                         section_facets=section_facets, section_vertices=section_vertices,
                         hull_points=hull_points, certificates=certificates,
                         c_lower=0.0, c_upper=0.0)

    # norm-equivalence constants and the unit certificate for x0
    max_point_norm = float(np.max(np.abs(hull_points)))
    model.c_lower = 1.0 / max_point_norm
    model.c_upper = float(sum(gauge_norm(model, eye[j]) for j in range(n)))
    g_x0 = gauge_norm(model, x0)
    certificates["x0-gauge-gap"] = abs(g_x0 - 1.0)
    if certificates["x0-gauge-gap"] > 1e-7:
        raise ModelBuildError(f"gauge of x0 is {g_x0}, expected 1", certificate="x0-gauge")
    model.certificates = certificates
    return model


def _gauge_facets(model: GarkaviModel, x) -> float:
    """Gauge via the facet description: max over facets of a.x."""
    x = as_vector(x, model.n)
    return max(float(np.max(model.ball_facets @ x)), 0.0)


def gauge_norm(model: GarkaviModel, x, tol: float = DEFAULT_TOL) -> float:
    """Minkowski gauge of the renormed ball, by the scaled-decomposition LP.

    x is split as u + v' - v'' with u in p*slab, v' in q*cube, v'' in r*cube
    and p+q+r minimal; the facet description provides an independent check.
    """
    value, _ = gauge_decomposition(model, x, tol=tol)
    return value


def gauge_decomposition(model: GarkaviModel, x, tol: float = DEFAULT_TOL):
    """Gauge value plus the witness decomposition (u, v_plus, v_minus, p, q, r)."""
    x = as_vector(x, model.n)
    n = model.n
    nv = 3 * n + 3  # u, v_plus, v_minus, p, q, r
    iu, ivp, ivm = 0, n, 2 * n
    ip, iq, ir = 3 * n, 3 * n + 1, 3 * n + 2

    a_eq = np.zeros((n + 3, nv))
    b_eq = np.zeros(n + 3)
    a_eq[:n, iu:iu + n] = np.eye(n)
    a_eq[:n, ivp:ivp + n] = np.eye(n)
    a_eq[:n, ivm:ivm + n] = -np.eye(n)
    b_eq[:n] = x
    a_eq[n, iu] = 1.0                      # u_0 = 0
    a_eq[n + 1, ivp] = 1.0                 # v'_0 = q
    a_eq[n + 1, iq] = -1.0
    a_eq[n + 2, ivm] = 1.0                 # v''_0 = r
    a_eq[n + 2, ir] = -1.0

    rows = []
    rhs = []
    phi_row = model.phi.dense(n)
    shrink = model.alpha - model.theta
    for j in range(1, n):
        for sign in (1.0, -1.0):
            row = np.zeros(nv)
            row[iu + j] = sign
            row[ip] = -1.0
            rows.append(row)
            rhs.append(0.0)
    for sign in (1.0, -1.0):
        row = np.zeros(nv)
        row[iu:iu + n] = sign * phi_row
        row[ip] = -shrink
        rows.append(row)
        rhs.append(0.0)
    for base, scale_idx in ((ivp, iq), (ivm, ir)):
        for j in range(1, n):
            for sign in (1.0, -1.0):
                row = np.zeros(nv)
                row[base + j] = sign
                row[scale_idx] = -model.gamma
                rows.append(row)
                rhs.append(0.0)
    for idx in (ip, iq, ir):
        row = np.zeros(nv)
        row[idx] = -1.0
        rows.append(row)
        rhs.append(0.0)

    c = np.zeros(nv)
    c[[ip, iq, ir]] = 1.0
    sol = lp.solve(lp.LinearProgram(c=c, a_ub=np.array(rows), b_ub=np.array(rhs),
                                    a_eq=a_eq, b_eq=b_eq), tol=tol)
    if sol.status != lp.OPTIMAL:
        raise LPNumericalError(f"gauge LP ended with status {sol.status}")
    value = max(float(sol.value), 0.0)
    parts = (sol.x[iu:iu + n], sol.x[ivp:ivp + n], sol.x[ivm:ivm + n],
             float(sol.x[ip]), float(sol.x[iq]), float(sol.x[ir]))
    return value, parts


def subspace_gauge_distance(model: GarkaviModel, x, tol: float = DEFAULT_TOL) -> tuple[float, np.ndarray]:
    """min over y in Y of gauge(x - y), with a nearest point."""
    x = as_vector(x, model.n)
    n = model.n
    facets = model.ball_facets
    m = facets.shape[0]
    a_ub = np.zeros((m, n + 1))
    a_ub[:, :n] = -facets
    a_ub[:, n] = -1.0
    b_ub = -facets @ x
    a_eq = np.zeros((1, n + 1))
    a_eq[0, 0] = 1.0
    c = np.zeros(n + 1)
    c[n] = 1.0
    sol = lp.solve(lp.LinearProgram(c=c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=np.zeros(1)),
                   tol=tol)
    if sol.status != lp.OPTIMAL:
        raise LPNumericalError(f"distance LP ended with status {sol.status}")
    return max(float(sol.value), 0.0), sol.x[:n]


def metric_projection(model: GarkaviModel, x, eps: float = 0.0,
                      tol: float = DEFAULT_TOL) -> Polytope:
    """P_Y(x, eps): the y in Y with gauge(x - y) <= d(x, Y) + eps."""
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    x = as_vector(x, model.n)
    dist, _ = subspace_gauge_distance(model, x, tol=tol)
    facets = model.ball_facets
    eye = np.eye(model.n)
    return Polytope(a_ub=-facets, b_ub=dist + eps - facets @ x,
                    a_eq=eye[:1], b_eq=np.zeros(1), bounded_hint=True)


def _gauge_distance_to_hull(model: GarkaviModel, x, verts: np.ndarray,
                            tol: float = DEFAULT_TOL) -> float:
    """min over p in conv(verts) of gauge(x - p), for x and verts inside Y.

    Differences stay in Y, where the gauge is the max over the few section
    facets; the hull point is a convex combination, so the LP has one
    variable per vertex instead of one row per ball facet.
    """
    x = as_vector(x, model.n)
    s = model.section_facets
    k = verts.shape[0]
    sp = s @ verts.T
    a_ub = np.hstack([-sp, -np.ones((s.shape[0], 1))])
    b_ub = -(s @ x)
    a_eq = np.hstack([np.ones((1, k)), np.zeros((1, 1))])
    c = np.zeros(k + 1)
    c[k] = 1.0
    sol = lp.solve(lp.LinearProgram(c=c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=np.ones(1),
                                    bounds=[(0.0, None)] * (k + 1)), tol=tol)
    if sol.status != lp.OPTIMAL:
        raise LPNumericalError(f"gauge distance LP ended with status {sol.status}")
    return max(float(sol.value), 0.0)


@dataclass(frozen=True)
class HalfBallSample:
    x: tuple[float, ...]
    eps: float
    distance: float
    forward_gap: float   # near-projections past the eps-fattened exact set
    backward_gap: float  # fattened exact set past the near-projection set
    covariance_gap: float


@dataclass(frozen=True)
class HalfBallReport:
    samples: tuple[HalfBallSample, ...]
    replay_rows: tuple[tuple[float, float, float], ...]  # (eta, bound, achieved)
    tol: float

    @property
    def passed(self) -> bool:
        ok_sets = all(s.forward_gap <= self.tol and s.backward_gap <= self.tol
                      and s.covariance_gap <= self.tol for s in self.samples)
        ok_replay = all(achieved <= bound + self.tol for _, bound, achieved in self.replay_rows)
        return ok_sets and ok_replay


def half_ball_check(model: GarkaviModel, samples: int, eps_values: tuple[float, ...] = (0.2, 0.1),
                    seed: int = 0, tol: float = SET_TOL) -> HalfBallReport:
    """Certify the half-ball identity P_Y(x, eps) = {y : d(y, P_Y(x)) <= eps}
    on sampled points, the translation/scale covariance of projections, and
    the decomposition bound d(y, B_gamma) <= gauge(y - x0) - 1.
    """
    rng = np.random.default_rng(seed)
    n = model.n
    section_verts = model.section_vertices
    rows = []
    for _ in range(samples):
        y_part = np.zeros(n)
        y_part[1:] = rng.uniform(-0.5, 0.5, n - 1)
        lam = float(rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0]))
        x = y_part + lam * model.x0
        dist, _ = subspace_gauge_distance(model, x)
        exact = metric_projection(model, x, 0.0)
        exact_verts = exact.vertices(DEFAULT_TOL)
        for eps in eps_values:
            near = metric_projection(model, x, float(eps))
            near_verts = near.vertices(DEFAULT_TOL)
            forward = max((_gauge_distance_to_hull(model, v, exact_verts) - eps
                           for v in near_verts), default=0.0)
            backward = 0.0
            for p in exact_verts:
                for b in section_verts:
                    cand = p + eps * b
                    backward = max(backward, _gauge_facets(model, x - cand) - dist - eps)
            # covariance: P_Y(y + lam x0, eps) = y + lam P_Y(x0, eps/|lam|)
            base = metric_projection(model, model.x0, float(eps) / abs(lam))
            mapped = y_part + lam * base.vertices(DEFAULT_TOL)
            covariance_gap = _hausdorff_points(near_verts, mapped)
            rows.append(HalfBallSample(x=tuple(x), eps=float(eps), distance=dist,
                                       forward_gap=max(forward, 0.0),
                                       backward_gap=max(backward, 0.0),
                                       covariance_gap=covariance_gap))

    replay_rows = []
    for eps in eps_values:
        for _ in range(max(2, samples // 2)):
            eta_target = 1.0 + float(rng.uniform(0.2, 1.0)) * eps
            direction = np.zeros(n)
            direction[1:] = rng.uniform(-1.0, 1.0, n - 1)
            if np.max(np.abs(direction)) < 1e-12:
                direction[1] = 1.0
            replay_rows.append(_decomposition_replay(model, direction, eta_target))
    return HalfBallReport(samples=tuple(rows), replay_rows=tuple(replay_rows), tol=tol)


def _decomposition_replay(model: GarkaviModel, direction: np.ndarray,
                          eta_target: float) -> tuple[float, float, float]:
    """Walk out of B_gamma along a ray until gauge(y - x0) = eta, then recover
    a point of B_gamma within eta - 1 from the gauge decomposition."""
    def value(t: float) -> float:
        return _gauge_facets(model, t * direction - model.x0)

    hi = 1.0
    while value(hi) < eta_target and hi < 1e6:
        hi *= 2.0
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if value(mid) < eta_target:
            lo = mid
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    y = t * direction
    eta, (_, _, vm, _, _, r) = gauge_decomposition(model, y - model.x0)
    # the x*-coordinate forces r = q + 1 >= 1, so the division is safe
    if r <= 0.5:
        raise LPNumericalError("decomposition lost the mandatory reflected-cube part")
    y_near = model.x0 - vm / r
    achieved = _gauge_facets(model, y - y_near)
    if model.small_ball.violation(y_near) > 1e-7:
        raise LPNumericalError("recovered point left B_gamma")
    return (eta, eta - 1.0, achieved)


@dataclass(frozen=True)
class TrendRow:
    n: int
    radius: float
    phi_at_center: float
    alpha: float


def center_trend(n_values: tuple[int, ...], seed: int = 0, gamma: float = 1.0 / 16.0,
                 theta: float = 1e-3, tol: float = DEFAULT_TOL) -> tuple[TrendRow, ...]:
    """Gauge-norm Chebyshev data for the two-point family {0, x0 + y0} over Y
    across dimensions.  Reported as a trend only: the interesting failure is
    infinite-dimensional, so no pass/fail is attached."""
    rows = []
    for n in n_values:
        model = build_model(n, seed=seed, gamma=gamma, theta=theta, tol=tol)
        targets = np.vstack([np.zeros(n), model.x0 + model.y0])
        facets = model.ball_facets
        m = facets.shape[0]
        a_ub = np.zeros((2 * m, n + 1))
        b_ub = np.zeros(2 * m)
        for k, target in enumerate(targets):
            a_ub[k * m:(k + 1) * m, :n] = facets
            a_ub[k * m:(k + 1) * m, n] = -1.0
            b_ub[k * m:(k + 1) * m] = facets @ target
        eye = np.eye(n)
        a_eq = np.zeros((1, n + 1))
        a_eq[0, 0] = 1.0
        c = np.zeros(n + 1)
        c[n] = 1.0
        sol = lp.solve(lp.LinearProgram(c=c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=np.zeros(1)),
                       tol=tol)
        if sol.status != lp.OPTIMAL:
            raise LPNumericalError(f"trend LP ended with status {sol.status}")
        center = sol.x[:n]
        rows.append(TrendRow(n=n, radius=float(sol.value),
                             phi_at_center=model.phi(center), alpha=model.alpha))
    return tuple(rows)

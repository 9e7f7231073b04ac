"""Restricted Chebyshev radii, center sets and near-center sets.

For a constraint set V and a finite family B, the restricted radius is
rad_V(B) = inf_{v in V} r(v, B); the center set is the slab S_rad(B)
intersected with V, and the near-center set relaxes the slab by a slack
delta.  All three reduce to linear programs over H-polytopes here, and every
report recomputes the radius by LP rather than trusting a cached value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lp
from .constraints import Polytope, Subspace, ball_polytope
from .errors import (
    DimensionMismatchError,
    InfeasiblePolytopeError,
    LPNumericalError,
    PreconditionError,
)
from .space import FunctionFamily, _hausdorff_points, as_vector, farthest_radius, global_center
from .tolerances import BOX_FACTOR, DEFAULT_TOL


@dataclass(frozen=True)
class CenterProblem:
    """A family to approximate and the feasible polytope to approximate from."""

    family: FunctionFamily
    feasible: Polytope

    def __post_init__(self):
        if self.family.dim != self.feasible.dim:
            raise DimensionMismatchError(
                f"family dim {self.family.dim} != constraint dim {self.feasible.dim}")

    @property
    def dim(self) -> int:
        return self.family.dim


@dataclass(frozen=True)
class CenterReport:
    radius: float
    representative: np.ndarray
    center_polytope: Polytope
    mode: str = "pointwise"


def ball_problem(family: FunctionFamily, y: Subspace, lam: float = 1.0) -> CenterProblem:
    """Problem with V = lam * (unit ball of the kernel subspace)."""
    if family.dim != y.dim:
        raise DimensionMismatchError(f"family dim {family.dim} != subspace dim {y.dim}")
    return CenterProblem(family=family, feasible=ball_polytope(y, lam))


def subspace_problem(family: FunctionFamily, y: Subspace,
                     box_factor: float = BOX_FACTOR, tol: float = DEFAULT_TOL) -> CenterProblem:
    """Problem with V = the whole kernel subspace.

    The subspace is unbounded, so a large box (box_factor times the data
    magnitude) makes the LPs well posed.  The box is certified non-binding by
    re-solving with a box twice as large and comparing radii.
    """
    if family.dim != y.dim:
        raise DimensionMismatchError(f"family dim {family.dim} != subspace dim {y.dim}")
    magnitude = max(1.0, float(np.max(np.abs(family.values))))
    rows = y.rows()

    def build(scale):
        box = Polytope.box(y.dim, box_factor * scale * magnitude)
        if rows.shape[0] == 0:
            return CenterProblem(family=family, feasible=box)
        return CenterProblem(family=family, feasible=Polytope(
            a_ub=box.a_ub, b_ub=box.b_ub, a_eq=rows, b_eq=np.zeros(rows.shape[0])))

    problem = build(1.0)
    r1 = restricted_radius(problem, tol=tol)
    r2 = restricted_radius(build(2.0), tol=tol)
    if abs(r1 - r2) > 1e-7 * (1.0 + abs(r1)):
        raise LPNumericalError(
            f"bounding box binds the subspace problem (radius {r1} vs {r2}); enlarge box_factor")
    return problem


def _radius_lp(values: np.ndarray, feasible: Polytope, tol: float) -> tuple[float, np.ndarray]:
    """min t s.t. v in feasible, |v_i - f_i| <= t for every member f."""
    m, n = values.shape
    mi = feasible.a_ub.shape[0]
    a_ub = np.zeros((mi + 2 * m * n, n + 1))
    b_ub = np.zeros(mi + 2 * m * n)
    a_ub[:mi, :n] = feasible.a_ub
    b_ub[:mi] = feasible.b_ub
    eye = np.eye(n)
    for k in range(m):
        lo = mi + 2 * k * n
        a_ub[lo : lo + n, :n] = eye
        a_ub[lo : lo + n, n] = -1.0
        b_ub[lo : lo + n] = values[k]
        a_ub[lo + n : lo + 2 * n, :n] = -eye
        a_ub[lo + n : lo + 2 * n, n] = -1.0
        b_ub[lo + n : lo + 2 * n] = -values[k]
    a_eq = b_eq = None
    if feasible.a_eq.shape[0]:
        a_eq = np.hstack([feasible.a_eq, np.zeros((feasible.a_eq.shape[0], 1))])
        b_eq = feasible.b_eq
    c = np.zeros(n + 1)
    c[n] = 1.0
    sol = lp.solve(lp.LinearProgram(c=c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq), tol=tol)
    if sol.status == lp.INFEASIBLE:
        raise InfeasiblePolytopeError("constraint set V is empty")
    if sol.status != lp.OPTIMAL:
        raise LPNumericalError(f"radius LP ended with status {sol.status}")
    return float(sol.value), sol.x[:n]


def restricted_radius(problem: CenterProblem, tol: float = DEFAULT_TOL) -> float:
    """rad_V(B) as the optimal value of a single LP."""
    radius, _ = _radius_lp(problem.family.values, problem.feasible, tol)
    return radius


def _slab_polytope(problem: CenterProblem, width: float) -> Polytope:
    """V intersected with {v : |v - f|_inf <= width for every member f}."""
    values = problem.family.values
    m, n = values.shape
    eye = np.eye(n)
    a = np.tile(np.vstack([eye, -eye]), (m, 1))
    b = np.concatenate([np.concatenate([f + width, width - f]) for f in values])
    return problem.feasible.with_rows(a, b)


def center_set(problem: CenterProblem, tol: float = DEFAULT_TOL) -> CenterReport:
    """Restricted center set as a polytope, with the LP minimizer attached.

    The representative is whichever optimum the deterministic pivot rule
    lands on; the polytope is the canonical answer.
    """
    radius, rep = _radius_lp(problem.family.values, problem.feasible, tol)
    poly = _slab_polytope(problem, radius)
    if poly.violation(rep) > tol * 100.0 + 1e-12:
        raise LPNumericalError("radius minimizer violates its own center polytope")
    return CenterReport(radius=radius, representative=rep, center_polytope=poly)


def near_center_set(problem: CenterProblem, delta: float, tol: float = DEFAULT_TOL) -> Polytope:
    """cent_V(B, delta): all v in V with r(v, B) <= rad_V(B) + delta."""
    if delta < 0:
        raise ValueError(f"slack must be nonnegative, got {delta}")
    radius, _ = _radius_lp(problem.family.values, problem.feasible, tol)
    return _slab_polytope(problem, radius + delta)


@dataclass(frozen=True)
class ScalingIdentityReport:
    """Vertex-set Hausdorff gaps for the ball-scaling identities."""

    lam: float
    delta: float
    radius_gap: float
    center_gap: float
    near_gap: float
    tol: float
    passed: bool


def check_scaling_identity(y: Subspace, family: FunctionFamily, lam: float,
                           delta: float | None = None, tol: float = DEFAULT_TOL,
                           set_tol: float = 1e-6) -> ScalingIdentityReport:
    """Certify cent_{lam B_Y}(B) = lam cent_{B_Y}(B / lam), and the
    delta-version for near-center sets."""
    if lam <= 0:
        raise ValueError(f"scale must be positive, got {lam}")
    direct = CenterProblem(family=family, feasible=ball_polytope(y, lam))
    shrunk = CenterProblem(family=FunctionFamily(family.values / lam),
                           feasible=ball_polytope(y, 1.0))
    r_direct = restricted_radius(direct, tol=tol)
    r_shrunk = restricted_radius(shrunk, tol=tol)
    radius_gap = abs(r_direct - lam * r_shrunk)

    left = center_set(direct, tol=tol).center_polytope.vertices(tol)
    right = lam * center_set(shrunk, tol=tol).center_polytope.vertices(tol)
    center_gap = _hausdorff_points(left, right)

    if delta is None:
        delta = 0.25 * max(r_direct, tol)
    near_left = near_center_set(direct, delta, tol=tol).vertices(tol)
    near_right = lam * near_center_set(shrunk, delta / lam, tol=tol).vertices(tol)
    near_gap = _hausdorff_points(near_left, near_right)

    passed = radius_gap <= set_tol and center_gap <= set_tol and near_gap <= set_tol
    return ScalingIdentityReport(lam=lam, delta=float(delta), radius_gap=radius_gap,
                                 center_gap=center_gap, near_gap=near_gap,
                                 tol=set_tol, passed=passed)


@dataclass(frozen=True)
class ThresholdReport:
    """Behaviour of centers when the ball grows past the data magnitude."""

    tau: float
    lam: float
    inclusion_gap: float          # how far cent_Y vertices stick out of cent_{lam B_Y}
    equality_checked: bool
    equality_gap: float | None    # reverse direction, only meaningful above tau
    tol: float
    passed: bool


def check_threshold_equality(y: Subspace, family: FunctionFamily, lam: float | None = None,
                             tol: float = DEFAULT_TOL, set_tol: float = 1e-6) -> ThresholdReport:
    """Certify cent_Y(B) subset of cent_{lam B_Y}(B) for lam >= tau and equality
    strictly above tau, where tau = max_b |b|_inf + rad_Y(B).

    The equality direction is only asserted for lam > tau by a clear margin;
    at lam = tau the identity is too fragile in floating point.
    """
    free = subspace_problem(family, y, tol=tol)
    r_free = restricted_radius(free, tol=tol)
    tau = float(np.max(np.abs(family.values))) + r_free
    if lam is None:
        lam = tau + 1.0
    if lam < tau - tol:
        raise PreconditionError(f"scale {lam} below threshold {tau}: inclusion not guaranteed")

    scaled = CenterProblem(family=family, feasible=ball_polytope(y, lam))
    free_centers = center_set(free, tol=tol)
    scaled_centers = center_set(scaled, tol=tol)

    inclusion_gap = max(
        (scaled_centers.center_polytope.violation(v) for v in free_centers.center_polytope.vertices(tol)),
        default=0.0,
    )
    equality_checked = lam > tau + 1e-6
    equality_gap = None
    if equality_checked:
        equality_gap = max(
            (free_centers.center_polytope.violation(v) for v in scaled_centers.center_polytope.vertices(tol)),
            default=0.0,
        )
    passed = inclusion_gap <= set_tol and (not equality_checked or equality_gap <= set_tol)
    return ThresholdReport(tau=tau, lam=float(lam), inclusion_gap=float(inclusion_gap),
                           equality_checked=equality_checked,
                           equality_gap=None if equality_gap is None else float(equality_gap),
                           tol=set_tol, passed=passed)


def perturbation_slack_bound(radius: float, gamma: float, eps: float) -> float:
    """Largest admissible slack min{R, eps*gamma / (6R + 4*gamma)} for the
    near-center perturbation step."""
    if radius <= 0 or gamma <= 0 or eps <= 0:
        raise ValueError("radius, gamma and eps must all be positive")
    return min(radius, eps * gamma / (6.0 * radius + 4.0 * gamma))


def perturb_toward_center(v, v_prime, family: FunctionFamily, feasible: Polytope,
                          gamma: float, delta: float, eps: float | None = None,
                          tol: float = DEFAULT_TOL) -> np.ndarray:
    """Blend a (gamma+delta)-near-center toward a (gamma/2)-near-center.

    Returns v~ = (1 - lam) v + lam v' with lam = 2 delta / (2 delta + gamma);
    certifies r(v~, B) <= rad + gamma and that the move stays below
    lam (3 rad + 2 gamma) (< eps whenever delta respects the slack bound).
    """
    v = as_vector(v, family.dim)
    v_prime = as_vector(v_prime, family.dim)
    if gamma <= 0 or delta <= 0:
        raise PreconditionError(f"gamma and delta must be positive, got {gamma}, {delta}")
    problem = CenterProblem(family=family, feasible=feasible)
    radius = restricted_radius(problem, tol=tol)
    if delta >= radius:
        raise PreconditionError(f"slack bound violated: delta = {delta} >= rad = {radius}")
    if eps is not None:
        bound = perturbation_slack_bound(radius, gamma, eps)
        if delta >= bound:
            raise PreconditionError(
                f"slack bound violated: delta = {delta} >= min(rad, eps*gamma/(6 rad + 4 gamma)) = {bound}")
    if not feasible.contains(v, tol * 100.0):
        raise PreconditionError("v must lie in the constraint set V")
    if not feasible.contains(v_prime, tol * 100.0):
        raise PreconditionError("v' must lie in the constraint set V")
    rv = farthest_radius(v, family)
    if rv > radius + gamma + delta + tol * 100.0:
        raise PreconditionError(
            f"v not admissible: r(v, B) = {rv} > rad + gamma + delta = {radius + gamma + delta}")
    rvp = farthest_radius(v_prime, family)
    if rvp > radius + gamma / 2.0 + tol * 100.0:
        raise PreconditionError(
            f"v' not admissible: r(v', B) = {rvp} > rad + gamma/2 = {radius + gamma / 2.0}")

    lam = 2.0 * delta / (2.0 * delta + gamma)
    blended = (1.0 - lam) * v + lam * v_prime
    achieved = farthest_radius(blended, family)
    if achieved > radius + gamma + tol * 100.0:
        raise LPNumericalError(
            f"perturbation certificate failed: r(v~, B) = {achieved} > rad + gamma")
    move = float(np.max(np.abs(v - blended)))
    move_bound = lam * (3.0 * radius + 2.0 * gamma)
    if move > move_bound + tol * 100.0:
        raise LPNumericalError(
            f"perturbation certificate failed: |v - v~| = {move} > {move_bound}")
    if eps is not None and move >= eps:
        raise LPNumericalError(f"perturbation moved {move}, expected strictly below {eps}")
    return blended


def radius_lower_bound_check(problem: CenterProblem, tol: float = DEFAULT_TOL) -> bool:
    """Restricted radius can never beat the unrestricted one."""
    r_restricted = restricted_radius(problem, tol=tol)
    r_global = global_center(problem.family)[0]
    return r_restricted >= r_global - tol

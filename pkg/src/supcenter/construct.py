"""Constructive centers and near-center repair for kernel-ball constraints.

The constraint set is the unit ball of Y = (joint kernel of finitely many
finitely-supported functionals).  Restricting attention to the support points
turns the problem into a small compact one: a box with one balance equality
per functional, plus tie rows where supports overlap.  The reduced optimum
alpha never exceeds the full radius R, its minimizer eta extends to an
explicit center by clamping, and a near-center g can be repaired into an
exact center at sup-distance <= eps by re-solving only the reduced problem.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import lp
from .centers import (
    CenterProblem,
    CenterReport,
    _radius_lp,
    ball_problem,
    center_set,
    near_center_set,
    restricted_radius,
)
from .constraints import Polytope, Subspace
from .errors import ConstructionError, DimensionMismatchError, PreconditionError
from .space import FunctionFamily, as_vector, farthest_radius, sup_norm
from .stability import p1_modulus
from .tolerances import DEFAULT_TOL

# regimes of the reduced problem relative to the full radius
MATCHED = "matched"   # R == alpha: the support already forces the radius
GAP = "gap"           # R > alpha: slack beta = R - alpha left off support


@dataclass(frozen=True)
class SupportReduction:
    """Restriction of the problem to the functional supports.

    slots[i] is the ambient index of reduced coordinate i (supports are
    concatenated functional by functional, so an ambient point shared by two
    functionals occupies two tied slots).
    """

    slots: tuple[int, ...]
    polytope: Polytope | None          # None when there are no functionals
    reduced_family: FunctionFamily | None
    alpha: float
    eta: np.ndarray
    ties: tuple[tuple[int, int], ...]  # (earlier slot, later slot) pairs

    @property
    def size(self) -> int:
        return len(self.slots)


def finite_reduction(family: FunctionFamily, y: Subspace, tol: float = DEFAULT_TOL) -> SupportReduction:
    """Build the reduced compact problem on the support points.

    Asserts alpha <= restricted radius of the full kernel-ball problem.
    """
    if family.dim != y.dim:
        raise DimensionMismatchError(f"family dim {family.dim} != subspace dim {y.dim}")
    slots: list[int] = []
    balance_rows: list[np.ndarray] = []
    offset = 0
    for mu in y.functionals:
        slots.extend(mu.support)
        balance_rows.append((offset, mu.weights))
        offset += len(mu.support)
    m = len(slots)
    if m == 0:
        reduction = SupportReduction(slots=(), polytope=None, reduced_family=None,
                                     alpha=0.0, eta=np.zeros(0), ties=())
        return reduction

    a_eq = np.zeros((len(balance_rows), m))
    for row, (off, weights) in enumerate(balance_rows):
        a_eq[row, off : off + len(weights)] = weights
    ties: list[tuple[int, int]] = []
    first_slot: dict[int, int] = {}
    for i, ambient in enumerate(slots):
        if ambient in first_slot:
            ties.append((first_slot[ambient], i))
        else:
            first_slot[ambient] = i
    tie_rows = np.zeros((len(ties), m))
    for row, (a, b) in enumerate(ties):
        tie_rows[row, a] = 1.0
        tie_rows[row, b] = -1.0
    box = Polytope.box(m, 1.0)
    poly = Polytope(a_ub=box.a_ub, b_ub=box.b_ub,
                    a_eq=np.vstack([a_eq, tie_rows]),
                    b_eq=np.zeros(a_eq.shape[0] + len(ties)))

    reduced_values = family.values[:, slots]
    alpha, eta = _radius_lp(reduced_values, poly, tol)
    alpha = max(alpha, 0.0)

    radius = restricted_radius(ball_problem(family, y), tol=tol)
    if alpha > radius + tol * 100.0:
        raise ConstructionError(
            f"reduced optimum {alpha} exceeds the full restricted radius {radius}")
    return SupportReduction(slots=tuple(slots), polytope=poly,
                            reduced_family=FunctionFamily(reduced_values),
                            alpha=alpha, eta=eta, ties=tuple(ties))


def _embed_slots(reduction: SupportReduction, values: np.ndarray, dim: int,
                 tol: float) -> np.ndarray:
    """Place reduced slot values at their ambient indices (zero elsewhere)."""
    out = np.zeros(dim)
    written: dict[int, float] = {}
    for slot, ambient in enumerate(reduction.slots):
        val = float(values[slot])
        if ambient in written:
            if abs(written[ambient] - val) > 1e-7:
                raise ConstructionError(
                    f"tied slots disagree at point {ambient}: {written[ambient]} vs {val}",
                    point_index=ambient)
            continue
        written[ambient] = val
        out[ambient] = val
    return out


def _certify_center(h: np.ndarray, family: FunctionFamily, y: Subspace, radius: float,
                    tol: float) -> None:
    slack = tol * 100.0
    for i, hi in enumerate(h):
        if abs(hi) > 1.0 + slack:
            raise ConstructionError(f"|h[{i}]| = {abs(hi)} > 1", point_index=i)
    lower = family.values.max(axis=0) - radius
    upper = family.values.min(axis=0) + radius
    for i in range(h.size):
        if h[i] < lower[i] - slack:
            raise ConstructionError(
                f"h[{i}] = {h[i]} < max_f f - R = {lower[i]}", point_index=i)
        if h[i] > upper[i] + slack:
            raise ConstructionError(
                f"h[{i}] = {h[i]} > min_f f + R = {upper[i]}", point_index=i)
    res = y.residuals(h)
    if res.size and np.max(np.abs(res)) > tol:
        raise ConstructionError(f"functional residuals {res} exceed {tol}")
    r_h = farthest_radius(h, family)
    if r_h > radius + slack:
        raise ConstructionError(f"r(h, B) = {r_h} > R = {radius}")


def constructive_center(family: FunctionFamily, y: Subspace,
                        reduction: SupportReduction | None = None,
                        tol: float = DEFAULT_TOL) -> np.ndarray:
    """Explicit point of cent_{B_Y}(B) built from the reduced minimizer.

    Interpolate eta on the support points (zero elsewhere), clamp from above
    by min_f f + R and from below by max_f f - R.  The clamps never move the
    support values, so membership in the kernel ball survives.
    """
    if reduction is None:
        reduction = finite_reduction(family, y, tol=tol)
    radius = restricted_radius(ball_problem(family, y), tol=tol)
    g = _embed_slots(reduction, reduction.eta, family.dim, tol)
    upper = family.values.min(axis=0) + radius
    lower = family.values.max(axis=0) - radius
    h0 = np.minimum(g, upper)
    h = np.maximum(h0, lower)
    _certify_center(h, family, y, radius, tol)
    return h


@dataclass(frozen=True)
class RepairInput:
    """A near-center g with its admitted slack delta and repair target eps."""

    g: np.ndarray
    eps: float
    delta: float

    def __post_init__(self):
        object.__setattr__(self, "g", np.asarray(self.g, dtype=float))
        if self.eps <= 0:
            raise PreconditionError(f"eps must be positive, got {self.eps}")
        if not 0 < self.delta <= self.eps:
            raise PreconditionError(
                f"slack must satisfy 0 < delta <= eps, got delta={self.delta}, eps={self.eps}")


@dataclass(frozen=True)
class SlackChoice:
    """Slack selected for a repair, with the regime that produced it."""

    value: float
    regime: str
    origin: str
    alpha: float
    beta: float
    radius: float


def _reduced_problem(reduction: SupportReduction) -> CenterProblem:
    return CenterProblem(family=reduction.reduced_family, feasible=reduction.polytope)


def _relaxed_modulus(problem: CenterProblem, beta: float, eps: float, delta_max: float,
                     tol: float, resolution: float = 1e-4) -> float:
    """Largest delta with cent(beta+delta) within eps of cent(beta)."""
    base = near_center_set(problem, beta, tol=tol)

    def worst(delta: float) -> float:
        verts = near_center_set(problem, beta + delta, tol=tol).vertices(tol)
        return max((lp.distance_to_polytope(v, base, tol=tol)[0] for v in verts), default=0.0)

    step = resolution * delta_max
    if worst(delta_max) <= eps:
        return delta_max
    lo = step
    if worst(lo) > eps:
        return 0.0
    hi = delta_max
    while hi - lo > step:
        mid = 0.5 * (lo + hi)
        if worst(mid) <= eps:
            lo = mid
        else:
            hi = mid
    return lo


def admissible_slack(family: FunctionFamily, y: Subspace, eps: float,
                     reduction: SupportReduction | None = None,
                     tol: float = DEFAULT_TOL) -> SlackChoice:
    """Slack delta such that any g in cent_{B_Y}(B, delta) repairs within eps.

    Matched regime (R == alpha): the stability modulus of the reduced compact
    problem.  Gap regime (R > alpha): the explicit perturbation bound
    min{alpha, eps*beta/(6 alpha + 4 beta)} when alpha > 0, otherwise a
    bisection on the relaxed inclusion (the bound degenerates with alpha).
    """
    if eps <= 0:
        raise PreconditionError(f"eps must be positive, got {eps}")
    if reduction is None:
        reduction = finite_reduction(family, y, tol=tol)
    radius = restricted_radius(ball_problem(family, y), tol=tol)
    alpha = reduction.alpha
    beta = radius - alpha

    if reduction.size == 0:
        # no support constraints: every clamped repair is already exact
        return SlackChoice(value=eps, regime=GAP if radius > tol else MATCHED,
                           origin="trivial", alpha=alpha, beta=beta, radius=radius)

    if beta <= 1e-9:
        report = p1_modulus(_reduced_problem(reduction), eps, delta_max=eps, tol=tol)
        if report.degenerate:
            raise ConstructionError(
                f"reduced stability modulus degenerate at eps={eps}; cannot pick a slack")
        return SlackChoice(value=min(report.delta_star, eps), regime=MATCHED,
                           origin="modulus", alpha=alpha, beta=beta, radius=radius)

    if alpha > tol * 10.0:
        bound = min(alpha, eps * beta / (6.0 * alpha + 4.0 * beta))
        return SlackChoice(value=min(0.5 * bound, eps), regime=GAP, origin="formula",
                           alpha=alpha, beta=beta, radius=radius)
    delta = _relaxed_modulus(_reduced_problem(reduction), beta, eps, delta_max=eps, tol=tol)
    if delta <= 0.0:
        raise ConstructionError(
            f"relaxed stability modulus degenerate at eps={eps}; cannot pick a slack")
    return SlackChoice(value=min(delta, eps), regime=GAP, origin="relaxed-modulus",
                       alpha=alpha, beta=beta, radius=radius)


def repair_near_center(inp: RepairInput, family: FunctionFamily, y: Subspace,
                       reduction: SupportReduction | None = None,
                       tol: float = DEFAULT_TOL) -> np.ndarray:
    """Move a delta-near-center g onto cent_{B_Y}(B) without traveling more
    than eps in sup norm.

    Project the support values of g onto the reduced center set (matched
    regime) or its beta-relaxation (gap regime), re-embed, and clamp inside
    the band [max_f f - R, min_f f + R] intersected with [g - eps, g + eps]
    and [-1, 1].
    """
    g = as_vector(inp.g, family.dim)
    slack = tol * 100.0
    if reduction is None:
        reduction = finite_reduction(family, y, tol=tol)
    radius = restricted_radius(ball_problem(family, y), tol=tol)

    if sup_norm(g) > 1.0 + slack:
        raise PreconditionError(f"g not in the unit ball: |g| = {sup_norm(g)}")
    res = y.residuals(g)
    if res.size and np.max(np.abs(res)) > slack:
        raise PreconditionError(f"g not in the kernel: residuals {res}")
    r_g = farthest_radius(g, family)
    if r_g > radius + inp.delta + slack:
        raise PreconditionError(
            f"g not admissible: r(g, B) = {r_g} > R + delta = {radius + inp.delta}")

    if reduction.size:
        beta = radius - reduction.alpha
        target_slack = 0.0 if beta <= 1e-9 else beta
        target = near_center_set(_reduced_problem(reduction), target_slack, tol=tol)
        x_g = g[list(reduction.slots)]
        dist, z = lp.distance_to_polytope(x_g, target, tol=tol)
        if dist > inp.eps + slack:
            raise ConstructionError(
                f"support projection moved {dist} > eps = {inp.eps}; slack delta too large")
        g_prime = _embed_slots(reduction, z, family.dim, tol)
    else:
        g_prime = np.zeros(family.dim)

    lower_band = family.values.max(axis=0) - radius
    upper_band = family.values.min(axis=0) + radius
    f1 = np.maximum.reduce([lower_band, g - inp.eps, np.full(family.dim, -1.0)])
    f2 = np.minimum.reduce([upper_band, g + inp.eps, np.full(family.dim, 1.0)])
    if np.any(f1 > f2 + slack):
        i = int(np.argmax(f1 - f2))
        raise ConstructionError(
            f"empty clamp band at point {i}: [{f1[i]}, {f2[i]}]", point_index=i)
    h1 = np.maximum(f1, g_prime)
    h2 = np.minimum(h1, f2)

    _certify_center(h2, family, y, radius, tol)
    moved = float(np.max(np.abs(g - h2)))
    if moved > inp.eps + slack:
        raise ConstructionError(f"repair moved {moved} > eps = {inp.eps}")
    return h2


def simplex_mode(vertex_count: int, problem: CenterProblem, tol: float = DEFAULT_TOL) -> CenterReport:
    """Affine functions on a simplex, identified with their vertex values.

    With finitely many extreme points the sup norm over the simplex equals
    the max over vertices, so this is the same computation with a mode tag.
    """
    if vertex_count != problem.dim:
        raise DimensionMismatchError(
            f"vertex count {vertex_count} != problem dimension {problem.dim}")
    report = center_set(problem, tol=tol)
    return replace(report, mode="simplex-vertices")

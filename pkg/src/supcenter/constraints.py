"""Finitely supported functionals, their kernels, and H-polytopes.

A constraint subspace is the joint kernel of finitely many functionals of
total-variation norm one.  Feasible regions are kept in H-representation
(equalities plus <= inequalities); vertices are enumerated exhaustively over
active sets at desk scale, with a polar-dual route for constraint systems too
large for subset search.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import InitVar, dataclass

import numpy as np

from . import lp
from .errors import (
    EnumerationError,
    InfeasiblePolytopeError,
    UnboundedPolytopeError,
)
from .space import as_vector
from .tolerances import DEDUP_TOL, DEFAULT_TOL, EXHAUSTIVE_BUDGET


@dataclass(frozen=True)
class Functional:
    """Finitely supported functional sum_i w_i * delta_{k_i} with sum |w_i| = 1.

    Pass normalize=True to rescale arbitrary nonzero weights onto the unit
    total-variation sphere (plumbing convenience); by default the weights are
    required to be normalized already.
    """

    support: tuple[int, ...]
    weights: tuple[float, ...]
    normalize: InitVar[bool] = False

    def __post_init__(self, normalize: bool):
        support = tuple(int(i) for i in self.support)
        weights = tuple(float(w) for w in self.weights)
        if len(support) != len(weights) or not support:
            raise ValueError("support and weights must be nonempty and equally long")
        if len(set(support)) != len(support):
            raise ValueError("support indices must be distinct")
        if any(i < 0 for i in support):
            raise IndexError(f"negative support index in {support}")
        if any(w == 0.0 for w in weights):
            raise ValueError("weights must be nonzero")
        tv = sum(abs(w) for w in weights)
        if normalize:
            weights = tuple(w / tv for w in weights)
        elif abs(tv - 1.0) > 1e-9:
            raise ValueError(f"weights must have total variation 1, got {tv!r}")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "weights", weights)

    @property
    def tv_norm(self) -> float:
        return sum(abs(w) for w in self.weights)

    def __call__(self, v) -> float:
        v = as_vector(v)
        if max(self.support) >= v.size:
            raise IndexError(f"support {self.support} out of range for dimension {v.size}")
        return float(sum(w * v[i] for i, w in zip(self.support, self.weights)))

    def dense(self, dim: int) -> np.ndarray:
        if max(self.support) >= dim:
            raise IndexError(f"support {self.support} out of range for dimension {dim}")
        row = np.zeros(dim)
        row[list(self.support)] = self.weights
        return row


def evaluate(mu: Functional, v) -> float:
    """Apply a functional to a vector."""
    return mu(v)


@dataclass(frozen=True)
class Subspace:
    """Joint kernel of finitely many functionals inside dimension ``dim``."""

    dim: int
    functionals: tuple[Functional, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("ambient dimension must be positive")
        object.__setattr__(self, "functionals", tuple(self.functionals))
        for mu in self.functionals:
            if max(mu.support) >= self.dim:
                raise IndexError(f"functional support {mu.support} exceeds dimension {self.dim}")

    def rows(self) -> np.ndarray:
        if not self.functionals:
            return np.zeros((0, self.dim))
        return np.vstack([mu.dense(self.dim) for mu in self.functionals])

    def residuals(self, v) -> np.ndarray:
        v = as_vector(v, self.dim)
        return np.array([mu(v) for mu in self.functionals])


def subspace_membership(y: Subspace, v, tol: float = DEFAULT_TOL) -> bool:
    """Whether every defining functional vanishes on v (within tol)."""
    res = y.residuals(v)
    return bool(res.size == 0 or np.max(np.abs(res)) <= tol)


class Polytope:
    """H-polytope {v : a_ub v <= b_ub, a_eq v = b_eq} with a vertex cache.

    ``bounded_hint`` skips the boundedness probe for polytopes known bounded
    by construction (for example, sections of a bounded ball).  The vertex
    cache is filled once and then only read.
    """

    __slots__ = ("a_ub", "b_ub", "a_eq", "b_eq", "bounded_hint", "_vertices")

    def __init__(self, a_ub=None, b_ub=None, a_eq=None, b_eq=None, dim: int | None = None,
                 bounded_hint: bool = False):
        if dim is None:
            for a in (a_ub, a_eq):
                if a is not None:
                    dim = np.atleast_2d(np.asarray(a)).shape[1]
                    break
        if dim is None:
            raise ValueError("cannot infer ambient dimension")
        self.a_ub, self.b_ub = lp._as_matrix(a_ub, b_ub, dim)
        self.a_eq, self.b_eq = lp._as_matrix(a_eq, b_eq, dim)
        for arr in (self.a_ub, self.b_ub, self.a_eq, self.b_eq):
            arr.setflags(write=False)
        self.bounded_hint = bounded_hint
        self._vertices = None

    @property
    def dim(self) -> int:
        return self.a_ub.shape[1]

    @classmethod
    def box(cls, dim: int, radius: float) -> "Polytope":
        eye = np.eye(dim)
        return cls(a_ub=np.vstack([eye, -eye]), b_ub=np.full(2 * dim, float(radius)))

    def with_rows(self, a_ub, b_ub, bounded_hint: bool | None = None) -> "Polytope":
        """New polytope with extra inequality rows appended."""
        a_extra, b_extra = lp._as_matrix(a_ub, b_ub, self.dim)
        return Polytope(
            a_ub=np.vstack([self.a_ub, a_extra]),
            b_ub=np.concatenate([self.b_ub, b_extra]),
            a_eq=self.a_eq if self.a_eq.size else None,
            b_eq=self.b_eq if self.b_eq.size else None,
            dim=self.dim,
            bounded_hint=self.bounded_hint if bounded_hint is None else bounded_hint,
        )

    def violation(self, v) -> float:
        v = as_vector(v, self.dim)
        worst = 0.0
        if self.a_ub.shape[0]:
            worst = max(worst, float(np.max(self.a_ub @ v - self.b_ub)))
        if self.a_eq.shape[0]:
            worst = max(worst, float(np.max(np.abs(self.a_eq @ v - self.b_eq))))
        return worst

    def contains(self, v, tol: float = DEFAULT_TOL) -> bool:
        return self.violation(v) <= tol

    def vertices(self, tol: float = DEFAULT_TOL) -> np.ndarray:
        if self._vertices is None:
            self._vertices = enumerate_vertices(self, tol=tol)
        return self._vertices

    def __repr__(self):
        return (f"Polytope(dim={self.dim}, ineqs={self.a_ub.shape[0]}, "
                f"eqs={self.a_eq.shape[0]})")


def ball_polytope(y: Subspace, lam: float) -> Polytope:
    """lam * (unit ball of the kernel subspace), as an H-polytope."""
    if lam <= 0:
        raise ValueError(f"ball scale must be positive, got {lam}")
    box = Polytope.box(y.dim, lam)
    rows = y.rows()
    if rows.shape[0] == 0:
        return box
    return Polytope(a_ub=box.a_ub, b_ub=box.b_ub, a_eq=rows, b_eq=np.zeros(rows.shape[0]))


def _coordinate_range_probe(poly: Polytope, tol: float) -> None:
    """Raise if the polytope is empty or has an unbounded coordinate."""
    n = poly.dim
    for j in range(n):
        c = np.zeros(n)
        c[j] = 1.0
        for sense in ("min", "max"):
            sol = lp.solve(
                lp.LinearProgram(c=c, sense=sense, a_ub=poly.a_ub, b_ub=poly.b_ub,
                                 a_eq=poly.a_eq if poly.a_eq.size else None,
                                 b_eq=poly.b_eq if poly.b_eq.size else None),
                tol=tol,
            )
            if sol.status == lp.INFEASIBLE:
                raise InfeasiblePolytopeError("polytope is empty")
            if sol.status == lp.UNBOUNDED:
                raise UnboundedPolytopeError(f"coordinate {j} is unbounded ({sense})")


def _syntactically_boxed(poly: Polytope) -> bool:
    # every coordinate carries an explicit upper and lower bound row
    has_hi = np.zeros(poly.dim, dtype=bool)
    has_lo = np.zeros(poly.dim, dtype=bool)
    for row in poly.a_ub:
        nz = np.flatnonzero(row)
        if nz.size == 1:
            (j,) = nz
            if row[j] > 0:
                has_hi[j] = True
            else:
                has_lo[j] = True
    return bool(np.all(has_hi) and np.all(has_lo))


def _affine_hull(a_eq: np.ndarray, b_eq: np.ndarray, dim: int, tol: float):
    """Particular solution and orthonormal null-space basis of the equalities."""
    if a_eq.shape[0] == 0:
        return np.zeros(dim), np.eye(dim)
    v0, _, _, _ = np.linalg.lstsq(a_eq, b_eq, rcond=None)
    if np.max(np.abs(a_eq @ v0 - b_eq)) > 1e-7 * (1.0 + float(np.max(np.abs(b_eq)))):
        raise InfeasiblePolytopeError("equality system is inconsistent")
    u, s, vh = np.linalg.svd(a_eq)
    rank = int(np.sum(s > max(tol, 1e-12) * (s[0] if s.size else 1.0)))
    basis = vh[rank:].T  # (dim, d)
    return v0, basis


def _active_set_enum(a: np.ndarray, b: np.ndarray, d: int, tol: float) -> np.ndarray:
    m = a.shape[0]
    scale = 1.0 + float(np.max(np.abs(b), initial=0.0))
    row_norms = np.linalg.norm(a, axis=1)
    pts = []
    for subset in itertools.combinations(range(m), d):
        sub = a[list(subset)]
        det = np.linalg.det(sub)
        gate = np.prod(row_norms[list(subset)]) + 1e-30
        if abs(det) <= 1e-10 * gate:
            continue
        z = np.linalg.solve(sub, b[list(subset)])
        if np.max(a @ z - b) <= tol * scale * 10.0:
            pts.append(z)
    return np.array(pts) if pts else np.zeros((0, d))


def _polar_dual_enum(a: np.ndarray, b: np.ndarray, d: int, tol: float, depth: int) -> np.ndarray:
    from scipy.spatial import ConvexHull

    scale = 1.0 + float(np.max(np.abs(b), initial=0.0))
    # inscribed sup-ball LP locates a deep interior point
    l1 = np.abs(a).sum(axis=1)
    c = np.zeros(d + 1)
    c[d] = -1.0
    a_ext = np.hstack([a, l1[:, None]])
    sol = lp.solve(lp.LinearProgram(c=c, a_ub=a_ext, b_ub=b), tol=tol)
    if sol.status == lp.INFEASIBLE:
        raise InfeasiblePolytopeError("polytope is empty")
    if sol.status != lp.OPTIMAL:
        raise EnumerationError(f"interior-point LP ended with status {sol.status}")
    rho = -sol.value
    z0 = sol.x[:d]
    if rho <= 1e-7 * scale:
        # flat polytope: promote implicitly tight rows to equalities and recurse
        # (each promotion drops the affine dimension, so d bounds the depth)
        if depth > d:
            raise EnumerationError("implicit-equality recursion did not terminate")
        tight = []
        for i in range(a.shape[0]):
            s = lp.solve(lp.LinearProgram(c=a[i], a_ub=a, b_ub=b), tol=tol)
            if s.status != lp.OPTIMAL:
                raise EnumerationError(f"tightness LP ended with status {s.status}")
            if b[i] - s.value <= 1e-8 * scale:  # even min a_i.z == b_i: tight everywhere
                tight.append(i)
        if not tight:
            raise EnumerationError("flat polytope without implicit equalities")
        mask = np.ones(a.shape[0], dtype=bool)
        mask[tight] = False
        sub = Polytope(a_ub=a[mask], b_ub=b[mask], a_eq=a[tight], b_eq=b[tight],
                       dim=d, bounded_hint=True)
        return _enumerate_reduced(sub, tol, depth + 1)

    shifted_b = b - a @ z0
    polar_pts = a / shifted_b[:, None]
    hull = ConvexHull(polar_pts)
    eqs = hull.equations  # rows [normal | offset]: normal.p + offset <= 0
    verts = []
    for row in eqs:
        normal, off = row[:d], row[d]
        if -off <= 1e-12:
            raise UnboundedPolytopeError("polar facet through the origin: unbounded direction")
        verts.append(z0 + normal / (-off))
    return np.array(verts)


def _enumerate_reduced(poly: Polytope, tol: float, depth: int) -> np.ndarray:
    """Vertices of a polytope whose equalities may still need reduction."""
    d0 = poly.dim
    v0, basis = _affine_hull(poly.a_eq, poly.b_eq, d0, tol)
    d = basis.shape[1]
    if d == 0:
        if poly.contains(v0, max(tol * 100.0, 1e-7)):
            return v0.reshape(1, -1)
        raise InfeasiblePolytopeError("equality system pins an infeasible point")
    a = poly.a_ub @ basis
    b = poly.b_ub - poly.a_ub @ v0
    scale = 1.0 + float(np.max(np.abs(b), initial=0.0))
    live = np.linalg.norm(a, axis=1) > 1e-12
    dead = ~live
    if np.any(b[dead] < -tol * scale):
        raise InfeasiblePolytopeError("a constraint excludes the whole affine hull")
    a, b = a[live], b[live]
    if a.shape[0] < d:
        raise UnboundedPolytopeError("fewer inequality rows than free dimensions")
    if math.comb(a.shape[0], d) <= EXHAUSTIVE_BUDGET:
        pts = _active_set_enum(a, b, d, tol)
    else:
        pts = _polar_dual_enum(a, b, d, tol, depth)
    if pts.shape[0] == 0:
        return np.zeros((0, d0))
    return v0 + pts @ basis.T


def enumerate_vertices(poly: Polytope, tol: float = DEFAULT_TOL,
                       dedup_tol: float = DEDUP_TOL) -> np.ndarray:
    """All vertices of a bounded polytope, deduplicated and sorted.

    Raises InfeasiblePolytopeError / UnboundedPolytopeError for empty or
    unbounded systems.  Near-duplicate vertices (within ``dedup_tol`` in every
    coordinate) are merged.
    """
    if not poly.bounded_hint and not _syntactically_boxed(poly):
        _coordinate_range_probe(poly, tol)
    raw = _enumerate_reduced(poly, tol, depth=0)
    if raw.shape[0] == 0:
        # distinguish an empty polytope from a numerically lost one
        _coordinate_range_probe(poly, tol)
        raise EnumerationError("no vertex found although the polytope is nonempty")

    scale = 1.0 + float(np.max(np.abs(raw)))
    keep = [v for v in raw if poly.violation(v) <= max(1e-7 * scale, tol * 100.0)]
    if not keep:
        _coordinate_range_probe(poly, tol)
        raise EnumerationError("all candidate vertices failed the feasibility filter")

    seen: dict[tuple, np.ndarray] = {}
    for v in keep:
        key = tuple(np.round(v / dedup_tol).astype(np.int64))
        seen.setdefault(key, v)
    verts = np.array(sorted(seen.values(), key=tuple))
    verts.setflags(write=False)
    return verts

"""Dense two-phase simplex solver.

Desk-scale instances only (tens of variables and constraints), so a plain
tableau with Bland's anti-cycling rule is enough: deterministic pivoting,
guaranteed termination, no sparse machinery.  Free variables are split into
positive parts and bounds become ordinary rows, which keeps the standard-form
conversion tiny at the cost of a slightly wider tableau.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import InfeasiblePolytopeError, LPNumericalError
from .tolerances import DEFAULT_TOL, LP_MAX_ITER, PIVOT_EPS

if TYPE_CHECKING:  # pragma: no cover
    from .constraints import Polytope

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LinearProgram:
    """min (or max) c.x subject to A_ub x <= b_ub, A_eq x = b_eq, bounds."""

    c: np.ndarray
    sense: str = "min"
    a_ub: np.ndarray | None = None
    b_ub: np.ndarray | None = None
    a_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    bounds: list[tuple[float | None, float | None]] | None = None

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', got {self.sense!r}")


@dataclass
class LPSolution:
    status: str
    value: float | None = None
    x: np.ndarray | None = None
    iterations: int = 0


def _as_matrix(a, b, n):
    if a is None:
        return np.zeros((0, n)), np.zeros(0)
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    if a.shape != (b.size, n):
        raise ValueError(f"constraint shape {a.shape} does not match rhs {b.size} / vars {n}")
    return a, b


def _pivot(tab: np.ndarray, row: int, col: int) -> None:
    tab[row] /= tab[row, col]
    factors = tab[:, col].copy()
    factors[row] = 0.0
    tab -= np.outer(factors, tab[row])
    # kill residual round-off in the pivot column
    tab[:, col] = 0.0
    tab[row, col] = 1.0


def _bland_loop(tab, basis, ncols, tol, max_iter):
    """Run simplex pivots on tableau (obj row last). Returns iterations."""
    m = tab.shape[0] - 1
    for it in range(max_iter):
        obj = tab[-1, :ncols]
        entering = -1
        for j in range(ncols):  # Bland: smallest eligible index
            if obj[j] < -tol:
                entering = j
                break
        if entering < 0:
            return it
        col = tab[:m, entering]
        best_ratio = np.inf
        leave = -1
        for i in range(m):
            if col[i] > PIVOT_EPS:
                ratio = max(tab[i, -1], 0.0) / col[i]
                if ratio < best_ratio - PIVOT_EPS or (
                    abs(ratio - best_ratio) <= PIVOT_EPS and (leave < 0 or basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            return -(it + 1)  # unbounded marker
        _pivot(tab, leave, entering)
        basis[leave] = entering
    raise LPNumericalError(f"simplex exceeded {max_iter} iterations")


def solve(lp: LinearProgram, tol: float = DEFAULT_TOL, max_iter: int = LP_MAX_ITER) -> LPSolution:
    """Solve the program; status is 'optimal', 'infeasible' or 'unbounded'.

    Identical inputs pivot identically, so outputs are reproducible bit for
    bit.  Numerical trouble raises LPNumericalError instead of returning a
    silently wrong answer.
    """
    c = np.asarray(lp.c, dtype=float)
    n = c.size
    a_ub, b_ub = _as_matrix(lp.a_ub, lp.b_ub, n)
    a_eq, b_eq = _as_matrix(lp.a_eq, lp.b_eq, n)

    if lp.bounds is not None:
        extra_a, extra_b = [], []
        for j, (lo, hi) in enumerate(lp.bounds):
            if lo is not None:
                row = np.zeros(n)
                row[j] = -1.0
                extra_a.append(row)
                extra_b.append(-lo)
            if hi is not None:
                row = np.zeros(n)
                row[j] = 1.0
                extra_a.append(row)
                extra_b.append(hi)
        if extra_a:
            a_ub = np.vstack([a_ub, np.array(extra_a)])
            b_ub = np.concatenate([b_ub, np.array(extra_b)])

    obj = c if lp.sense == "min" else -c
    mi, me = a_ub.shape[0], a_eq.shape[0]
    m = mi + me

    # standard form: split x = u - w, add one slack per inequality row
    nsplit = 2 * n
    ncore = nsplit + mi
    a_std = np.zeros((m, ncore))
    a_std[:mi, :n] = a_ub
    a_std[:mi, n:nsplit] = -a_ub
    a_std[:mi, nsplit:] = np.eye(mi)
    a_std[mi:, :n] = a_eq
    a_std[mi:, n:nsplit] = -a_eq
    b_std = np.concatenate([b_ub, b_eq])
    c_std = np.concatenate([obj, -obj, np.zeros(mi)])

    flip = b_std < 0
    a_std[flip] *= -1.0
    b_std[flip] = -b_std[flip]

    scale_b = 1.0 + (float(np.max(b_std)) if m else 0.0)
    feas_tol = tol * scale_b * 10.0

    # phase 1: slacks start basic where their column is still +1, otherwise
    # an artificial variable fills the row
    basis = np.empty(m, dtype=int)
    art_rows = []
    for i in range(m):
        if i < mi and not flip[i]:
            basis[i] = nsplit + i
        else:
            art_rows.append(i)
    nart = len(art_rows)
    total = ncore + nart
    tab = np.zeros((m + 1, total + 1))
    tab[:m, :ncore] = a_std
    tab[:m, -1] = b_std
    for k, i in enumerate(art_rows):
        tab[i, ncore + k] = 1.0
        basis[i] = ncore + k

    iterations = 0
    if nart:
        cost1 = np.zeros(total)
        cost1[ncore:] = 1.0
        tab[-1, :total] = cost1
        for i in range(m):
            if basis[i] >= ncore:
                tab[-1] -= tab[i]
        it = _bland_loop(tab, basis, total, tol, max_iter)
        if it < 0:
            raise LPNumericalError("phase-1 objective unbounded; inconsistent tableau")
        iterations += it
        phase1 = -tab[-1, -1]
        if phase1 > feas_tol:
            return LPSolution(status=INFEASIBLE, iterations=iterations)
        # drive surviving artificials out of the basis or drop their rows
        keep = np.ones(m, dtype=bool)
        for i in range(m):
            if basis[i] >= ncore:
                pivot_col = -1
                for j in range(ncore):
                    if abs(tab[i, j]) > 1e-8:
                        pivot_col = j
                        break
                if pivot_col >= 0:
                    _pivot(tab, i, pivot_col)
                    basis[i] = pivot_col
                else:
                    keep[i] = False  # redundant row
        if not keep.all():
            rows = np.concatenate([np.flatnonzero(keep), [m]])
            tab = tab[rows]
            basis = basis[keep]
            m = basis.size

    # phase 2
    tab = np.hstack([tab[:, :ncore], tab[:, -1:]])
    tab[-1, :] = 0.0
    tab[-1, :ncore] = c_std
    for i in range(m):
        tab[-1] -= c_std[basis[i]] * tab[i]
    it = _bland_loop(tab, basis, ncore, tol * (1.0 + float(np.max(np.abs(c_std), initial=0.0))), max_iter)
    if it < 0:
        iterations += -it
        return LPSolution(status=UNBOUNDED, iterations=iterations)
    iterations += it

    x_std = np.zeros(ncore)
    x_std[basis] = tab[:m, -1]
    x = x_std[:n] - x_std[n:nsplit]

    # certify feasibility of the reported point
    if mi and np.max(a_ub @ x - b_ub) > max(feas_tol, 1e-7 * scale_b):
        raise LPNumericalError("simplex returned an infeasible point (inequalities)")
    if me and np.max(np.abs(a_eq @ x - b_eq)) > max(feas_tol, 1e-7 * scale_b):
        raise LPNumericalError("simplex returned an infeasible point (equalities)")

    value = float(c @ x)
    return LPSolution(status=OPTIMAL, value=value, x=x, iterations=iterations)


def distance_to_polytope(x, poly: "Polytope", tol: float = DEFAULT_TOL) -> tuple[float, np.ndarray]:
    """Sup-norm distance from x to a polytope, with a nearest point.

    Zero (and x itself) when x already satisfies the constraints; raises
    InfeasiblePolytopeError when the polytope is empty.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    if poly.dim != n:
        raise ValueError(f"point dim {n} does not match polytope dim {poly.dim}")
    if poly.contains(x, tol):
        return 0.0, x.copy()

    # variables (v, t): minimize t subject to v in P and |v - x| <= t
    mi = poly.a_ub.shape[0]
    a_ub = np.zeros((mi + 2 * n, n + 1))
    b_ub = np.zeros(mi + 2 * n)
    a_ub[:mi, :n] = poly.a_ub
    b_ub[:mi] = poly.b_ub
    a_ub[mi : mi + n, :n] = np.eye(n)
    a_ub[mi : mi + n, n] = -1.0
    b_ub[mi : mi + n] = x
    a_ub[mi + n :, :n] = -np.eye(n)
    a_ub[mi + n :, n] = -1.0
    b_ub[mi + n :] = -x

    a_eq = None
    b_eq = None
    if poly.a_eq.shape[0]:
        a_eq = np.hstack([poly.a_eq, np.zeros((poly.a_eq.shape[0], 1))])
        b_eq = poly.b_eq

    c = np.zeros(n + 1)
    c[n] = 1.0
    sol = solve(LinearProgram(c=c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq), tol=tol)
    if sol.status == INFEASIBLE:
        raise InfeasiblePolytopeError("distance target polytope is empty")
    if sol.status != OPTIMAL:
        raise LPNumericalError(f"distance LP ended with status {sol.status}")
    return max(float(sol.value), 0.0), sol.x[:n]

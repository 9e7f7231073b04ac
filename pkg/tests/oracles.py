"""Independent oracles the package's own solver is tested against.

The grid oracle walks an explicit mesh on the constraint set and never calls
the package's LP; scipy's HiGHS solver provides a second, independent LP
route.  Between them every radius has two derivations that share no code
with the implementation under test.
"""

import numpy as np
from scipy.optimize import linprog

GRID_STEP = 0.01
# mesh covering radius (half-diagonal, d <= 3) plus the boundary shrink;
# stays below the 0.02 agreement tolerance with room to spare
GRID_ERROR = 0.018


def kernel_basis(rows, n):
    """Orthonormal basis of the joint kernel (columns), via SVD."""
    rows = np.asarray(rows, dtype=float).reshape(-1, n)
    if rows.shape[0] == 0:
        return np.eye(n)
    _, s, vh = np.linalg.svd(rows)
    rank = int(np.sum(s > 1e-10 * s[0]))
    return vh[rank:].T


def grid_radius(values, rows, step=GRID_STEP):
    """Restricted radius over the unit kernel ball by exhaustive mesh search.

    One-sided: every mesh point is feasible, so the result is >= the true
    radius and exceeds it by at most GRID_ERROR (mesh covering radius plus
    the boundary shrink that keeps mesh points inside the ball).
    """
    values = np.asarray(values, dtype=float)
    n = values.shape[1]
    q = kernel_basis(rows, n)
    d = q.shape[1]
    if d == 0:
        v = np.zeros(n)
        return float(np.max(np.abs(values - v)))
    bound = np.sqrt(n) + step
    axis = np.arange(-bound, bound + 0.5 * step, step)
    best = np.inf
    if d == 1:
        chunks = [axis[:, None]]
    else:
        tail = np.stack(np.meshgrid(*([axis] * (d - 1)), indexing="ij"), axis=-1)
        tail = tail.reshape(-1, d - 1)
        chunks = (np.hstack([np.full((tail.shape[0], 1), s0), tail]) for s0 in axis)
    for s in chunks:
        v = s @ q.T
        mask = np.max(np.abs(v), axis=1) <= 1.0
        if not np.any(mask):
            continue
        v = v[mask]
        obj = np.max(np.abs(v[:, None, :] - values[None, :, :]), axis=(1, 2))
        best = min(best, float(np.min(obj)))
    return best


def scipy_radius(values, rows, lam=1.0, box=None, a_extra=None, b_extra=None):
    """Restricted radius via scipy's HiGHS LP (independent solver route)."""
    values = np.asarray(values, dtype=float)
    m, n = values.shape
    a_ub, b_ub = [], []
    eye = np.eye(n)
    for f in values:
        for j in range(n):
            a_ub.append(np.append(eye[j], -1.0))
            b_ub.append(f[j])
            a_ub.append(np.append(-eye[j], -1.0))
            b_ub.append(-f[j])
    if a_extra is not None:
        for row, rhs in zip(np.asarray(a_extra, dtype=float), np.asarray(b_extra, dtype=float)):
            a_ub.append(np.append(row, 0.0))
            b_ub.append(rhs)
    bound = lam if box is None else box
    bounds = [(-bound, bound)] * n + [(0, None)]
    a_eq = b_eq = None
    rows = np.asarray(rows, dtype=float).reshape(-1, n)
    if rows.shape[0]:
        a_eq = np.hstack([rows, np.zeros((rows.shape[0], 1))])
        b_eq = np.zeros(rows.shape[0])
    res = linprog(np.append(np.zeros(n), 1.0), A_ub=np.array(a_ub), b_ub=np.array(b_ub),
                  A_eq=a_eq, b_eq=b_eq, bounds=bounds, method="highs")
    assert res.status == 0, f"oracle LP failed: {res.message}"
    return float(res.fun), res.x[:n]


def scipy_solve(lp_problem):
    """Drive scipy on the package's own LinearProgram statement."""
    c = np.asarray(lp_problem.c, dtype=float)
    sign = 1.0 if lp_problem.sense == "min" else -1.0
    res = linprog(sign * c,
                  A_ub=lp_problem.a_ub, b_ub=lp_problem.b_ub,
                  A_eq=lp_problem.a_eq, b_eq=lp_problem.b_eq,
                  bounds=lp_problem.bounds if lp_problem.bounds is not None
                  else [(None, None)] * c.size,
                  method="highs")
    status = {0: "optimal", 2: "infeasible", 3: "unbounded"}.get(res.status, "error")
    value = sign * res.fun if res.status == 0 else None
    return status, value, res.x if res.status == 0 else None

"""Finite sup-norm spaces.

Vectors are real functions on a finite labeled point set, normed by the
largest absolute coordinate.  Approximation targets are finite families of
such vectors; the farthest-point radius r(x, B) = max_b ||x - b||_inf is the
quantity everything else in the package minimizes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, EmptyFamilyError
from .tolerances import DEFAULT_TOL


def as_vector(v, dim: int | None = None) -> np.ndarray:
    """Coerce to a 1-D float array, checking the dimension when given."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise DimensionMismatchError(f"expected a 1-D vector, got shape {arr.shape}")
    if dim is not None and arr.size != dim:
        raise DimensionMismatchError(f"expected dimension {dim}, got {arr.size}")
    return arr


@dataclass(frozen=True)
class Space:
    """Ambient space: an ordered tuple of distinct point labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) == 0:
            raise ValueError("a space needs at least one point")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("point labels must be distinct")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @classmethod
    def of_dim(cls, n: int) -> "Space":
        return cls(tuple(f"s{i + 1}" for i in range(n)))


class FunctionFamily:
    """Nonempty finite family of vectors sharing one ambient space.

    Stored as a read-only (members x dim) array.
    """

    __slots__ = ("values",)

    def __init__(self, values):
        arr = np.array(values, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2 or arr.shape[1] == 0:
            raise DimensionMismatchError(f"expected (members, dim) data, got shape {arr.shape}")
        if arr.shape[0] == 0:
            raise EmptyFamilyError("a family must have at least one member")
        arr.setflags(write=False)
        self.values = arr

    @property
    def members(self) -> int:
        return self.values.shape[0]

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    def member(self, i: int) -> np.ndarray:
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def __repr__(self):
        return f"FunctionFamily({self.members} members, dim {self.dim})"


def sup_norm(v) -> float:
    """Largest absolute coordinate."""
    return float(np.max(np.abs(as_vector(v))))


def farthest_radius(x, family: FunctionFamily) -> float:
    """r(x, B): sup-norm distance from x to the farthest member of B."""
    x = as_vector(x, family.dim)
    return float(np.max(np.abs(family.values - x)))


def in_slab(x, family: FunctionFamily, lam: float, tol: float = DEFAULT_TOL) -> bool:
    """Whether x is within lam of every member, i.e. x in S_lam(B)."""
    if lam < 0:
        raise ValueError(f"slab width must be nonnegative, got {lam}")
    return farthest_radius(x, family) <= lam + tol


def _hausdorff_points(p: np.ndarray, q: np.ndarray) -> float:
    # max-min formula for finite sets under the sup norm
    if p.shape[0] == 0 and q.shape[0] == 0:
        return 0.0
    if p.shape[0] == 0 or q.shape[0] == 0:
        return float("inf")
    diff = np.abs(p[:, None, :] - q[None, :, :]).max(axis=2)
    return float(max(diff.min(axis=1).max(), diff.min(axis=0).max()))


def hausdorff(f1: FunctionFamily, f2: FunctionFamily) -> float:
    """Hausdorff distance between two finite families."""
    if f1.dim != f2.dim:
        raise DimensionMismatchError(f"families live in dimensions {f1.dim} and {f2.dim}")
    return _hausdorff_points(f1.values, f2.values)


def global_center(family: FunctionFamily) -> tuple[float, np.ndarray]:
    """Unrestricted Chebyshev radius and one center over the whole space.

    Coordinate-wise midpoint of the family envelope; the radius is half the
    widest coordinate spread.
    """
    hi = family.values.max(axis=0)
    lo = family.values.min(axis=0)
    center = (hi + lo) / 2.0
    radius = float(np.max(hi - lo) / 2.0)
    return radius, center

"""Convex body families and their gauge functions.

Three o-symmetric families are supported: axis-aligned boxes with exact
rational semi-axes, rotated boxes, and Lp-balls (p = inf recovers the box).
Every body is immutable and exposes its gauge function (the Minkowski
functional whose unit ball is the body), so membership, dilation and
operator-norm questions all reduce to gauge arithmetic.

Semi-axes are kept as `fractions.Fraction` throughout: the floor-sensitive
counting formulas downstream need exact comparisons, while rotation and
transform matrices are inherently floating point.  Operations answer
exactly whenever the data allows (rational point, axis-aligned body, or
the coordinates a planar rotation leaves untouched) and otherwise carry an
explicit tolerance band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Sequence, Union

import numpy as np

#: Default half-width of the boundary band used by three-valued membership.
DEFAULT_EPS = 1e-9

_ORTHOGONALITY_TOL = 1e-12
_INVERSE_TOL = 1e-10


class Containment(Enum):
    """Three-valued membership verdict for a point against a unit body."""

    INSIDE = "inside"
    OUTSIDE = "outside"
    AMBIGUOUS = "boundary-ambiguous"


def _validate_semi_axes(semi_axes) -> tuple[Fraction, ...]:
    axes = []
    for k, a in enumerate(semi_axes):
        if isinstance(a, float):
            raise TypeError(
                f"semi-axis {k} is a float; pass a Fraction, int, or decimal "
                f"string so the value stays exact"
            )
        axes.append(Fraction(a))
    if not axes:
        raise ValueError("a body needs at least one semi-axis")
    for k, a in enumerate(axes):
        if a <= 0:
            raise ValueError(f"semi-axis {k} must be positive, got {a}")
    return tuple(axes)


def _freeze_matrix(m) -> np.ndarray:
    out = np.array(m, dtype=float)
    if out.ndim != 2 or out.shape[0] != out.shape[1]:
        raise ValueError("matrix must be square")
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class AxisBox:
    """Axis-aligned o-symmetric box {x : |x_i| <= alpha_i} with exact
    rational semi-axes."""

    semi_axes: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "semi_axes", _validate_semi_axes(self.semi_axes))

    @property
    def dim(self) -> int:
        return len(self.semi_axes)

    @cached_property
    def float_axes(self) -> tuple[float, ...]:
        return tuple(float(a) for a in self.semi_axes)

    @cached_property
    def descending_order(self) -> tuple[int, ...]:
        """Coordinate indices sorted by semi-axis, largest first (stable)."""
        return tuple(sorted(range(self.dim), key=lambda i: (-self.semi_axes[i], i)))


@dataclass(frozen=True, eq=False)
class Rotation:
    """Proper rotation: orthogonal to within ``tol`` and det > 0.

    ``plane``/``theta`` are populated when the matrix was built as a planar
    (Givens) rotation.  They record that every coordinate outside the plane
    is passed through exactly, which lets lattice-point membership in the
    rotated box be decided without any floating-point slack there.
    """

    matrix: np.ndarray
    tol: float = _ORTHOGONALITY_TOL
    plane: tuple[int, int] | None = None
    theta: float | None = None

    def __post_init__(self):
        m = _freeze_matrix(self.matrix)
        d = m.shape[0]
        err = float(np.max(np.abs(m.T @ m - np.eye(d))))
        if err > self.tol:
            raise ValueError(
                f"matrix is not orthogonal: max |R^T R - I| = {err:.3e} > {self.tol:.1e}"
            )
        if np.linalg.det(m) <= 0:
            raise ValueError("matrix must have positive determinant")
        object.__setattr__(self, "matrix", m)
        if self.plane is not None:
            i, j = self.plane
            if not (0 <= i < j < d):
                raise ValueError(f"plane indices must satisfy 0 <= i < j < d, got ({i}, {j})")
            # the plane tag licenses exact arithmetic on the remaining
            # coordinates, so the matrix must really be planar
            expected = np.eye(d)
            block = ((i, i), (i, j), (j, i), (j, j))
            for r in range(d):
                for c in range(d):
                    if (r, c) not in block and m[r, c] != expected[r, c]:
                        raise ValueError(
                            "matrix is not a planar rotation in the declared plane"
                        )
            if m[i, i] != m[j, j] or m[i, j] != -m[j, i]:
                raise ValueError("matrix is not a planar rotation in the declared plane")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class Transform:
    """Invertible linear map with a certified inverse."""

    matrix: np.ndarray
    inverse: np.ndarray | None = None

    def __post_init__(self):
        m = _freeze_matrix(self.matrix)
        if self.inverse is None:
            try:
                inv = np.linalg.inv(m)
            except np.linalg.LinAlgError as exc:
                raise ValueError("matrix is not invertible") from exc
        else:
            inv = np.array(self.inverse, dtype=float)
        inv.setflags(write=False)
        err = float(np.max(np.abs(m @ inv - np.eye(m.shape[0]))))
        if err > _INVERSE_TOL:
            raise ValueError(
                f"inverse check failed: max |T T^-1 - I| = {err:.3e} > {_INVERSE_TOL:.1e}"
            )
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "inverse", inv)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class RotatedBox:
    """Image R*K of an axis box under a proper rotation."""

    base: AxisBox
    rotation: Rotation

    def __post_init__(self):
        if self.base.dim != self.rotation.dim:
            raise ValueError(
                f"dimension mismatch: box is {self.base.dim}-dimensional, "
                f"rotation is {self.rotation.dim}-dimensional"
            )

    @property
    def dim(self) -> int:
        return self.base.dim


@dataclass(frozen=True)
class LpBall:
    """Anisotropic Lp-ball {x : sum |x_i/alpha_i|^p <= 1}, 1 <= p <= inf.

    p = math.inf is the exact encoding of the limiting box, never a large
    finite stand-in; at p = inf the ball coincides with the AxisBox of the
    same semi-axes and inherits its exact-arithmetic paths.
    """

    p: float
    semi_axes: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "semi_axes", _validate_semi_axes(self.semi_axes))
        p = self.p
        if isinstance(p, Rational):
            p = float(p)
        if not isinstance(p, (int, float)) or math.isnan(p) or p < 1:
            raise ValueError(f"p must be a real >= 1 or math.inf, got {self.p!r}")
        object.__setattr__(self, "p", math.inf if p == math.inf else float(p))

    @property
    def dim(self) -> int:
        return len(self.semi_axes)

    @property
    def is_box(self) -> bool:
        return self.p == math.inf

    @property
    def int_exponent(self) -> int | None:
        """p as an exact integer exponent, when it is one (enables exact
        rational membership); None for p = inf or fractional p."""
        if self.p == math.inf or not self.p.is_integer():
            return None
        return int(self.p)

    def as_axis_box(self) -> AxisBox:
        return AxisBox(self.semi_axes)

    @cached_property
    def float_axes(self) -> tuple[float, ...]:
        return tuple(float(a) for a in self.semi_axes)


@dataclass(frozen=True, eq=False)
class LinearImage:
    """Image T*K of an axis box under an invertible map.

    Internal support type for the successive-minima continuity checker; not
    part of the public body grammar and not exposed on the CLI."""

    base: AxisBox
    transform: Transform

    def __post_init__(self):
        if self.base.dim != self.transform.dim:
            raise ValueError("dimension mismatch between box and transform")

    @property
    def dim(self) -> int:
        return self.base.dim


Body = Union[AxisBox, RotatedBox, LpBall]


def _check_dim(body_dim: int, x: Sequence) -> None:
    if len(x) != body_dim:
        raise ValueError(
            f"dimension mismatch: body is {body_dim}-dimensional, "
            f"point has {len(x)} coordinates"
        )


def _is_rational_vector(x) -> bool:
    return all(isinstance(c, Rational) for c in x)


def _box_gauge_exact(axes: tuple[Fraction, ...], x) -> Fraction:
    return max(abs(Fraction(c)) / a for c, a in zip(x, axes))


def _box_gauge_float(float_axes: tuple[float, ...], x) -> float:
    return float(max(abs(float(c)) / a for c, a in zip(x, float_axes)))


def _rotated_gauge_parts(body: RotatedBox, x) -> tuple[Fraction | None, float]:
    """Split the rotated-box gauge of x into an exact part and a float part.

    For a planar rotation and a rational point, coordinates outside the
    rotation plane contribute an exact rational maximum (first element);
    the two in-plane coordinates contribute a float (second element).  The
    gauge is the max of the two.  For anything else the exact part is None
    and the float part is the whole gauge.
    """
    rot = body.rotation
    if rot.plane is None or not _is_rational_vector(x):
        y = rot.matrix.T @ np.asarray(x, dtype=float)
        return None, _box_gauge_float(body.base.float_axes, y)
    i, j = rot.plane
    c = float(rot.matrix[i, i])
    s = float(rot.matrix[j, i])
    xi, xj = float(x[i]), float(x[j])
    fa = body.base.float_axes
    in_plane = max(abs(c * xi + s * xj) / fa[i], abs(-s * xi + c * xj) / fa[j])
    axes = body.base.semi_axes
    rest = [abs(Fraction(x[k])) / axes[k] for k in range(body.dim) if k != i and k != j]
    return (max(rest) if rest else None), in_plane


def _lp_gauge_float(float_axes: tuple[float, ...], p: float, x) -> float:
    ratios = [abs(float(c)) / a for c, a in zip(x, float_axes)]
    top = max(ratios)
    if top == 0.0:
        return 0.0
    # Factor out the largest ratio so (r/top)**p underflows harmlessly
    # instead of zeroing the whole sum at large p.
    acc = sum((r / top) ** p for r in ratios)
    return top * acc ** (1.0 / p)


def _lp_power_sum_exact(ball: LpBall, x) -> Fraction:
    """sum |x_i/alpha_i|^p as an exact rational; requires integer p and
    rational x."""
    k = ball.int_exponent
    return sum(
        (abs(Fraction(c)) / a) ** k for c, a in zip(x, ball.semi_axes)
    )


def gauge(body, x) -> Fraction | float:
    """Gauge function ||x||_K: homogeneous of degree 1, zero iff x = 0.

    Returns an exact Fraction for an axis box (or an Lp-ball at p = inf)
    evaluated at a rational point, a float otherwise.
    """
    if isinstance(body, AxisBox):
        _check_dim(body.dim, x)
        if _is_rational_vector(x):
            return _box_gauge_exact(body.semi_axes, x)
        return _box_gauge_float(body.float_axes, x)
    if isinstance(body, LpBall):
        _check_dim(body.dim, x)
        if body.is_box:
            if _is_rational_vector(x):
                return _box_gauge_exact(body.semi_axes, x)
            return _box_gauge_float(body.float_axes, x)
        return _lp_gauge_float(body.float_axes, body.p, x)
    if isinstance(body, RotatedBox):
        _check_dim(body.dim, x)
        exact_part, float_part = _rotated_gauge_parts(body, x)
        if exact_part is None:
            return float_part
        return max(float(exact_part), float_part)
    if isinstance(body, LinearImage):
        _check_dim(body.dim, x)
        y = body.transform.inverse @ np.asarray(x, dtype=float)
        return _box_gauge_float(body.base.float_axes, y)
    raise TypeError(f"unsupported body type: {type(body).__name__}")


def _band(g: float, eps: float) -> Containment:
    if g <= 1.0 - eps:
        return Containment.INSIDE
    if g >= 1.0 + eps:
        return Containment.OUTSIDE
    return Containment.AMBIGUOUS


def contains(body, x, eps: float = DEFAULT_EPS) -> Containment:
    """Three-valued membership of x in the closed body.

    Exact paths (axis box at a rational point, integer-exponent Lp-ball at
    a rational point, and the off-plane coordinates of a planar rotation)
    compare against 1 exactly and never return AMBIGUOUS on their own;
    float paths report AMBIGUOUS inside the eps band around the boundary.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if isinstance(body, AxisBox):
        _check_dim(body.dim, x)
        if _is_rational_vector(x):
            return (
                Containment.INSIDE
                if _box_gauge_exact(body.semi_axes, x) <= 1
                else Containment.OUTSIDE
            )
        return _band(_box_gauge_float(body.float_axes, x), eps)
    if isinstance(body, LpBall):
        _check_dim(body.dim, x)
        if body.is_box:
            if _is_rational_vector(x):
                return (
                    Containment.INSIDE
                    if _box_gauge_exact(body.semi_axes, x) <= 1
                    else Containment.OUTSIDE
                )
            return _band(_box_gauge_float(body.float_axes, x), eps)
        if body.int_exponent is not None and _is_rational_vector(x):
            return (
                Containment.INSIDE
                if _lp_power_sum_exact(body, x) <= 1
                else Containment.OUTSIDE
            )
        return _band(_lp_gauge_float(body.float_axes, body.p, x), eps)
    if isinstance(body, RotatedBox):
        _check_dim(body.dim, x)
        exact_part, float_part = _rotated_gauge_parts(body, x)
        if exact_part is not None and exact_part > 1:
            return Containment.OUTSIDE
        if float_part >= 1.0 + eps:
            return Containment.OUTSIDE
        if float_part <= 1.0 - eps:
            # In-plane part is safely interior, off-plane part is exact.
            return Containment.INSIDE
        return Containment.AMBIGUOUS
    if isinstance(body, LinearImage):
        return _band(gauge(body, x), eps)
    raise TypeError(f"unsupported body type: {type(body).__name__}")


def circumradius(body) -> float:
    """Radius of the smallest origin-centered ball containing the body:
    sqrt(sum alpha_i^2). Rotation-invariant; Lp-balls are rejected."""
    if isinstance(body, RotatedBox):
        return circumradius(body.base)
    if isinstance(body, AxisBox):
        return math.sqrt(float(sum(a * a for a in body.semi_axes)))
    raise ValueError(
        f"circumradius is only provided for box bodies, not {type(body).__name__}"
    )


def box_gauge_opnorm(box: AxisBox, a) -> float:
    """Operator norm of a matrix in the box gauge.

    The gauge unit ball is the box itself, and |(Ax)_i| is maximised over
    it by the signed vertex x_j = alpha_j * sign(A_ij), which yields the
    closed form max_i sum_j |A_ij| alpha_j / alpha_i.
    """
    m = np.asarray(a, dtype=float)
    if m.shape != (box.dim, box.dim):
        raise ValueError(
            f"matrix shape {m.shape} does not match box dimension {box.dim}"
        )
    af = np.array(box.float_axes)
    return float(np.max((np.abs(m) @ af) / af))


def euclidean_opnorm(a, tol: float = 1e-10, max_iter: int = 10000) -> float:
    """Largest singular value, iterated to relative tolerance ``tol``.

    Power iteration on B = A^T A, preceded by a normalised
    repeated-squaring phase: squaring B sixty times raises the eigenvalue
    ratio to the 2^60-th power, so the iterate lands in the top eigenspace
    even when the spectral gap is far too small for plain power steps.
    The refinement loop stops on the Rayleigh-quotient residual, which for
    a symmetric matrix bounds the eigenvalue error directly.  Raises
    RuntimeError if the residual never stabilises within ``max_iter``
    steps, which signals pathological input.
    """
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if not np.any(m):
        return 0.0
    b = m.T @ m
    n = m.shape[0]
    c = b / np.linalg.norm(b)
    for _ in range(60):
        c = c @ c
        c = c / np.linalg.norm(c)
    starts = [1.0 / (1.0 + np.arange(n)), np.ones(n), np.eye(n)[int(np.argmax(np.diag(c)))]]
    v = None
    for start in starts:
        w = c @ start
        norm = np.linalg.norm(w)
        if norm > 1e-12:
            v = w / norm
            break
    if v is None:
        v = starts[0] / np.linalg.norm(starts[0])
    for _ in range(max_iter):
        w = b @ v
        lam = float(v @ w)
        if lam <= 0.0:
            return 0.0
        residual = float(np.linalg.norm(w - lam * v))
        if residual <= tol * lam:
            return math.sqrt(lam)
        v = w / np.linalg.norm(w)
    raise RuntimeError(
        f"euclidean_opnorm: power iteration did not converge in {max_iter} steps"
    )

"""Quadratic-form minimization over the paired-level state family.

The variance product on the family with real coefficients c_n is
1/4 + Q(c) with the quadratic form

    Q(c) = sum_n  2n(2n+1) c_n^2  -  (n+1)(2n+1) c_n c_{n+1},

so the strongest violation at truncation N comes from the minimal
eigenvalue of the symmetric tridiagonal matrix C_N that represents Q.
Eigenvalues are located by bisection on the Sturm sequence (sign-change
count of the shifted LDL^T recurrence) -- robust for symmetric tridiagonal
input and free of any general eigensolver dependency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

Array = np.ndarray

__all__ = [
    "TridiagonalMatrix",
    "ScanResult",
    "c_matrix",
    "quadratic_form",
    "min_eigenvalue",
    "vmax_from_lambda",
    "psi2_scan",
    "convergence_study",
]


@dataclass(frozen=True)
class TridiagonalMatrix:
    """Real symmetric tridiagonal matrix, stored as diagonal and off-diagonal."""

    diag: Array
    offdiag: Array

    def __post_init__(self):
        diag = np.asarray(self.diag, dtype=float)
        off = np.asarray(self.offdiag, dtype=float)
        if diag.ndim != 1 or off.ndim != 1 or diag.size < 1:
            raise ValueError("diag/offdiag must be one-dimensional, diag non-empty")
        if off.size != diag.size - 1:
            raise ValueError(f"offdiag length {off.size} must be diag length - 1 "
                             f"({diag.size - 1})")
        if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(off))):
            raise ValueError("matrix entries must be finite")
        diag = diag.copy()
        off = off.copy()
        diag.setflags(write=False)
        off.setflags(write=False)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", off)

    @property
    def size(self) -> int:
        return int(self.diag.size)

    def dense(self) -> Array:
        M = np.diag(self.diag)
        if self.offdiag.size:
            M += np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)
        return M

    def matvec(self, v: Array) -> Array:
        out = self.diag * v
        if self.offdiag.size:
            out[:-1] += self.offdiag * v[1:]
            out[1:] += self.offdiag * v[:-1]
        return out


def c_matrix(N: int) -> TridiagonalMatrix:
    """Matrix of Q at truncation N: diag 2n(2n+1), off-diagonal -(n+1)(2n+1)/2.

    The off-diagonal carries the minus sign of Q's cross term; flipping the
    signs of off-diagonal entries is a diagonal similarity, so the spectrum
    would be unchanged either way.
    """
    N = int(N)
    if N < 0:
        raise ValueError(f"truncation order must be non-negative, got {N}")
    ns = np.arange(N + 1, dtype=float)
    diag = 2.0 * ns * (2.0 * ns + 1.0)
    ms = np.arange(N, dtype=float)
    off = -(ms + 1.0) * (2.0 * ms + 1.0) / 2.0
    return TridiagonalMatrix(diag, off)


def quadratic_form(c: Sequence[float]) -> float:
    """Q(c) as the displayed sum, cross terms entirely on the (n, n+1) pairs.

    Identical in value to ``c @ c_matrix(N).dense() @ c``, which splits each
    cross term symmetrically.
    """
    coeffs = np.asarray(c, dtype=float).reshape(-1)
    if coeffs.size < 1:
        raise ValueError("need at least one coefficient")
    if not np.all(np.isfinite(coeffs)):
        raise ValueError("coefficients must be finite")
    total = 0.0
    for n, cn in enumerate(coeffs):
        total += 2.0 * n * (2.0 * n + 1.0) * cn * cn
        if n + 1 < coeffs.size:
            total -= (n + 1.0) * (2.0 * n + 1.0) * cn * coeffs[n + 1]
    return total


def _count_below(diag: Array, off2: Array, x: float, pivmin: float) -> int:
    """Number of eigenvalues strictly below x (Sturm sign-change count)."""
    count = 0
    q = diag[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, diag.size):
        q = (diag[i] - x) - off2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def _tridiag_solve(diag: Array, off: Array, sigma: float, rhs: Array) -> Array:
    """Solve (T - sigma*I) v = rhs by elimination with partial pivoting.

    Pivoting keeps the solve stable at the nearly singular shifts used by
    inverse iteration; the factored upper triangle gains a second
    superdiagonal, nothing more.
    """
    n = diag.size
    d = diag.astype(float) - sigma       # main diagonal
    u1 = np.append(off.astype(float), 0.0)   # first superdiagonal
    u2 = np.zeros(n)                     # second superdiagonal (pivot fill-in)
    low = off.astype(float)              # subdiagonal entries, consumed in order
    b = rhs.astype(float).copy()
    for i in range(n - 1):
        sub = low[i]
        if abs(sub) > abs(d[i]):
            # swap rows i and i+1
            d[i], sub = sub, d[i]
            u1[i], d[i + 1] = d[i + 1], u1[i]
            u2[i], u1[i + 1] = u1[i + 1], 0.0
            b[i], b[i + 1] = b[i + 1], b[i]
        pivot = d[i]
        if pivot == 0.0:
            pivot = np.finfo(float).tiny
        factor = sub / pivot
        d[i + 1] -= factor * u1[i]
        u1[i + 1] -= factor * u2[i]
        b[i + 1] -= factor * b[i]
    v = np.zeros(n)
    for i in range(n - 1, -1, -1):
        acc = b[i]
        if i + 1 < n:
            acc -= u1[i] * v[i + 1]
        if i + 2 < n:
            acc -= u2[i] * v[i + 2]
        pivot = d[i]
        if pivot == 0.0:
            pivot = np.finfo(float).tiny
        v[i] = acc / pivot
    return v


def min_eigenvalue(M: TridiagonalMatrix, tol: float = 1e-10) -> tuple[float, Array]:
    """Smallest eigenvalue (within ``tol``) and a unit eigenvector.

    Bisection on the Sturm sequence brackets the eigenvalue; the vector
    comes from inverse iteration at the converged value shifted by 1e-12,
    and a final Rayleigh quotient squeezes the eigenvalue to round-off so
    nested truncations stay monotone well below the bisection tolerance.
    """
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    diag, off = M.diag, M.offdiag
    if M.size == 1:
        return float(diag[0]), np.array([1.0])
    radius = np.zeros(M.size)
    radius[:-1] += np.abs(off)
    radius[1:] += np.abs(off)
    lo = float(np.min(diag - radius))
    hi = float(np.max(diag + radius))
    off2 = off * off
    pivmin = 1e-20 * max(1.0, float(off2.max()))
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _count_below(diag, off2, mid, pivmin) >= 1:
            hi = mid
        else:
            lo = mid
    lam = 0.5 * (lo + hi)
    v = np.full(M.size, 1.0 / math.sqrt(M.size))
    for _ in range(3):
        w = _tridiag_solve(diag, off, lam + 1e-12, v)
        norm = float(np.linalg.norm(w))
        if norm == 0.0 or not np.isfinite(norm):  # pathological shift; nudge and retry
            w = _tridiag_solve(diag, off, lam + 1e-10, v)
            norm = float(np.linalg.norm(w))
        v = w / norm
    if v[np.argmax(np.abs(v))] < 0.0:
        v = -v
    rayleigh = float(v @ M.matvec(v))
    return rayleigh, v


def vmax_from_lambda(lambda_min: float, p: float = 1.0) -> float:
    """Peak violation measure (1/4) / (1/4 + p*lambda_min) of the mixture family."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {p}")
    denominator = 0.25 + p * float(lambda_min)
    if denominator <= 0.0:
        raise ValueError(f"1/4 + p*lambda_min = {denominator!r} is not positive; "
                         f"the ratio form does not apply")
    return 0.25 / denominator


@dataclass(frozen=True)
class ScanResult:
    """Grid scan outcome plus the refined optimum."""

    grid: Array
    values: Array
    argbest: float
    best: float

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.shape != values.shape or grid.ndim != 1:
            raise ValueError("grid and values must be 1-d arrays of equal length")
        grid = grid.copy()
        values = values.copy()
        grid.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def to_json(self) -> dict[str, Any]:
        return {"grid": self.grid.tolist(), "values": self.values.tolist(),
                "argbest": self.argbest, "best": self.best}


def _psi2_objective(c0: float) -> float:
    c1 = math.sqrt(max(0.0, 1.0 - c0 * c0))
    return vmax_from_lambda(quadratic_form([c0, c1]))


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(f, lo: float, hi: float, xtol: float) -> float:
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def psi2_scan(grid_size: int) -> ScanResult:
    """Scan c0 in (0, 1) for the two-coefficient family and refine the peak.

    The objective is V(c0) = (1/4)/(1/4 + Q(c0, sqrt(1 - c0^2))).  A single
    golden-section pass around the best grid point sharpens the argmax to
    1e-6 parameter resolution.
    """
    grid_size = int(grid_size)
    if grid_size < 3:
        raise ValueError(f"grid size must be at least 3, got {grid_size}")
    grid = np.linspace(0.0, 1.0, grid_size + 2)[1:-1]
    values = np.array([_psi2_objective(c0) for c0 in grid])
    i = int(np.argmax(values))
    lo = grid[i - 1] if i > 0 else 0.0
    hi = grid[i + 1] if i + 1 < grid.size else 1.0
    argbest = _golden_max(_psi2_objective, lo, hi, 1e-6)
    return ScanResult(grid=grid, values=values, argbest=float(argbest),
                      best=_psi2_objective(argbest))


def convergence_study(Ns: Sequence[int], tol: float = 1e-10) -> list[tuple[int, float]]:
    """lambda_min of C_N for each truncation in the ascending list ``Ns``."""
    orders = [int(N) for N in Ns]
    if not orders:
        raise ValueError("need at least one truncation order")
    if any(N < 0 for N in orders):
        raise ValueError("truncation orders must be non-negative")
    if any(b <= a for a, b in zip(orders, orders[1:])):
        raise ValueError("truncation orders must be strictly ascending")
    out = []
    for N in orders:
        lam, _ = min_eigenvalue(c_matrix(N), tol)
        out.append((N, lam))
    return out

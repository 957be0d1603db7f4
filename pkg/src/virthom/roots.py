"""Characteristic polynomials and polynomial roots, in floating point.

char_poly is Faddeev-LeVerrier with compensated trace sums; roots is the
Aberth-Ehrlich simultaneous iteration (see Aberth, Math. Comp. 27 (1973))
started on a circle of radius given by the Cauchy bound.  Both are capped
at dimension/degree 64 — far beyond anything the spectral-supremum search
needs.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

MAX_DIM = 64


class RootsNonConvergence(RuntimeError):
    """Aberth iteration hit its cap; signals an ill-conditioned sample."""


def _ctrace(M: np.ndarray) -> complex:
    d = np.diagonal(M)
    return complex(math.fsum(d.real), math.fsum(d.imag))


def char_poly(A: np.ndarray) -> np.ndarray:
    """Coefficients of det(u I - A), ascending in u, leading coefficient 1.

    Args:
        A: square complex matrix, dimension <= 64.
    """
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    if A.ndim != 2 or A.shape[1] != n:
        raise ValueError("square matrix required")
    if n > MAX_DIM:
        raise ValueError(f"dimension {n} exceeds cap {MAX_DIM}")
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[n] = 1.0
    B = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        B = A @ B
        c = -_ctrace(B) / k
        coeffs[n - k] = c
        if k < n:
            B = B + c * np.eye(n, dtype=complex)
    return coeffs


def eval_poly(coeffs: np.ndarray, z):
    """Horner evaluation; works on scalars and arrays of points."""
    zz = np.asarray(z, dtype=complex)
    acc = np.zeros_like(zz)
    for c in coeffs[::-1]:
        acc = acc * zz + c
    return acc


def _derivative(coeffs: np.ndarray) -> np.ndarray:
    n = len(coeffs) - 1
    return coeffs[1:] * np.arange(1, n + 1)


def roots(coeffs, tol: float = 1e-8, max_iter: int = 400) -> np.ndarray:
    """All complex roots, Aberth-Ehrlich, residual |p(r)| <= tol * max|c|.

    Zero roots are split off exactly first.  Raises RootsNonConvergence when
    the iteration cap is reached without meeting the residual target.
    """
    c = np.asarray(coeffs, dtype=complex)
    if c.size == 0 or not np.any(c != 0):
        raise ValueError("zero polynomial has no well-defined roots")
    # strip exact leading zeros (degree), then factor out zero roots
    deg = max(i for i in range(c.size) if c[i] != 0)
    c = c[: deg + 1]
    low = min(i for i in range(c.size) if c[i] != 0)
    zero_roots = np.zeros(low, dtype=complex)
    c = c[low:]
    n = c.size - 1
    if n > MAX_DIM:
        raise ValueError(f"degree {n} exceeds cap {MAX_DIM}")
    if n == 0:
        return zero_roots
    if n == 1:
        return np.concatenate([zero_roots, [-c[0] / c[1]]])

    scale = float(np.max(np.abs(c)))
    # geometric-mean radius (product of root moduli)^(1/n); the Cauchy
    # bound can be astronomically loose for binomial-sized coefficients
    radius = float(abs(c[0] / c[-1])) ** (1.0 / n)
    angles = 2.0 * np.pi * (np.arange(n) + 0.25) / n + 0.6180339887 / n
    z = radius * np.exp(1j * angles)

    dcoeffs = _derivative(c)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for _ in range(max_iter):
            pz = eval_poly(c, z)
            worst = float(np.max(np.abs(pz)))
            if math.isfinite(worst) and worst <= tol * scale:
                return np.concatenate([zero_roots, z])
            dpz = eval_poly(dcoeffs, z)
            dpz = np.where(dpz == 0, 1e-300, dpz)
            w = pz / dpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            denom = 1.0 - w * inv.sum(axis=1)
            denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
            step = w / denom
            step = np.where(np.isfinite(step), step, 0.0)
            z = z - step
    raise RootsNonConvergence(
        f"Aberth iteration did not reach residual {tol:g} in {max_iter} steps"
    )


def newton_polish(coeffs, z0: complex, tol: float = 1e-12, max_iter: int = 80) -> complex:
    """Refine one root by Newton steps; safe on multiple roots (linear rate)."""
    c = np.asarray(coeffs, dtype=complex)
    dc = _derivative(c)
    z = complex(z0)
    for _ in range(max_iter):
        dp = complex(eval_poly(dc, z))
        if dp == 0:
            break
        step = complex(eval_poly(c, z)) / dp
        z -= step
        if abs(step) < tol * max(1.0, abs(z)):
            break
    return z


def max_modulus_root(coeffs, tol: float = 1e-8) -> complex:
    """Largest-modulus root, Newton-polished."""
    rs = roots(coeffs, tol=tol)
    r = rs[int(np.argmax(np.abs(rs)))]
    return newton_polish(coeffs, r)


def power_spectral_radius(A: np.ndarray, squarings: int = 48) -> float:
    """Spectral radius by repeated squaring of a Frobenius-normalized matrix.

    ``exp(sum_j log s_j / 2^j)`` where ``s_j`` renormalizes each square.
    Converges for every matrix, defective Jordan blocks included: after
    J squarings the estimate exceeds the radius by the transient factor
    to the power 1/2^J, below 1e-11 at J = 48 for dimensions <= 64.
    This is the cross-check for clustered extremal eigenvalues, where
    double-precision polynomial root finding is limited to eps^(1/m).
    """
    B = np.asarray(A, dtype=complex)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise ValueError("square matrix required")
    if B.shape[0] == 0:
        return 0.0
    s = float(np.linalg.norm(B))
    if s == 0.0 or not math.isfinite(s):
        return s if s == 0.0 else math.inf
    acc = math.log(s)
    B = B / s
    for j in range(1, squarings + 1):
        B = B @ B
        s = float(np.linalg.norm(B))
        if s == 0.0:
            return 0.0
        acc += math.log(s) / (2.0**j)
        B = B / s
    return math.exp(acc)


def largest_real_root_above(coeffs, lower: float = 0.0, tol: float = 1e-9):
    """Largest real root > lower, or None.

    Scans a descending grid from the Cauchy bound looking for a sign change,
    then bisects and finishes with Newton.  Intended for integer polynomials
    with a simple dominant real root (stretch-factor polynomials).
    """
    c = np.asarray(coeffs, dtype=float)
    if not np.any(c != 0):
        return None
    deg = max(i for i in range(c.size) if c[i] != 0)
    c = c[: deg + 1]
    if deg == 0:
        return None

    def p(x: float) -> float:
        acc = 0.0
        for ci in c[::-1]:
            acc = acc * x + ci
        return acc

    hi = 1.0 + float(np.max(np.abs(c[:-1] / c[-1]))) + 1e-9
    grid = np.linspace(hi, lower, 8192)
    vals = [p(float(x)) for x in grid]
    bracket = None
    for i in range(len(grid) - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            bracket = (float(grid[i]), float(grid[i]))
            break
        if a * b < 0.0:
            bracket = (float(grid[i + 1]), float(grid[i]))  # grid descends
            break
    if bracket is None:
        return None
    lo, up = bracket
    if lo != up:
        flo = p(lo)
        for _ in range(200):
            mid = 0.5 * (lo + up)
            fm = p(mid)
            if fm == 0.0 or up - lo < tol * 0.01:
                lo = up = mid
                break
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                up = mid
    x = 0.5 * (lo + up)
    x = newton_polish(c.astype(complex), x, tol=1e-15).real
    if x <= lower:
        return None
    return float(x)

"""Braid matrices via Fox calculus, and their spectral suprema.

The Burau matrices are the homology action of a braid on the infinite
cyclic cover of the punctured disk: Fox derivatives of the induced
free-group automorphism, specialized along the total exponent sum
(every generator ``x_j -> t``).  The Lawrence-Krammer matrices act on
the rank ``n(n-1)/2`` module over ``Z[q^{\\pm1}, t^{\\pm1}]`` spanned by
symbols ``v_{j,k}`` for punctures ``j < k``.

Spectral radii of unit-circle (or unit-torus) specializations are
sampled on equispaced meshes; each sample goes through the exact
characteristic polynomial and the Aberth root finder.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .laurent import LaurentPoly, adjugate_inverse, laurent_identity, laurent_matrix
from .roots import (
    MAX_DIM,
    RootsNonConvergence,
    char_poly,
    largest_real_root_above,
    newton_polish,
    power_spectral_radius,
    roots,
)
from .words import Word, braid_to_endo, free_reduce

_UNIT_TOL = 1e-12
_MIN_MESH = 16


# -- Fox calculus ----------------------------------------------------------


def fox_derivative(w: Sequence[int], gen: int) -> LaurentPoly:
    """Fox derivative of ``w`` by generator ``gen``, specialized at x_j -> t.

    Satisfies the product rule d(uv) = du + phi(u)*dv with phi the
    exponent-sum specialization, so d(x_i)/d(x_i) = 1 and
    d(x_i^-1)/d(x_i) = -t^-1.  The value only depends on the group
    element, so the word is freely reduced first.
    """
    if gen < 1:
        raise ValueError("generator index must be a positive integer")
    coeffs: dict[tuple[int, ...], int] = {}
    e = 0  # exponent sum of the prefix read so far
    for x in free_reduce(w):
        if x == gen:
            coeffs[(e,)] = coeffs.get((e,), 0) + 1
        elif x == -gen:
            coeffs[(e - 1,)] = coeffs.get((e - 1,), 0) - 1
        e += 1 if x > 0 else -1
    return LaurentPoly(coeffs, 1)


def _check_strands(n: int) -> None:
    if n < 2:
        raise ValueError("need at least 2 strands")


def burau_unreduced(braid: Sequence[int], n: int) -> np.ndarray:
    """Unreduced Burau matrix of a braid word on ``n`` strands.

    Entry (i, j) is the Fox derivative by x_{i+1} of the image of
    x_{j+1} under the braid's automorphism; at t = 1 this specializes
    to the permutation matrix of the braid.  The map is multiplicative:
    the matrix of a concatenation is the product of the matrices.
    """
    _check_strands(n)
    f = braid_to_endo(braid, n)
    return laurent_matrix(
        [[fox_derivative(f.images[j], i + 1) for j in range(n)] for i in range(n)]
    )


def burau_reduced(braid: Sequence[int], n: int) -> np.ndarray:
    """Reduced Burau matrix: the action on the sum-zero subspace.

    Column sums of the unreduced matrix are all 1 (Fox fundamental
    identity), so the span of e_i - e_{i+1} (i = 1..n-1) is invariant;
    this returns the (n-1) x (n-1) matrix in that basis.  Coordinates
    are partial sums of the difference of adjacent unreduced columns,
    and the full sum is asserted to vanish exactly.
    """
    M = burau_unreduced(braid, n)
    R = np.empty((n - 1, n - 1), dtype=object)
    for j in range(n - 1):
        acc = LaurentPoly.zero(1)
        for i in range(n):
            acc = acc + (M[i, j] - M[i, j + 1])
            if i < n - 1:
                R[i, j] = acc
        if not acc.is_zero():
            raise ArithmeticError(
                "difference column leaves the sum-zero subspace; "
                "the unreduced matrix is not a braid image"
            )
    return R


# -- Lawrence-Krammer ------------------------------------------------------


def _lk_basis(n: int) -> list[tuple[int, int]]:
    return [(j, k) for j in range(1, n) for k in range(j + 1, n + 1)]


def _lk_generator(n: int, i: int) -> np.ndarray:
    """Matrix of sigma_i on the v_{j,k} basis (columns are images)."""
    basis = _lk_basis(n)
    index = {pair: a for a, pair in enumerate(basis)}
    dim = len(basis)
    q = LaurentPoly.var_q()
    t = LaurentPoly.var_t(1, nvars=2)
    one = LaurentPoly.constant(1, 2)
    zero = LaurentPoly.zero(2)
    M = np.empty((dim, dim), dtype=object)
    M[:] = zero
    for col, (j, k) in enumerate(basis):
        if i == j and i == k - 1:
            terms = [((j, k), -t * q * q)]
        elif i == j - 1:
            terms = [((i, k), q), ((i, j), q * q - q), ((j, k), one - q)]
        elif i == j:
            terms = [((j + 1, k), one)]
        elif i == k - 1:
            terms = [((j, i), q), ((j, k), one - q), ((i, k), (q - q * q) * t)]
        elif i == k:
            terms = [((j, k + 1), one)]
        else:
            terms = [((j, k), one)]
        for pair, c in terms:
            M[index[pair], col] = M[index[pair], col] + c
    return M


def lk_matrix(braid: Sequence[int], n: int) -> np.ndarray:
    """Lawrence-Krammer matrix of a braid word on ``n`` strands.

    Two-variable Laurent entries in (q, t); dimension n(n-1)/2.  The
    braid word multiplies left to right; inverse letters use the exact
    adjugate inverse (generator determinants are unit monomials).
    """
    _check_strands(n)
    dim = n * (n - 1) // 2
    gens: dict[int, np.ndarray] = {}
    M = laurent_identity(dim, nvars=2)
    for letter in braid:
        k = abs(letter)
        if not 1 <= k <= n - 1:
            raise ValueError(f"braid generator {letter} out of range for {n} strands")
        if letter not in gens:
            if letter > 0:
                gens[letter] = _lk_generator(n, k)
            else:
                gens[letter] = adjugate_inverse(_lk_generator(n, k))
        M = M @ gens[letter]
    return M


# -- specialization and spectra --------------------------------------------


def specialize(
    M: np.ndarray, t: complex, q: Optional[complex] = None
) -> np.ndarray:
    """Evaluate a Laurent matrix at unit-modulus parameter values.

    One-variable matrices take ``t`` alone; two-variable matrices need
    ``q`` as well.  Both moduli are checked against 1 to 1e-12 so that
    negative exponents stay conditioned.
    """
    if M.size == 0:
        return np.zeros(M.shape, dtype=complex)
    nvars = M.flat[0].nvars
    if abs(abs(t) - 1.0) > _UNIT_TOL:
        raise ValueError(f"|t| = {abs(t)!r} is not 1 (tolerance 1e-12)")
    if nvars == 1:
        if q is not None:
            raise ValueError("q given for a one-variable matrix")
        values: tuple[complex, ...] = (t,)
    else:
        if q is None:
            raise ValueError("two-variable matrix needs a q value")
        if abs(abs(q) - 1.0) > _UNIT_TOL:
            raise ValueError(f"|q| = {abs(q)!r} is not 1 (tolerance 1e-12)")
        values = (q, t)
    out = np.empty(M.shape, dtype=complex)
    for idx in np.ndindex(*M.shape):
        out[idx] = M[idx].evaluate(*values)
    return out


def spectral_radius(A: np.ndarray) -> float:
    """Largest eigenvalue modulus of a complex matrix, dimension <= 64.

    Primary path: Faddeev-LeVerrier characteristic polynomial,
    Aberth-Ehrlich roots, Newton polish of the winner — sharp (1e-14)
    when the extremal eigenvalue is simple.  A repeated-squaring norm
    estimate cross-checks the result; when the two disagree beyond
    1e-9 the extremal eigenvalue is clustered (polynomial rooting in
    doubles then degrades like eps^(1/multiplicity)) and the squaring
    value, accurate ~1e-11 for every matrix, is returned instead.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("square matrix required")
    if A.shape[0] > MAX_DIM:
        raise ValueError(f"dimension {A.shape[0]} exceeds cap {MAX_DIM}")
    if A.shape[0] == 0:
        return 0.0
    bound = power_spectral_radius(A)
    try:
        coeffs = char_poly(A)
        rs = roots(coeffs, tol=1e-10)
        best = rs[int(np.argmax(np.abs(rs)))]
        sharp = abs(newton_polish(coeffs, best))
    except RootsNonConvergence:
        return bound
    if abs(sharp - bound) <= 1e-9 * max(1.0, bound):
        return sharp
    return bound


@dataclass(frozen=True)
class SpectralSupremum:
    """Mesh scan of spectral radii over S^1 or the torus S^1 x S^1.

    ``samples`` holds one row per grid point: (angle, value) on the
    circle, (q_angle, t_angle, value) on the torus.  ``sup`` is the max
    of the recorded values and ``argmax`` the angles attaining it; the
    torus scan stores square roots of the radii, so its values are on
    the same scale as ``sup``.
    """

    mesh: int
    matrix_dim: int
    samples: tuple[tuple[float, ...], ...]
    sup: float
    argmax: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.samples:
            peak = max(s[-1] for s in self.samples)
            if not math.isclose(peak, self.sup, rel_tol=0, abs_tol=1e-12):
                raise ValueError("supremum does not match recorded samples")


def _mesh_angles(mesh: int) -> list[float]:
    if mesh < _MIN_MESH:
        raise ValueError(f"mesh must be at least {_MIN_MESH}")
    angles = [2.0 * math.pi * k / mesh for k in range(mesh)]
    if mesh % 2:
        angles.append(math.pi)  # keep t = -1 on the grid
    return angles


def _sample_rows(args: tuple) -> list[tuple[float, ...]]:
    """Worker: spectral radii for a chunk of grid angles (picklable)."""
    M, tasks, torus = args
    rows: list[tuple[float, ...]] = []
    for angles in tasks:
        if torus:
            aq, at = angles
            value = math.sqrt(
                spectral_radius(
                    specialize(M, cmath.exp(1j * at), cmath.exp(1j * aq))
                )
            )
            rows.append((aq, at, value))
        else:
            (a,) = angles
            rows.append((a, spectral_radius(specialize(M, cmath.exp(1j * a)))))
    return rows


def _scan(
    M: np.ndarray, mesh: int, tasks: list[tuple], torus: bool, jobs: int
) -> SpectralSupremum:
    if jobs > 1 and len(tasks) > 1:
        import multiprocessing

        nchunks = min(len(tasks), jobs * 4)
        chunks = [tasks[i::nchunks] for i in range(nchunks)]
        # interleaved split; re-sort rows to the task order afterwards
        with multiprocessing.Pool(jobs) as pool:
            parts = pool.map(_sample_rows, [(M, ch, torus) for ch in chunks])
        order = {angles: i for i, angles in enumerate(tasks)}
        rows = [row for part in parts for row in part]
        rows.sort(key=lambda row: order[row[:-1]])
    else:
        rows = _sample_rows((M, tasks, torus))
    sup = -math.inf
    argmax: tuple[float, ...] = tasks[0] if tasks else ()
    for row in rows:
        if row[-1] > sup:
            sup, argmax = row[-1], row[:-1]
    return SpectralSupremum(
        mesh=mesh,
        matrix_dim=int(M.shape[0]),
        samples=tuple(rows),
        sup=sup,
        argmax=argmax,
    )


def circle_supremum(M: np.ndarray, mesh: int, jobs: int = 1) -> SpectralSupremum:
    """Max spectral radius of M(t) over equispaced unit-circle samples.

    The grid always contains t = 1 and t = -1 (an extra point is added
    for odd mesh sizes); refining the mesh by an even factor keeps old
    grid points, so the reported value is monotone along nested meshes.
    ``jobs`` > 1 distributes samples over processes; results are
    identical to the sequential scan.
    """
    if M.size and M.flat[0].nvars != 1:
        raise ValueError("circle scan needs a one-variable matrix")
    tasks = [(a,) for a in _mesh_angles(mesh)]
    return _scan(M, mesh, tasks, torus=False, jobs=jobs)


def torus_supremum(M: np.ndarray, mesh: int, jobs: int = 1) -> SpectralSupremum:
    """Max of sqrt(spectral radius) of M(q, t) over a mesh^2 torus grid.

    The square root puts the number on the scale of a first-homology
    stretch (the module is a second-homology action); per-sample values
    are already square-rooted so the record's max/sup invariant holds.
    """
    if M.size and M.flat[0].nvars != 2:
        raise ValueError("torus scan needs a two-variable matrix")
    angles = _mesh_angles(mesh)
    tasks = [(aq, at) for aq in angles for at in angles]
    return _scan(M, mesh, tasks, torus=True, jobs=jobs)


def dilatation_root(coeffs: Sequence[int]) -> float:
    """Largest real root > 0 of an integer polynomial (ascending coeffs).

    Bracketing on a descending grid from the Cauchy bound, bisection,
    Newton polish; raises ValueError when no real root exceeds 0.
    """
    c = [int(x) for x in coeffs]
    if not any(c):
        raise ValueError("zero polynomial")
    x = largest_real_root_above(c, lower=0.0, tol=1e-9)
    if x is None:
        raise ValueError("no real root > 0")
    return x

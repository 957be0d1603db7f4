"""Exact integer linear algebra: Smith/Hermite normal forms and kernels.

Matrices are numpy arrays with ``object`` dtype holding Python ints, so all
arithmetic is arbitrary precision (coefficient blowup during elimination is
real, see Smith normal form below).  Pivoting always picks a nonzero entry
of minimal absolute value, which keeps intermediate entries small in
practice.
"""

from __future__ import annotations

import numpy as np


def intmat(A) -> np.ndarray:
    """Coerce to a 2-D object array of Python ints."""
    M = np.array(A, dtype=object)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    if M.ndim != 2:
        raise ValueError("expected a matrix")
    out = np.empty(M.shape, dtype=object)
    for i in range(M.shape[0]):
        for j in range(M.shape[1]):
            out[i, j] = int(M[i, j])
    return out


def identity_matrix(n: int) -> np.ndarray:
    M = np.zeros((n, n), dtype=object)
    for i in range(n):
        M[i, i] = 1
    return M + 0  # ensure python ints, not np zeros of weird type


def smith_normal_form(A, return_inverses: bool = False):
    """Diagonalize an integer matrix: A = U @ S @ V.

    S is diagonal with nonnegative entries d_0 | d_1 | ..., and U, V are
    unimodular.  With ``return_inverses`` the exact inverses of U and V come
    back as well (they are maintained during elimination, not recomputed).

    Returns:
        (U, S, V) or (U, S, V, U_inv, V_inv), all object-dtype arrays.
    """
    S = [[int(x) for x in row] for row in intmat(A)]
    n = len(S)
    m = len(S[0]) if n else 0

    U = [[int(i == j) for j in range(n)] for i in range(n)]
    Ui = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]
    Vi = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        Ui[i], Ui[j] = Ui[j], Ui[i]
        for r in range(n):
            U[r][i], U[r][j] = U[r][j], U[r][i]

    def col_swap(i, j):
        for r in range(n):
            S[r][i], S[r][j] = S[r][j], S[r][i]
        V[i], V[j] = V[j], V[i]
        for r in range(m):
            Vi[r][i], Vi[r][j] = Vi[r][j], Vi[r][i]

    def row_axpy(i, t, q):
        # R_i -= q * R_t
        Si, St = S[i], S[t]
        for c in range(m):
            Si[c] -= q * St[c]
        Uii, Uit = Ui[i], Ui[t]
        for c in range(n):
            Uii[c] -= q * Uit[c]
        for r in range(n):
            U[r][t] += q * U[r][i]

    def col_axpy(j, t, q):
        # C_j -= q * C_t
        for r in range(n):
            S[r][j] -= q * S[r][t]
        Vt, Vj = V[t], V[j]
        for c in range(m):
            Vt[c] += q * Vj[c]
        for r in range(m):
            Vi[r][j] -= q * Vi[r][t]

    def row_negate(i):
        S[i] = [-x for x in S[i]]
        Ui[i] = [-x for x in Ui[i]]
        for r in range(n):
            U[r][i] = -U[r][i]

    t = 0
    while t < min(n, m):
        # locate a pivot of minimal |value| in the remaining block
        best = None
        for i in range(t, n):
            for j in range(t, m):
                v = S[i][j]
                if v != 0 and (best is None or abs(v) < abs(best[2])):
                    best = (i, j, v)
        if best is None:
            break
        while True:
            bi, bj, _ = best
            if bi != t:
                row_swap(bi, t)
            if bj != t:
                col_swap(bj, t)
            p = S[t][t]
            # clear the pivot row and column; floor-division leaves remainders
            for i in range(t + 1, n):
                if S[i][t]:
                    row_axpy(i, t, S[i][t] // p)
            for j in range(t + 1, m):
                if S[t][j]:
                    col_axpy(j, t, S[t][j] // p)
            best = None
            for i in range(t, n):
                for j in range(t, m):
                    if (i == t) == (j == t):
                        continue
                    v = S[i][j]
                    if v != 0 and (best is None or abs(v) < abs(best[2])):
                        best = (i, j, v)
            if best is not None:
                continue  # remainders survive; re-pivot on a smaller entry
            # pivot row/col clean: force divisibility of the trailing block
            p = S[t][t]
            fold = None
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if S[i][j] % p != 0:
                        fold = i
                        break
                if fold is not None:
                    break
            if fold is None:
                break
            row_axpy(t, fold, -1)  # add row `fold` to row t, then repeat
            best = (t, t, S[t][t])
            for j in range(t + 1, m):
                v = S[t][j]
                if v != 0 and abs(v) < abs(best[2]):
                    best = (t, j, v)
        if S[t][t] < 0:
            row_negate(t)
        t += 1

    for i in range(t):
        if S[i][i] < 0:
            row_negate(i)

    U_, S_, V_ = (
        np.array(U, dtype=object).reshape(n, n),
        np.array(S, dtype=object).reshape(n, m),
        np.array(V, dtype=object).reshape(m, m),
    )
    if not return_inverses:
        return U_, S_, V_
    Ui_ = np.array(Ui, dtype=object).reshape(n, n)
    Vi_ = np.array(Vi, dtype=object).reshape(m, m)
    return U_, S_, V_, Ui_, Vi_


def diagonal_of(S: np.ndarray) -> list[int]:
    return [int(S[i, i]) for i in range(min(S.shape))]


def snf_rank(S: np.ndarray) -> int:
    return sum(1 for d in diagonal_of(S) if d != 0)


def row_hermite(A) -> np.ndarray:
    """Canonical row Hermite form of the lattice spanned by the rows.

    Pivots are positive, entries above each pivot are reduced into
    [0, pivot); zero rows are dropped.
    """
    H = [[int(x) for x in row] for row in intmat(A)]
    n = len(H)
    m = len(H[0]) if n else 0
    r = 0
    for j in range(m):
        # Euclidean elimination in column j among rows >= r
        while True:
            rows = [i for i in range(r, n) if H[i][j] != 0]
            if not rows:
                break
            i0 = min(rows, key=lambda i: abs(H[i][j]))
            H[r], H[i0] = H[i0], H[r]
            done = True
            for i in range(r + 1, n):
                if H[i][j]:
                    q = H[i][j] // H[r][j]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    if H[i][j]:
                        done = False
            if done:
                break
        if r < n and H[r][j] != 0:
            if H[r][j] < 0:
                H[r] = [-x for x in H[r]]
            for i in range(r):
                q = H[i][j] // H[r][j]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
            r += 1
            if r == n:
                break
    H = [row for row in H[:r]]
    return np.array(H, dtype=object).reshape(len(H), m)


def integer_nullspace(A) -> np.ndarray:
    """Basis of the integer kernel {v : A v = 0}, as matrix columns.

    The basis is primitive (spans the full saturated kernel lattice) and in
    Hermite-reduced form; for the zero matrix this is the identity.
    """
    A = intmat(A)
    n, m = A.shape
    _, S, _, _, Vi = smith_normal_form(A, return_inverses=True)
    r = snf_rank(S)
    if r == m:
        return np.zeros((m, 0), dtype=object)
    basis_rows = Vi[:, r:].T  # kernel vectors as rows
    H = row_hermite(basis_rows)
    assert H.shape[0] == m - r
    B = H.T
    check = A @ B
    assert all(x == 0 for x in check.flat), "nullspace vectors must be killed by A"
    return B


def lattice_contains(basis: np.ndarray, vectors: np.ndarray) -> bool:
    """Does the column lattice of ``basis`` contain every column of ``vectors``?"""
    basis = intmat(basis)
    vectors = intmat(vectors)
    H0 = row_hermite(basis.T)
    H1 = row_hermite(np.concatenate([basis.T, vectors.T], axis=0))
    return H0.shape == H1.shape and bool(np.array_equal(H0, H1))


def rank_mod_p(A, p: int) -> int:
    """Rank of A over the field with p elements (p prime)."""
    if p == 2:
        return _rank_mod_2(A)
    M = np.array([[int(x) % p for x in row] for row in intmat(A)], dtype=np.int64)
    if M.size == 0:
        return 0
    n, m = M.shape
    r = 0
    for j in range(m):
        nz = np.flatnonzero(M[r:, j] % p)
        if not nz.size:
            continue
        piv = r + int(nz[0])
        M[[r, piv]] = M[[piv, r]]
        M[r] = (M[r] * pow(int(M[r, j]), -1, p)) % p
        rows = r + 1 + np.flatnonzero(M[r + 1 :, j])
        if rows.size:
            M[rows] = (M[rows] - M[rows, j][:, None] * M[r][None, :]) % p
        r += 1
        if r == n:
            break
    return r


def _rank_mod_2(A) -> int:
    M = np.array(
        [[int(x) & 1 for x in row] for row in intmat(A)], dtype=np.uint8
    )
    if M.size == 0:
        return 0
    n, _m = M.shape
    r = 0
    for j in range(M.shape[1]):
        nz = np.flatnonzero(M[r:, j])
        if not nz.size:
            continue
        piv = r + int(nz[0])
        M[[r, piv]] = M[[piv, r]]
        rows = r + 1 + np.flatnonzero(M[r + 1 :, j])
        if rows.size:
            M[rows] ^= M[r]
        r += 1
        if r == n:
            break
    return r

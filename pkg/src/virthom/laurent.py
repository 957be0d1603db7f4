"""Sparse integer Laurent polynomials in one or two variables.

Coefficients live in a dict keyed by exponent tuples (negative exponents
welcome); zero coefficients are never stored.  One variable is printed as
``t``, two as ``q`` and ``t`` — the names only matter for display.

Matrices over this ring are plain numpy object arrays of LaurentPoly, so
``@`` works on them, and `char_poly_exact` runs Faddeev-LeVerrier with the
divide-by-k steps checked to be exact (they are, for any matrix over the
ring, since the characteristic coefficients are sums of principal minors).
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

Expt = tuple[int, ...]


class LaurentPoly:
    __slots__ = ("nvars", "coeffs")

    def __init__(self, coeffs: Mapping[Expt, int] | None = None, nvars: int = 1):
        if nvars not in (1, 2):
            raise ValueError("only 1 or 2 variables supported")
        self.nvars = nvars
        clean: dict[Expt, int] = {}
        if coeffs:
            for e, c in coeffs.items():
                e = tuple(int(x) for x in e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong arity")
                c = int(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self.coeffs = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, c: int, nvars: int = 1) -> "LaurentPoly":
        return cls({(0,) * nvars: int(c)}, nvars)

    @classmethod
    def zero(cls, nvars: int = 1) -> "LaurentPoly":
        return cls({}, nvars)

    @classmethod
    def monomial(cls, c: int, *exps: int) -> "LaurentPoly":
        return cls({tuple(exps): int(c)}, len(exps))

    @classmethod
    def var_t(cls, power: int = 1, nvars: int = 1) -> "LaurentPoly":
        e = [0] * nvars
        e[-1] = power  # t is the only/last variable
        return cls({tuple(e): 1}, nvars)

    @classmethod
    def var_q(cls, power: int = 1) -> "LaurentPoly":
        return cls({(power, 0): 1}, 2)

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable-count mismatch")
            return other
        if isinstance(other, (int, np.integer)):
            return LaurentPoly.constant(int(other), self.nvars)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
            if not out[e]:
                del out[e]
        res = LaurentPoly.__new__(LaurentPoly)
        res.nvars = self.nvars
        res.coeffs = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = LaurentPoly.__new__(LaurentPoly)
        res.nvars = self.nvars
        res.coeffs = {e: -c for e, c in self.coeffs.items()}
        return res

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Expt, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
                if not out[e]:
                    del out[e]
        res = LaurentPoly.__new__(LaurentPoly)
        res.nvars = self.nvars
        res.coeffs = out
        return res

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            mono = self.as_monomial()
            if mono is None or abs(mono[0]) != 1:
                raise ValueError("only unit monomials have negative powers")
            c, exps = mono
            return LaurentPoly(
                {tuple(k * e for e in exps): 1 if k % 2 == 0 else c}, self.nvars
            )
        out = LaurentPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = LaurentPoly.constant(int(other), self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def as_monomial(self) -> tuple[int, Expt] | None:
        """(coefficient, exponents) if exactly one term, else None."""
        if len(self.coeffs) != 1:
            return None
        ((e, c),) = self.coeffs.items()
        return c, e

    def constant_term(self) -> int:
        return self.coeffs.get((0,) * self.nvars, 0)

    def shift(self, *exps: int) -> "LaurentPoly":
        """Multiply by the monomial with the given exponents."""
        if len(exps) != self.nvars:
            raise ValueError("exponent arity mismatch")
        return LaurentPoly(
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.coeffs.items()},
            self.nvars,
        )

    def exact_div_int(self, k: int) -> "LaurentPoly":
        out = {}
        for e, c in self.coeffs.items():
            q, r = divmod(c, k)
            if r:
                raise ArithmeticError(f"coefficient {c} not divisible by {k}")
            out[e] = q
        return LaurentPoly(out, self.nvars)

    def evaluate(self, *values: complex) -> complex:
        if len(values) != self.nvars:
            raise ValueError("need one value per variable")
        total = 0j
        for e, c in self.coeffs.items():
            term = complex(c)
            for v, p in zip(values, e):
                term *= v**p
            total += term
        return total

    def substitute_t_inverse(self) -> "LaurentPoly":
        """t -> 1/t (last variable inverted)."""
        out = {}
        for e, c in self.coeffs.items():
            e2 = e[:-1] + (-e[-1],)
            out[e2] = c
        return LaurentPoly(out, self.nvars)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        names = ("t",) if self.nvars == 1 else ("q", "t")
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            factors = []
            for name, p in zip(names, e):
                if p == 1:
                    factors.append(name)
                elif p:
                    factors.append(f"{name}^{p}")
            body = "*".join(factors)
            if not body:
                parts.append(f"{c:+d}")
            elif c == 1:
                parts.append(f"+{body}")
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c:+d}*{body}")
        s = " ".join(parts)
        return s[1:] if s.startswith("+") else s


# -- matrices over the ring ------------------------------------------------


def laurent_matrix(rows: Iterable[Iterable], nvars: int = 1) -> np.ndarray:
    """Object array of LaurentPoly; plain ints are lifted to constants."""
    data = []
    for row in rows:
        out_row = []
        for x in row:
            if isinstance(x, LaurentPoly):
                if x.nvars != nvars:
                    raise ValueError("variable-count mismatch in matrix")
                out_row.append(x)
            else:
                out_row.append(LaurentPoly.constant(int(x), nvars))
        data.append(out_row)
    M = np.empty((len(data), len(data[0]) if data else 0), dtype=object)
    for i, row in enumerate(data):
        for j, x in enumerate(row):
            M[i, j] = x
    return M


def laurent_identity(n: int, nvars: int = 1) -> np.ndarray:
    M = np.empty((n, n), dtype=object)
    one = LaurentPoly.constant(1, nvars)
    zero = LaurentPoly.zero(nvars)
    for i in range(n):
        for j in range(n):
            M[i, j] = one if i == j else zero
    return M


def mat_trace(M: np.ndarray) -> LaurentPoly:
    tr = M[0, 0]
    for i in range(1, M.shape[0]):
        tr = tr + M[i, i]
    return tr


def char_poly_exact(M: np.ndarray) -> list[LaurentPoly]:
    """Characteristic polynomial det(u I - M), coefficients ascending in u.

    Exact Faddeev-LeVerrier over the Laurent ring; every divide-by-k is
    asserted exact.  The leading coefficient is 1.
    """
    n = M.shape[0]
    if n != M.shape[1]:
        raise ValueError("square matrix required")
    nvars = M[0, 0].nvars
    one = LaurentPoly.constant(1, nvars)
    coeffs = [None] * (n + 1)
    coeffs[n] = one
    B = laurent_identity(n, nvars)
    for k in range(1, n + 1):
        B = M @ B
        c = mat_trace(B).exact_div_int(k)
        coeffs[n - k] = -c
        if k < n:
            for i in range(n):
                B[i, i] = B[i, i] - c
    return coeffs  # type: ignore[return-value]


def det_exact(M: np.ndarray) -> LaurentPoly:
    """Determinant via the characteristic polynomial's constant term."""
    n = M.shape[0]
    c0 = char_poly_exact(M)[0]
    return c0 if n % 2 == 0 else -c0


def adjugate_inverse(M: np.ndarray) -> np.ndarray:
    """Exact inverse of a matrix whose determinant is a unit monomial.

    Raises ArithmeticError when det is not +/- a monomial (then no inverse
    exists over the Laurent ring).
    """
    n = M.shape[0]
    d = det_exact(M)
    mono = d.as_monomial()
    if mono is None or abs(mono[0]) != 1:
        raise ArithmeticError(f"determinant {d} is not a unit of the Laurent ring")
    c, exps = mono
    unit_inv = LaurentPoly({tuple(-e for e in exps): c}, d.nvars)
    out = np.empty((n, n), dtype=object)
    idx = list(range(n))
    for i in range(n):
        for j in range(n):
            rows = idx[:j] + idx[j + 1 :]
            cols = idx[:i] + idx[i + 1 :]
            minor = M[np.ix_(rows, cols)]
            md = det_exact(minor) if n > 1 else LaurentPoly.constant(1, d.nvars)
            sgn = -1 if (i + j) % 2 else 1
            out[i, j] = md * sgn * unit_inv
    return out


def poly_in_u_key(coeffs: list[LaurentPoly]) -> dict[tuple[int, ...], int]:
    """Flatten a u-polynomial with Laurent coefficients to one exponent dict."""
    flat: dict[tuple[int, ...], int] = {}
    for i, p in enumerate(coeffs):
        for e, c in p.coeffs.items():
            flat[(i,) + e] = c
    return flat


def equal_up_to_unit(
    coeffs_a: list[LaurentPoly], coeffs_b: list[LaurentPoly]
) -> tuple[int, int] | None:
    """Compare u-polynomials up to a global factor of +/- t^k.

    Returns (sign, k) such that a = sign * t^k * b, or None when the two do
    not differ by a unit.  The t-exponent is the LAST variable slot.
    """
    fa, fb = poly_in_u_key(coeffs_a), poly_in_u_key(coeffs_b)
    if len(fa) != len(fb):
        return None
    if not fa:
        return (1, 0)
    ka = min(fa)
    kb = min(fb)
    shift = ka[-1] - kb[-1]
    if ka[:-1] != kb[:-1]:
        return None
    for sign in (1, -1):
        ok = all(
            fa.get(e[:-1] + (e[-1] + shift,)) == sign * c for e, c in fb.items()
        )
        if ok:
            return (sign, shift)
    return None

"""The deck group's action on cover homology, as a representation.

The finite quotient ``G`` acts on the first homology of its cover by deck
transformations.  Classically this representation is known in closed
form (Chevalley--Weil): for a free group of rank ``k`` it is one trivial
summand plus ``k - 1`` copies of the regular representation, and for a
closed surface of genus ``g`` it is two trivial summands plus ``2g - 2``
regular ones.  On characters::

    free:     chi(1) = 1 + d(k-1),     chi(g) = 1   for g != 1
    surface:  chi(1) = 2 + d(2g-2),    chi(g) = 2   for g != 1

This module computes the character exactly from the deck matrices and
checks it against the formula, extracts the fixed sublattice (the
transfer image of the base homology), and packages a small reducibility
report for the induced matrices of interest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import covers
from .covers import CoverHomology
from .linalg import (
    integer_nullspace,
    intmat,
    lattice_contains,
    rank_mod_p,
    row_hermite,
)
from .words import Endo

__all__ = [
    "deck_character",
    "ChevalleyWeilReport",
    "verify_chevalley_weil",
    "fixed_subspace",
    "ReducibilityReport",
    "reducibility_report",
]

_CERTIFICATE_PRIMES = (2, 3, 5, 7, 11, 13)


def _projected_deck(hom: CoverHomology, g: int) -> np.ndarray:
    d = covers.induced_deck(hom.schreier, g)
    if hom.projection is None:
        return d
    return hom.projection @ d @ hom.section


def deck_character(hom: CoverHomology) -> np.ndarray:
    """Trace of every deck matrix, indexed by group element.

    Large free covers reuse the one-pass fingerprint tables; everything
    else takes traces of the exact matrices.
    """
    schreier = hom.schreier
    d = schreier.degree
    if hom.projection is None and schreier.kernel_rank > 64:
        _r, _f, traces = covers.deck_fingerprints(schreier)
        return traces.copy()
    return np.array(
        [int(np.trace(_projected_deck(hom, g))) for g in range(d)],
        dtype=np.int64,
    )


@dataclass(frozen=True)
class ChevalleyWeilReport:
    """Exact comparison of the deck character against the classical formula."""

    quotient: str
    kind: str
    degree: int
    expected_identity: int
    expected_nonidentity: int
    trivial_multiplicity: int
    regular_multiplicity: int
    character: np.ndarray
    mismatches: tuple[tuple[int, int, int], ...]  # (element, expected, actual)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_chevalley_weil(hom: CoverHomology) -> ChevalleyWeilReport:
    q = hom.schreier.quotient
    d = q.order
    pres = q.presentation
    if pres.kind == "free":
        expected_id = 1 + d * (pres.rank - 1)
        expected_other = 1
        triv_mult, reg_mult = 1, pres.rank - 1
    else:
        expected_id = 2 + d * (2 * pres.genus - 2)
        expected_other = 2
        triv_mult, reg_mult = 2, 2 * pres.genus - 2
    chi = deck_character(hom)
    mismatches = []
    for g in range(d):
        want = expected_id if g == 0 else expected_other
        if int(chi[g]) != want:
            mismatches.append((g, want, int(chi[g])))
    return ChevalleyWeilReport(
        quotient=q.name,
        kind=pres.kind,
        degree=d,
        expected_identity=expected_id,
        expected_nonidentity=expected_other,
        trivial_multiplicity=triv_mult,
        regular_multiplicity=reg_mult,
        character=chi,
        mismatches=tuple(mismatches),
    )


def _generator_deck_matrices(hom: CoverHomology) -> list[np.ndarray]:
    q = hom.schreier.quotient
    out = []
    for i in range(q.rank):
        g = q.word_to_element((i + 1,))
        out.append(_projected_deck(hom, g))
    return out


def _transfer_basis(hom: CoverHomology) -> Optional[np.ndarray]:
    """Fast fixed-lattice basis for free covers: transfer vectors.

    The transfer of the base class of generator ``i`` is the 0/1 vector
    supported on the non-tree ``x_i`` edges.  The supports partition the
    kernel generators, so the vectors are independent and span a
    saturated sublattice; invariance is verified exactly, and fullness is
    certified by a mod-p rank bound.  Returns None if any check fails
    (callers then fall back to the exact path).
    """
    schreier = hom.schreier
    q = schreier.quotient
    m, k = schreier.kernel_rank, q.rank
    basis = np.zeros((m, k), dtype=np.int64)
    for i in range(k):
        edges = schreier.edge_index[:, i]
        basis[edges[edges >= 0], i] = 1
    decks = _generator_deck_matrices(hom)
    for mat in decks:
        if not np.array_equal(mat @ basis, basis):
            return None
    stacked = np.concatenate([mat - np.eye(m, dtype=np.int64) for mat in decks])
    for p in _CERTIFICATE_PRIMES:
        if rank_mod_p(stacked, p) == m - k:
            return basis
    return None


def fixed_subspace(hom: CoverHomology) -> np.ndarray:
    """Basis (columns) of the lattice of deck-invariant homology classes.

    Exact: the result spans the full fixed sublattice, saturated.  Small
    covers take an integer nullspace of the stacked ``D_gen - I``; large
    free covers use the certified transfer basis with the same fallback.
    """
    schreier = hom.schreier
    if hom.projection is None and schreier.kernel_rank > 64:
        basis = _transfer_basis(hom)
        if basis is not None:
            return basis
    decks = _generator_deck_matrices(hom)
    n = hom.rank
    stacked = intmat(
        np.concatenate(
            [np.asarray(mat, dtype=object) - np.eye(n, dtype=object) for mat in decks]
        )
    )
    null_cols = integer_nullspace(stacked)
    return np.array(null_cols.tolist(), dtype=np.int64)


@dataclass(frozen=True)
class ReducibilityReport:
    """Fixed-lattice data bundled with per-endomorphism invariance flags.

    ``chi_trivial`` is the multiplicity of the trivial character in the
    deck character (so it equals ``dim``); ``chi_regular`` the inner
    product with the regular character (= the identity trace).  For the
    order-one quotient everything is fixed and both numbers collapse to
    the full rank.
    """

    quotient: str
    dim: int
    basis: np.ndarray
    chi_trivial: int
    chi_regular: int
    endo_preserves: tuple[tuple[str, bool], ...]

    @property
    def consistent(self) -> bool:
        return self.dim == self.chi_trivial


def reducibility_report(
    hom: CoverHomology, endos: Sequence[tuple[str, Endo]] = ()
) -> ReducibilityReport:
    q = hom.schreier.quotient
    d = q.order
    chi = deck_character(hom)
    total = int(chi.sum())
    if total % d != 0:
        raise ArithmeticError(
            f"character sum {total} not divisible by group order {d}"
        )
    chi_trivial = total // d
    chi_regular = int(chi[0])
    basis = fixed_subspace(hom)
    basis_cols = intmat(np.asarray(basis, dtype=object))
    flags = []
    for name, endo in endos:
        mat = covers.induced_automorphism(hom, endo)
        moved = intmat((mat @ basis).astype(object))
        flags.append((name, lattice_contains(basis_cols, moved)))
    return ReducibilityReport(
        quotient=q.name,
        dim=int(basis.shape[1]),
        basis=basis,
        chi_trivial=chi_trivial,
        chi_regular=chi_regular,
        endo_preserves=tuple(flags),
    )

"""Finite covers: Schreier graphs, kernel homology, and induced matrices.

A finite quotient ``F -> G`` acting regularly on its own elements has a
covering-space shadow: the Schreier graph on ``G`` with one edge per
(point, generator) pair.  A spanning tree (breadth-first from the
identity, trying generator 1 before generator 2 and the positive
direction before the inverse) picks out:

* transversal words ``t_u`` — the tree path from the identity to ``u``;
* one free generator of the kernel per non-tree positive edge,
  ``s_(u,i) = t_u x_i t_{u.x_i}^{-1}``, indexed in (point, generator)
  lexicographic order.

``rewrite`` expresses a kernel word in the abelianized kernel basis by
walking the graph and tallying signed crossings of non-tree edges; this
is the homology class of the word in the cover.  ``induced_automorphism``
pushes an automorphism of ``F`` (one that preserves the kernel) to a
matrix on that homology; ``induced_deck`` does the same for the deck
transformations, using the identity

    rewrite(g s g^{-1}) = walk_vector(s, start = point of g)

(the conjugated walk traverses g's path, loops, and retraces it, so the
out-and-back crossings cancel).

For surface quotients the cover is a closed surface: its homology is the
free kernel homology modulo one conjugated-relator class per sheet, and
matrices are pushed through a Smith-normal-form projection onto that
quotient lattice.

Large covers (kernel rank beyond a few dozen) switch to a vectorized
walker: words become code matrices, one column per word, and every step
is a pair of fancy-indexed gathers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .linalg import intmat, smith_normal_form
from .words import Endo, Word, free_reduce, invert_word
from .quotients import FiniteQuotient

__all__ = [
    "KernelNotPreserved",
    "SchreierData",
    "CoverHomology",
    "build_schreier",
    "walk_vector",
    "rewrite",
    "homology",
    "induced_automorphism",
    "induced_deck",
    "deck_fingerprints",
]

# Kernel rank beyond which matrix-building walks switch to the vectorized path.
_BATCH_THRESHOLD = 64


class KernelNotPreserved(RuntimeError):
    """An endomorphism moved a kernel element outside the kernel."""

    def __init__(self, quotient_name: str, word: Word, image: Word, element: int):
        self.quotient_name = quotient_name
        self.word = word
        self.image = image
        self.element = element
        super().__init__(
            f"kernel of {quotient_name!r} not preserved: {word!r} maps to "
            f"{image!r}, which lands on element {element}"
        )


@dataclass
class SchreierData:
    """Spanning-tree bookkeeping for the cover attached to a quotient.

    ``edge_index[u, i]`` is the kernel-generator index of the positive
    edge from ``u`` along generator ``i+1``, or -1 for a tree edge.
    """

    quotient: FiniteQuotient
    transversal_words: tuple[Word, ...]
    edge_index: np.ndarray
    generator_words: tuple[Word, ...]

    _next_table: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    _edge_table: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    _gen_codes: Optional[tuple[np.ndarray, np.ndarray]] = field(
        default=None, repr=False, compare=False
    )
    _fingerprints: Optional[tuple] = field(default=None, repr=False, compare=False)

    @property
    def degree(self) -> int:
        return self.quotient.order

    @property
    def kernel_rank(self) -> int:
        return len(self.generator_words)

    # -- vectorized walking ------------------------------------------------
    # Letters become codes: letter +i -> 2(i-1), letter -i -> 2(i-1)+1, and
    # 2*rank is a padding no-op.  NEXT[code] moves every point one step;
    # EDGE[code, p] is the signed (1-based) kernel-generator index crossed
    # by taking that step at p, 0 on tree edges and padding.

    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        if self._next_table is None:
            q = self.quotient
            d, r = self.degree, q.rank
            nxt = np.empty((2 * r + 1, d), dtype=np.int64)
            edg = np.zeros((2 * r + 1, d), dtype=np.int64)
            inv_act = q.inv_act()
            for i in range(r):
                nxt[2 * i] = q.gen_act[i]
                nxt[2 * i + 1] = inv_act[i]
                pos = self.edge_index[:, i]
                edg[2 * i] = np.where(pos >= 0, pos + 1, 0)
                back = self.edge_index[inv_act[i], i]
                edg[2 * i + 1] = np.where(back >= 0, -(back + 1), 0)
            nxt[2 * r] = np.arange(d)
            self._next_table = nxt
            self._edge_table = edg
        return self._next_table, self._edge_table

    def gen_code_matrix(self) -> tuple[np.ndarray, np.ndarray]:
        """Generator words as a padded code matrix (one column per word)."""
        if self._gen_codes is None:
            self._gen_codes = _codes_from_words(
                self.generator_words, self.quotient.rank
            )
        return self._gen_codes


def build_schreier(q: FiniteQuotient) -> SchreierData:
    """Build (and cache) the spanning-tree data for ``q``'s cover."""
    if q._schreier is not None:
        return q._schreier
    d, r = q.order, q.rank
    inv_act = q.inv_act()
    transversal: list[Optional[Word]] = [None] * d
    transversal[0] = ()
    tree_pos = set()
    queue = [0]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for i in range(r):
            for sgn, table in ((1, q.gen_act[i]), (-1, inv_act[i])):
                v = int(table[u])
                if transversal[v] is None:
                    transversal[v] = transversal[u] + (sgn * (i + 1),)
                    tree_pos.add((u, i) if sgn > 0 else (v, i))
                    queue.append(v)
    edge_index = np.full((d, r), -1, dtype=np.int64)
    words = []
    for u in range(d):
        for i in range(r):
            if (u, i) in tree_pos:
                continue
            v = int(q.gen_act[i][u])
            word = free_reduce(
                transversal[u] + (i + 1,) + invert_word(transversal[v])
            )
            edge_index[u, i] = len(words)
            words.append(word)
    data = SchreierData(
        quotient=q,
        transversal_words=tuple(transversal),
        edge_index=edge_index,
        generator_words=tuple(words),
    )
    q._schreier = data
    return data


def _walk(schreier: SchreierData, w: Word, start: int) -> tuple[np.ndarray, int]:
    q = schreier.quotient
    inv_act = q.inv_act()
    acc = np.zeros(schreier.kernel_rank, dtype=np.int64)
    p = start
    for letter in w:
        if letter > 0:
            e = int(schreier.edge_index[p, letter - 1])
            if e >= 0:
                acc[e] += 1
            p = int(q.gen_act[letter - 1][p])
        else:
            p = int(inv_act[-letter - 1][p])
            e = int(schreier.edge_index[p, -letter - 1])
            if e >= 0:
                acc[e] -= 1
    return acc, p


def walk_vector(schreier: SchreierData, w: Word, start: int = 0) -> np.ndarray:
    """Signed non-tree-edge crossings of ``w`` walked from ``start``."""
    return _walk(schreier, w, start)[0]


def rewrite(schreier: SchreierData, w: Word) -> np.ndarray:
    """Homology class of a kernel word in the kernel-generator basis.

    Raises ``ValueError`` if ``w`` is not in the kernel.
    """
    acc, end = _walk(schreier, w, 0)
    if end != 0:
        raise ValueError(
            f"word {w!r} is not in the kernel (lands on element {end})"
        )
    return acc


def _codes_from_words(
    words: Sequence[Word], rank: int
) -> tuple[np.ndarray, np.ndarray]:
    """Pack words into a padded code matrix; returns (codes, lengths)."""
    lengths = np.array([len(w) for w in words], dtype=np.int64)
    ncols = len(words)
    depth = int(lengths.max()) if ncols else 0
    codes = np.full((depth, ncols), 2 * rank, dtype=np.int64)
    for c, w in enumerate(words):
        for t, letter in enumerate(w):
            codes[t, c] = (
                2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1
            )
    return codes, lengths


def _batched_walk(
    schreier: SchreierData, codes: np.ndarray, starts: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Walk every column of ``codes`` at once; returns (acc, end points).

    ``acc`` has one column per walked word, rows indexed by kernel
    generator.  Column indices within a step are distinct, so plain fancy
    accumulation is collision-free.
    """
    nxt, edg = schreier.tables()
    ncols = codes.shape[1]
    cols = np.arange(ncols)
    pts = starts.astype(np.int64).copy()
    acc = np.zeros((schreier.kernel_rank, ncols), dtype=np.int64)
    for row in codes:
        edges = edg[row, pts]
        hit = np.flatnonzero(edges)
        if hit.size:
            e = edges[hit]
            acc[np.abs(e) - 1, cols[hit]] += np.sign(e)
        pts = nxt[row, pts]
    return acc, pts


def _substitute_codes(
    endo: Endo, words: Sequence[Word], rank: int
) -> tuple[np.ndarray, np.ndarray]:
    """Code matrix of ``endo`` applied to each word (no free reduction).

    Crossing tallies are invariant under free reduction (an immediately
    cancelled letter pair crosses the same edge with opposite signs), so
    walking the unreduced substitution is exact.
    """
    bank_words = []
    for letter in range(1, rank + 1):
        bank_words.append(endo.images[letter - 1])
        bank_words.append(invert_word(endo.images[letter - 1]))
    bank_codes = []
    bank_len = np.empty(2 * rank, dtype=np.int64)
    for k, bw in enumerate(bank_words):
        bank_len[k] = len(bw)
        bank_codes.append(
            np.array(
                [2 * (l - 1) if l > 0 else 2 * (-l - 1) + 1 for l in bw],
                dtype=np.int64,
            )
        )
    bank = (
        np.concatenate(bank_codes)
        if bank_codes and sum(map(len, bank_codes))
        else np.zeros(0, dtype=np.int64)
    )
    bank_off = np.concatenate(([0], np.cumsum(bank_len)))[:-1]

    flat = []
    word_id = []
    for c, w in enumerate(words):
        for letter in w:
            flat.append(2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1)
            word_id.append(c)
    flat = np.array(flat, dtype=np.int64)
    word_id = np.array(word_id, dtype=np.int64)

    out_lens = bank_len[flat] if flat.size else np.zeros(0, dtype=np.int64)
    total = int(out_lens.sum())
    if total:
        starts = np.concatenate(([0], np.cumsum(out_lens)))[:-1]
        gather = (
            np.repeat(bank_off[flat], out_lens)
            + np.arange(total)
            - np.repeat(starts, out_lens)
        )
        out_codes = bank[gather]
        out_word = np.repeat(word_id, out_lens)
    else:
        out_codes = np.zeros(0, dtype=np.int64)
        out_word = np.zeros(0, dtype=np.int64)

    ncols = len(words)
    col_len = np.zeros(ncols, dtype=np.int64)
    np.add.at(col_len, out_word, 1)
    depth = int(col_len.max()) if ncols else 0
    codes = np.full((depth, ncols), 2 * rank, dtype=np.int64)
    if total:
        col_starts = np.concatenate(([0], np.cumsum(col_len)))[:-1]
        pos = np.arange(total) - col_starts[out_word]
        codes[pos, out_word] = out_codes
    return codes, col_len


@dataclass
class CoverHomology:
    """First homology of the cover, with an integer coordinate system.

    For a free-group quotient this is just the free kernel homology
    (``projection``/``section`` are ``None``).  For a surface quotient the
    conjugated relators are quotiented out via Smith normal form:
    ``projection @ v`` maps a kernel class to quotient coordinates and
    ``section`` splits it back.  The relator lattice must be primitive
    (all torsion divisors 1); anything else raises.
    """

    schreier: SchreierData
    rank: int
    projection: Optional[np.ndarray]
    section: Optional[np.ndarray]
    _relation_rank: int = 0
    _u: Optional[np.ndarray] = None
    _u_inv: Optional[np.ndarray] = None

    @property
    def kind(self) -> str:
        return self.schreier.quotient.presentation.kind

    def class_vector(self, w: Word) -> np.ndarray:
        v = rewrite(self.schreier, w)
        if self.projection is None:
            return v
        return self.projection @ v


def homology(schreier: SchreierData) -> CoverHomology:
    q = schreier.quotient
    m = schreier.kernel_rank
    if q.presentation.kind == "free":
        return CoverHomology(
            schreier=schreier, rank=m, projection=None, section=None
        )
    rel = q.presentation.relator
    columns = []
    for t in schreier.transversal_words:
        conj = free_reduce(t + rel + invert_word(t))
        columns.append(rewrite(schreier, conj))
    b = intmat(np.array(columns, dtype=object).T)
    u, s, _v, u_inv, _v_inv = smith_normal_form(b, return_inverses=True)
    diag = [int(s[i, i]) for i in range(min(s.shape))]
    r0 = sum(1 for x in diag if x != 0)
    if any(abs(x) != 1 for x in diag[:r0]):
        raise ArithmeticError(
            f"cover homology has torsion divisors {diag[:r0]}; "
            "expected a primitive relator lattice"
        )
    u_arr = np.array(u.tolist(), dtype=np.int64)
    u_inv_arr = np.array(u_inv.tolist(), dtype=np.int64)
    return CoverHomology(
        schreier=schreier,
        rank=m - r0,
        projection=u_inv_arr[r0:, :],
        section=u_arr[:, r0:],
        _relation_rank=r0,
        _u=u_arr,
        _u_inv=u_inv_arr,
    )


def _raw_matrix(schreier: SchreierData, endo: Endo) -> np.ndarray:
    """Matrix of ``endo`` on the free kernel homology, one column per generator.

    Raises :class:`KernelNotPreserved` if any generator image leaves the
    kernel.
    """
    q = schreier.quotient
    m = schreier.kernel_rank
    if m <= _BATCH_THRESHOLD:
        cols = np.empty((m, m), dtype=np.int64)
        for e, s in enumerate(schreier.generator_words):
            image = endo.apply(s)
            acc, end = _walk(schreier, image, 0)
            if end != 0:
                raise KernelNotPreserved(q.name, s, image, end)
            cols[:, e] = acc
        return cols
    codes, _ = _substitute_codes(endo, schreier.generator_words, q.rank)
    acc, ends = _batched_walk(
        schreier, codes, np.zeros(codes.shape[1], dtype=np.int64)
    )
    bad = np.flatnonzero(ends)
    if bad.size:
        e = int(bad[0])
        s = schreier.generator_words[e]
        return_image = endo.apply(s)
        raise KernelNotPreserved(q.name, s, return_image, int(ends[e]))
    return acc


def induced_automorphism(hom: CoverHomology, endo: Endo) -> np.ndarray:
    """Matrix of the endomorphism on the cover's homology coordinates.

    For surface covers the raw matrix is conjugated into the Smith basis;
    it must preserve the relator lattice (raising otherwise) and the
    returned block acts on the quotient coordinates.
    """
    raw = _raw_matrix(hom.schreier, endo)
    if hom.projection is None:
        return raw
    q = hom.schreier.quotient
    r0 = hom._relation_rank
    full = hom._u_inv @ raw @ hom._u
    if np.any(full[r0:, :r0] != 0):
        raise ArithmeticError(
            f"endomorphism does not preserve the relator lattice of {q.name!r}"
        )
    return full[r0:, r0:]


def induced_deck(schreier: SchreierData, g: int) -> np.ndarray:
    """Deck matrix of element ``g`` on the free kernel homology.

    Column ``e`` is ``rewrite(g s_e g^{-1})``, computed as the walk of
    ``s_e`` started at ``g``'s point.
    """
    m = schreier.kernel_rank
    if m <= _BATCH_THRESHOLD:
        cols = np.empty((m, m), dtype=np.int64)
        for e, s in enumerate(schreier.generator_words):
            cols[:, e] = walk_vector(schreier, s, start=g)
        return cols
    codes, _ = schreier.gen_code_matrix()
    acc, _ends = _batched_walk(
        schreier, codes, np.full(codes.shape[1], g, dtype=np.int64)
    )
    return acc


def deck_fingerprints(
    schreier: SchreierData, seed: int = 0x5EED
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Random projections and traces of every deck matrix, in one pass.

    Returns ``(r, F, traces)``: a fixed random weight vector ``r``,
    ``F[g, j] = r @ D_g[:, j]``, and ``traces[g] = tr D_g``.  Row
    inequality in ``F`` certifies matrix inequality; equality is only a
    candidate and needs an exact check.  Cached on the Schreier data.
    """
    if schreier._fingerprints is not None:
        return schreier._fingerprints
    rng = np.random.default_rng(seed)
    m, d = schreier.kernel_rank, schreier.degree
    r = rng.integers(1, 1 << 30, size=m, dtype=np.int64)
    F = np.zeros((d, m), dtype=np.int64)
    traces = np.zeros(d, dtype=np.int64)
    nxt, edg = schreier.tables()
    for j, word in enumerate(schreier.generator_words):
        pts = np.arange(d)
        for letter in word:
            code = 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1
            edges = edg[code, pts]
            hit = np.flatnonzero(edges)
            if hit.size:
                e = edges[hit]
                signs = np.sign(e)
                idx = np.abs(e) - 1
                F[hit, j] += signs * r[idx]
                on_diag = idx == j
                if on_diag.any():
                    traces[hit[on_diag]] += signs[on_diag]
            pts = nxt[code, pts]
    schreier._fingerprints = (r, F, traces)
    return schreier._fingerprints

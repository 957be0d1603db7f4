"""Witness searches over a catalog of finite quotients.

Every detector here has the same shape: walk the catalog in order, try to
extract a *certificate* from a finite cover, and return the first one
found.  Certificates are packaged as :class:`Witness` records whose
``detail`` is plain JSON-able data — enough to replay the check without
rerunning the scan.

The three searches:

* ``faithfulness_witness`` — a quotient where the automorphism survives:
  it induces a nontrivial automorphism of the finite group and a
  non-identity matrix on the cover homology.
* ``non_inner_witness`` — a quotient where the induced matrix differs
  from *every* deck matrix, so the automorphism cannot be conjugation.
* ``conjugacy_separation`` — a quotient whose conjugacy classes pull the
  two words apart.  (Class membership is decided exactly; the recorded
  class fingerprints are replay data, not the decision procedure —
  distinct classes can share a fingerprint.)

A ``none``-kind witness means the catalog is exhausted, never that the
property fails: these are one-sided tests.

``finite_type_expansion`` splits a word against a nested tower of
characteristic quotients — coset representative plus kernel-homology
tail at each level — giving an injective-in-practice invariant that
``expansion_separates`` compares levelwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import covers, quotients
from .quotients import FiniteQuotient
from .words import (
    Endo,
    Word,
    abelianized,
    cyclic_normal_form,
    format_word,
    free_reduce,
    invert_word,
)

__all__ = [
    "Witness",
    "faithfulness_witness",
    "non_inner_witness",
    "conjugacy_separation",
    "CandidateReport",
    "ClassificationReport",
    "classify_witnesses",
    "ExpansionLevel",
    "FiniteTypeExpansion",
    "finite_type_expansion",
    "expansion_separates",
]

OBSTRUCTION_FOUND = "reduction obstruction found"
NO_OBSTRUCTION = "no obstruction in catalog"

# Above this many matrix entries (|G| * m^2), per-deck disagreement
# evidence switches from exact coordinates to random-projection columns.
_EXACT_DETAIL_LIMIT = 2_000_000


@dataclass(frozen=True)
class Witness:
    """Outcome of a catalog scan.

    ``kind`` is one of ``"faithfulness"``, ``"non_inner"``,
    ``"separation"`` or ``"none"``; ``quotient`` names the catalog entry
    that produced the certificate (None for ``none``); ``detail`` is
    JSON-able replay data.
    """

    kind: str
    quotient: Optional[str]
    detail: dict


def _word_json(w: Word) -> dict:
    return {"letters": list(w), "text": format_word(w, style="letters")}


def _require_automorphism(f: Endo) -> None:
    if f.inverse_images is None:
        raise ValueError(
            "witness scans need an automorphism (no inverse images recorded)"
        )


def _usable_for_induction(q: FiniteQuotient) -> Optional[str]:
    """Why a catalog entry cannot carry induced-matrix scans, or None."""
    if q.presentation.kind != "free":
        return "surface entry: characteristic verification out of domain"
    ok, cert = quotients.verify_characteristic(q)
    if not ok:
        name, s, image = cert
        return (
            f"not characteristic: {name} moves kernel word "
            f"{format_word(s, style='letters')} to "
            f"{format_word(image, style='letters')}"
        )
    return None


def _rank_mismatch(q: FiniteQuotient, f: Endo) -> Optional[str]:
    if q.rank != f.rank:
        return f"rank-{q.rank} entry: automorphism lives in rank {f.rank}"
    return None


def _alpha_images(q: FiniteQuotient, f: Endo) -> list[int]:
    return [q.word_to_element(f.images[i]) for i in range(q.rank)]


def faithfulness_witness(
    f: Endo, catalog: Sequence[FiniteQuotient]
) -> Witness:
    """First catalog entry certifying that ``f`` is not the identity.

    Scans characteristic entries in order; where ``f`` induces a
    nontrivial automorphism of the finite quotient, checks that the
    induced homology matrix is not the identity and returns the witness.
    A ``none`` result only means no catalog entry produced a
    certificate — it never claims ``f`` is trivial.
    """
    _require_automorphism(f)
    skipped = []
    for q in catalog:
        reason = _rank_mismatch(q, f) or _usable_for_induction(q)
        if reason is not None:
            skipped.append([q.name, reason])
            continue
        alpha = _alpha_images(q, f)
        gens = [q.word_to_element((i + 1,)) for i in range(q.rank)]
        if alpha == gens:
            continue  # induces the identity on this quotient
        hom = covers.homology(covers.build_schreier(q))
        mat = covers.induced_automorphism(hom, f)
        n = mat.shape[0]
        diff = np.argwhere(mat != np.eye(n, dtype=np.int64))
        if diff.size == 0:
            continue
        i, j = (int(x) for x in diff[0])
        detail = {
            "alpha_images": alpha,
            "generator_images": gens,
            "matrix_dim": n,
            "differs_from_identity_at": {
                "row": i,
                "col": j,
                "value": int(mat[i, j]),
                "identity_value": 1 if i == j else 0,
            },
        }
        if n <= 16:
            detail["matrix"] = mat.tolist()
        return Witness(kind="faithfulness", quotient=q.name, detail=detail)
    return Witness(
        kind="none",
        quotient=None,
        detail={"note": NO_OBSTRUCTION, "skipped": skipped},
    )


def non_inner_witness(f: Endo, catalog: Sequence[FiniteQuotient]) -> Witness:
    """First entry whose induced matrix differs from every deck matrix.

    Deck matrices are screened by a random projection (inequality there
    is conclusive); surviving candidates are compared exactly.  The
    witness detail holds one disagreeing coordinate per group element —
    exact coordinates for small entries, projected columns for large
    ones (with exact coordinates for any projection-colliding elements).
    """
    _require_automorphism(f)
    skipped = []
    matched = []
    for q in catalog:
        reason = _rank_mismatch(q, f) or _usable_for_induction(q)
        if reason is not None:
            skipped.append([q.name, reason])
            continue
        schreier = covers.build_schreier(q)
        hom = covers.homology(schreier)
        mat = covers.induced_automorphism(hom, f)
        d, m = q.order, schreier.kernel_rank
        r, F, _traces = covers.deck_fingerprints(schreier)
        fp = r @ mat
        candidates = np.flatnonzero((F == fp).all(axis=1))
        hit = None
        for g in candidates:
            if np.array_equal(covers.induced_deck(schreier, int(g)), mat):
                hit = int(g)
                break
        if hit is not None:
            matched.append([q.name, hit])
            continue
        per_element = []
        if d * m * m <= _EXACT_DETAIL_LIMIT:
            for g in range(d):
                deck = covers.induced_deck(schreier, g)
                diff = np.argwhere(deck != mat)
                i, j = (int(x) for x in diff[0])
                per_element.append(
                    {
                        "element": g,
                        "row": i,
                        "col": j,
                        "matrix_value": int(mat[i, j]),
                        "deck_value": int(deck[i, j]),
                        "projected": False,
                    }
                )
        else:
            candidate_set = set(int(g) for g in candidates)
            for g in range(d):
                if g in candidate_set:
                    deck = covers.induced_deck(schreier, g)
                    diff = np.argwhere(deck != mat)
                    i, j = (int(x) for x in diff[0])
                    per_element.append(
                        {
                            "element": g,
                            "row": i,
                            "col": j,
                            "matrix_value": int(mat[i, j]),
                            "deck_value": int(deck[i, j]),
                            "projected": False,
                        }
                    )
                else:
                    j = int(np.flatnonzero(F[g] != fp)[0])
                    per_element.append(
                        {
                            "element": g,
                            "col": j,
                            "matrix_projection": int(fp[j]),
                            "deck_projection": int(F[g, j]),
                            "projected": True,
                        }
                    )
        return Witness(
            kind="non_inner",
            quotient=q.name,
            detail={
                "matrix_dim": int(mat.shape[0]),
                "group_order": d,
                "per_element": per_element,
            },
        )
    return Witness(
        kind="none",
        quotient=None,
        detail={
            "note": NO_OBSTRUCTION,
            "matched_deck": matched,
            "skipped": skipped,
        },
    )


def conjugacy_separation(
    w1: Word, w2: Word, catalog: Sequence[FiniteQuotient]
) -> Witness:
    """First entry whose conjugacy classes distinguish the two words.

    Membership is decided by the exact class partition of the finite
    group; the witness records both classes' fingerprints (size, element
    order) and representatives.  Entries whose rank cannot evaluate the
    words are skipped (separation in a higher-rank quotient still
    certifies non-conjugacy, since free factors induce conjugacy).
    """
    w1 = free_reduce(w1)
    w2 = free_reduce(w2)
    need = max((abs(x) for x in w1 + w2), default=1)
    agreements = []
    skipped = []
    for q in catalog:
        if q.rank < need:
            skipped.append(
                [q.name, f"rank-{q.rank} entry: words use generator {need}"]
            )
            continue
        e1 = q.word_to_element(w1)
        e2 = q.word_to_element(w2)
        data = quotients.conjugacy_classes(q)
        c1, c2 = int(data.class_id[e1]), int(data.class_id[e2])
        if c1 != c2:
            return Witness(
                kind="separation",
                quotient=q.name,
                detail={
                    "elements": [int(e1), int(e2)],
                    "classes": [c1, c2],
                    "fingerprints": [
                        list(data.fingerprints[c1]),
                        list(data.fingerprints[c2]),
                    ],
                    "class_representatives": [
                        _word_json(q.element_word(int(data.classes[c1][0]))),
                        _word_json(q.element_word(int(data.classes[c2][0]))),
                    ],
                },
            )
        agreements.append([q.name, c1])
    return Witness(
        kind="none",
        quotient=None,
        detail={
            "note": "images conjugate in every catalog entry",
            "shared_classes": agreements,
            "skipped": skipped,
        },
    )


def _peripheral_match(
    w: Word, peripheral: Sequence[Word], rank: int
) -> Optional[dict]:
    """Is ``w`` conjugate to a power of a peripheral word?  Exact check.

    Free-group conjugacy is decided by comparing cyclic normal forms, so
    this is a complete decision, not a heuristic.
    """
    target = cyclic_normal_form(free_reduce(w, rank))
    if not target:
        return {"word": None, "power": 0, "note": "trivial word"}
    for pw in peripheral:
        base = free_reduce(pw, rank)
        core = cyclic_normal_form(base)
        if not core:
            continue
        max_power = len(target) // len(core) + 1
        for n in range(1, max_power + 1):
            for sign in (1, -1):
                power = base * n if sign > 0 else invert_word(base) * n
                if cyclic_normal_form(free_reduce(power, rank)) == target:
                    return {"word": _word_json(pw), "power": sign * n}
    return None


@dataclass(frozen=True)
class CandidateReport:
    word: Word
    peripheral: Optional[dict]
    results: tuple[tuple[int, Witness], ...]
    verdict: str


@dataclass(frozen=True)
class ClassificationReport:
    candidates: tuple[CandidateReport, ...]

    @property
    def verdicts(self) -> dict:
        return {
            format_word(c.word, style="letters"): c.verdict
            for c in self.candidates
        }


def classify_witnesses(
    f: Endo,
    candidates: Sequence[Word],
    catalog: Sequence[FiniteQuotient],
    peripheral: Sequence[Word] = (),
    max_power: int = 12,
) -> ClassificationReport:
    """Probe whether any candidate class could be ``f``-periodic.

    For each candidate ``c`` and power ``k = 1, 2, ...``, ask the catalog
    to separate ``f^k(c)`` from ``c``.  A separation at every power up to
    the bound is an obstruction to ``c`` generating an ``f``-invariant
    conjugacy class ("reduction obstruction found"); the first
    non-separated power ends the probe ("no obstruction in catalog").
    Candidates conjugate to powers of the supplied peripheral words are
    flagged (decided exactly on cyclic normal forms).
    """
    reports = []
    for cand in candidates:
        cand = free_reduce(cand, f.rank)
        flag = _peripheral_match(cand, peripheral, f.rank)
        results = []
        verdict = OBSTRUCTION_FOUND
        image = cand
        for k in range(1, max_power + 1):
            image = f.apply(image)
            witness = conjugacy_separation(image, cand, catalog)
            results.append((k, witness))
            if witness.kind == "none":
                verdict = NO_OBSTRUCTION
                break
        reports.append(
            CandidateReport(
                word=cand,
                peripheral=flag,
                results=tuple(results),
                verdict=verdict,
            )
        )
    return ClassificationReport(candidates=tuple(reports))


@dataclass(frozen=True)
class ExpansionLevel:
    quotient: str
    point: int
    transversal: Word
    entry: tuple[int, ...]


@dataclass(frozen=True)
class FiniteTypeExpansion:
    """Levelwise coset-plus-homology coordinates of a word.

    Level 0 is the abelianization; level ``l`` splits the word as
    ``t * c`` with ``t`` the spanning-tree representative of its image in
    the ``l``-th quotient and records the homology class of the kernel
    tail ``c``.  Reassembling ``t * c`` returns the original word
    exactly, so in particular both map to the same element of the deepest
    quotient.
    """

    word: Word
    abelianization: tuple[int, ...]
    levels: tuple[ExpansionLevel, ...]


def _check_tower(tower: Sequence[FiniteQuotient]) -> None:
    for q in tower:
        if q.presentation.kind != "free":
            raise ValueError(f"tower level {q.name!r} is not a free-group quotient")
        ok, cert = quotients.verify_characteristic(q)
        if not ok:
            raise ValueError(
                f"tower level {q.name!r} is not characteristic "
                f"(violated by {cert[0]})"
            )
    for shallow, deep in zip(tower, tower[1:]):
        deep_schreier = covers.build_schreier(deep)
        for s in deep_schreier.generator_words:
            if shallow.word_to_element(s) != 0:
                raise ValueError(
                    f"tower not nested: kernel word "
                    f"{format_word(s, style='letters')} of {deep.name!r} "
                    f"does not die in {shallow.name!r}"
                )


def finite_type_expansion(
    w: Word, tower: Sequence[FiniteQuotient]
) -> FiniteTypeExpansion:
    if not tower:
        raise ValueError("tower must have at least one level")
    rank = tower[0].rank
    if any(q.rank != rank for q in tower):
        raise ValueError("tower levels have mismatched ranks")
    _check_tower(tower)
    w = free_reduce(w, rank)
    levels = []
    for q in tower:
        schreier = covers.build_schreier(q)
        point = q.word_to_element(w)
        t = schreier.transversal_words[point]
        tail = free_reduce(invert_word(t) + w)
        entry = covers.rewrite(schreier, tail)
        levels.append(
            ExpansionLevel(
                quotient=q.name,
                point=point,
                transversal=t,
                entry=tuple(int(x) for x in entry),
            )
        )
    return FiniteTypeExpansion(
        word=w,
        abelianization=tuple(abelianized(w, rank)),
        levels=tuple(levels),
    )


def expansion_separates(
    w1: Word, w2: Word, tower: Sequence[FiniteQuotient]
) -> bool:
    """Do the expansions of the two words differ anywhere?

    True as soon as the abelianizations differ, or any level disagrees in
    either its coset point or its kernel-homology entry.
    """
    e1 = finite_type_expansion(w1, tower)
    e2 = finite_type_expansion(w2, tower)
    if e1.abelianization != e2.abelianization:
        return True
    for l1, l2 in zip(e1.levels, e2.levels):
        if l1.point != l2.point or l1.entry != l2.entry:
            return True
    return False

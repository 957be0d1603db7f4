"""Words in finitely generated free groups, and their endomorphisms.

A word is a tuple of nonzero signed generator indices: ``1`` means the first
generator, ``-1`` its inverse, so ``(1, -2)`` is a*b^-1.  Everything here
keeps words freely reduced.  Surface-group elements are carried around as
free words in the 2g standard generators; nothing in this module tries to
decide equality modulo the surface relator.

The Artin action of the braid group on the free group is the convention

    sigma_i:  x_i -> x_i x_{i+1} x_i^-1,   x_{i+1} -> x_i,

with all other generators fixed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Word = tuple[int, ...]

_LETTERS = "abcdefghijklmnopqrstuvwxyz"
_TOKEN = re.compile(r"\s*([a-zA-Z])(\d*)('?)\s*,?")


def free_reduce(letters: Iterable[int], rank: int | None = None) -> Word:
    """Freely reduce a raw letter sequence with a single stack pass.

    Args:
        letters: signed generator indices, 0 forbidden.
        rank: if given, indices must satisfy 1 <= |letter| <= rank.

    Returns:
        The unique freely reduced word, as a tuple.
    """
    out: list[int] = []
    for x in letters:
        x = int(x)
        if x == 0 or (rank is not None and abs(x) > rank):
            raise ValueError(f"letter {x} out of range for rank {rank}")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def concat(*ws: Sequence[int]) -> Word:
    """Concatenate and freely reduce."""
    raw: list[int] = []
    for w in ws:
        raw.extend(w)
    return free_reduce(raw)


def conjugate(g: Sequence[int], w: Sequence[int]) -> Word:
    """g w g^-1, reduced."""
    return concat(g, w, invert_word(g))


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    """[u, v] = u v u^-1 v^-1, reduced."""
    return concat(u, v, invert_word(u), invert_word(v))


def exponent_sum(w: Sequence[int], gen: int | None = None) -> int:
    """Total exponent sum, or the exponent sum of a single generator."""
    if gen is None:
        return sum(1 if x > 0 else -1 for x in w)
    return sum(1 if x == gen else -1 if x == -gen else 0 for x in w)


def abelianized(w: Sequence[int], rank: int) -> tuple[int, ...]:
    v = [0] * rank
    for x in w:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


def cyclic_reduce(w: Sequence[int]) -> Word:
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return tuple(w[i:j])


def cyclic_normal_form(w: Sequence[int]) -> Word:
    """Lexicographically least rotation of the cyclic reduction.

    Two words are conjugate in the free group iff their normal forms agree.
    """
    core = cyclic_reduce(w)
    if not core:
        return core
    rotations = [core[i:] + core[:i] for i in range(len(core))]
    return min(rotations)


def parse_word(text: str, rank: int | None = None) -> Word:
    """Parse a word from either letter or signed-integer syntax.

    Letter syntax: ``ab'c`` or ``aB`` (uppercase = inverse, trailing
    apostrophe = inverse), optionally with explicit generator numbers as in
    ``a1,A1,b2`` or ``x3'``.  Integer syntax: ``1 -2 1`` or ``1,-2,1``.
    An empty string (or "1" alone is NOT empty — use "") is the identity.
    """
    text = text.strip()
    if not text:
        return ()
    if re.fullmatch(r"[-+\d\s,]+", text):
        letters = [int(tok) for tok in re.split(r"[\s,]+", text) if tok]
        return free_reduce(letters, rank)
    letters = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        ch, digits, prime = m.groups()
        idx = int(digits) if digits else _LETTERS.index(ch.lower()) + 1
        sign = -1 if ch.isupper() else 1
        if prime:
            sign = -sign
        letters.append(sign * idx)
        pos = m.end()
    return free_reduce(letters, rank)


def format_word(w: Sequence[int], style: str = "letters") -> str:
    """Render a word; inverse generators get a trailing apostrophe."""
    if style == "ints":
        return " ".join(str(x) for x in w)
    parts = []
    for x in w:
        idx = abs(x) - 1
        if idx >= len(_LETTERS):
            parts.append(f"x{abs(x)}" + ("'" if x < 0 else ""))
        else:
            parts.append(_LETTERS[idx] + ("'" if x < 0 else ""))
    return "".join(parts)


@dataclass(frozen=True)
class Presentation:
    """Free(d) or a closed orientable surface group of genus g.

    For the surface kind the generators are a1, b1, ..., a_g, b_g in that
    order (rank = 2g) and the relator is the product of commutators
    [a1,b1]...[a_g,b_g].
    """

    kind: str  # "free" | "surface"
    rank: int
    genus: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("free", "surface"):
            raise ValueError(f"unknown presentation kind {self.kind!r}")
        if self.kind == "surface":
            if self.genus is None or self.genus < 1:
                raise ValueError("surface presentation needs genus >= 1")
            if self.rank != 2 * self.genus:
                raise ValueError("surface rank must be 2*genus")
        elif self.rank < 1:
            raise ValueError("free rank must be >= 1")

    @property
    def relator(self) -> Word:
        if self.kind == "free":
            return ()
        letters: list[int] = []
        for i in range(self.genus):  # type: ignore[arg-type]
            a, b = 2 * i + 1, 2 * i + 2
            letters += [a, b, -a, -b]
        return tuple(letters)


@dataclass(frozen=True)
class Endo:
    """Endomorphism of a free group, given by generator images.

    ``images[i]`` is the reduced image of generator i+1.  ``inverse_images``
    is populated for maps built from braids (always automorphisms) and is
    checked to actually invert on each generator.
    """

    rank: int
    images: tuple[Word, ...]
    inverse_images: tuple[Word, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.images) != self.rank:
            raise ValueError("need one image per generator")
        object.__setattr__(
            self, "images", tuple(free_reduce(w, self.rank) for w in self.images)
        )
        if self.inverse_images is not None:
            inv = tuple(free_reduce(w, self.rank) for w in self.inverse_images)
            object.__setattr__(self, "inverse_images", inv)
            for i in range(self.rank):
                if self.apply(inv[i]) != (i + 1,) or _apply_images(
                    inv, self.images[i]
                ) != (i + 1,):
                    raise ValueError("inverse_images do not invert the map")

    def apply(self, w: Sequence[int]) -> Word:
        return _apply_images(self.images, w)

    def is_identity(self) -> bool:
        return all(self.images[i] == (i + 1,) for i in range(self.rank))

    def inverse(self) -> "Endo":
        if self.inverse_images is None:
            raise ValueError("no inverse images recorded")
        return Endo(self.rank, self.inverse_images, self.images)

    def key(self) -> tuple:
        """Hashable identity of the underlying map."""
        return (self.rank, self.images)

    def __str__(self) -> str:
        gens = [format_word((i + 1,)) for i in range(self.rank)]
        return ", ".join(
            f"{g}->{format_word(w) or '1'}" for g, w in zip(gens, self.images)
        )


def _apply_images(images: Sequence[Word], w: Sequence[int]) -> Word:
    raw: list[int] = []
    for x in w:
        img = images[abs(x) - 1]
        raw.extend(img if x > 0 else invert_word(img))
    return free_reduce(raw)


def identity_endo(rank: int) -> Endo:
    gens = tuple((i + 1,) for i in range(rank))
    return Endo(rank, gens, gens)


def apply_endo(f: Endo, w: Sequence[int]) -> Word:
    """Image of w under f, freely reduced."""
    w = free_reduce(w, f.rank)
    return f.apply(w)


def compose(f: Endo, g: Endo) -> Endo:
    """(f o g)(x) = f(g(x))."""
    if f.rank != g.rank:
        raise ValueError("rank mismatch")
    images = tuple(f.apply(g.images[i]) for i in range(f.rank))
    inverse = None
    if f.inverse_images is not None and g.inverse_images is not None:
        inverse = tuple(
            _apply_images(g.inverse_images, f.inverse_images[i]) for i in range(f.rank)
        )
    return Endo(f.rank, images, inverse)


def conjugation_endo(rank: int, g: Sequence[int]) -> Endo:
    """The inner automorphism x -> g x g^-1."""
    g = free_reduce(g, rank)
    images = tuple(conjugate(g, (i + 1,)) for i in range(rank))
    ginv = invert_word(g)
    inverse = tuple(conjugate(ginv, (i + 1,)) for i in range(rank))
    return Endo(rank, images, inverse)


def _parse_assignments(specs: Sequence[str] | str) -> dict[int, Word]:
    if isinstance(specs, str):
        specs = [s for s in re.split(r"[;,]", specs) if s.strip()]
    assignments: dict[int, Word] = {}
    for spec in specs:
        if "->" not in spec:
            raise ValueError(f"assignment {spec!r} lacks '->'")
        lhs, rhs = spec.split("->", 1)
        src = parse_word(lhs)
        if len(src) != 1 or src[0] < 0:
            raise ValueError(f"left side of {spec!r} must be a single generator")
        gen = src[0]
        if gen in assignments:
            raise ValueError(f"generator {format_word((gen,))} assigned twice")
        rhs = rhs.strip()
        assignments[gen] = parse_word("" if rhs == "1" else rhs)
    return assignments


def endo_from_strings(
    specs: Sequence[str] | str,
    rank: int | None = None,
    inverse: Sequence[str] | str | None = None,
) -> Endo:
    """Build an Endo from "a->ab, b->b" style text.

    Accepts one comma/semicolon separated string or a list of single
    assignments; words inside assignments use the compact letter syntax
    (apostrophe for inverse).  Every generator of the rank must be assigned
    exactly once; the rank defaults to the number of assignments.  Passing
    ``inverse`` (same syntax) marks the map as an automorphism; the pair is
    checked to invert on every generator.
    """
    assignments = _parse_assignments(specs)
    if rank is None:
        rank = max(assignments)
    missing = [i for i in range(1, rank + 1) if i not in assignments]
    if missing:
        raise ValueError(f"no image for generator index {missing[0]}")
    inv_images = None
    if inverse is not None:
        back = _parse_assignments(inverse)
        missing = [i for i in range(1, rank + 1) if i not in back]
        if missing:
            raise ValueError(
                f"no inverse image for generator index {missing[0]}"
            )
        inv_images = tuple(back[i] for i in range(1, rank + 1))
    return Endo(rank, tuple(assignments[i] for i in range(1, rank + 1)), inv_images)


def braid_generator_endo(n: int, i: int) -> Endo:
    """sigma_i (i > 0) or sigma_{|i|}^-1 (i < 0) acting on F_n."""
    k = abs(i)
    if not 1 <= k <= n - 1:
        raise ValueError(f"braid generator {i} out of range for {n} strands")
    images = [(j,) for j in range(1, n + 1)]
    invs = [(j,) for j in range(1, n + 1)]
    # sigma_k and its inverse; indices k-1, k in 0-based image lists
    images[k - 1] = (k, k + 1, -k)
    images[k] = (k,)
    invs[k - 1] = (k + 1,)
    invs[k] = (-(k + 1), k, k + 1)
    if i > 0:
        return Endo(n, tuple(images), tuple(invs))
    return Endo(n, tuple(invs), tuple(images))


def braid_to_endo(braid: Sequence[int], n: int) -> Endo:
    """Automorphism of F_n for a braid word (signed Artin generator indices).

    The word acts letter by letter, first letter outermost:
    braid_to_endo([i, j]) = sigma_i o sigma_j.
    """
    f = identity_endo(n)
    for letter in braid:
        f = compose(f, braid_generator_endo(n, letter))
    return f

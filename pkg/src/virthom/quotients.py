"""Finite quotients of free and surface groups, presented as regular permutation actions.

A quotient ``F -> G`` of a rank-``r`` free group is stored by what the
generators *do*: one permutation array per generator, acting on
``{0, ..., |G|-1}`` on the right.  We insist the action is regular
(transitive with trivial stabilizers), which buys a very concrete
dictionary: points *are* group elements, ``0`` is the identity, and the
basepoint orbit map ``g -> 0.g`` is the identity on indices.  Everything
downstream (multiplication tables, conjugacy classes, covering-space
bookkeeping) reads off that dictionary with numpy gathers.

Right actions compose left-to-right: ``p . (uv) = (p . u) . v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .words import Endo, Presentation, Word, free_reduce

__all__ = [
    "FiniteQuotient",
    "ConjugacyData",
    "build_from_images",
    "build_mod_m_abelian",
    "build_heisenberg_mod_p",
    "trivial_quotient",
    "conjugacy_classes",
    "compose_tower",
    "nielsen_generators",
    "verify_characteristic",
]


@dataclass
class FiniteQuotient:
    """A finite quotient of ``presentation``'s group, as a regular right action.

    ``gen_act[i][p]`` is the point ``p`` moved by the image of generator
    ``i+1``.  Because the action is regular, point indices double as
    element indices (identity = 0).  Derived tables are built lazily and
    cached on the instance.
    """

    name: str
    presentation: Presentation
    gen_act: tuple[np.ndarray, ...]
    flags: dict = field(default_factory=dict)

    _inv_act: Optional[tuple[np.ndarray, ...]] = field(
        default=None, repr=False, compare=False
    )
    _mult: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    _inverses: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    _parents: Optional[tuple[np.ndarray, np.ndarray]] = field(
        default=None, repr=False, compare=False
    )
    _bfs_order: Optional[list] = field(default=None, repr=False, compare=False)
    _orders: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    _conjugacy: Optional["ConjugacyData"] = field(
        default=None, repr=False, compare=False
    )
    _characteristic: Optional[tuple] = field(default=None, repr=False, compare=False)
    _schreier: object = field(default=None, repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.gen_act[0])

    @property
    def rank(self) -> int:
        return self.presentation.rank

    def inv_act(self) -> tuple[np.ndarray, ...]:
        if self._inv_act is None:
            self._inv_act = tuple(np.argsort(a) for a in self.gen_act)
        return self._inv_act

    def act_point(self, p: int, w: Word) -> int:
        """Move ``p`` by the image of the word ``w`` (right action)."""
        inv = self.inv_act()
        for letter in w:
            if letter > 0:
                p = int(self.gen_act[letter - 1][p])
            else:
                p = int(inv[-letter - 1][p])
        return p

    def act_points(self, points: np.ndarray, w: Word) -> np.ndarray:
        """Vectorized :meth:`act_point` over an array of points."""
        inv = self.inv_act()
        out = points
        for letter in w:
            table = self.gen_act[letter - 1] if letter > 0 else inv[-letter - 1]
            out = table[out]
        return out

    def word_to_element(self, w: Word) -> int:
        return self.act_point(0, w)

    def permutation_of_word(self, w: Word) -> np.ndarray:
        return self.act_points(np.arange(self.order), w)

    def mult_table(self) -> np.ndarray:
        """``M[g, h] = g * h``, built one column per element by BFS."""
        if self._mult is None:
            n = self.order
            mult = np.empty((n, n), dtype=np.int64)
            mult[:, 0] = np.arange(n)
            for q, (parent, letter) in self._bfs_parents():
                table = (
                    self.gen_act[letter - 1]
                    if letter > 0
                    else self.inv_act()[-letter - 1]
                )
                mult[:, q] = table[mult[:, parent]]
            self._mult = mult
        return self._mult

    def inverses(self) -> np.ndarray:
        if self._inverses is None:
            # Each row of the multiplication table hits 0 exactly once.
            self._inverses = np.argmin(self.mult_table(), axis=1)
        return self._inverses

    def _bfs_parents(self) -> Iterable[tuple[int, tuple[int, int]]]:
        """Yield ``(element, (parent, letter))`` in BFS discovery order.

        Neighbor order is generator 1, 2, ... with the positive direction
        tried before the inverse, matching the covering-space convention
        used elsewhere.
        """
        if self._parents is None:
            n = self.order
            parent = np.full(n, -1, dtype=np.int64)
            letter = np.zeros(n, dtype=np.int64)
            parent[0] = 0
            order_out = []
            queue = [0]
            head = 0
            inv = self.inv_act()
            while head < len(queue):
                p = queue[head]
                head += 1
                for i in range(self.rank):
                    for sgn, table in ((1, self.gen_act[i]), (-1, inv[i])):
                        q = int(table[p])
                        if parent[q] < 0 and q != 0:
                            parent[q] = p
                            letter[q] = sgn * (i + 1)
                            order_out.append(q)
                            queue.append(q)
            self._parents = (parent, letter)
            self._bfs_order = order_out
        parent, letter = self._parents
        return [(q, (int(parent[q]), int(letter[q]))) for q in self._bfs_order]

    def element_word(self, g: int) -> Word:
        """A representative word for element ``g`` (BFS tree path from 0)."""
        self._bfs_parents()
        parent, letter = self._parents
        if not 0 <= g < self.order:
            raise ValueError(f"element index {g} out of range")
        out = []
        while g != 0:
            out.append(int(letter[g]))
            g = int(parent[g])
        return tuple(reversed(out))

    def element_order(self, g: int) -> int:
        return int(self.element_orders()[g])

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            mult = self.mult_table()
            n = self.order
            orders = np.ones(n, dtype=np.int64)
            power = np.arange(n)
            alive = power != 0
            k = 1
            while alive.any():
                k += 1
                power = mult[power, np.arange(n)]
                newly_done = alive & (power == 0)
                orders[newly_done] = k
                alive &= power != 0
            self._orders = orders
        return self._orders


def _as_perm(image: Sequence[int], npoints: int, gen_index: int) -> np.ndarray:
    arr = np.asarray(image, dtype=np.int64)
    if arr.shape != (npoints,):
        raise ValueError(
            f"generator {gen_index + 1}: image has length {arr.shape}, "
            f"expected {npoints}"
        )
    if not np.array_equal(np.sort(arr), np.arange(npoints)):
        raise ValueError(f"generator {gen_index + 1}: image is not a permutation")
    return arr


def build_from_images(
    presentation: Presentation,
    images: Sequence[Sequence[int]],
    name: str = "",
    flags: Optional[dict] = None,
) -> FiniteQuotient:
    """Assemble a quotient from generator permutations, verifying regularity.

    The permutations must generate a group acting regularly: transitively,
    with the basepoint-orbit map ``g -> 0.g`` a bijection.  (Equivalently:
    the closure has exactly as many elements as there are points.)  For a
    surface presentation the defining relator must also act trivially.

    Raises ``ValueError`` on a non-permutation image, an intransitive or
    non-regular action (the error names a concrete witness), or a relator
    that fails to die.
    """
    if not images:
        raise ValueError("need at least one generator image")
    npoints = len(images[0])
    if npoints < 1:
        raise ValueError("action needs at least one point")
    if len(images) != presentation.rank:
        raise ValueError(
            f"got {len(images)} images for a rank-{presentation.rank} presentation"
        )
    gen_act = tuple(_as_perm(img, npoints, i) for i, img in enumerate(images))

    # Transitivity: BFS over points.
    seen = np.zeros(npoints, dtype=bool)
    seen[0] = True
    stack = [0]
    inv_act = tuple(np.argsort(a) for a in gen_act)
    while stack:
        p = stack.pop()
        for table in gen_act + inv_act:
            q = int(table[p])
            if not seen[q]:
                seen[q] = True
                stack.append(q)
    if not seen.all():
        missing = int(np.flatnonzero(~seen)[0])
        raise ValueError(
            f"action is not transitive: point {missing} is unreachable from 0"
        )

    # Freeness: close the generated permutation group, aborting as soon as
    # it outgrows the point set.  A transitive action on n points is regular
    # iff the closure has exactly n elements; overflow always comes with a
    # pair of distinct elements agreeing at the basepoint, which we report.
    identity = np.arange(npoints)
    closure: dict[bytes, Word] = {identity.tobytes(): ()}
    by_basepoint: dict[int, Word] = {0: ()}
    frontier: list[np.ndarray] = [identity]
    while frontier:
        next_frontier = []
        for arr in frontier:
            arr_word = closure[arr.tobytes()]
            for i, table in enumerate(gen_act):
                new = table[arr]
                key = new.tobytes()
                if key in closure:
                    continue
                word = free_reduce(arr_word + (i + 1,))
                base = int(new[0])
                if base in by_basepoint:
                    other = by_basepoint[base]
                    raise ValueError(
                        "action is not regular: distinct elements "
                        f"{word!r} and {other!r} both send 0 to {base}"
                    )
                if len(closure) >= npoints:
                    raise ValueError(
                        "action is not regular: more group elements than points"
                    )
                closure[key] = word
                by_basepoint[base] = word
                next_frontier.append(new)
        frontier = next_frontier
    if len(closure) != npoints:
        raise ValueError(
            f"action is not regular: closure has {len(closure)} elements "
            f"on {npoints} points"
        )

    quotient = FiniteQuotient(
        name=name,
        presentation=presentation,
        gen_act=gen_act,
        flags=dict(flags or {}),
    )
    if presentation.kind == "surface":
        rel = presentation.relator
        if not np.array_equal(quotient.permutation_of_word(rel), identity):
            raise ValueError("surface relator does not act trivially")
    return quotient


def trivial_quotient(rank: int, name: str = "trivial") -> FiniteQuotient:
    pres = Presentation(kind="free", rank=rank)
    return build_from_images(pres, [[0]] * rank, name=name)


def build_mod_m_abelian(
    rank: int, m: int, name: str = "", flags: Optional[dict] = None
) -> FiniteQuotient:
    """The quotient ``F_rank -> (Z/m)^rank`` sending generator ``i`` to ``e_i``.

    Points are vectors in ``(Z/m)^rank`` encoded ``sum(v[j] * m**j)``.
    """
    if m < 2 or rank < 1:
        raise ValueError("need m >= 2 and rank >= 1")
    n = m**rank
    points = np.arange(n)
    images = []
    for j in range(rank):
        digit = (points // m**j) % m
        images.append(points + ((digit + 1) % m - digit) * m**j)
    pres = Presentation(kind="free", rank=rank)
    return build_from_images(
        pres, images, name=name or f"mod{m}", flags=flags
    )


def build_heisenberg_mod_p(
    p: int, rank: int = 2, name: str = "", flags: Optional[dict] = None
) -> FiniteQuotient:
    """Mod-``p`` Heisenberg quotient of ``F_rank`` (extra generators die).

    The group is upper unitriangular 3x3 matrices over ``Z/p``, order
    ``p**3``; the first two free generators map to the two off-diagonal
    elementary matrices, the rest to the identity.  Element ``(x, y, z)``
    (top-middle, middle-right, top-right entries) is the point
    ``x + p*y + p*p*z``; right multiplication gives
    ``(x,y,z).a = (x+1, y, z)`` and ``(x,y,z).b = (x, y+1, z+x)``.
    """
    if p < 2 or rank < 2:
        raise ValueError("need p >= 2 and rank >= 2")
    n = p**3
    pts = np.arange(n)
    x, y, z = pts % p, (pts // p) % p, pts // (p * p)
    enc = lambda xx, yy, zz: xx + p * yy + p * p * zz  # noqa: E731
    img_a = enc((x + 1) % p, y, z)
    img_b = enc(x, (y + 1) % p, (z + x) % p)
    images = [img_a, img_b] + [pts.copy() for _ in range(rank - 2)]
    pres = Presentation(kind="free", rank=rank)
    return build_from_images(
        pres, images, name=name or f"heis{p}", flags=flags
    )


@dataclass(frozen=True)
class ConjugacyData:
    """Conjugacy classes of a finite quotient.

    ``class_id[g]`` is the index of ``g``'s class; ``classes[c]`` the sorted
    member array; ``fingerprints[c]`` the pair (class size, element order) —
    a cheap invariant of the class, recorded for witness detail.  (In a
    regular action the cycle type of an element is determined by its order,
    so the fingerprint carries no more information than these two numbers.)
    """

    class_id: np.ndarray
    classes: tuple[np.ndarray, ...]
    fingerprints: tuple[tuple[int, int], ...]


def conjugacy_classes(q: FiniteQuotient) -> ConjugacyData:
    """Partition ``q`` into conjugacy classes (cached on the quotient)."""
    if q._conjugacy is not None:
        return q._conjugacy
    n = q.order
    mult = q.mult_table()
    inv = q.inverses()
    all_g = np.arange(n)
    class_id = np.full(n, -1, dtype=np.int64)
    classes = []
    fingerprints = []
    orders = q.element_orders()
    for x in range(n):
        if class_id[x] >= 0:
            continue
        # g^{-1} * x * g over all g at once.
        conj = mult[mult[inv, x], all_g]
        members = np.unique(conj)
        cid = len(classes)
        class_id[members] = cid
        classes.append(members)
        fingerprints.append((int(members.size), int(orders[x])))
    data = ConjugacyData(
        class_id=class_id,
        classes=tuple(classes),
        fingerprints=tuple(fingerprints),
    )
    q._conjugacy = data
    return data


def nielsen_generators(rank: int) -> list[tuple[str, Endo]]:
    """A finite generating set for ``Aut(F_rank)`` (Nielsen moves).

    Adjacent transpositions, inversion of the first generator, and the
    transvection ``x1 -> x1 x2`` (when rank >= 2).
    """
    if rank < 1:
        raise ValueError("rank must be positive")
    ident = [(i + 1,) for i in range(rank)]
    out: list[tuple[str, Endo]] = []
    for i in range(rank - 1):
        images = list(ident)
        images[i], images[i + 1] = ident[i + 1], ident[i]
        swap = Endo(rank=rank, images=tuple(images), inverse_images=tuple(images))
        out.append((f"swap{i + 1}{i + 2}", swap))
    images = list(ident)
    images[0] = (-1,)
    invert = Endo(rank=rank, images=tuple(images), inverse_images=tuple(images))
    out.append(("invert1", invert))
    if rank >= 2:
        images = list(ident)
        images[0] = (1, 2)
        back = list(ident)
        back[0] = (1, -2)
        out.append(
            (
                "transvect12",
                Endo(rank=rank, images=tuple(images), inverse_images=tuple(back)),
            )
        )
    return out


def verify_characteristic(
    q: FiniteQuotient,
    aut_gens: Optional[Sequence[tuple[str, Endo]]] = None,
) -> tuple[bool, Optional[tuple[str, Word, Word]]]:
    """Decide whether ``ker(F -> q)`` is preserved by every automorphism.

    Checks the kernel's (finite) Schreier generating set against each
    automorphism in ``aut_gens`` — by default a Nielsen generating set of
    the whole automorphism group, which therefore decides invariance under
    all of ``Aut(F)``.  (Checking single generators suffices: the kernel
    has finite index, so ``a(K) <= K`` forces ``a(K) = K``.)

    Returns ``(True, None)`` or ``(False, certificate)`` where the
    certificate is ``(automorphism name, kernel word s, image word a(s))``
    with ``a(s)`` visibly outside the kernel.  Surface-group quotients are
    outside this function's domain and raise ``ValueError``.
    """
    if q.presentation.kind != "free":
        raise ValueError("characteristic verification is defined for free-group quotients")
    use_default = aut_gens is None
    if use_default and q._characteristic is not None:
        return q._characteristic
    if aut_gens is None:
        aut_gens = nielsen_generators(q.rank)
    from . import covers

    schreier = covers.build_schreier(q)
    result: tuple[bool, Optional[tuple[str, Word, Word]]] = (True, None)
    for aut_name, alpha in aut_gens:
        for s in schreier.generator_words:
            image = alpha.apply(s)
            if q.word_to_element(image) != 0:
                result = (False, (aut_name, s, image))
                break
        if result[0] is False:
            break
    if use_default:
        q._characteristic = result
    return result


def compose_tower(q: FiniteQuotient, p: int, name: str = "") -> FiniteQuotient:
    """Deepen a free-group quotient by the mod-``p`` homology of its kernel.

    Given ``F -> G`` with kernel ``K``, build the quotient by
    ``[K, K] K^p``: a group of order ``|G| * p**m`` where ``m`` is the rank
    of ``K``.  Elements are pairs ``(u, v)`` — a ``G``-element ``u`` and a
    vector ``v`` in ``(Z/p)^m`` — encoded ``u * p**m + sum(v[j] * p**j)``.
    The generator action is affine::

        (u, v) . x_i  =  (u . x_i,  tau(u, i) + C_i @ v  mod p)

    where ``tau(u, i)`` is the homology class of the Schreier element
    carried by the edge ``(u, i)`` conjugated back to the basepoint, and
    ``C_i`` is the deck matrix of the inverse of generator ``i``'s image.
    The result goes through :func:`build_from_images`, whose regularity
    check independently confirms the construction closes at the right order.
    """
    if q.presentation.kind != "free":
        raise ValueError("tower composition is defined for free-group quotients")
    if p < 2:
        raise ValueError("p must be at least 2")
    from . import covers

    schreier = covers.build_schreier(q)
    m = schreier.kernel_rank
    d = q.order
    rank = q.rank
    inv_elem = q.inverses()

    # tau[u, i]: class of t_{u.x_i}^{-1} (t_u x_i t_{u.x_i}^{-1}) t_{u.x_i},
    # via the conjugation-is-translation identity for kernel classes.
    tau = np.zeros((d, rank, m), dtype=np.int64)
    for u in range(d):
        for i in range(rank):
            e = schreier.edge_index[u, i]
            if e < 0:
                continue  # tree edge: trivial Schreier element
            target = int(q.gen_act[i][u])
            s_word = schreier.generator_words[e]
            tau[u, i] = covers.walk_vector(schreier, s_word, start=int(inv_elem[target]))
    tau %= p

    gen_matrices = [
        covers.induced_deck(schreier, int(inv_elem[q.word_to_element((i + 1,))]))
        for i in range(rank)
    ]

    powers = p ** np.arange(m)
    pm = p**m
    u_all = np.repeat(np.arange(d), pm)
    v_all = (np.tile(np.arange(pm), d)[:, None] // powers) % p

    images = []
    for i in range(rank):
        u_new = q.gen_act[i][u_all]
        v_new = (v_all @ gen_matrices[i].T + tau[u_all, i]) % p
        images.append(u_new * pm + v_new @ powers)
    pres = Presentation(kind="free", rank=rank)
    return build_from_images(pres, images, name=name or f"{q.name}.tower{p}")

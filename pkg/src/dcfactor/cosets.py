"""Right coset spaces ``A\\G`` with their suborbit (double coset) structure.

Cosets are numbered in breadth-first discovery order from the trivial coset
``A`` (index 0) along the generators of ``G``. Suborbits are the orbits of
``A`` on the cosets, numbered by their smallest coset; suborbit ``j`` is the
double coset ``A x_j A`` where ``x_j`` is the transversal element of its
smallest coset.

Two constructions share one class:

* :func:`build_coset_space` works for any subgroup ``A <= G``. Cosets are
  identified by a canonical form: the lexicographically least image of the
  base of ``G`` over the coset ``Ag``, found level by level through a chain
  of ``A`` built on the same base.
* :func:`coset_space_of_action` takes a transitive-on-its-orbit action and
  ``A`` equal to the stabilizer of a point; cosets are then points and every
  query is a numpy gather. Used for parabolic quotients of Coxeter groups,
  where the index reaches several hundred thousand.
"""
from __future__ import annotations

from typing import Callable

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import ConsistencyError, InputError, ResourceError
from .perm import PermGroup, Permutation, words_product

DEFAULT_INDEX_BOUND = 10**6


class CosetSpace:
    """Right cosets of ``subgroup`` in ``group`` under right multiplication."""

    def __init__(self, group: PermGroup, subgroup: PermGroup, gen_action: np.ndarray,
                 parent: np.ndarray, parent_gen: np.ndarray,
                 locate: Callable[[Permutation], int],
                 act_many: Callable[[np.ndarray, Permutation], np.ndarray],
                 sub_action: np.ndarray, reps: list[Permutation] | None = None):
        self.group = group
        self.subgroup = subgroup
        self.gen_action = gen_action
        self.index = gen_action.shape[1]
        self._parent = parent
        self._parent_gen = parent_gen
        self._locate = locate
        self._act_many = act_many
        self._reps = reps
        self._rep_cache: dict[int, Permutation] = {}
        self._inverse_labels: np.ndarray | None = None
        self._set_suborbits(sub_action)

    def _set_suborbits(self, sub_action: np.ndarray) -> None:
        n = self.index
        src = np.tile(np.arange(n), sub_action.shape[0])
        graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, sub_action.ravel())),
                           shape=(n, n))
        ncomp, comp = connected_components(graph, directed=True, connection="weak")
        first = np.full(ncomp, n, dtype=np.int64)
        np.minimum.at(first, comp, np.arange(n))
        order = np.argsort(first, kind="stable")
        relabel = np.empty(ncomp, dtype=np.int64)
        relabel[order] = np.arange(ncomp)
        self.suborbit_of = relabel[comp]
        self.suborbit_of.flags.writeable = False
        self.dc_reps = tuple(int(first[k]) for k in order)
        buckets = np.argsort(self.suborbit_of, kind="stable")
        sizes = np.bincount(self.suborbit_of, minlength=ncomp)
        self.suborbits = tuple(np.split(buckets, np.cumsum(sizes)[:-1]))
        if self.suborbits[0].tolist() != [0]:
            raise ConsistencyError("trivial coset is not a singleton suborbit")

    @property
    def rank(self) -> int:
        return len(self.suborbits)

    @property
    def subdegrees(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.suborbits)

    def word(self, c: int) -> list[int]:
        """Generator indices whose product carries coset 0 to coset ``c``."""
        out = []
        while c:
            out.append(int(self._parent_gen[c]))
            c = int(self._parent[c])
        return out[::-1]

    def rep(self, c: int) -> Permutation:
        """Canonical representative ``transversal[c]``."""
        if not 0 <= c < self.index:
            raise InputError(f"coset {c} outside 0..{self.index - 1}")
        if self._reps is not None:
            return self._reps[c]
        if c not in self._rep_cache:
            arrays = [g.array for g in self.group.generators]
            self._rep_cache[c] = Permutation.from_array(
                words_product(arrays, self.word(c), self.group.degree), check=False)
        return self._rep_cache[c]

    @property
    def transversal(self) -> list[Permutation]:
        return [self.rep(c) for c in range(self.index)]

    def dc_rep(self, j: int) -> Permutation:
        return self.rep(self.dc_reps[j])

    def _check_member(self, g: Permutation) -> None:
        if g.degree != self.group.degree:
            raise InputError(f"degree mismatch: {g.degree} vs {self.group.degree}")

    def coset_of(self, g: Permutation, check: bool = True) -> int:
        if check:
            self._check_member(g)
            if not self.group.contains(g):
                raise InputError("element is not in the group")
        return self._locate(g)

    def dc_index(self, g: Permutation, check: bool = True) -> int:
        return int(self.suborbit_of[self.coset_of(g, check)])

    def act_right(self, c: int, g: Permutation) -> int:
        if not 0 <= c < self.index:
            raise InputError(f"coset {c} outside 0..{self.index - 1}")
        self._check_member(g)
        return int(self._act_many(np.array([c]), g)[0])

    def act_many(self, cosets: np.ndarray, g: Permutation) -> np.ndarray:
        """Vectorized :meth:`act_right` over an array of coset indices."""
        self._check_member(g)
        return self._act_many(np.asarray(cosets), g)

    def dc_product_labels(self, x_sub: int, y: Permutation) -> frozenset[int]:
        """Suborbits ``j`` with ``A x_j A`` inside ``(A x A)(A y A)``, ``x`` from ``x_sub``."""
        if not 0 <= x_sub < self.rank:
            raise InputError(f"suborbit {x_sub} outside 0..{self.rank - 1}")
        images = self.act_many(self.suborbits[x_sub], y)
        return frozenset(np.unique(self.suborbit_of[images]).tolist())

    def inverse_label(self, j: int) -> int:
        """Suborbit of ``x_j^-1``; double coset inversion."""
        if self._inverse_labels is None:
            self._inverse_labels = np.array(
                [self.dc_index(self.dc_rep(k).inverse(), check=False) for k in range(self.rank)])
        return int(self._inverse_labels[j])

    def __repr__(self) -> str:
        return f"<CosetSpace index={self.index} rank={self.rank}>"


def _coset_canonicalizer(G: PermGroup, A: PermGroup):
    base = np.array(G.chain.base, dtype=np.int64)
    chain_a = A.chain_with_base(G.chain.base)
    levels = []
    for lv in chain_a.levels:
        if len(lv.trans) > 1:
            pts = np.array(list(lv.trans), dtype=np.int64)
            levels.append((pts, [lv.trans[int(p)] for p in pts]))

    def canonical(g: Permutation) -> bytes:
        h = g
        for pts, us in levels:
            k = int(np.argmin(h.array[pts]))
            if us[k] is not None:
                h = us[k] * h
        return h.array[base].tobytes()

    return canonical


def build_coset_space(G: PermGroup, A: PermGroup,
                      index_bound: int = DEFAULT_INDEX_BOUND) -> CosetSpace:
    """Materialize ``A\\G`` for an arbitrary subgroup ``A``."""
    if A.degree != G.degree:
        raise InputError(f"degree mismatch: {A.degree} vs {G.degree}")
    if not A.is_subgroup_of(G):
        raise InputError("subgroup generators are not all in the group")
    canonical = _coset_canonicalizer(G, A)
    ident = G.identity()
    reps = [ident]
    index = {canonical(ident): 0}
    parent, parent_gen = [0], [-1]
    rows: list[list[int]] = [[] for _ in G.generators]
    c = 0
    while c < len(reps):
        t = reps[c]
        for gi, s in enumerate(G.generators):
            h = t * s
            k = canonical(h)
            j = index.get(k)
            if j is None:
                j = len(reps)
                if j >= index_bound:
                    raise ResourceError(f"coset space exceeds the index bound {index_bound}")
                index[k] = j
                reps.append(h)
                parent.append(c)
                parent_gen.append(gi)
            rows[gi].append(j)
        c += 1
    gen_action = np.array(rows, dtype=np.int64)

    def locate(g: Permutation) -> int:
        try:
            return index[canonical(g)]
        except KeyError:
            raise InputError("element does not lie in the group") from None

    def act_many(cosets: np.ndarray, g: Permutation) -> np.ndarray:
        return np.array([index[canonical(reps[int(c)] * g)] for c in cosets], dtype=np.int64)

    n = len(reps)
    sub_action = np.array([act_many(np.arange(n), a) for a in A.generators], dtype=np.int64)
    return CosetSpace(G, A, gen_action, np.array(parent), np.array(parent_gen),
                      locate, act_many, sub_action, reps)


def coset_space_of_action(G: PermGroup, A: PermGroup, point: int = 1,
                          index_bound: int = DEFAULT_INDEX_BOUND,
                          validate: bool = False) -> CosetSpace:
    """Coset space of ``A = Stab_G(point)`` realized on the orbit of ``point``.

    ``point`` is 1-based. The caller guarantees that ``A`` is the full
    stabilizer; ``validate=True`` checks it with stabilizer chains.
    """
    n = G.degree
    p0 = point - 1
    arrays = [g.array for g in G.generators]
    pos = np.full(n, -1, dtype=np.int64)
    pos[p0] = 0
    pts = [p0]
    parent, parent_gen = [0], [-1]
    frontier = np.array([p0])
    while frontier.size:
        fresh = []
        for gi, arr in enumerate(arrays):
            img = arr[frontier]
            for src, q in zip(frontier.tolist(), img.tolist()):
                if pos[q] < 0:
                    pos[q] = len(pts)
                    if len(pts) >= index_bound:
                        raise ResourceError(f"orbit exceeds the index bound {index_bound}")
                    pts.append(q)
                    parent.append(int(pos[src]))
                    parent_gen.append(gi)
                    fresh.append(q)
        frontier = np.array(fresh, dtype=np.int64)
    pts_arr = np.array(pts, dtype=np.int64)
    gen_action = np.stack([pos[arr[pts_arr]] for arr in arrays])
    for a in A.generators:
        if a.array[p0] != p0:
            raise InputError("subgroup does not fix the base point")
    sub_action = np.stack([pos[a.array[pts_arr]] for a in A.generators])
    if validate and G.order() != len(pts) * A.order():
        raise InputError("subgroup is not the full point stabilizer")

    def locate(g: Permutation) -> int:
        c = int(pos[g.array[p0]])
        if c < 0:
            raise InputError("element moves the base point off its orbit")
        return c

    def act_many(cosets: np.ndarray, g: Permutation) -> np.ndarray:
        return pos[g.array[pts_arr[cosets]]]

    cs = CosetSpace(G, A, gen_action, np.array(parent), np.array(parent_gen),
                    locate, act_many, sub_action)
    cs.points = pts_arr
    return cs


def coset_of(cs: CosetSpace, g: Permutation) -> int:
    return cs.coset_of(g)


def dc_index(cs: CosetSpace, g: Permutation) -> int:
    return cs.dc_index(g)


def act_right(cs: CosetSpace, c: int, g: Permutation) -> int:
    return cs.act_right(c, g)


def dc_product_labels(cs: CosetSpace, x_sub: int, y: Permutation) -> frozenset[int]:
    return cs.dc_product_labels(x_sub, y)


def double_coset_array(A_elems: np.ndarray, x: Permutation) -> np.ndarray:
    """Rows of ``A x A`` (brute force, deduplicated)."""
    left = x.array[A_elems]                       # a1 * x
    prods = A_elems[:, left].reshape(-1, x.degree)  # (a1 x) * a2
    return np.unique(prods, axis=0)


__all__ = [
    "CosetSpace", "build_coset_space", "coset_space_of_action", "coset_of",
    "dc_index", "act_right", "dc_product_labels", "double_coset_array",
    "DEFAULT_INDEX_BOUND",
]


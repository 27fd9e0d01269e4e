"""Unions of Bruhat double cosets as bit-vectors over a finite Coxeter group.

Bit ``w`` of a :class:`DioidElement` stands for the double coset
``d_w = B n_w B``. Union is bitwise or, the product is generated by

    d_w d_{s_i} = d_{w s_i}          if l(w s_i) = l(w) + 1
    d_w d_{s_i} = d_{w s_i} | d_w    if l(w s_i) = l(w) - 1

together with ``d_u d_v = d_{uv}`` whenever lengths add, and ``star``
sends ``d_w`` to ``d_{w^-1}``.
"""
from __future__ import annotations

import itertools

import numpy as np

from .coxeter import DEFAULT_ENUMERATION_BOUND, CoxeterSystem, ElementTable
from .cosets import CosetSpace
from .errors import DataError, InputError


class Dioid:
    """The dioid of one Coxeter system; owns the enumerated element table."""

    def __init__(self, cs: CoxeterSystem, bound: int = DEFAULT_ENUMERATION_BOUND):
        self.system = cs
        self.table: ElementTable = cs.elements(bound)
        t = self.table
        self.size = len(t)
        # smallest right / left descent of each element, -1 at the identity
        self.right_desc = t.length[t.rmul] < t.length[None, :]
        self.left_desc = t.length[t.lmul] < t.length[None, :]
        self.right_letter = self._first_descent(self.right_desc)
        self.left_letter = self._first_descent(self.left_desc)
        self.w0_index = t.lookup(cs.w0)

    @staticmethod
    def _first_descent(desc):
        return np.where(desc.any(axis=0), desc.argmax(axis=0), -1)

    def _element(self, bits: np.ndarray) -> "DioidElement":
        return DioidElement(self, bits)

    def zero(self) -> "DioidElement":
        return self._element(np.zeros(self.size, dtype=bool))

    def one(self) -> "DioidElement":
        return self.from_indices([0])

    def full(self) -> "DioidElement":
        return self._element(np.ones(self.size, dtype=bool))

    def from_indices(self, indices) -> "DioidElement":
        bits = np.zeros(self.size, dtype=bool)
        bits[np.asarray(list(indices), dtype=np.int64)] = True
        return self._element(bits)

    def index_of(self, w: np.ndarray) -> int:
        return self.table.lookup(w)

    def singleton(self, w) -> "DioidElement":
        """``d_w`` for an element array or an element index."""
        if isinstance(w, (int, np.integer)):
            if not 0 <= w < self.size:
                raise InputError(f"element index {w} outside 0..{self.size - 1}")
            return self.from_indices([int(w)])
        return self.from_indices([self.index_of(np.asarray(w))])

    def from_word(self, word) -> "DioidElement":
        return self.singleton(self.system.evaluate(word))

    def w0(self) -> "DioidElement":
        return self.from_indices([self.w0_index])

    def parabolic(self, omitted: int) -> "DioidElement":
        """Bits of the maximal parabolic subgroup generated by all ``s_i``, ``i != omitted``."""
        if not 0 <= omitted < self.system.rank:
            raise InputError(f"generator index {omitted} outside 0..{self.system.rank - 1}")
        keep = [i for i in range(self.system.rank) if i != omitted]
        bits = np.zeros(self.size, dtype=bool)
        bits[0] = True
        frontier = np.array([0])
        while frontier.size:
            nxt = np.unique(self.table.rmul[keep][:, frontier])
            nxt = nxt[~bits[nxt]]
            bits[nxt] = True
            frontier = nxt
        return self._element(bits)

    def random_element(self, rng: np.random.Generator, density: float = 0.5) -> "DioidElement":
        return self._element(rng.random(self.size) < density)


class DioidElement:
    __slots__ = ("dioid", "bits")

    def __init__(self, dioid: Dioid, bits: np.ndarray):
        self.dioid = dioid
        bits = np.asarray(bits, dtype=bool)
        bits.flags.writeable = False
        self.bits = bits

    def _same(self, other: "DioidElement") -> None:
        if not isinstance(other, DioidElement) or other.dioid is not self.dioid:
            raise InputError("dioid elements belong to different Coxeter systems")

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def __len__(self) -> int:
        return int(np.count_nonzero(self.bits))

    def is_zero(self) -> bool:
        return not self.bits.any()

    def is_full(self) -> bool:
        return bool(self.bits.all())

    def __or__(self, other: "DioidElement") -> "DioidElement":
        self._same(other)
        return DioidElement(self.dioid, self.bits | other.bits)

    __add__ = __or__

    def __mul__(self, other: "DioidElement") -> "DioidElement":
        return mult(self, other)

    def __le__(self, other: "DioidElement") -> bool:
        self._same(other)
        return not np.any(self.bits & ~other.bits)

    def __eq__(self, other) -> bool:
        return (isinstance(other, DioidElement) and other.dioid is self.dioid
                and np.array_equal(self.bits, other.bits))

    def __hash__(self) -> int:
        return hash(np.packbits(self.bits).tobytes())

    def star(self) -> "DioidElement":
        return star(self)

    def __repr__(self) -> str:
        idx = self.indices()
        shown = idx[:8].tolist()
        more = "..." if idx.size > 8 else ""
        return f"<DioidElement {self.dioid.system.type} {shown}{more}>"


def mult_by_generator(a: DioidElement, i: int) -> DioidElement:
    """``a d_{s_i}``: each ``w`` goes to ``w s_i``, and stays too when the length drops."""
    dio = a.dioid
    if not 0 <= i < dio.system.rank:
        raise InputError(f"generator index {i} outside 0..{dio.system.rank - 1}")
    t = dio.table
    src = a.indices()
    dst = t.rmul[i, src]
    bits = np.zeros(dio.size, dtype=bool)
    bits[dst] = True
    bits[src[t.length[dst] < t.length[src]]] = True
    return DioidElement(dio, bits)


def left_mult_by_generator(a: DioidElement, i: int) -> DioidElement:
    """``d_{s_i} a``, the mirror image of :func:`mult_by_generator`."""
    dio = a.dioid
    if not 0 <= i < dio.system.rank:
        raise InputError(f"generator index {i} outside 0..{dio.system.rank - 1}")
    t = dio.table
    src = a.indices()
    dst = t.lmul[i, src]
    bits = np.zeros(dio.size, dtype=bool)
    bits[dst] = True
    bits[src[t.length[dst] < t.length[src]]] = True
    return DioidElement(dio, bits)


def _ancestors(targets: np.ndarray, parent: np.ndarray) -> np.ndarray:
    need = np.zeros(parent.size, dtype=bool)
    frontier = targets
    while frontier.size:
        frontier = frontier[~need[frontier]]
        need[frontier] = True
        frontier = parent[frontier[frontier != 0]]
    return np.flatnonzero(need)


def _fold(dio: Dioid, start: np.ndarray, targets: np.ndarray, mul: np.ndarray,
          letters: np.ndarray, desc: np.ndarray) -> np.ndarray:
    """Union over set bits ``w`` of ``targets`` of ``start`` pushed along a reduced word of ``w``.

    Words are peeled one letter at a time (``letters``, ``mul``), and all
    elements of one length are advanced together as rows of a matrix.
    Element indices are length-sorted, so each layer's parents are the
    previous layer.
    """
    t = dio.table
    size = dio.size
    parent = np.where(letters >= 0, mul[np.maximum(letters, 0), np.arange(size)], 0)
    need = _ancestors(np.flatnonzero(targets), parent)
    lengths = t.length[need]
    out = start.copy() if targets[0] else np.zeros(size, dtype=bool)
    prev_ids, prev = np.array([0]), start[None, :]
    for L in range(1, int(lengths.max()) + 1):
        ids = need[lengths == L]
        Y = prev[np.searchsorted(prev_ids, parent[ids])]
        R = np.empty_like(Y)
        lt = letters[ids]
        for i in range(dio.system.rank):
            sel = lt == i
            if sel.any():
                Yi = Y[sel]
                R[sel] = Yi[:, mul[i]] | (Yi & desc[i])
        hit = targets[ids]
        if hit.any():
            out |= R[hit].any(axis=0)
        prev_ids, prev = ids, R
    return out


def mult(a: DioidElement, b: DioidElement) -> DioidElement:
    """``a b``: right multiplications folded along a reduced word of each bit of ``b``."""
    a._same(b)
    dio = a.dioid
    if a.is_zero() or b.is_zero():
        return dio.zero()
    return DioidElement(dio, _fold(dio, a.bits, b.bits, dio.table.rmul,
                                   dio.right_letter, dio.right_desc))


def mult_left(a: DioidElement, b: DioidElement) -> DioidElement:
    """``a b`` computed instead by peeling left descents off the bits of ``a``."""
    a._same(b)
    dio = a.dioid
    if a.is_zero() or b.is_zero():
        return dio.zero()
    return DioidElement(dio, _fold(dio, b.bits, a.bits, dio.table.lmul,
                                   dio.left_letter, dio.left_desc))


def star(a: DioidElement) -> DioidElement:
    return DioidElement(a.dioid, a.bits[a.dioid.table.inverse])


def verify_theorem4(cs: CoxeterSystem | Dioid, bound: int = DEFAULT_ENUMERATION_BOUND) -> bool:
    """True iff ``d_{w0} d_{w0}`` is all of ``W``."""
    dio = cs if isinstance(cs, Dioid) else Dioid(cs, bound)
    w0 = dio.w0()
    return mult(w0, w0).is_full()


def parabolic_lift_check(cs: CoxeterSystem | Dioid, omitted: int, z, w) -> bool:
    """True iff ``P d_z P d_w P`` covers ``W`` for ``P`` the maximal parabolic."""
    dio = cs if isinstance(cs, Dioid) else Dioid(cs)
    P = dio.parabolic(omitted)
    out = mult(mult(mult(mult(P, dio.singleton(z)), P), dio.singleton(w)), P)
    return out.is_full()


def bn_label_bijections(oracle: CosetSpace, dio: Dioid):
    """Yield every map ``W index -> oracle suborbit`` consistent with length-additive products.

    Generator suborbits are the nontrivial ones of smallest size; each
    assignment of them to the simple reflections is tried, and the map is
    extended along reduced words, where the product must be a single
    suborbit.
    """
    if oracle.rank != dio.size:
        raise DataError(f"oracle has {oracle.rank} double cosets but |W| = {dio.size}")
    sizes = oracle.subdegrees
    smallest = min(sizes[1:])
    gen_labels = [j for j in range(1, oracle.rank) if sizes[j] == smallest]
    if len(gen_labels) != dio.system.rank:
        raise DataError(f"expected {dio.system.rank} generator double cosets, found {len(gen_labels)}")
    t = dio.table
    letters = dio.right_letter
    for assignment in itertools.permutations(gen_labels):
        reps = [oracle.dc_rep(j) for j in assignment]
        phi = np.full(dio.size, -1, dtype=np.int64)
        phi[0] = 0
        ok = True
        for w in range(1, dio.size):
            i = int(letters[w])
            prod = oracle.dc_product_labels(int(phi[t.rmul[i, w]]), reps[i])
            if len(prod) != 1:
                ok = False
                break
            phi[w] = next(iter(prod))
        if ok and len(set(phi.tolist())) == dio.size:
            yield phi


def bn_oracle_compare(oracle: CosetSpace, cs: CoxeterSystem | Dioid) -> bool:
    """Compare oracle double coset products with dioid products on all pairs."""
    dio = cs if isinstance(cs, Dioid) else Dioid(cs)
    found = False
    for phi in bn_label_bijections(oracle, dio):
        found = True
        back = np.empty(dio.size, dtype=np.int64)
        back[phi] = np.arange(dio.size)
        if all(
            set(back[list(oracle.dc_product_labels(int(phi[u]), oracle.dc_rep(int(phi[v]))))].tolist())
            == set(mult(dio.singleton(u), dio.singleton(v)).indices().tolist())
            for u in range(dio.size) for v in range(dio.size)
        ):
            return True
    if not found:
        raise DataError("no label bijection between the oracle and the Coxeter group")
    return False


__all__ = [
    "Dioid", "DioidElement", "mult_by_generator", "left_mult_by_generator", "mult",
    "mult_left", "star", "verify_theorem4", "parabolic_lift_check",
    "bn_label_bijections", "bn_oracle_compare",
]

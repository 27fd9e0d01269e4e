"""Permutations and permutation groups with a deterministic stabilizer chain.

Convention: groups act on the right. Points are written on the left and
maps are applied left to right, so ``point^(p*q) == (point^p)^q``. Public
point labels are 1-based (cycle notation, ``images``, ``orbit``); every
other index in the package (cosets, suborbits, generators) is 0-based.
Internally a permutation is a read-only 0-based numpy array.
"""
from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DataError, InputError, ResourceError

DEFAULT_ENUMERATION_BOUND = 10**6

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class Permutation:
    """A bijection of ``{1..degree}``.

    >>> p = Permutation.from_cycles("(1,2,3)", 3)
    >>> (p * p).cycles()
    '(1,3,2)'
    """

    __slots__ = ("_a", "_key")

    def __init__(self, images: Sequence[int]):
        arr = np.asarray(images, dtype=np.int64) - 1
        self._a = _freeze(self._checked(arr))
        self._key = None

    @staticmethod
    def _checked(arr: np.ndarray) -> np.ndarray:
        n = arr.shape[0]
        if arr.ndim != 1 or n == 0:
            raise InputError("a permutation needs a nonempty 1-d image list")
        seen = np.zeros(n, dtype=bool)
        if arr.min() < 0 or arr.max() >= n:
            raise InputError(f"images out of range for degree {n}")
        seen[arr] = True
        if not seen.all():
            raise InputError("images do not form a bijection")
        return arr.astype(np.int32 if n < 2**31 else np.int64)

    @classmethod
    def from_array(cls, arr, check: bool = True) -> "Permutation":
        """Wrap a 0-based image array (copied only when it must be converted)."""
        p = cls.__new__(cls)
        arr = np.asarray(arr)
        if check:
            arr = cls._checked(arr.astype(np.int64))
        else:
            arr = np.array(arr, dtype=np.int32)
        p._a = _freeze(arr)
        p._key = None
        return p

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "Permutation":
        # takes ownership of a fresh int32 array
        p = cls.__new__(cls)
        p._a = _freeze(arr)
        p._key = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise InputError("degree must be positive")
        return cls._wrap(np.arange(degree, dtype=np.int32))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        """Parse cycle notation such as ``(1,2)(3,4,5)``; ``()`` is the identity.

        Overlapping cycles are composed left to right.
        """
        stripped = "".join(text.split())
        if _CYCLE_RE.sub("", stripped):
            raise InputError(f"malformed cycle notation: {text!r}")
        arr = np.arange(degree, dtype=np.int64)
        for body in _CYCLE_RE.findall(stripped):
            if not body:
                continue
            try:
                pts = [int(tok) - 1 for tok in body.split(",")]
            except ValueError:
                raise InputError(f"non-integer point in cycle ({body})") from None
            if min(pts) < 0 or max(pts) >= degree:
                raise InputError(f"cycle ({body}) leaves the range 1..{degree}")
            if len(set(pts)) != len(pts):
                raise InputError(f"repeated point in cycle ({body})")
            cyc = np.arange(degree, dtype=np.int64)
            cyc[pts] = pts[1:] + pts[:1]
            arr = cyc[arr]
        return cls.from_array(arr, check=False)

    @property
    def degree(self) -> int:
        return self._a.shape[0]

    @property
    def array(self) -> np.ndarray:
        """0-based images (read-only)."""
        return self._a

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(int(v) + 1 for v in self._a)

    def __call__(self, point: int) -> int:
        if not 1 <= point <= self.degree:
            raise InputError(f"point {point} outside 1..{self.degree}")
        return int(self._a[point - 1]) + 1

    def key(self) -> bytes:
        if self._key is None:
            self._key = self._a.tobytes()
        return self._key

    def __hash__(self) -> int:
        return hash(self.key())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.degree == other.degree and self.key() == other.key()

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise InputError(f"degree mismatch: {self.degree} vs {other.degree}")
        return Permutation._wrap(other._a[self._a])

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self._a)
        inv[self._a] = np.arange(self.degree, dtype=inv.dtype)
        return Permutation._wrap(inv)

    __invert__ = inverse

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, x: "Permutation") -> "Permutation":
        """``x^-1 * self * x``."""
        return x.inverse() * self * x

    def is_identity(self) -> bool:
        return bool((self._a == np.arange(self.degree)).all())

    def first_moved(self) -> int | None:
        """Smallest moved point, 0-based."""
        moved = np.flatnonzero(self._a != np.arange(self.degree))
        return int(moved[0]) if moved.size else None

    def order(self) -> int:
        from math import lcm

        result = 1
        for c in self._cycle_lists():
            result = lcm(result, len(c))
        return result

    def _cycle_lists(self) -> list[list[int]]:
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for start in range(self.degree):
            if seen[start] or self._a[start] == start:
                continue
            cyc = [start]
            seen[start] = True
            j = int(self._a[start])
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = int(self._a[j])
            out.append(cyc)
        return out

    def cycles(self) -> str:
        parts = ["(" + ",".join(str(i + 1) for i in c) + ")" for c in self._cycle_lists()]
        return "".join(parts) or "()"

    def __repr__(self) -> str:
        return f"Permutation({self.cycles()!r}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` then ``q``."""
    return p * q


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


class _Level:
    __slots__ = ("point", "gens", "trans", "trans_inv")

    def __init__(self, point: int, gens: list[Permutation]):
        self.point = point
        self.gens = gens
        self.trans: dict[int, Permutation] = {}
        self.trans_inv: dict[int, Permutation] = {}
        self.rebuild()

    def rebuild(self) -> None:
        ident = Permutation.identity(self.gens[0].degree) if self.gens else None
        if ident is None:
            self.trans = {self.point: None}
            self.trans_inv = {self.point: None}
            return
        trans = {self.point: ident}
        queue = [self.point]
        for p in queue:
            u = trans[p]
            for s in self.gens:
                q = int(s._a[p])
                if q not in trans:
                    trans[q] = u * s
                    queue.append(q)
        self.trans = trans
        self.trans_inv = {p: u.inverse() for p, u in trans.items()}


class StabilizerChain:
    """Deterministic Schreier-Sims chain.

    Base points are taken from ``base`` first and then extended with the
    smallest point moved by whichever element needs a new level.
    """

    def __init__(self, generators: Sequence[Permutation], degree: int,
                 base: Sequence[int] = ()):
        self.degree = degree
        gens = [g for g in generators if not g.is_identity()]
        points = list(dict.fromkeys(int(b) for b in base))
        for g in gens:
            if all(g._a[b] == b for b in points):
                points.append(g.first_moved())
        self._levels: list[_Level] = []
        for i, b in enumerate(points):
            fixing = [g for g in gens if all(g._a[c] == c for c in points[:i])]
            self._levels.append(_Level(b, fixing))
        self._schreier_sims()

    def _schreier_sims(self) -> None:
        i = len(self._levels) - 1
        while i >= 0:
            jumped = self._check_level(i)
            i = jumped if jumped is not None else i - 1

    def _check_level(self, i: int) -> int | None:
        level = self._levels[i]
        for p, u in list(level.trans.items()):
            if u is None:
                return None
            for s in level.gens:
                q = int(s._a[p])
                h = u * s * level.trans_inv[q]
                if h.is_identity():
                    continue
                residue, j = self.sift(h, i + 1)
                if j == len(self._levels) and residue.is_identity():
                    continue
                if j == len(self._levels):
                    self._levels.append(_Level(residue.first_moved(), []))
                for lv in self._levels[i + 1:j + 1]:
                    lv.gens.append(residue)
                    lv.rebuild()
                return j
        return None

    @property
    def base(self) -> tuple[int, ...]:
        """Base points, 0-based."""
        return tuple(lv.point for lv in self._levels)

    @property
    def levels(self) -> list[_Level]:
        return self._levels

    def orbit_sizes(self) -> list[int]:
        return [len(lv.trans) for lv in self._levels]

    def order(self) -> int:
        out = 1
        for s in self.orbit_sizes():
            out *= s
        return out

    def sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Strip ``g`` through the levels from ``start``.

        Returns the residue and the index of the first level where stripping
        failed (``len(levels)`` if it went all the way through).
        """
        h = g
        for idx in range(start, len(self._levels)):
            lv = self._levels[idx]
            p = int(h._a[lv.point])
            if p not in lv.trans:
                return h, idx
            inv = lv.trans_inv[p]
            if inv is not None:
                h = h * inv
        return h, len(self._levels)

    def contains(self, g: Permutation) -> bool:
        residue, j = self.sift(g)
        return j == len(self._levels) and residue.is_identity()

    def random_element(self, rng: np.random.Generator) -> Permutation:
        """Uniform element: one independent uniform transversal pick per level."""
        h = Permutation.identity(self.degree)
        for lv in reversed(self._levels):
            pts = list(lv.trans)
            u = lv.trans[pts[int(rng.integers(len(pts)))]]
            if u is not None:
                h = h * u
        return h

    def element_array(self) -> np.ndarray:
        """All elements as rows of a ``(order, degree)`` 0-based array."""
        elems = np.arange(self.degree, dtype=np.int32)[None, :]
        for lv in reversed(self._levels):
            us = [u for u in lv.trans.values() if u is not None]
            if not us:
                continue
            U = np.stack([u._a for u in us])
            elems = U[:, elems].reshape(-1, self.degree)
        return elems


class PermGroup:
    """A permutation group given by generators; the chain is built on first use."""

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None,
                 name: str | None = None):
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise InputError("degree is required for a group without generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise InputError(f"generator of degree {g.degree} in a degree-{degree} group")
        self.degree = degree
        self.generators = gens or (Permutation.identity(degree),)
        self.name = name
        self._chain: StabilizerChain | None = None

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.generators, self.degree)
        return self._chain

    def chain_with_base(self, base: Sequence[int]) -> StabilizerChain:
        """A fresh chain whose base starts with ``base``."""
        return StabilizerChain(self.generators, self.degree, base)

    def order(self) -> int:
        return self.chain.order()

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise InputError(f"degree mismatch: {p.degree} vs {self.degree}")
        return self.chain.contains(p)

    __contains__ = contains

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def random_element(self, rng: np.random.Generator) -> Permutation:
        return self.chain.random_element(rng)

    def element_array(self, bound: int = DEFAULT_ENUMERATION_BOUND) -> np.ndarray:
        n = self.order()
        if n > bound:
            raise ResourceError(f"group of order {n} exceeds the enumeration bound {bound}")
        return self.chain.element_array()

    def elements(self, bound: int = DEFAULT_ENUMERATION_BOUND) -> Iterator[Permutation]:
        for row in self.element_array(bound):
            yield Permutation.from_array(row, check=False)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def conjugate(self, x: Permutation) -> "PermGroup":
        return conjugate_subgroup(self, x)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<PermGroup{label} degree={self.degree} gens={len(self.generators)}>"


def conjugate_subgroup(A: PermGroup, x: Permutation) -> PermGroup:
    """``A^x = x^-1 A x``, generated by the conjugated generators of ``A``."""
    if x.degree != A.degree:
        raise InputError(f"degree mismatch: {x.degree} vs {A.degree}")
    return PermGroup([a.conjugate(x) for a in A.generators], A.degree)


def orbit(G: PermGroup, point: int) -> set[int]:
    if not 1 <= point <= G.degree:
        raise InputError(f"point {point} outside 1..{G.degree}")
    seen = {point - 1}
    queue = [point - 1]
    arrays = [g.array for g in G.generators]
    for p in queue:
        for a in arrays:
            q = int(a[p])
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return {p + 1 for p in seen}


def order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, p: Permutation) -> bool:
    return G.contains(p)


def elements(G: PermGroup, bound: int = DEFAULT_ENUMERATION_BOUND) -> Iterator[Permutation]:
    return G.elements(bound)


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], 1, name="S1")
    gens = [Permutation.from_cycles("(1,2)", n)]
    if n > 2:
        gens.append(Permutation.from_cycles("(" + ",".join(map(str, range(1, n + 1))) + ")", n))
    return PermGroup(gens, n, name=f"S{n}")


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], n, name=f"A{n}")
    gens = [Permutation.from_cycles(f"({i},{i + 1},{i + 2})", n) for i in range(1, n - 1)]
    return PermGroup(gens, n, name=f"A{n}")


def point_stabilizer(G: PermGroup, point: int) -> PermGroup:
    """Stabilizer of ``point`` (1-based), via a chain whose base starts there."""
    chain = G.chain_with_base([point - 1])
    gens = list(chain.levels[1].gens) if len(chain.levels) > 1 else []
    return PermGroup(gens, G.degree)


# --- .perm files -----------------------------------------------------------

def parse_perm_text(text: str, source: str = "<string>") -> tuple[PermGroup, int | None]:
    """Parse the line-based ``.perm`` format; returns the group and any ``order`` line."""
    degree = None
    gens: list[Permutation] = []
    declared = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        where = f"{source}:{lineno}"
        if degree is None and keyword != "degree":
            raise DataError(f"{where}: first directive must be 'degree <n>'")
        try:
            if keyword == "degree":
                if degree is not None:
                    raise DataError(f"{where}: duplicate degree line")
                degree = int(rest)
                if degree < 1:
                    raise DataError(f"{where}: degree must be positive")
            elif keyword == "gen":
                gens.append(Permutation.from_cycles(rest, degree))
            elif keyword == "order":
                declared = int(rest)
            else:
                raise DataError(f"{where}: unknown directive {keyword!r}")
        except (InputError, ValueError) as exc:
            if isinstance(exc, DataError):
                raise
            raise DataError(f"{where}: {exc}") from None
    if degree is None:
        raise DataError(f"{source}: empty group file")
    if not gens:
        raise DataError(f"{source}: no 'gen' lines")
    return PermGroup(gens, degree, name=Path(source).stem), declared


def load_perm_file(path) -> PermGroup:
    """Load a ``.perm`` file, asserting its ``order`` line against the chain."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"{path}: {exc.strerror}") from None
    group, declared = parse_perm_text(text, str(path))
    if declared is not None and group.order() != declared:
        raise DataError(f"{path}: declared order {declared} but generators give {group.order()}")
    return group


def format_perm_file(G: PermGroup, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"degree {G.degree}")
    lines += [f"gen {g.cycles()}" for g in G.generators]
    lines.append(f"order {G.order()}")
    return "\n".join(lines) + "\n"


def words_product(arrays: Sequence[np.ndarray], word: Iterable[int], degree: int) -> np.ndarray:
    """Compose generator image arrays along ``word`` (left to right)."""
    out = np.arange(degree, dtype=np.int32)
    for letter in word:
        out = arrays[letter][out]
    return out


def brute_force_closure(G: PermGroup, bound: int = 10**4) -> set[bytes]:
    """Element keys by closure under the generators, independent of the chain."""
    start = Permutation.identity(G.degree)
    seen = {start.key(): start}
    queue = [start]
    for g in queue:
        for s in G.generators:
            h = g * s
            k = h.key()
            if k not in seen:
                if len(seen) >= bound:
                    raise ResourceError(f"closure exceeded {bound} elements")
                seen[k] = h
                queue.append(h)
    return set(seen)


__all__ = [
    "Permutation", "PermGroup", "StabilizerChain", "compose", "inverse",
    "conjugate_subgroup", "orbit", "order", "contains", "elements",
    "symmetric_group", "alternating_group", "point_stabilizer",
    "parse_perm_text", "load_perm_file", "format_perm_file", "words_product",
    "brute_force_closure", "DEFAULT_ENUMERATION_BOUND",
]


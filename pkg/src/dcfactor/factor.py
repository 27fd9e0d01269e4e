"""Factorization checks: products of conjugate subgroups and double coset squares.

The fast checks work on suborbit labels of a :class:`CosetSpace`:

* ``G = A A^x A`` exactly when the images under ``x`` of the suborbit
  holding the coset of ``x^-1`` meet every suborbit (:func:`triple_check`);
* ``(AxA)^2 = G`` exactly when the images under ``x`` of the suborbit of
  ``x`` meet every suborbit (:func:`square_dc_check`).

The ``*_brute_force`` helpers and :func:`set_product` multiply explicit
element sets and serve as the independent oracle in tests.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from functools import reduce

import numpy as np

from .cosets import CosetSpace, build_coset_space
from .errors import ConsistencyError, InputError, ResourceError
from .perm import DEFAULT_ENUMERATION_BOUND, PermGroup, Permutation
from .rng import make_rng

BRUTE_FORCE_BOUND = 10**4


@dataclass
class FactorizationReport:
    """Outcome of one factorization check.

    ``verdict`` is certain when ``inconclusive`` is false. A probabilistic run
    that leaves labels unmarked reports ``verdict=False, inconclusive=True``
    and lists the missing labels in ``unmarked``.
    """
    kind: str
    verdict: bool
    witness: Permutation | tuple | None = None
    checked_labels: frozenset = frozenset()
    method: str = "exact"
    trials: int | None = None
    seed: int | None = None
    unmarked: frozenset = frozenset()
    inconclusive: bool = False
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        w = self.witness
        if isinstance(w, Permutation):
            d["witness"] = w.cycles()
        elif isinstance(w, tuple):
            d["witness"] = [p.cycles() for p in w]
        d["checked_labels"] = sorted(self.checked_labels)
        d["unmarked"] = sorted(self.unmarked)
        return d


def _covers(cs: CosetSpace, labels) -> bool:
    return len(labels) == cs.rank


def triple_check(cs: CosetSpace, x: Permutation, check: bool = True) -> bool:
    """True iff ``G = A A^x A``."""
    j = cs.dc_index(x.inverse(), check)
    return _covers(cs, cs.dc_product_labels(j, x))


def square_dc_check(cs: CosetSpace, x: Permutation, check: bool = True) -> bool:
    """True iff ``(AxA)^2 = G``."""
    return _covers(cs, cs.dc_product_labels(cs.dc_index(x, check), x))


def squaring_labels(cs: CosetSpace) -> list[int]:
    """All nontrivial suborbits ``j`` whose double coset squares to ``G``.

    Only self-paired suborbits (``x^-1`` in ``AxA``) can qualify, since
    ``A`` itself must lie in the square. The trivial double coset ``A`` is
    never reported, so ``A = G`` yields nothing.
    """
    out = []
    for j in range(1, cs.rank):
        if cs.inverse_label(j) != j:
            continue
        if _covers(cs, cs.dc_product_labels(j, cs.dc_rep(j))):
            out.append(j)
    return out


def square_dc_search(cs: CosetSpace, involution: bool = False,
                     bound: int = DEFAULT_ENUMERATION_BOUND) -> Permutation | None:
    """A representative ``x`` with ``(AxA)^2 = G``, lowest suborbit first.

    With ``involution=True`` the returned ``x`` is an involution lying in the
    lowest squaring double coset that contains one; this enumerates ``G``.
    """
    labels = squaring_labels(cs)
    if not labels:
        return None
    if not involution:
        return cs.dc_rep(labels[0])
    found = involutions_by_label(cs, bound)
    for j in labels:
        if j in found:
            return found[j]
    return None


def involutions_by_label(cs: CosetSpace, bound: int = DEFAULT_ENUMERATION_BOUND) -> dict[int, Permutation]:
    """First involution (in chain enumeration order) of each double coset."""
    elems = cs.group.element_array(bound)
    ident = np.arange(elems.shape[1])
    sq = np.take_along_axis(elems, elems, axis=1)
    mask = np.all(sq == ident, axis=1) & np.any(elems != ident, axis=1)
    out: dict[int, Permutation] = {}
    for row in elems[mask]:
        t = Permutation.from_array(row, check=False)
        j = cs.dc_index(t, check=False)
        out.setdefault(j, t)
        if len(out) == cs.rank:
            break
    return out


def default_trials(rank: int) -> int:
    return max(1000, 50 * rank)


def square_dc_probabilistic(cs: CosetSpace, x: Permutation, trials: int | None = None,
                            seed: int = 0) -> FactorizationReport:
    """Mark double cosets ``A x a x A`` for uniform random ``a`` in ``A``.

    Once every suborbit is marked, ``(AxA)^2 = G`` is certain. Otherwise
    the answer is inconclusive, never a refutation.
    """
    if trials is None:
        trials = default_trials(cs.rank)
    if trials < 0:
        raise InputError(f"trials must be non-negative, got {trials}")
    j = cs.dc_index(x)
    if cs.inverse_label(j) != j:
        raise InputError("x^-1 is not in AxA; the square cannot contain A")
    rng = make_rng(seed, 1)
    marked = {0}
    chain = cs.subgroup.chain
    for _ in range(trials):
        a = chain.random_element(rng)
        marked.add(cs.dc_index(x * a * x, check=False))
        if len(marked) == cs.rank:
            break
    unmarked = frozenset(range(cs.rank)) - marked
    certain = not unmarked
    return FactorizationReport(
        "square_dc", certain, x, frozenset(marked), "probabilistic", trials, seed,
        unmarked, inconclusive=not certain)


def k_fold_equiv_check(cs: CosetSpace, xs) -> bool:
    """True iff ``(A x_1 A)(A x_2 A)...(A x_m A) = G``."""
    xs = list(xs)
    if len(xs) < 2:
        raise InputError("k-fold check needs at least two elements")
    labels = frozenset([0])
    for x in xs:
        cs.coset_of(x)
        labels = frozenset().union(*(cs.dc_product_labels(l, x) for l in labels))
    return _covers(cs, labels)


# -- brute force ----------------------------------------------------------

def set_product(*sets: np.ndarray) -> np.ndarray:
    """Deduplicated rows ``p_1 * p_2 * ...`` with ``p_i`` from ``sets[i]``."""
    def mul(P, Q):
        return np.unique(Q[:, P].reshape(-1, P.shape[1]), axis=0)
    return reduce(mul, sets)


def _conj_rows(rows: np.ndarray, x: Permutation) -> np.ndarray:
    """Rows of ``x^-1 a x``."""
    xi = x.inverse().array
    return x.array[rows[:, xi]]


def _single(p: Permutation) -> np.ndarray:
    return p.array[None, :]


def _group_rows(G: PermGroup, bound: int) -> np.ndarray:
    return G.element_array(bound)


def _within(G: PermGroup, bound: int) -> int:
    order = G.order()
    if order > bound:
        raise ResourceError(f"|G| = {order} exceeds the brute-force bound {bound}")
    return order


def conjugate_product_brute_force(G: PermGroup, A: PermGroup, conjugators,
                                  bound: int = BRUTE_FORCE_BOUND) -> bool:
    """True iff ``A^{g_1} A^{g_2} ... = G`` by explicit set products."""
    order = _within(G, bound)
    ea = _group_rows(A, bound)
    prod = set_product(*[_conj_rows(ea, g) for g in conjugators])
    return prod.shape[0] == order


def double_coset_product_brute_force(G: PermGroup, A: PermGroup, xs,
                                     bound: int = BRUTE_FORCE_BOUND) -> bool:
    """True iff ``(A x_1 A)(A x_2 A)... = G`` by explicit set products."""
    order = _within(G, bound)
    ea = _group_rows(A, bound)
    parts = []
    for x in xs:
        parts += [ea, _single(x)]
    parts.append(ea)
    return set_product(*parts).shape[0] == order


def k_fold_conjugators(xs) -> list[Permutation]:
    """``g_1 = 1, g_{i+1} = x_i^-1 g_i``: turns double coset products into conjugate products."""
    g = Permutation.identity(xs[0].degree)
    out = [g]
    for x in xs:
        g = x.inverse() * g
        out.append(g)
    return out


@dataclass
class EquivalenceRecord:
    """``a``: ``G = A A^x A^y``; ``b``: ``G = (AzA)(AwA)`` with ``z = x^-1``,
    ``w = x y^-1``; ``c``: ``G = A A^x A``; ``y_in_AAx``: ``y`` in ``A A^x``."""
    a: bool
    b: bool
    c: bool
    y_in_AAx: bool


def theorem1_equivalences(cs: CosetSpace, x: Permutation, y: Permutation,
                          bound: int = BRUTE_FORCE_BOUND) -> EquivalenceRecord:
    """Evaluate the three conditions by brute force and check how they relate.

    Raises :class:`ConsistencyError` if ``(a)`` holds with ``y`` outside
    ``A A^x``, or if the conditions disagree while ``y`` lies in ``A A^x``.
    """
    G, A = cs.group, cs.subgroup
    for p in (x, y):
        cs.coset_of(p)
    order = _within(G, bound)
    ea = _group_rows(A, bound)
    eax = _conj_rows(ea, x)
    aax = set_product(ea, eax)
    a = set_product(aax, _conj_rows(ea, y)).shape[0] == order
    c = set_product(aax, ea).shape[0] == order
    w = x * y.inverse()
    b = set_product(ea, _single(x.inverse()), ea, _single(w), ea).shape[0] == order
    y_in = bool(np.any(np.all(aax == y.array, axis=1)))
    if a and not y_in:
        raise ConsistencyError("G = AA^xA^y although y is not in AA^x")
    if a != b:
        raise ConsistencyError("conditions (a) and (b) disagree")
    if y_in and not a == b == c:
        raise ConsistencyError("conditions disagree although y lies in AA^x")
    return EquivalenceRecord(a, b, c, y_in)


def check_aba(G: PermGroup, A: PermGroup, B: PermGroup,
              bound: int = DEFAULT_ENUMERATION_BOUND) -> bool:
    """True iff ``ABA = G``: the double cosets ``AbA`` must exhaust ``G``."""
    if not B.is_subgroup_of(G):
        raise InputError("B is not a subgroup of G")
    cs = build_coset_space(G, A, bound)
    labels = set()
    for b in B.elements(bound):
        labels.add(cs.dc_index(b, check=False))
        if len(labels) == cs.rank:
            return True
    return False


def normalizes(g: Permutation, A: PermGroup) -> bool:
    gi = g.inverse()
    return all(A.contains(gi * a * g) for a in A.generators)


def claim_condition_b(X: PermGroup, S: PermGroup, A: PermGroup,
                      bound: int = DEFAULT_ENUMERATION_BOUND) -> bool:
    """True iff ``N_X(A) S = X``, with the normalizer found by scanning ``X``.

    ``N_X(A)`` is a group, so ``|N S| = |N| |S| / |N & S|``.
    """
    if not (A.is_subgroup_of(S) and S.is_subgroup_of(X)):
        raise InputError("need A <= S <= X")
    normal = [g for g in X.elements(bound) if normalizes(g, A)]
    both = sum(1 for g in normal if S.contains(g))
    return len(normal) * S.order() == X.order() * both


# -- signed permutation fixtures ----------------------------------------------

def _transpositions(degree: int, pairs) -> Permutation:
    arr = np.arange(degree)
    for a, b in pairs:
        arr[a], arr[b] = arr[b], arr[a]
    return Permutation.from_array(arr)


def build_hyperoctahedral_fixture(n: int, i: int, even: bool = False):
    """Signed permutations of ``n`` coordinates acting on ``2n`` points.

    Point ``k`` carries the sign partner ``k + n`` (1-based). Returns
    ``(C, C_1, C_i)`` where ``C_k`` fixes coordinate ``k``. With
    ``even=True`` only even numbers of sign changes are allowed.
    """
    if n < 3 or not 2 <= i <= n or (even and n < 4):
        raise InputError(f"fixture needs n >= {4 if even else 3} and 2 <= i <= n, got n={n}, i={i}")
    deg = 2 * n

    def swap(k, l):  # 0-based coordinates
        return _transpositions(deg, [(k, l), (k + n, l + n)])

    def flips(ks):
        return _transpositions(deg, [(k, k + n) for k in ks])

    def parabolic(coords):
        moves = [swap(a, b) for a, b in zip(coords, coords[1:])]
        if even:
            signs = [flips([a, b]) for a, b in zip(coords, coords[1:])]
        else:
            signs = [flips([a]) for a in coords]
        return moves + signs

    C = PermGroup(parabolic(list(range(n))), deg, name=("D" if even else "B") + str(n))
    C1 = PermGroup(parabolic([k for k in range(n) if k != 0]), deg)
    Ci = PermGroup(parabolic([k for k in range(n) if k != i - 1]), deg)
    return C, C1, Ci


def check_product_three(G: PermGroup, X: PermGroup, Y: PermGroup, Z: PermGroup,
                        bound: int = BRUTE_FORCE_BOUND) -> bool:
    """True iff the set product ``XYZ`` equals ``G`` (explicit enumeration)."""
    order = _within(G, bound)
    return set_product(*(_group_rows(H, bound) for H in (X, Y, Z))).shape[0] == order


__all__ = [
    "FactorizationReport", "EquivalenceRecord", "triple_check", "square_dc_check",
    "squaring_labels", "square_dc_search", "involutions_by_label",
    "square_dc_probabilistic", "default_trials", "k_fold_equiv_check",
    "k_fold_conjugators", "set_product", "conjugate_product_brute_force",
    "double_coset_product_brute_force", "theorem1_equivalences", "check_aba",
    "normalizes", "claim_condition_b", "build_hyperoctahedral_fixture",
    "check_product_three",
]

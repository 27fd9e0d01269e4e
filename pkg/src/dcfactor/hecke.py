"""Intersection numbers of a coset space, by exact counting.

With ``e_j = (1/|A|) * sum(A x_j A)`` in the group algebra,
``e_x e_y = sum_j a[x, y, j] e_j``. Two layouts are kept:

* ``tensor[x, y, j] = a_{xyj}``, the structure constants themselves;
* ``matrices[y][i, k]``, the collapsed adjacency matrix of suborbit ``y``:
  the number of cosets of suborbit ``k`` reached from one coset of suborbit
  ``i`` along the orbital of ``y``. It equals ``a[y*, k, i]`` where ``y*``
  labels the inverse double coset.

For ``S4`` over ``S3`` the nontrivial matrix is ``[[0, 3], [1, 2]]``.
Row ``i`` of ``matrices[i]`` has no zero exactly when ``(A x_i A)^2 = G``,
and the same holds for ``tensor[i, i]``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cosets import CosetSpace, double_coset_array
from .errors import ConsistencyError, InputError
from .perm import DEFAULT_ENUMERATION_BOUND

ORACLE_BOUND = 10**4


@dataclass(frozen=True)
class CollapsedAdjacency:
    rank: int
    tensor: np.ndarray       # (r, r, r), a_{xyj}
    matrices: np.ndarray     # (r, r, r), matrices[y] is the collapsed adjacency matrix
    subdegrees: tuple[int, ...]
    inverse_labels: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"rank": self.rank, "subdegrees": list(self.subdegrees),
                "matrices": self.matrices.tolist(), "tensor": self.tensor.tolist()}


def intersection_numbers(cs: CosetSpace, bound: int = DEFAULT_ENUMERATION_BOUND) -> CollapsedAdjacency:
    """Count ``a_{xyj} = #{c in suborbit x* : c * x_j in suborbit y}``.

    This is ``|AxA & x_j A y^-1 A| / |A|`` after passing to inverses.
    """
    if cs.subgroup.order() > bound:
        raise InputError(f"|A| exceeds the enumeration bound {bound}")
    r = cs.rank
    inv = [cs.inverse_label(j) for j in range(r)]
    all_cosets = np.arange(cs.index)
    tensor = np.zeros((r, r, r), dtype=np.int64)
    for j in range(r):
        landing = cs.suborbit_of[cs.act_many(all_cosets, cs.dc_rep(j))]
        for x in range(r):
            tensor[x, :, j] = np.bincount(landing[cs.suborbits[inv[x]]], minlength=r)
    matrices = np.stack([tensor[inv[y]].T for y in range(r)])
    ca = CollapsedAdjacency(r, tensor, matrices, cs.subdegrees, tuple(inv))
    check_mass(ca)
    return ca


def check_mass(ca: CollapsedAdjacency) -> None:
    """Raise unless ``sum_j a_{xyj} |D_j| = |D_x| |D_y|`` for all ``x, y``."""
    d = np.array(ca.subdegrees, dtype=np.int64)
    if not np.array_equal(ca.tensor @ d, np.outer(d, d)):
        raise ConsistencyError("intersection numbers violate mass conservation")


def squares_to_group(ca: CollapsedAdjacency, i: int) -> bool:
    """True iff ``(A x_i A)^2 = G``: no zero in row ``i`` of matrix ``i``."""
    if not 0 <= i < ca.rank:
        raise InputError(f"suborbit {i} outside 0..{ca.rank - 1}")
    return bool(np.all(ca.matrices[i][i] != 0))


def boolean_constants(ca: CollapsedAdjacency) -> np.ndarray:
    """``c[x, y, j]``: does ``A x_j A`` lie in ``(A x A)(A y A)``."""
    return ca.tensor != 0


def group_algebra_oracle(cs: CosetSpace, bound: int = ORACLE_BOUND) -> np.ndarray:
    """Structure constants from explicit products of double coset elements.

    Double cosets are rebuilt element by element, every product ``g h`` with
    ``g`` in ``A x A`` and ``h`` in ``A y A`` is formed, and hits on each
    representative ``x_j`` are tallied; the tally divided by ``|A|`` is
    ``a_{xyj}``.
    """
    G, A = cs.group, cs.subgroup
    order = G.order()
    if order > bound:
        raise InputError(f"|G| = {order} exceeds the oracle bound {bound}")
    ea = A.element_array(bound)
    r = cs.rank
    dcs = [double_coset_array(ea, cs.dc_rep(j)) for j in range(r)]
    if sum(d.shape[0] for d in dcs) != order:
        raise ConsistencyError("double cosets do not partition the group")
    deg = G.degree
    rep_keys = {cs.dc_rep(j).array.astype(np.int64).tobytes(): j for j in range(r)}
    counts = np.zeros((r, r, r), dtype=np.int64)
    for x in range(r):
        for y in range(r):
            prods = dcs[y][:, dcs[x]].reshape(-1, deg).astype(np.int64)   # rows of g * h
            rows, hits = np.unique(prods, axis=0, return_counts=True)
            for row, n in zip(rows, hits):
                j = rep_keys.get(row.tobytes())
                if j is not None:
                    counts[x, y, j] += n
    q, rem = np.divmod(counts, ea.shape[0])
    if rem.any():
        raise ConsistencyError("tally is not divisible by |A|")
    return q


__all__ = [
    "CollapsedAdjacency", "intersection_numbers", "check_mass", "squares_to_group",
    "boolean_constants", "group_algebra_oracle",
]

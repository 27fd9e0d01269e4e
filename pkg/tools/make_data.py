"""Regenerate the shipped ``.perm`` files under ``src/dcfactor/data``.

Every file records the group order computed from its generators, so a
corrupted generator shows up as a load error rather than a wrong answer.
"""
from itertools import product
from pathlib import Path

import numpy as np

from dcfactor.perm import (PermGroup, Permutation, alternating_group,
                           format_perm_file, point_stabilizer)

OUT = Path(__file__).resolve().parents[1] / "src" / "dcfactor" / "data"


def gl32():
    """GL(3,2) on the 7 nonzero vectors of F_2^3 (point v <-> binary value of v)."""
    vecs = [np.array(v) for v in product((0, 1), repeat=3) if any(v)]
    label = {tuple(v): k for k, v in enumerate(vecs)}

    def act(m):
        return Permutation.from_array([label[tuple(v @ m % 2)] for v in vecs])

    def elem(i, j):
        m = np.eye(3, dtype=int)
        m[i, j] = 1
        return m

    perm = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    G = PermGroup([act(elem(0, 1)), act(perm)], 7, name="psl27")
    # upper unitriangular matrices fix the flag <e3> < <e2, e3> under v -> vM
    B = PermGroup([act(elem(0, 1)), act(elem(1, 2)), act(elem(0, 2))], 7)
    return G, B


def main():
    OUT.mkdir(exist_ok=True)
    m11 = PermGroup([Permutation.from_cycles("(2,10)(4,11)(5,7)(8,9)", 11),
                     Permutation.from_cycles("(1,4,3,8)(2,5,6,9)", 11)])
    m12 = PermGroup([Permutation.from_cycles("(1,4)(3,10)(5,11)(6,12)", 12),
                     Permutation.from_cycles("(1,8,9)(2,3,4)(5,12,11)(6,10,7)", 12)])
    files = {
        "m11": (m11, "Mathieu group M11 on 11 points"),
        "m11_stab": (point_stabilizer(m11, 1), "stabilizer of point 1 in M11"),
        "m12": (m12, "Mathieu group M12 on 12 points"),
        "m12_stab": (point_stabilizer(m12, 12), "stabilizer of point 12 in M12, a copy of M11"),
    }
    for n in range(5, 9):
        files[f"alt{n}"] = (alternating_group(n), f"alternating group on {n} points")
        files[f"alt{n}_stab"] = (point_stabilizer(alternating_group(n), n),
                                 f"stabilizer of point {n} in Alt({n})")
    G, B = gl32()
    files["psl27"] = (G, "GL(3,2) = PSL(2,7) on the 7 points of the Fano plane")
    files["psl27_borel"] = (B, "upper unitriangular matrices, a Borel subgroup of order 8")
    for name, (group, comment) in files.items():
        (OUT / f"{name}.perm").write_text(format_perm_file(group, comment), encoding="utf-8")
        print(name, group.order())


if __name__ == "__main__":
    main()

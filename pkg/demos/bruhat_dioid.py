"""Playing with unions of Bruhat double cosets as bit-vectors.

Bit w stands for the double coset B n_w B. Products are computed from the
length function of W alone, then compared with an honest group: GL(3,2)
with its upper triangular subgroup.
"""
from dcfactor.coxeter import build_coxeter
from dcfactor.dioid import Dioid, bn_oracle_compare, verify_theorem4
from dcfactor.suites import bn_oracle_space

d = Dioid(build_coxeter("A2"))
s0, s1 = d.from_word([0]), d.from_word([1])
print("s0 * s0      ->", (s0 * s0).indices())     # {1, s0}
print("s0 * s1      ->", (s0 * s1).indices())     # a single double coset
print("w0 * w0 full ->", (d.w0() * d.w0()).is_full())

for name in ["B3", "H3", "F4", "E6"]:
    print(f"{name}: longest double coset squares to G: {verify_theorem4(build_coxeter(name))}")

oracle = bn_oracle_space()
print("GL(3,2)/B index", oracle.index, "double cosets", oracle.rank,
      "subdegrees", list(oracle.subdegrees))
print("all 36 products agree:", bn_oracle_compare(oracle, d))

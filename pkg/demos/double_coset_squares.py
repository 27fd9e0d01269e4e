"""Double cosets that square to the whole group, three ways.

The exact orbit test, the collapsed adjacency matrices and the random
marker should all tell the same story on the shipped Mathieu and
alternating groups.
"""
from dcfactor.cosets import build_coset_space
from dcfactor.factor import square_dc_check, square_dc_probabilistic, square_dc_search
from dcfactor.hecke import intersection_numbers, squares_to_group
from dcfactor.shipped import load_shipped

for group in ["m11", "m12", "alt6", "alt7"]:
    cs = build_coset_space(load_shipped(group), load_shipped(group + "_stab"))
    ca = intersection_numbers(cs)
    x = square_dc_search(cs, involution=True)
    print(f"{group}: index {cs.index}, rank {cs.rank}, involution witness {x.cycles()}")
    for j in range(cs.rank):
        exact = square_dc_check(cs, cs.dc_rep(j))
        marked = square_dc_probabilistic(cs, cs.dc_rep(j), trials=500, seed=j)
        print(f"   suborbit {j}: exact {exact!s:5} matrix row {squares_to_group(ca, j)!s:5} "
              f"marker certain {marked.verdict}")

m12 = build_coset_space(load_shipped("m12"), load_shipped("m12_stab"))
print("M12 collapsed adjacency of suborbit 1:")
print(intersection_numbers(m12).matrices[1])

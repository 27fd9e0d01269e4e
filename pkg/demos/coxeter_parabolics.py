"""Which finite Coxeter groups are a product of three conjugate parabolics.

For each maximal parabolic P of W we act on the cosets of P and ask, one
double coset at a time, whether W = P P^x P. Run with ``python demos/coxeter_parabolics.py``.
"""
from dcfactor.coxeter import build_coxeter, parabolic_factorization_check

for name in ["A1", "A3", "B2", "B3", "D4", "F4", "H3", "H4", "I2(5)", "E6"]:
    cs = build_coxeter(name)
    v = parabolic_factorization_check(cs)
    print(f"{name:6} |W| = {cs.order:6}  verdict {v.verdict!s:5}  "
          f"indices {list(v.indices.values())}")
    for k, word in v.witness_words.items():
        # a word in the simple reflections for one working conjugator
        print(f"         omit s{k}: x = {'*'.join(f's{i}' for i in word) or '1'}")

# the words are checked again by evaluating them inside W
cs = build_coxeter("D4")
v = parabolic_factorization_check(cs)
k, word = next(iter(v.witness_words.items()))
x = cs.evaluate(word)
print("D4 witness length", cs.length(x), "reduced word", cs.find_reduced_word(x))

"""
The Klee-Minty cube follows the Gray code
=========================================

"""

from pivotlab import BitString, gray_codes, gray_rank, gray_succ, increasing, km_instance

km = km_instance(3)
print(f"d = 3: {km.lp.m} rows, {km.lp.n} columns")

# Sorted by objective, the vertices come out in reflected Gray order.
for v in sorted(gray_codes(3), key=km.objective):
    print(v, gray_rank(v), km.objective(v), [str(t) for t in km.vertex(v)])

# Flipping bit i raises the objective exactly when b_1 + ... + b_i is even.
v = BitString.parse("0110")
big = km_instance(4)
for i in range(1, 5):
    print(i, increasing(v, i), big.objective(v.flip(i)) > big.objective(v))

# Successor and vertex basis: one bit, one pivot.
x = BitString.parse("011")
print(x, "->", gray_succ(x), km.basis(x), "->", km.basis(gray_succ(x)))

"""Cross-checks: two fermions against the p=2 oracle; a bilinear identity for p=2 bosons."""

import itertools

from parastat import build_boson_set, build_fermion_set, build_parafermion_oracle, combine
from parastat.algebra import Bracket, Product, ScalarMul, Sum, a, ad, apply_expr, klein
from parastat.algebra import vacuum_expectation, vacuum_generated_subspace

f = build_fermion_set(1)
rep, oracle = combine(f, f), build_parafermion_oracle(2)
mismatch = 0
for n in range(1, 5):
    for w in itertools.product((a(1), ad(1), klein()), repeat=n):
        if vacuum_expectation(Product(w), rep) != vacuum_expectation(Product(w), oracle):
            mismatch += 1
print("vacuum expectations, words up to length 4, mismatches:", mismatch)
print("cyclic subspace of f x f:", len(vacuum_generated_subspace(rep, 2)), "of", rep.dim)

# [a, ad] = 1 + (p - 1) K on the states reachable from the vacuum
b = build_boson_set(1, 4)
rep = combine(b, b)
lhs = Bracket(a(1), ad(1), "-")
rhs = Sum((Product(()), ScalarMul(rep.order_p - 1, klein())))
for v in vacuum_generated_subspace(rep, 3):
    print(apply_expr(lhs, rep, v) == apply_expr(rhs, rep, v), end=" ")
print()

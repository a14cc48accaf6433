"""Combining sets by the coproduct adds their orders."""

from parastat import build_boson_set, build_fermion_set, combine, combine_many
from parastat.algebra import Product, a, ad, vacuum_expectation

b = build_boson_set(1, 4)
for r in (1, 2, 3):
    rep = b if r == 1 else combine_many([b] * r)
    # <0| a ad |0> is the order
    print(f"{r} boson set(s): dim {rep.dim:4d}  a ad |0> = {vacuum_expectation(Product((a(1), ad(1))), rep)} |0>")

f = build_fermion_set(2)
rep = combine(f, f)
for k in (1, 2):
    for l in (1, 2):
        print(f"fermi r=2: a_{k} ad_{l} |0> =", vacuum_expectation(Product((a(k), ad(l))), rep))

"""Single sets: truncated bosons, fermions and the order-p parafermion oracle."""

from parastat import build_boson_set, build_fermion_set, build_parafermion_oracle, number_operator
from parastat.exact import bracket

b = build_boson_set(2, 3)          # two modes, total degree <= 3
print("boson basis:", b.basis.states)
print("dim", b.dim)

# [a_1, ad_1] is the identity except on the top degree, where ad fell off the edge
C = bracket(b.a[0], b.ad[0], "-")
print("diag of [a_1, ad_1]:", [str(C[j, j]) for j in range(b.dim)])

f = build_fermion_set(2)
print("fermion {a_1, ad_2}:", bracket(f.a[0], f.ad[1], "+").is_zero())
print("(ad_1)^2 = 0:", (f.ad[0] @ f.ad[0]).is_zero())

o = build_parafermion_oracle(3)
print("oracle p=3, a:")
for row in o.a[0].to_dense():
    print("  ", " ".join(f"{int(x):2d}" for x in row))
N = number_operator(o)
print("number operator:", [int(N[j, j]) for j in range(o.dim)])

"""Unequal orders: an order-2 set (itself a coproduct) next to an order-1 set."""

from parastat import build_fermion_set, combine
from parastat.algebra import Gen, Product, vacuum_expectation
from parastat.suites import suite_green, suite_order

f = build_fermion_set(2)
rep = combine(combine(f, f), f)
print("orders", rep.orders, "total", rep.order_p, "dim", rep.dim)

for alpha in (1, 2):
    w = Product((Gen("a", 1, alpha), Gen("ad", 1, alpha)))
    print(f"a^({alpha}) ad^({alpha}) |0> =", vacuum_expectation(w, rep), "|0>")

res = suite_green(rep) + suite_order(rep, 3)
print("failed:", [r.name for r in res if not r.passed] or "none", f"({len(res)} checks)")

"""Checking relations written in the .pst language."""

from parastat import build_fermion_set, combine
from parastat.dsl import parse_program, print_program, run_program

src = """
# order-2 parafermion from two fermion sets
let H = 1/2 [ad(1), a(1)]-
check [a(1), [ad(1), a(1)]-]- == 2 a(1)
check [H, ad(1)]- == ad(1)
check [a(1,1), ad(1,2)]- == 0
vacuum a(1) ad(1) == 2
vacuum a(1) ad(1) == 3    # wrong on purpose
"""

prog = parse_program(src)
print(print_program(prog))
f = build_fermion_set(1)
report = run_program(prog, combine(f, f))
print(report.to_text())

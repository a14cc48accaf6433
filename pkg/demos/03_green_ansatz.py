"""Green components of three combined sets, parabose and parafermi."""

from parastat import build_boson_set, build_fermion_set, combine_many
from parastat.exact import bracket
from parastat.suites import suite_green

for base in (build_boson_set(2, 4), build_fermion_set(2)):
    rep = combine_many([base, base, base])
    res = suite_green(rep)
    fams = {}
    for r in res:
        fams.setdefault(r.family, []).append(r)
    print(rep.statistics.value, "dim", rep.dim)
    for fam, group in fams.items():
        ok = sum(r.passed for r in group)
        cols = min(r.checked_columns for r in group)
        print(f"  {fam:20s} {ok}/{len(group)} pass, min columns checked {cols}")

# the anomalous sign in one line: components of different sets
b = build_boson_set(1, 3)
rep = combine_many([b, b])
x, y = rep.component(1, 1, "a"), rep.component(2, 1, "a")
print("bosons: {a^(1), a^(2)} = 0 ->", bracket(x, y, "+").is_zero())
f = build_fermion_set(1)
rep = combine_many([f, f])
x, y = rep.component(1, 1, "a"), rep.component(2, 1, "a")
print("fermions: [a^(1), a^(2)] = 0 ->", bracket(x, y, "-").is_zero())

"""Packing densities of the classical record lattices.

Reproduces the delta / vol B^d column for the best lattice packings in low
dimensions, with the exact rational center density alongside the floats.
"""

from periform import PeriodicForm, density, get

ROWS = [
    ("Z^2", ("Zd", 2)),
    ("A2 (hexagonal)", ("A", 2)),
    ("A3 = D3 (fcc)", ("A", 3)),
    ("D4", ("D", 4)),
    ("D5", ("D", 5)),
    ("E6", ("E6",)),
    ("E7", ("E7",)),
    ("E8", ("E8",)),
    ("Lambda9 = D9<t0>", ("Lambda9",)),
    ("K12 (Coxeter-Todd)", ("K12",)),
]

print(f"{'point set':22} {'lambda':>7} {'det':>6} {'delta/vol B^d':>14}  center^2")
for label, key in ROWS:
    entry = get(*key)
    form = entry.form
    x = form if isinstance(form, PeriodicForm) else PeriodicForm.lattice(form)
    rep = density(x)
    print(
        f"{label:22} {str(rep.lam):>7} {str(rep.det):>6} "
        f"{rep.delta_over_ball:14.10f}  {rep.center_density_squared}"
    )

print()
print("E8 fills 2^-4 of space per unit ball volume; the Leech lattice (see")
print("the slow test suite) reaches delta / vol B^24 = 1 exactly.")

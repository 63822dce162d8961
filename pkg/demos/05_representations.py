"""One point set, many periodic forms.

A lattice can be rewritten over any sublattice, turning it into an
m-translate periodic form.  Minimum and density are properties of the point
set, so they survive every re-representation, and for perfect strongly
eutactic lattices no representation can ever be refuted: that is the
periodic-extremeness theorem at work, checked here on E8 over D8.
"""

from periform import (
    PeriodicForm,
    certify,
    density,
    dumps,
    generalized_min,
    get,
    periodic_extreme_by_theorem,
    sublattice_representation,
)
from periform.linalg import solve_exact

e8 = get("E8")
d8 = get("D", 8)

print("periodic_extreme_by_theorem(E8):", periodic_extreme_by_theorem(e8.form))

# Express the fixed D8 basis in E8 coordinates: an index-2 sublattice.
n = 8
mat = [[e8.basis[j][i] for j in range(n)] for i in range(n)]
h_cols = [solve_exact(mat, list(row)) for row in d8.basis]
h = [[int(h_cols[j][i]) for j in range(n)] for i in range(n)]

x = sublattice_representation(e8.form, h)
base = PeriodicForm.lattice(e8.form)
print(f"E8 over D8: m = {x.m}")
print("minimum preserved:", generalized_min(x).lam == generalized_min(base).lam)
print(
    "center density preserved:",
    density(x).center_density_squared == density(base).center_density_squared,
)
cert = certify(x)
print("verdict of the 2-translate representation:", cert.verdict)

print()
print("the same form as a PFORM-JSON document:")
print(dumps(x, meta={"name": "E8 over D8"}))

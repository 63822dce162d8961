"""The fluid diamond family in dimension 9.

Two translates of D9 at offset (1/2, ..., 1/2, alpha) are equally dense for
every alpha: a one-parameter family of optimal-looking packings.  The
certificates show why the family can exist: the configurations are
2-eutactic but never 2-perfect, and for non-integral alpha the two
components do not even touch (the packing is floating).
"""

from fractions import Fraction as Fr

from periform import (
    certify,
    density,
    fluid_diamond,
    generalized_min,
)

for alpha in (0, Fr(1, 4), Fr(1, 3), Fr(1, 2)):
    x = fluid_diamond(alpha)
    gm = generalized_min(x)
    cert = certify(x)
    cross = sum(1 for r in gm.reps if r.i != r.j)
    rep = density(x, gm.lam)
    print(f"alpha = {alpha}")
    print(f"  minimum {gm.lam} with {len(gm.reps)} representations "
          f"({cross} between the two translates)")
    print(f"  delta / vol B^9 = {rep.delta_over_ball:.10f}")
    print(f"  verdict: {cert.verdict}; eutaxy {cert.eutaxy.tag}; "
          f"2-perfect: {cert.perfect}")
    print(f"  floating partition {cert.floating}"
          + ("  <- components move freely" if cert.is_floating else ""))
    if cert.uncertainty_basis is not None:
        print(f"  degrees of freedom (dim U): {len(cert.uncertainty_basis)}")
    print()

print("alpha integral pins the second translate against the first (128 extra")
print("touching representations, one degree of freedom left); any other")
print("alpha leaves the two D9 components floating with all nine")
print("translational degrees of freedom.")

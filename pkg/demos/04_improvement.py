"""Driving a bad packing uphill until a certificate stops it.

Starting from diag(1, 2), the improvement loop follows refuting directions
while they exist, snaps iterates to small denominators, and escapes the
square-lattice plateau along an uncertainty direction.  It terminates on
the hexagonal lattice with an IsolatedExtreme certificate.
"""

from periform import PQF, PeriodicForm, density, improve

start = PeriodicForm.lattice(PQF.from_rows([[1, 0], [0, 2]]))
def rows_str(x):
    return [[str(v) for v in row] for row in x.q.form.rows()]


print("start:", rows_str(start), f"delta/volB = {density(start).delta_over_ball:.6f}")
print()

result = improve(start, steps=500)
for step in result.steps:
    tag = " (snapped)" if step.snapped else ""
    print(f"step {step.index}: {step.action:7} eps = {str(step.epsilon):>7} "
          f"-> delta/volB = {step.delta_over_ball:.10f}{tag}")

print()
print("final form:", rows_str(result.final))
print("final verdict:", result.certificate.verdict)
print(f"final delta/volB = {density(result.final).delta_over_ball:.10f}")
print("hexagonal value  = 0.2886751346")

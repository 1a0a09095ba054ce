"""
The invariant two-qubit state
=============================

Stack the three coproduct matrices and take their kernel.  The result is a
single vector, and at q = 1 it turns into the familiar Bell singlet.
"""
from qsinglet.hopf import Generator, coproduct_matrix
from qsinglet.linalg import kernel
from qsinglet.states import bell_singlet, casimir_residual, invariance_residuals, q_singlet, stacked_coproducts

for g in (Generator.JZ, Generator.JPLUS, Generator.JMINUS):
    print(f"Delta({g}) =")
    for row in coproduct_matrix(g).to_strings("q"):
        print("   ", "  ".join(f"{x:>12}" for x in row))

basis = kernel(stacked_coproducts())
print("kernel dimension:", len(basis))

psi = q_singlet()
print("psi      =", [x.to_q_string() for x in psi.vector])
print("<psi|psi> =", psi.norm_squared.to_q_string())
print("at q = 1 :", psi.vector.evaluate(1))

# every generator kills it, and so does the total Casimir
print(all(r.is_zero() for r in invariance_residuals(psi).values()), casimir_residual(psi).is_zero())

# the undeformed singlet is only invariant at q = 1
for g, r in invariance_residuals(bell_singlet()).items():
    print(f"Delta({g}) |bell> =", [x.to_q_string() for x in r])

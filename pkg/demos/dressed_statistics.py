"""
Naive versus dressed measurement statistics
===========================================

Naive local observables give biased marginals.  Dressing Alice's and Bob's
Jz with the R-matrix makes them covariant, but the resulting projectors are
not self-adjoint, so the joint table depends on how the outcome weights are
formed.  Here the table is computed under each standard convention.
"""
from fractions import Fraction

from qsinglet.measurement import dressed_joint, marginals, naive_joint, standard_conventions

naive = naive_joint()
print("naive p(+,-) =", naive[1, -1].to_q_string())
print("naive bias   =", marginals(naive).bias.to_q_string())

print()
for conv in standard_conventions():
    jd = dressed_joint(conv=conv)
    at4 = [str(x.evaluate_q(Fraction(4))) for x in jd.flat()]
    flag = "  quasi" if jd.quasi_probability else ""
    print(f"{conv.key:<48} p(+,-) = {jd[1, -1].to_q_string():<34} q=4: {at4}{flag}")

# everything collapses to the textbook singlet at q = 1
print()
print({tuple(dressed_joint(conv=c).evaluate(1)) for c in standard_conventions()})

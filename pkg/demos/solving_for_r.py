"""
Which six-vertex R intertwines the coproduct?
=============================================

The condition R Delta(g) = Delta_op(g) R is linear in the entries of R, so
fixing a sparsity pattern turns it into an exact kernel computation.
"""
from qsinglet.braiding import check_quasitriangularity, check_yang_baxter, r_paper, solve_r
from qsinglet.errors import NoSolution
from qsinglet.hopf import Generator

sol = solve_r()
print("solutions on the six-vertex pattern:", sol.dimension)
for row in sol.normalized.to_strings("q"):
    print("   ", "  ".join(f"{x:>10}" for x in row))

for name, r in (("displayed", r_paper()), ("solved", sol.normalized)):
    res = check_quasitriangularity(r)
    print(name, {str(g): m.is_zero() for g, m in res.items()}, "YBE:", check_yang_baxter(r).is_zero())

# the displayed matrix only fails off q = 1
res = check_quasitriangularity(r_paper())[Generator.JPLUS]
for row in res.to_strings("q"):
    print("   ", "  ".join(f"{x:>22}" for x in row))
print("vanishes at q = 1:", all(x == 0 for row in res.evaluate(1) for x in row))

try:
    solve_r([(1, 1), (2, 2), (3, 3), (4, 4)])
except NoSolution as exc:
    print("diagonal only:", exc)

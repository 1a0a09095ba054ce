"""Independent sympy rebuild of the objects under test.

Nothing here imports qsinglet; tests compare the two constructions.
"""
import sympy as sp

s = sp.symbols("s", positive=True)
q = s**2
lam = s - 1 / s

jz = sp.diag(sp.Rational(1, 2), -sp.Rational(1, 2))
jp = sp.Matrix([[0, 1], [0, 0]])
jm = jp.T
k = sp.diag(s, 1 / s)
kinv = sp.diag(1 / s, s)
one = sp.eye(2)
P = sp.Matrix([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])


def kron(a, b):
    return sp.kronecker_product(a, b)


d_jz = kron(jz, one) + kron(one, jz)
d_jp = kron(jp, k) + kron(kinv, jp)
d_jm = kron(jm, k) + kron(kinv, jm)

r_paper = sp.Matrix([[s, 0, 0, 0], [0, 1, lam, 0], [0, 0, 1, 0], [0, 0, 0, s]])
r_solved = sp.Matrix([[q, 0, 0, 0], [0, 1, q - 1 / q, 0], [0, 0, 1, 0], [0, 0, 0, q]])


def simp(m):
    return m.applyfunc(sp.cancel)


def is_zero(m):
    return all(sp.cancel(x) == 0 for x in m)


def dressed(x, site, r, bob="r"):
    r21 = P * r * P
    if site == "A":
        g, y = r21, kron(x, one)
    else:
        g = {"r": r, "r21": r21, "rinv": r.inv()}[bob]
        y = kron(one, x)
    return simp(g * y * g.inv())


def to_sympy(m):
    """Convert a qsinglet Matrix through its string rendering."""
    return sp.Matrix([[sp.sympify(x.to_string("s").replace("^", "**"), locals={"s": s}) for x in row] for row in m.tolist()])

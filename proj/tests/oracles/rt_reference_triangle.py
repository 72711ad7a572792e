"""Exact RT1 element matrices on the triangle (0,0), (1,0), (0,1).

Builds the element from scratch in sympy: the space (a,b) + c(x,y) with a, b,
c linear, the degrees of freedom (normal component at both endpoints of each
edge, edge normal = tangent from lower to higher vertex rotated clockwise,
then the cell averages of both components), the nodal basis, the 8x8 mass
matrix and the 3x8 matrix of integrals of div(psi_j) against the barycentric
coordinates. Writes rt_reference_triangle.inc next to this script.

Run: python3 rt_reference_triangle.py
"""
import pathlib

import sympy as sp

x, y = sp.symbols("x y")
coef = sp.symbols("a0:8")
a0, a1, a2, b0, b1, b2, d1, d2 = coef
field = sp.Matrix([a0 + a1 * x + a2 * y + x * (d1 * x + d2 * y),
                   b0 + b1 * x + b2 * y + y * (d1 * x + d2 * y)])

verts = [sp.Matrix([0, 0]), sp.Matrix([1, 0]), sp.Matrix([0, 1])]
area = sp.Rational(1, 2)


def integrate(expr):
    return sp.integrate(sp.integrate(expr, (y, 0, 1 - x)), (x, 0, 1))


rows = []
for i in range(3):  # edge opposite vertex i
    lo, hi = sorted(j for j in range(3) if j != i)
    t = verts[hi] - verts[lo]
    normal = sp.Matrix([t[1], -t[0]]) / sp.sqrt(t.dot(t))
    for v in (lo, hi):
        val = field.subs({x: verts[v][0], y: verts[v][1]}).dot(normal)
        rows.append([sp.diff(val, c) for c in coef])
for comp in range(2):
    mean = integrate(field[comp]) / area
    rows.append([sp.diff(mean, c) for c in coef])

V = sp.Matrix(rows)
C = V.inv()  # column j: coefficients of basis function j
basis = [field.subs(dict(zip(coef, C[:, j]))) for j in range(8)]

mass = sp.Matrix(8, 8, lambda i, j: sp.nsimplify(integrate(basis[i].dot(basis[j]))))
bary = [1 - x - y, x, y]
div = [sp.diff(b[0], x) + sp.diff(b[1], y) for b in basis]
ndiv = sp.Matrix(3, 8, lambda r, j: sp.simplify(integrate(div[j] * bary[r])))

# The DOFs must reproduce the identity on the basis.
for j in range(8):
    assert sp.simplify(V * C[:, j] - sp.eye(8)[:, j]) == sp.zeros(8, 1)


def emit(name, M):
    lines = [f"inline constexpr double {name}[{M.rows}][{M.cols}] = {{"]
    for r in range(M.rows):
        vals = ", ".join(f"{float(sp.N(M[r, c], 30)):.17g}" for c in range(M.cols))
        lines.append(f"    {{{vals}}},")
    lines.append("};")
    return "\n".join(lines)


out = pathlib.Path(__file__).with_name("rt_reference_triangle.inc")
out.write_text(
    "// Generated by rt_reference_triangle.py (sympy); do not edit.\n"
    "// Triangle (0,0), (1,0), (0,1); local DOF order as in RaviartThomasSpace.\n"
    + emit("kRtReferenceMass", mass) + "\n" + emit("kRtReferenceDivergence", ndiv) + "\n")
print(out.read_text())

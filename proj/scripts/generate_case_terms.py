#!/usr/bin/env python3
"""Regenerates the closed-form data of the built-in manufactured case.

The exact fields are
    u(x, t) = t^2 (sin(pi x1) sin(pi x2), sin(pi x1) sin(pi x2))
    p(x, t) = -t/pi (sin(pi x1) cos(pi x2) + cos(pi x1) sin(pi x2))
with the stress law
    sigma(e) = (1 + exp(-dev(e))) tr(e) I + (4 - 2 exp(-dev(e))) e,
    dev(e) = tr(e^2) - tr(e)^2 / 2,
and the momentum/mass balance define
    f = -div sigma(grad_s u) + grad p,
    g = d_t (div u) - div(grad p)      (C0 = 0, kappa = I).

Output: C++ expressions pasted into core/src/manufactured.cpp.
"""

import sympy as sp

x1, x2, t = sp.symbols("x1 x2 t", real=True)

s1, c1 = sp.sin(sp.pi * x1), sp.cos(sp.pi * x1)
s2, c2 = sp.sin(sp.pi * x2), sp.cos(sp.pi * x2)

u = sp.Matrix([t**2 * s1 * s2, t**2 * s1 * s2])
p = -t / sp.pi * (s1 * c2 + c1 * s2)

grad_u = sp.Matrix([[sp.diff(u[i], v) for v in (x1, x2)] for i in range(2)])
e = (grad_u + grad_u.T) / 2
dev = (e * e).trace() - e.trace() ** 2 / 2
lam = 1 + sp.exp(-dev)
mu2 = 4 - 2 * sp.exp(-dev)  # twice the nonlinear mu
sigma = lam * e.trace() * sp.eye(2) + mu2 * e

div_sigma = sp.Matrix([sum(sp.diff(sigma[i, j], v) for j, v in enumerate((x1, x2))) for i in range(2)])
grad_p = sp.Matrix([sp.diff(p, x1), sp.diff(p, x2)])
f = -div_sigma + grad_p

g = sp.diff(grad_u[0, 0] + grad_u[1, 1], t) - (sp.diff(p, x1, 2) + sp.diff(p, x2, 2))

print("// g simplifies to:", sp.simplify(g))

subs = {x1: sp.Symbol("X"), x2: sp.Symbol("Y"), t: sp.Symbol("T")}
exprs = [sp.simplify(f[0]).subs(subs), sp.simplify(f[1]).subs(subs)]
replacements, reduced = sp.cse(exprs, optimizations="basic")
for name, val in replacements:
    print(f"  const double {name} = {sp.ccode(val)};")
print(f"  fx = {sp.ccode(reduced[0])};")
print(f"  fy = {sp.ccode(reduced[1])};")

"""The period identities, verified in the truncated jet algebra.

Working modulo the sixth filtration step, the generators u (from the
cyclotomic tower) and w (from the Kummer tower) carry explicit Galois and
Frobenius rewrite rules.  The four classical identities below then hold on
the nose, with exact rational coefficients.

Run:  python demos/04_jet_identities.py
"""

from fractions import Fraction as F

from period_lab.jets import (
    JetContext,
    frobenius_jet,
    galois_act_jet,
    log1p,
    verify_cocycle,
)
from period_lab.tilt import GaloisElement

p = 3
ctx = JetContext(p, order=6)
t = ctx.t()  # log(1 + u)
print("t =", t)

# Frobenius multiplies the period by p.
assert frobenius_jet(t) == p * t
print("phi(t) = p t holds at order", ctx.order)

# Galois multiplies it by the cyclotomic character value.
g = GaloisElement(chi=F(7, 2), c=F(5, 4))
assert galois_act_jet(g, t) == g.chi * t
print("g(t) = chi(g) t for chi =", g.chi)

# Frobenius does not preserve the filtration: the image of w has a
# nonzero constant term.
print("constant term of phi(w):", frobenius_jet(ctx.w()).constant_term())

# The log of the Kummer period solves the cocycle equation
#   g(y) = y + c(g) t   with   y = log(1 - w),
# the convention log p = 0 built in.
y = ctx.log_p_flat()
lhs = galois_act_jet(g, y)
rhs = y + g.c * t
assert lhs == rhs
print("cocycle identity g(log[pflat]) = log[pflat] + c(g) t: verified")
print("  (packaged check:", verify_cocycle(g, ctx), ")")

# At the graded level t agrees with u, so t^m generates the m-th piece.
low = JetContext(p, 2)
assert low.t() == low.u()
print("t = u modulo the second filtration step")

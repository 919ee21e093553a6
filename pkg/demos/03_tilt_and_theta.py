"""Distinguished elements of the tilt and the evaluation map.

The compatible root systems eps (of unity) and pflat (of p) generate the
monomials this model computes with.  The script checks the three facts the
whole theory leans on, all exactly:

  * omega = sum of the p-th-root powers kills the evaluation map and has
    tilt valuation one, so it generates the kernel;
  * [eps] - 1 has valuation p/(p-1) and lies in the kernel of every
    Frobenius twist of the evaluation;
  * the Galois action twists pflat by the Kummer cocycle.

Run:  python demos/03_tilt_and_theta.py
"""

from fractions import Fraction as F

from period_lab.tilt import (
    GaloisElement,
    TiltExpr,
    generator_condition_check,
    ker_theta_orbit_probe,
    theta,
    vflat_sum,
)

p = 3
w = TiltExpr.omega(p)
print("omega =", w)

# theta(omega) = 0: the p-th roots of unity sum to zero.
print("theta(omega) is zero:", theta(w, 3).is_zero())

# theta(phi(omega)) = p: each of the p terms evaluates to 1.
print("theta(phi(omega)) = p:", theta(w.frobenius(1), 3).equals_rational(p))

# v_flat(omega mod p) = 1, read off depth by depth.
res = vflat_sum(w, 3)
print("depth values of v_flat(omega mod p):", res.values, "->", res.value)

# The same checks, packaged as the generator criterion.
for expr, name in (
    (TiltExpr.p_flat_minus_p(p), "[pflat] - p"),
    (w, "omega"),
    (TiltExpr.epsilon_minus_one(p), "[eps] - 1"),
):
    rep = generator_condition_check(expr, 3, 3)
    print(f"generator criterion for {name}: theta zero {rep.theta_is_zero},",
          f"v_flat one {rep.vflat_is_one}, passes {rep.passes}")

# [eps] - 1 sits in the kernel of every Frobenius twist of theta; omega
# falls out after one twist.
print("orbit probe of [eps]-1:", ker_theta_orbit_probe(TiltExpr.epsilon_minus_one(p), 4, 4))
print("orbit probe of omega:  ", ker_theta_orbit_probe(w, 4, 4))

# Galois: eps is raised to chi, pflat picks up the Kummer cocycle.
g = GaloisElement(chi=F(4), c=F(1))
print("g(eps)   =", TiltExpr.epsilon_power(p, 1).galois_act(g))
print("g(pflat) =", TiltExpr.p_flat_power(p, 1).galois_act(g))

# The cocycle law makes the action a group action.
h = GaloisElement(chi=F(2), c=F(-1, 2))
x = w * TiltExpr.p_flat_power(p, F(1, 3))
assert x.galois_act(h).galois_act(g) == x.galois_act(g.compose(h))
print("group law g(h(x)) = (gh)(x) verified on", x)

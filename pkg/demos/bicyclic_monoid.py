"""
Level-1 and level-2 functions on the bicyclic monoid
====================================================

Elements are normal forms q^m p^n with pq = 1.  The level-2 family carries
three phases, and its right translates factor through two level-1 partners.
"""

from fractions import Fraction as F

import weylalg as wa
from weylalg.bicyclic import P, Q, window

x, y = wa.BicyclicElement(2, 5), wa.BicyclicElement(4, 1)
print(f"{tuple(x)} * {tuple(y)} =", tuple(wa.bc_mul(x, y)))
print("pq =", tuple(wa.bc_mul(P, Q)), " qp =", tuple(wa.bc_mul(Q, P)))

lam, mu, nu = (wa.TorusPoint(F(a, b)) for a, b in [(1, 6), (2, 7), (3, 8)])
f = wa.BicyclicF2(lam, mu, nu)
f_p, f_q = f.cocycle_partners()
print("partners:", f_p, f_q)

# R_p f = f_p f and R_q f = f_q f on a 21 x 21 window, exactly
W = window(20)
ok = all(f(wa.bc_mul(z, P)) == f_p(z) * f(z) and f(wa.bc_mul(z, Q)) == f_q(z) * f(z) for z in W)
print(f"cocycle identities on {len(W)} elements:", ok)
print("f(p) f(q) = f(1)^2 for both partners:", wa.lemma5_check(f_p) and wa.lemma5_check(f_q))

# imposing p^2 = p collapses the window so only constants survive
for rel in ("p", "q", None):
    rep = wa.idempotent_collapse(rel, 6)
    print(f"relation {rel!s:>4}: {rep.classes} classes, constants only: {rep.constants_only}")

"""
Characters of finite rings composed with polynomials
====================================================

t -> chi(q(t)) on Z/12 with chi of weight 5 and q(t) = 2t^3 + t.
Differencing q lowers its degree, and on a finite ring the replay over all
pairs (t, s) is exhaustive.
"""

import weylalg as wa
from weylalg.rings import additivity_failure

R = wa.RingSpec((12,))
chi = wa.Character(R, (5,))
q = wa.RingPolynomial(R, [0, 1, 0, 2])
cert = wa.certify_ring(chi, q)
print("depth:", cert.depth, " chain:", [link.to_json() for link in cert.chain])
for r in cert.replays:
    print(f"  level {r.level}: degree {r.degree}, {r.pairs_checked} pairs, passed {r.passed}")

# the character itself is additive on every pair
print("additivity counterexample:", additivity_failure(chi))

# a product ring works the same way
R2 = wa.RingSpec((4, 9))
cert2 = wa.certify_ring(wa.Character(R2, (1, 2)), wa.RingPolynomial(R2, [(0, 1), (1, 0), (3, 4), (1, 1)]))
print("Z/4 x Z/9 cubic: depth", cert2.depth, " passed", cert2.passed)

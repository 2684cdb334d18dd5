"""
Birkhoff averages of irrational phase polynomials
=================================================

Averages of exp(2 pi i p(n)) decay when a non-constant coefficient is
irrational.  Rational phases are periodic, so their averages have an exact
closed form.
"""

from fractions import Fraction as F

import numpy as np

import weylalg as wa

checkpoints = [10**k for k in range(2, 6)]
for coeffs in ([0, 0.6180339887498949], [0, 0, 0.7071067811865476]):
    series = wa.birkhoff_average(wa.PhasePolynomial(coeffs, "float"), 10**6, checkpoints)
    print(coeffs, " ".join(f"N={c.n}:|avg|={c.modulus:.2e}" for c in series.checkpoints))

# the finite-difference kernel against direct evaluation
p = wa.PhasePolynomial([0, 0, 0, 0.7071067811865476], "float")
err = np.abs(wa.weyl_kernel(p, 10**6) - wa.ergodic.direct_values(p, 10**6)).max()
print(f"kernel vs direct over 1e6 steps: {err:.1e}")

# rational phases: exact average and its closed form
r = wa.PhasePolynomial([0, F(1, 3), F(1, 4)])
print("rational average:", wa.birkhoff_average(r, 1000).final.average,
      " closed form:", wa.rational_average_closed_form(r, 1000))

rep = wa.equidistribution_report(wa.PhasePolynomial([0, 0, 0.7071067811865476], "float"), 10**5)
print(f"equidistribution: star discrepancy {rep.star_discrepancy:.2e}, "
      f"max bin deviation {rep.relative_deviation:.2%}")

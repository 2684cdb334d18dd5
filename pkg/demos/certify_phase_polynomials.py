"""
Certifying phase polynomials on the integers
============================================

A cubic phase polynomial differenced three times by the shift-1 cocycle
quotient ends in a constant.  That chain is the certificate.
"""

from fractions import Fraction as F

import weylalg as wa

# n -> exp(2 pi i (1/5 + n/3 + n^2/8 + n^3/7))
p = wa.PhasePolynomial([F(1, 5), F(1, 3), F(1, 8), F(1, 7)])
cert = wa.certify(p)
print("certificate depth:", cert.depth)
for level, link in enumerate(cert.chain):
    print(f"  level {level}: degree {link.degree}, phases {link.to_json()}")

# replay f(n+s) = f_s(n) f(n) on a sampled window, exactly
f = wa.SampledFunction.from_polynomial(p, 24)
report = wa.verify_certificate(f, cert, range(-10, 11))
print("exact replay passed:", report.passed, "max error:", report.max_error)

# a degree-1 function is recovered as lam**n * lam1
lam, lam1 = wa.recover_f1(wa.SampledFunction.from_polynomial(wa.PhasePolynomial([F(1, 3), F(1, 4)]), 8))
print("recovered lambda:", lam, "lambda1:", lam1)

# translates of a non-constant polynomial stay apart on a finite truncation
probe = wa.distality_probe(p, [(0, 1), (2, 5), (-3, 4)], 64, 16)
print("distality probe delta:", round(probe.delta, 6))

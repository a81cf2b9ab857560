"""
Best approximations of a quadratic irrational
=============================================

The denominators of the convergents of sqrt(2)-1 are the Pell numbers
1, 2, 5, 12, 29, 70, ...  This script recovers them with the certified
scan, then checks the two-sided sandwich that pins every best
approximation between its neighbours.
"""

from fractions import Fraction

from shrinktarget import CertifiedVector, best_simultaneous, best_linear

# Represent the irrational by a deep convergent plus an explicit error
# radius.  Every comparison the scan makes is then either conclusive or
# raises, so the witness list below is certified, not approximate.
p, q = 0, 1
pp, qq = 1, 2
while qq < 10 ** 30:
    p, pp = pp, p + 2 * pp
    q, qq = qq, q + 2 * qq
theta = CertifiedVector((Fraction(pp, qq),), Fraction(1, 10 ** 25))

records = best_simultaneous(theta, 10 ** 4)
print("best approximation witnesses up to 10^4:")
print("  ", [r.height for r in records])

# Each record carries an enclosure of ||q*theta||.  The classic sandwich
# 1/(q_n + q_{n+1}) <= ||q_n theta|| <= 1/q_{n+1} holds with room to spare:
print("\n  q_n    1/(q_n+q_{n+1})   ||q_n theta||      1/q_{n+1}")
for rec, nxt in zip(records, records[1:]):
    lo = Fraction(1, rec.height + nxt.height)
    hi = Fraction(1, nxt.height)
    print(f"  {rec.height:5d}  {float(lo):.10f}     {float(rec.value.hi):.10f}"
          f"     {float(hi):.10f}")

# In dimension one the best *linear* approximations (minimizing |<k, theta>|
# over |k| <= h) walk through the same denominators.
linear = best_linear(theta, 10 ** 3)
print("\nlinear witnesses up to 10^3:", [r.height for r in linear])

"""
Series criteria and the transfer inequality
===========================================

Membership of a translation vector in the shrinking-target classes is
controlled by convergence/divergence of weighted error series.  The
criteria module evaluates certified partial sums of those series and the
transfer inequality that moves bounds between the linear and the
simultaneous picture.
"""

from fractions import Fraction

from shrinktarget import (as_vector, transfer_check, series_lemma22,
                          dyadic_condition_iii, series_thm5)
from shrinktarget.construct import build_theta, minimal_heights

F = Fraction

# --- the transfer inequality -------------------------------------------
# eps_l(h) <= eps_s(C h^d) / (C h^(d-1)),  C = 1/(2(d+1)).
# Both sides are evaluated by exhaustive scans in exact arithmetic.
theta = as_vector(("3/7", "5/11"))
for h in (3, 6, 12, 40):
    rep = transfer_check(theta, h)
    print(f"h = {h:3d}: eps_l(h) <= {float(rep.lhs.hi):.6f}, "
          f"rhs >= {float(rep.rhs.lo):.6f}, holds = {rep.holds}")

# --- harmonic vs dyadic form of the same criterion ----------------------
# The sum over all heights and the sum over dyadic blocks control each
# other with explicit constants, so either can decide convergence.
s_iv = series_lemma22(theta, 31, F(2)).partial_sums[-1]
s_iii = dyadic_condition_iii(theta, 5).partial_sums[-1]
print("\nharmonic-form partial sum :", float(s_iv.hi))
print("dyadic-block partial sum  :", float(s_iii.hi))

# --- the series over a constructed vector ------------------------------
# For the polynomial-regime construction (a_n = (n+3)^4) the series of
# (|X_{n+1}|^2 |<X_n, theta>|)^(1/3) stays summable: each term is pinned
# inside [3/(32 a_{n+1}), 10/a_{n+1}]^(1/3), a convergent p-series.
a = lambda n: (n + 3) ** 4
state = build_theta(a, minimal_heights(a, 1, 13), 10)
report = series_thm5(state.refined_theta(), state.linear_witnesses(), 10)
print("\npolynomial-regime series, first 10 terms:")
for (n, term), psum in zip(report.terms, report.partial_sums):
    print(f"  n = {n}: term <= {float(term.hi):.6f}, "
          f"partial sum <= {float(psum.hi):.6f}")
print(report.verdict)

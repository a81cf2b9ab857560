"""
Shrinking-target statistics of a torus translation
==================================================

How often does the orbit x, x+theta, x+2*theta, ... fall inside the ball
of radius n^(-1/delta) around the origin at time n?  The fixed-point
engine answers with certified hits: every reported index is a proven hit,
every omission a proven miss, and anything the error budget cannot settle
is counted separately as inconclusive.
"""

from fractions import Fraction

from shrinktarget import (CertifiedVector, OrbitConfig, orbit_hits,
                          exact_orbit_hits, log_law_stat, hit_census,
                          bc_window_estimate)

F = Fraction

# --- one orbit, checked two ways ----------------------------------------
theta = CertifiedVector((F(5741, 13860),), F(0))   # a Pell convergent
config = OrbitConfig(theta=theta, delta=F(1), n_max=500, precision_bits=64)
record = orbit_hits(config, x0=(F(1, 3),))
oracle = exact_orbit_hits(config, x0=(F(1, 3),))
print("certified hits :", record.hits)
print("exact oracle   :", oracle)
print("agree:", record.hits == oracle, "| inconclusive:", record.inconclusive)

# --- the log-law statistic ----------------------------------------------
# (-log min_n ||x + n theta||) / log N should approach 1/d for almost
# every start.  The enclosure is two rationals bracketing the true value.
lo, hi = log_law_stat(config, x0=(F(1, 3),))
print(f"\nlog-law statistic at N = 500: [{float(lo):.4f}, {float(hi):.4f}]")

# --- a census over random starts ----------------------------------------
census_cfg = OrbitConfig(theta=theta, delta=F(1), n_max=10 ** 4,
                         samples=200, seed=7, precision_bits=64)
census = hit_census(census_cfg, n_lo=10)
print(f"\ncensus over {census_cfg.samples} starts, n in [10, 10^4]:")
print("  mean hit count :", float(census.mean))
print("  median         :", float(census.median))
print("  quartiles      :", tuple(float(x) for x in census.quartiles))

# --- measure of a union of preimages ------------------------------------
# The fraction of starts that hit at least once inside a window [lo, hi)
# estimates the measure of the union of the pulled-back targets.
est = bc_window_estimate(census_cfg, (100, 2000))
print(f"\nwindow [100, 2000): {est.hits}/{est.samples} starts hit "
      f"(+/- {float(est.confidence_radius):.4f} at 95%)")

"""
Building a translation vector with prescribed approximation behaviour
=====================================================================

The construction produces a two-dimensional vector theta as the limit of
projectivized integer points P_n = (x_n, y_n, q_n), together with the
dual integer forms Delta_n that witness its best linear approximations.
Everything about the run -- the lattice points, the heights, the target
coefficients a_n -- is serialized into a plain-text transcript that can
be reloaded and re-verified independently.
"""

from shrinktarget.construct import (build_theta, minimal_heights,
                                    verify_construction, ConstructionState)

# a_n controls how badly approximable the limit is: bounded a_n keeps the
# vector inside the logarithm-property class, polynomial a_n pushes it out.
a = lambda n: 33
state = build_theta(a, minimal_heights(a, 1, 7), 4)

print("heights h_n      :", state.heights)
print("denominators q_n :", state.denominators)

# the affine points P_n/q_n converge to theta; consecutive projective gaps
# contract by at least 1/(2^18 * 3^3) per step
for n in range(state.depth + 1):
    print(f"gap d(P_{n}, P_{n + 1}) = {float(state.gap(n)):.3e}")

theta = state.refined_theta()
print("\ntheta enclosure radius:", float(theta.radius))
print("theta ~ (%.12f, %.12f)" % tuple(float(c) for c in theta.coords))

# The transcript is the ground truth: a reloaded copy is bit-identical and
# the verifier re-derives every invariant from the integers alone.
text = state.to_text()
reloaded = ConstructionState.from_text(text)
assert reloaded.to_text() == text

report = verify_construction(state, 2)
print("\nverification:", "all checks passed" if report.ok else "FAILED")
for line in report.to_lines()[:8]:
    print(" ", line)
print("  ...")

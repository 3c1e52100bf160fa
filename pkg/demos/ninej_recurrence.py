"""The 9j layer: exact values by contraction, the five-point recurrence in
two of the entries, and its collapse onto the screen recursion at h = 0."""

import spinscreen as ss

# a 9j value, exactly and as a float
tjs = (4, 4, 6, 2, 4, 4, 6, 4, 4)
v = ss.ninej_exact(*tjs)
print("9j%s = (%s) * sqrt(%s)" % (tjs, v.q, v.p))
print("      = %.12e" % v.to_real())

# recurrence coefficients for a (c, d) stencil
c = ss.ninej_coeffs(10, 4, 8, 6, 8)
print("\nA_q = %.6f, B_q = %.6f" % (c.a_q, c.b_q))

# the five-point relation annihilates exact values
print("\nfive-point residuals on random admissible stencils:")
for stencil in ss.random_stencils(5, two_j_max=10, seed=42):
    res = ss.ninej_residual(*stencil)
    print("  %s  relative %.2e" % (stencil, res.relative))

# at h = 0 the relation becomes the screen recursion, coefficient for
# coefficient up to one scale factor per stencil
params = ss.screen_ranges(60, 90, 120, 110)
report = ss.reduction_check(params, n_stencils=50, seed=0)
print("\nh=0 reduction onto the screen recursion:")
print("  %d stencils checked, %d degenerate skipped" %
      (report.n_checked, report.n_skipped))
print("  worst coefficient-ratio deviation from constancy: %.2e"
      % report.max_ratio_deviation)

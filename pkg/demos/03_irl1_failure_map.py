"""Where the reweighted-l1 iteration gets the prox wrong.

The iteration x_{k+1} = soft-threshold(z) at level lam/(eps + x_k) always
converges, but inside the nonconvex critical band its limit depends on the
start x0: it collapses to 0 below the unstable fixed point r1(z) and climbs
to r2(z) above it.  The true prox instead switches branches at z_star.  The
mismatch region is an interval pair determined entirely by x0.

Run:  python3 demos/03_irl1_failure_map.py
"""

import numpy as np

from logsum_prox import (
    ProxParams,
    failure_intervals,
    irl1_predict_limit,
    irl1_simulate,
    limit_matches_prox,
    prox_scalar,
    r1,
    z_star,
)

p = ProxParams(3.0, 1.0)
zs = z_star(p).z_star

############################################################################
# A concrete failure: z = 2.5 sits below the jump point, so the true prox
# is {0}; started at x0 = 2 the iteration converges to r2(2.5) = 1 instead.
############################################################################

trace = irl1_simulate(p, 2.5, 2.0)
print("iteration trace at z = 2.5, x0 = 2:")
for k, x in list(enumerate(trace.iterates))[:8]:
    print(f"  x[{k}] = {x:.12f}")
print(f"  ... -> limit {trace.limit_estimate:.12f} ({trace.stop_reason.value}, "
      f"{len(trace.iterates) - 1} steps)")
print(f"true prox at 2.5: {prox_scalar(p, 2.5).values}")

############################################################################
# Start below r1(2.5) = 0.5 and the same input collapses to the right
# answer; exactly on it, the iteration freezes at the unstable fixed point.
############################################################################

for x0 in (0.3, 0.5, 0.7):
    pred = irl1_predict_limit(p, 2.5, x0)
    print(f"x0 = {x0}: predicted limit {pred.limit} "
          f"[{pred.classification.value}, case {pred.justification}]")

############################################################################
# The full failure map.  For each start x0, the iteration is wrong exactly
# on a symmetric interval pair around +/- z_star.
############################################################################

print(f"\nfailure intervals for (lam, eps) = (3, 1), z_star = {zs:.6f}:")
for x0 in (0.0, 0.1, r1(p, zs), 0.5, np.sqrt(3.0) - 1.0, 2.0, 10.0):
    report = failure_intervals(p, x0)
    ivs = "  ".join(str(iv) for iv in report.intervals) or "(none)"
    print(f"  x0 = {x0:<20.12g} [{report.case.value:>13}]  {ivs}")

############################################################################
# Sample a band of inputs and compare limit vs prox, the data behind the
# failure map (columns: z, predicted limit, true prox, agree).
############################################################################

print("\nz sweep at x0 = 2:")
for z in np.linspace(2.40, 2.70, 13):
    z = float(z)
    lim = irl1_predict_limit(p, z, 2.0).limit
    true = prox_scalar(p, z).canonical
    ok = limit_matches_prox(p, z, lim)
    print(f"  z = {z:.4f}   irl1 -> {lim:8.5f}   prox = {true:8.5f}   "
          f"{'ok' if ok else 'WRONG'}")

############################################################################
# In the convex regime there is nothing to map: the iteration is exact for
# every start and every input.
############################################################################

q = ProxParams(2.0, 3.0)
report = failure_intervals(q, 9.0)
print(f"\n(lam, eps) = (2, 3): case = {report.case.value}, "
      f"intervals = {list(report.intervals)}")
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(200):
    z = float(rng.uniform(-4, 4))
    x0 = float(rng.uniform(0, 6))
    sim = irl1_simulate(q, z, x0)
    true = prox_scalar(q, z).canonical
    worst = max(worst, abs(sim.limit_estimate - true))
print(f"200 random convex-regime runs: max |limit - prox| = {worst:.2e}")

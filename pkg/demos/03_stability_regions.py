# %% [markdown]
# # Where is each system stable?
#
# Pointwise: the quartic lambda^4 + (1 - a/2) lambda^2 + a/2 has all roots
# inside the unit circle exactly for 0 < a < 2.
# Boundary: |lambda_2| < 1 is the same as 1 < mu2 < mu1 or mu1 < mu2 < 1.

# %%
import numpy as np

from switchwave import spectral as sp

a = np.round(np.arange(-0.5, 2.51, 0.25), 12)
for ai in a:
    print(f"a = {ai:5.2f}  rho = {sp.pointwise_spectral_radius(ai):.4f}  stable = {sp.pointwise_stable(ai)}")

# %%
# Above the double root at a = 6 - 4 sqrt(2) the roots are complex and the
# radius has the closed form (a/2)^(1/4).
for ai in (0.4, 1.0, 1.6):
    print(ai, sp.pointwise_spectral_radius(ai), (ai / 2) ** 0.25)
print("double root at", sp.A_DOUBLE, "radius", sp.pointwise_spectral_radius(sp.A_DOUBLE))

# %%
# A coarse text map of the boundary region, mu1 across, mu2 down.
ticks = np.round(np.arange(-3, 3.01, 0.5), 12)
print("      " + "".join(f"{m:5.1f}" for m in ticks))
for mu2 in ticks[::-1]:
    row = ""
    for mu1 in ticks:
        row += "    ." if mu1 == 1 else ("    #" if sp.boundary_stable(mu1, mu2) else "     ")
    print(f"{mu2:5.1f} {row}")

# %%
grid = np.round(np.arange(-4, 4.01, 0.1), 12)
check = sp.region_equivalence_check("boundary", [(x, y) for x in grid for y in grid])
print(check.checked, "points checked,", check.skipped, "on a region edge,", len(check.disagreements), "disagreements")

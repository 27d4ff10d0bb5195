# %% [markdown]
# # Checking the exact solver against plain finite differences
#
# The trace marching has no discretization error beyond quadrature, so a
# leapfrog scheme with a 1/h point load (or a ghost-node boundary flux)
# should approach it as the mesh is refined.

# %%
from switchwave.fd import fd_cross_validate

for system, params in [("pointwise", {"a": 1.0}), ("boundary", {"mu1": 5.0, "mu2": 2.0}),
                       ("boundary", {"mu1": 0.5, "mu2": 0.8})]:
    cv = fd_cross_validate(system, params, resolutions=(64, 128, 256))
    gaps = "  ".join(f"nx={n}: {d:.2e}" for n, d in zip(cv.resolutions, cv.rel_diffs))
    print(f"{system:9s} {params}  {gaps}  monotone={cv.monotone}")

# %% [markdown]
# Halving h halves the gap: first order, as expected from the lumped delta
# and the one-sided end condition.

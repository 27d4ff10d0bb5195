# %% [markdown]
# # Switching the feedback at the free end
#
# The right end is free for 0 < t < 2l, then alternates between
# u_x = mu1 u_t and the delayed law u_x = mu2 u_t(t - 2l), each for 2l.
# The 2x2 matrix M has eigenvalues 0 and lambda_2, and lambda_2 alone
# decides whether the energy decays.

# %%
import numpy as np

from switchwave import make_grid, preset_initial, boundary_state, energy_series_boundary
from switchwave.analysis import EnergySeries, fit_decay_rate
from switchwave.spectral import boundary_matrix, boundary_rate

g = make_grid(1.0, 64)


def energy(mu1, mu2, t_end=60.0):
    st = boundary_state(preset_initial("sine", g), g, mu1, mu2)
    return energy_series_boundary(st, t_end)


# %%
for mu1, mu2 in [(5, 2), (0.5, 0.8), (2, 3)]:
    m, lam2 = boundary_matrix(mu1, mu2)
    t, e = energy(mu1, mu2)
    fit = fit_decay_rate(EnergySeries(t, e), 4.0)
    print(f"mu = ({mu1}, {mu2})  lambda_2 = {lam2:+.3f}  predicted {boundary_rate(mu1, mu2, 1.0):+.4f}"
          f"  fitted {fit.slope:+.4f}")

# %% [markdown]
# With (3, 2) the matrix is nilpotent: two periods later the trace is
# exactly zero and so is the energy.

# %%
t, e = energy(3, 2, 30.0)
print("first t with E == 0:", t[np.argmax(e == 0)])
print("largest E on t >= 20:", e[t >= 20].max())

# %% [markdown]
# mu1 = -1 makes kappa zero, so the instantaneous windows wipe the trace.
# The delayed windows still carry -mu2 times the previous ones, which means
# the energy pulses and decays at |mu2|^2 per 4l unless mu2 is zero too.

# %%
t, e = energy(-1, 0.5, 30.0)
for ti in (4, 6, 8, 10, 14):
    print(f"t = {ti:2d}  E = {e[int(ti / g.h)]:.3e}")

# %% [markdown]
# # A string damped at its midpoint with a lag
#
# The load at x = l/2 reacts to the velocity there 2l time units ago.
# We march the characteristic traces, watch the energy fall, and compare
# the measured slope of log E with the one read off the 4x4 transfer matrix.

# %%
import numpy as np

from switchwave import make_grid, preset_initial, pointwise_state, energy_series_pointwise
from switchwave.analysis import EnergySeries, fit_decay_rate
from switchwave.spectral import pointwise_report

g = make_grid(1.0, 64)
state = pointwise_state(preset_initial("sine", g), g, a=1.0)
t, e = energy_series_pointwise(state, 100.0)
print(f"E(0) = {e[0]:.6f}   (pi^2/16 = {np.pi**2 / 16:.6f})")

# %%
# Nothing happens before t = 2l: the feedback is still reading zero history.
for ti in (0.0, 1.0, 2.0, 3.0, 5.0, 10.0, 50.0):
    print(f"t = {ti:5.1f}   E = {e[int(round(ti / g.h))]:.3e}")

# %%
rep = pointwise_report(1.0)
fit = fit_decay_rate(EnergySeries(t, e), period=1.0)
print("eigenvalues:", np.round(rep.eigenvalues, 5))
print(f"spectral radius {rep.spectral_radius:.5f}")
print(f"predicted slope {rep.predicted_energy_slope:.4f}, fitted {fit.slope:.4f}, r^2 {fit.r_squared:.4f}")

# %%
# Sweep the gain: the decay is fastest around a ~ 0.34 where two eigenvalue
# pairs merge, and vanishes at both ends of (0, 2).
for a in (0.1, 0.34, 0.5, 1.0, 1.5, 1.9):
    st = pointwise_state(preset_initial("sine", g), g, a)
    tt, ee = energy_series_pointwise(st, 100.0)
    f = fit_decay_rate(EnergySeries(tt, ee), 1.0)
    print(f"a = {a:4.2f}  predicted {pointwise_report(a).predicted_energy_slope:+.4f}  fitted {f.slope:+.4f}")

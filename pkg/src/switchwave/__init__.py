"""Exact characteristic solvers, stability spectra and a finite-difference
cross-check for 1-D strings under switched and delayed damping."""

from .analysis import (DegenerateSeries, EnergySeries, RateFit, fit_decay_rate,
                       read_series_csv, simulate_boundary, simulate_pointwise, sweep,
                       write_series_csv)
from .boundary import (BoundaryState, boundary_residuals, boundary_state, energy_boundary,
                       energy_series_boundary, extend_boundary, reconstruct_boundary)
from .fd import (FdConfig, fd_cross_validate, fd_energy, fd_step, make_fd_config,
                 measure_contraction, run_fd)
from .grid import (Grid, InitialData, Trace, init_trace_boundary, init_traces_pointwise,
                   make_grid, preset_initial)
from .pointwise import (PointwiseState, energy_pointwise, energy_series_pointwise,
                        extend_pointwise, pointwise_state, reconstruct_pointwise,
                        transmission_residuals)
from .spectral import (SpectralReport, boundary_matrix, boundary_report, boundary_stable,
                       pointwise_eigs, pointwise_matrix, pointwise_report, pointwise_spectral_radius,
                       pointwise_stable)

__version__ = "0.1.0"

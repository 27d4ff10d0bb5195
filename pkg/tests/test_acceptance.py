"""Acceptance gate: ten criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (the lines are printed in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

import math
import time

import numpy as np
import pytest

from switchwave import spectral as sp
from switchwave.analysis import fit_decay_rate, simulate_boundary, simulate_pointwise
from switchwave.boundary import (boundary_residuals, boundary_state, energy_series_boundary,
                                 extend_boundary)
from switchwave.cli import run_command
from switchwave.fd import (b2_threshold, delayed_window_bound_check, fd_cross_validate,
                           make_fd_config, measure_contraction, run_fd)
from switchwave.grid import make_grid, preset_initial
from switchwave.pointwise import (energy_series_pointwise, extend_pointwise, pointwise_state,
                                  transmission_residuals)

RESULTS: dict[int, str] = {}


def report(n, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def test_c01_pointwise_region():
    t0 = time.perf_counter()
    inside = [round(0.05 * k, 12) for k in range(1, 40)]
    outside = [-0.5, 0.0, 2.0, 2.5]
    bad, worst_res = [], 0.0
    for a in inside + outside:
        eigs = sp.pointwise_eigs(a)
        worst_res = max(worst_res, float(np.max(np.abs(sp.char_poly_pointwise(a, eigs)))))
        want = a in inside
        if sp.pointwise_stable(a) != want:
            bad.append(a)
        if want and not sp.pointwise_spectral_radius(a) < 1 - 1e-6:
            bad.append(a)
    dt = time.perf_counter() - t0
    report(1, not bad and worst_res <= 1e-10 and dt < 1,
           f"stable on 0.05..1.95, unstable on {outside}; max |p_a| {worst_res:.1e}; {dt:.2f}s")


def test_c02_spectral_identities():
    a_lo = sp.A_DOUBLE
    pts = np.linspace(a_lo, 2, 22)[1:-1]
    err = max(abs(sp.pointwise_spectral_radius(a) - (a / 2) ** 0.25) for a in pts)
    oracle = max(abs(sp.pointwise_spectral_radius(a) - np.max(np.abs(np.roots([1, 0, 1 - a / 2, 0, a / 2]))))
                 for a in pts)
    rho_d = sp.pointwise_spectral_radius(a_lo)
    err_d = abs(rho_d - math.sqrt(math.sqrt(2) - 1))
    report(2, err <= 1e-10 and err_d <= 1e-8 and oracle <= 1e-9,
           f"|rho - (a/2)^(1/4)| max {err:.1e} (20 pts); double root err {err_d:.1e}; root finder gap {oracle:.1e}")


@pytest.mark.parametrize("a", [0.5, 1.0, 1.5])
def test_c03_pointwise_rate(a):
    t0 = time.perf_counter()
    fit = fit_decay_rate(simulate_pointwise(a, 1.0, 64, 100.0, "sine"), 1.0)
    dt = time.perf_counter() - t0
    pred = sp.pointwise_rate(a, 1.0)
    rel = abs(fit.slope - pred) / abs(pred)
    ok = rel <= 0.10 and dt < 5
    line = f"a={a}: fitted {fit.slope:.4f} vs predicted {pred:.4f} (rel {rel:.3f}); {dt:.2f}s"
    prev = RESULTS.get(3, "")
    if prev and "FAIL" in prev:
        ok = False
    RESULTS[3] = f"[{'PASS' if ok else 'FAIL'}] criterion  3: " + "; ".join(
        filter(None, [prev.split(": ", 1)[1] if prev else "", line]))
    print(RESULTS[3])
    assert ok, line


def test_c04_boundary_region():
    grid = [round(-4 + 0.1 * k, 12) for k in range(81)]
    rep = sp.region_equivalence_check("boundary", [(x, y) for x in grid for y in grid], eps=1e-6)
    report(4, rep.agree and rep.checked > 0,
           f"{rep.checked} points agree, {len(rep.disagreements)} disagree, {rep.skipped} excluded")


def test_c05_nilpotent_extinction():
    s = simulate_boundary(3.0, 2.0, 1.0, 64, 40.0, "sine")
    tail = s.energies[s.times >= 20]
    worst = float(tail.max() / s.energies[0])
    report(5, worst <= 1e-20, f"(mu1, mu2) = (3, 2): max E(t)/E(0) for t >= 20 is {worst:.1e}")


def test_c06_conservation():
    g = make_grid(1.0, 64)
    st = pointwise_state(preset_initial("sine", g), g, 0.0)
    _, e = energy_series_pointwise(st, 100.0)
    drift_p = float(np.max(np.abs(e - e[0])) / e[0])
    sb = boundary_state(preset_initial("sine", g), g, 5.0, 2.0)
    _, eb = energy_series_boundary(sb, 2.0)
    drift_b = float(np.max(np.abs(eb - eb[0])) / eb[0])
    report(6, drift_p <= 1e-6 and drift_b <= 1e-6,
           f"a=0 drift over [0, 100] {drift_p:.1e}; boundary free phase drift {drift_b:.1e}")


def test_c07_residuals():
    g = make_grid(1.0, 64)
    st = pointwise_state(preset_initial("sine", g), g, 1.0)
    extend_pointwise(st, 12.0)
    ks = range(g.offset(2) + 1, g.snap(12.0) + 1)
    jump = max(transmission_residuals(st, k * g.h)[1] for k in ks)
    sb = boundary_state(preset_initial("sine", g), g, 5.0, 2.0)
    extend_boundary(sb, 20.0)
    bres = max(boundary_residuals(sb, k * g.h) for k in range(g.snap(20.0) + 1))
    report(7, jump <= 1e-10 and bres <= 1e-10,
           f"max jump residual {jump:.1e} ({len(ks)} nodes); max boundary residual {bres:.1e}")


def test_c08_oracle_equivalence():
    t0 = time.perf_counter()
    cvs = [fd_cross_validate("pointwise", {"a": 1.0}),
           fd_cross_validate("boundary", {"mu1": 5.0, "mu2": 2.0})]
    dt = time.perf_counter() - t0
    ok = all(cv.monotone and cv.rel_diffs[-1] <= 0.05 for cv in cvs) and dt < 30
    detail = "; ".join(f"{cv.system} " + "/".join(f"{d:.1e}" for d in cv.rel_diffs) for cv in cvs)
    report(8, ok, f"rel diff at nx 64/128/256: {detail}; {dt:.1f}s")


def test_c09_internal_chain():
    t0 = time.perf_counter()
    base = {"b1": 1.0, "b2": 0.0, "tau": 1.0, "tstar": 4.0}
    alpha = measure_contraction(make_fd_config("internal", base, 1.0, 256, 5.0), "sine")
    b2 = 0.5 * b2_threshold(alpha, 1.0)
    cfg = make_fd_config("internal", {**base, "b2": b2}, 1.0, 256, 60.0)
    run = run_fd(cfg, "sine")
    chk = delayed_window_bound_check(run.times, run.energies, alpha, b2, 1.0, 4.0, delta=0.05)
    from switchwave.analysis import EnergySeries
    slope = fit_decay_rate(EnergySeries(run.times, run.energies), 5.0).slope
    pred = math.log(chk.alpha_tilde) / 5.0
    dt = time.perf_counter() - t0
    ok = alpha < 1 and chk.alpha_tilde < 1 and chk.passed and slope <= pred + 0.1 * abs(pred) and dt < 30
    report(9, ok, f"alpha {alpha:.4f}, |b2| {b2:.3f}, bound ratio {chk.max_ratio:.3f}, "
                  f"slope {slope:.3f} vs log(alpha~)/5 {pred:.3f}; {dt:.1f}s")


COMMANDS = [
    ["simulate-pointwise", "--ell", "1", "--a", "1", "--ic", "sine", "--grid", "64", "--tmax", "100"],
    ["simulate-boundary", "--mu1", "5", "--mu2", "2", "--grid", "64", "--tmax", "100"],
    ["simulate-boundary", "--mu1", "3", "--mu2", "2", "--grid", "64", "--tmax", "40"],
    ["stability-region", "--system", "boundary", "--mu1-range", "-4:4:0.1", "--mu2-range", "-4:4:0.1"],
    ["stability-region", "--system", "pointwise", "--a-range", "-0.5:2.5:0.05"],
    ["simulate-internal", "--b1", "1", "--b2", "3.289", "--tau", "1", "--tstar", "4", "--grid", "128"],
    ["cross-validate", "--system", "boundary", "--mu1", "5", "--mu2", "2"],
]


def test_c10_determinism(tmp_path, capsys):
    same = 0
    for i, cmd in enumerate(COMMANDS):
        outs = []
        for rep in range(2):
            path = tmp_path / f"c{i}_{rep}.csv"
            js = tmp_path / f"c{i}_{rep}.json"
            assert run_command(cmd + ["--out", str(path), "--json", str(js)]) == 0
            outs.append((path.read_bytes(), js.read_bytes()))
        same += outs[0] == outs[1]
    capsys.readouterr()
    report(10, same == len(COMMANDS), f"{same}/{len(COMMANDS)} commands byte-identical across reruns")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))

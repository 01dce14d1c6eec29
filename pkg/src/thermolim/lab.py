# lab.py
#
# Experiment runner: maps each verified claim to a reproducible named
# experiment with explicit validity gates and machine-readable reports.
#
# Config format is flat `key = value` text (lists comma-separated); every
# report echoes the fully resolved config so a run is reproducible from its
# own output.  CSV columns are fixed per experiment; a JSON summary mirrors
# the verdicts for CI consumption.  Exit codes: 0 all verdicts pass,
# 1 verdict failure, 2 gate/config error.

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import condensates as cond
from . import fock
from . import quasifree as qf
from .grids import RadialGrid, WaveFunction, bump, bump_profile, inner, make_grid
from .hamiltonians import assemble, diagonalize, soft_wall_trap, trap_decomposition
from .propagators import (
    ValidityGateError,
    duhamel_bound,
    evolve_free,
    evolve_spectral,
    gap_decay_scan,
)


class ConfigError(ValueError):
    pass


def parse_config(text: str) -> dict:
    """Parse flat `key = value` lines; lists are comma-separated."""
    out: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if "," in val:
            out[key] = [_parse_scalar(v.strip()) for v in val.split(",") if v.strip()]
        else:
            out[key] = _parse_scalar(val)
    return out


def _parse_scalar(s: str):
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        pass
    return s


def _as_list(v):
    return list(v) if isinstance(v, (list, tuple)) else [v]


@dataclass
class Report:
    """Rows, per-check verdicts and gate diagnostics of one experiment."""

    experiment: str
    config: dict
    columns: list[str]
    rows: list[tuple] = dc_field(default_factory=list)
    verdicts: dict = dc_field(default_factory=dict)
    gates: dict = dc_field(default_factory=dict)
    notes: list[str] = dc_field(default_factory=list)

    @property
    def gate_failed(self) -> bool:
        return any(not ok for ok in self.gates.values())

    @property
    def passed(self) -> bool:
        return not self.gate_failed and all(
            v in (True, "pass", "trivial") for v in self.verdicts.values()
        )

    @property
    def exit_code(self) -> int:
        if self.gate_failed:
            return 2
        return 0 if self.passed else 1

    def write(self, out_dir: str) -> None:
        os.makedirs(out_dir, exist_ok=True)
        base = os.path.join(out_dir, self.experiment)
        with open(base + ".csv", "w") as fh:
            for k in sorted(self.config):
                fh.write(f"# {k} = {self.config[k]}\n")
            fh.write(",".join(self.columns) + "\n")
            for row in self.rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
        summary = {
            "experiment": self.experiment,
            "config": {k: _plain(self.config[k]) for k in sorted(self.config)},
            "verdicts": {k: _plain(self.verdicts[k]) for k in sorted(self.verdicts)},
            "gates": {k: _plain(self.gates[k]) for k in sorted(self.gates)},
            "notes": self.notes,
            "passed": self.passed,
            "exit_code": self.exit_code,
        }
        with open(base + ".json", "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _plain(v):
    # strip numpy scalar types so json/csv output stays portable
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def _fmt(v) -> str:
    v = _plain(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _coupling_rule(rule) -> "callable":
    if rule in (1, 1.0, "1", "constant"):
        return lambda R: 1.0
    if rule == "R":
        return lambda R: float(R)
    if isinstance(rule, (int, float)):
        return lambda R: float(rule)
    raise ConfigError(f"unknown coupling rule {rule!r}")


# ---------------------------------------------------------------------------
# Experiments
# ---------------------------------------------------------------------------


def run_propagator_scan(config: dict) -> Report:
    """
    Trapped-vs-free propagator gaps over a radius scan, with the integral
    bound checked on every point.  One scan per (coupling rule, time).
    """
    cfg = {
        "radius_list": [6.0, 8.0, 10.0, 12.0, 14.0],
        "t_list": [0.25, 0.5, 1.0],
        "c_rules": ["1", "R"],
        "bump_center": 0.0,
        "bump_radius": 2.0,
        "n_points": 4096,
        "box_rule": "2R+16",
        "margin": 16.0,
        "bound_slack": 1e-8,
        "threads": 1,
    }
    cfg.update(config)
    radii = [float(R) for R in _as_list(cfg["radius_list"])]
    if not radii:
        raise ConfigError("radius_list must not be empty")
    ts = [float(t) for t in _as_list(cfg["t_list"])]
    rules = [str(r) for r in _as_list(cfg["c_rules"])]
    n = int(cfg["n_points"])

    rep = Report(
        "propagator_scan",
        cfg,
        columns=["c_rule", "t", "R", "gap", "duhamel_bound", "slope", "verdict"],
    )

    def box_L(R: float) -> float:
        if cfg["box_rule"] == "2R+16":
            return 2.0 * R + 16.0
        return float(cfg["box_rule"])

    def build(args):
        rule_name, R = args
        c = _coupling_rule(rule_name)(R)
        grid = make_grid(box_L(R), n)
        decomp = diagonalize(assemble(grid, soft_wall_trap(R, c)))
        f = bump(float(cfg["bump_center"]), float(cfg["bump_radius"]), grid)
        return (rule_name, R), (decomp, f)

    jobs = [(rule, R) for rule in rules for R in radii]
    with ThreadPoolExecutor(max_workers=max(1, int(cfg["threads"]))) as pool:
        built = dict(pool.map(build, jobs))

    for rule_name in rules:
        c_of_R = _coupling_rule(rule_name)
        for t in ts:
            try:
                scan = gap_decay_scan(
                    None,
                    t,
                    radii,
                    c_of_R,
                    f_factory=lambda R: built[(rule_name, R)],
                    margin=float(cfg["margin"]),
                )
            except ValidityGateError as exc:
                rep.gates[f"box[{rule_name},t={t}]"] = False
                rep.notes.append(f"gate failure ({rule_name}, t={t}): {exc}")
                for R in radii:
                    rep.rows.append((rule_name, t, R, float("nan"), float("nan"), float("nan"), "invalid-gate"))
                rep.verdicts[f"scan[{rule_name},t={t}]"] = "invalid-gate"
                continue
            rep.gates[f"box[{rule_name},t={t}]"] = True
            bounds = [
                duhamel_bound(built[(rule_name, R)][1], t, R, coupling=c_of_R(R))
                for R in radii
            ]
            decreasing = bool(np.all(np.diff(scan.gaps) < 0))
            bound_ok = all(
                g <= b + float(cfg["bound_slack"]) for g, b in zip(scan.gaps, bounds)
            )
            rep.verdicts[f"scan[{rule_name},t={t}]"] = scan.verdict
            rep.verdicts[f"decrease[{rule_name},t={t}]"] = decreasing
            rep.verdicts[f"bound[{rule_name},t={t}]"] = bound_ok
            for i, R in enumerate(radii):
                s = scan.slopes[i - 1] if 0 < i <= len(scan.slopes) else float("nan")
                rep.rows.append((rule_name, t, R, scan.gaps[i], bounds[i], s, scan.verdict))
    return rep


def run_sector_norms(config: dict) -> Report:
    """
    Exact sector norms of evolved-resolvent differences against the
    2 n ||f|| gap bound, plus seeded monotonicity trials for random
    two-term products of number resolvents.
    """
    cfg = {
        "n_list": [1, 2, 3],
        "lam": 1.0,
        "t": 0.25,
        "radius_offset": 5.0,
        "n_points": 4096,
        "bump_radius": 2.0,
        "trials": 20,
        "seed": 20240817,
        "bound_slack": 1e-10,
    }
    cfg.update(config)
    rep = Report(
        "sector_norms",
        cfg,
        columns=["n", "R", "gap", "exact_norm", "bound", "bound_ok"],
    )
    lam = float(cfg["lam"])
    t = float(cfg["t"])
    norms = []
    for n_sec in [int(n) for n in _as_list(cfg["n_list"])]:
        R = n_sec + float(cfg["radius_offset"])
        grid = make_grid(2.0 * R + 16.0, int(cfg["n_points"]))
        decomp = diagonalize(assemble(grid, soft_wall_trap(R, 1.0)))
        f = bump(0.0, float(cfg["bump_radius"]), grid)
        g1 = evolve_spectral(decomp, f, t)
        g2 = evolve_free(f, t)
        exact = fock.evolved_resolvent_sector_norm(lam, g1, g2, n_sec, inner)
        gap = np.sqrt(inner(
            g1.with_values(g1.values - g2.values), g1.with_values(g1.values - g2.values)
        ).real)
        bnd = 2.0 * n_sec * lam**-2 * f.norm() * gap
        ok = exact <= bnd + float(cfg["bound_slack"])
        rep.rows.append((n_sec, R, float(gap), exact, bnd, ok))
        norms.append(exact)
    rep.verdicts["bound"] = all(r[5] for r in rep.rows)
    rep.verdicts["decreasing"] = bool(np.all(np.diff(norms) < 0))

    # monotonicity trials live on a 3-mode space with the resolvent functions
    # in modes 1-2: the untouched spectator mode plays the role of the rest
    # of the infinite-dimensional one-particle space, without which an added
    # particle could not avoid the observed modes and monotonicity fails
    rng = np.random.default_rng(int(cfg["seed"]))
    space = fock.build_fock(3, 6, 6)
    mono_ok = True
    for _ in range(int(cfg["trials"])):
        coeffs1 = np.append(rng.normal(size=2) + 1j * rng.normal(size=2), 0.0)
        coeffs2 = np.append(rng.normal(size=2) + 1j * rng.normal(size=2), 0.0)
        lam1, lam2 = rng.uniform(0.5, 2.0, size=2)
        a1 = space.annihilator_of(coeffs1)
        a2 = space.annihilator_of(coeffs2)
        A1 = np.linalg.inv(lam1 * np.eye(space.dimension) + a1.conj().T @ a1)
        A2 = np.linalg.inv(lam2 * np.eye(space.dimension) + a2.conj().T @ a2)
        blocks = fock.sector_blocks(space, A1 @ A2)
        ok, _, _ = fock.sector_norm_monotonicity(blocks[:4])
        mono_ok = mono_ok and ok
    rep.verdicts["sector_monotonicity"] = mono_ok
    return rep


def run_thermal_convergence(config: dict) -> Report:
    """Interior density of the trapped thermal state against the homogeneous value."""
    cfg = {
        "radius_list": [20.0, 40.0, 80.0],
        "beta": 1.0,
        "mu": -1.0,
        "x_probe": 0.0,
        "rel_tol": 0.01,
        "dx_start": 0.125,
        "edge_gate": 1e-10,
    }
    cfg.update(config)
    rep = Report(
        "thermal_convergence",
        cfg,
        columns=["R", "n_points", "density", "homogeneous", "rel_deviation"],
    )
    beta, mu = float(cfg["beta"]), float(cfg["mu"])
    hom = qf.homogeneous_density(beta, mu, 1)
    devs = []
    # grids refine with R: at these parameters the finite-trap correction is
    # exponentially below the dx floor, so the deviation tracks refinement
    for i, R in enumerate([float(r) for r in _as_list(cfg["radius_list"])]):
        dx_target = float(cfg["dx_start"]) / 2**i
        decomp = trap_decomposition(R, dx_target=dx_target, n_cap=2**14)
        state = qf.QuasifreeState(beta=beta, mu=mu, decomposition=decomp)
        edge = qf.thermal_edge_weight(state)
        rep.gates[f"edge[R={R}]"] = edge <= float(cfg["edge_gate"])
        dens = qf.position_density(state, float(cfg["x_probe"]))
        dev = abs(dens - hom) / hom
        devs.append(dev)
        rep.rows.append((R, decomp.grid.n_points, dens, hom, dev))
    rep.verdicts["final_within_tol"] = devs[-1] <= float(cfg["rel_tol"])
    rep.verdicts["deviation_monotone"] = bool(np.all(np.diff(devs) < 0))
    return rep


def run_resolvent_oracle(config: dict) -> Report:
    """
    Number-resolvent series against the exact truncated Gibbs trace, and the
    field-resolvent quadrature against its closed Gaussian form, with the
    truncated-trace delta of the field resolvent reported (not asserted).
    """
    from scipy.special import erfcx

    cfg = {
        "energies": [0.5, 1.5],
        "beta": 1.0,
        "mu": -0.2,
        "lam_list": [0.5, 1.0, 2.0],
        "coeffs": [0.8, 0.6],
        "n_total": 44,
        "match_tol": 1e-8,
        "field_n_total": 60,
    }
    cfg.update(config)
    rep = Report(
        "resolvent_oracle",
        cfg,
        columns=["lam", "series_value", "gibbs_value", "oracle_delta",
                 "field_quad", "field_closed", "field_oracle_delta", "field_gibbs_delta"],
    )
    energies = [float(e) for e in _as_list(cfg["energies"])]
    beta, mu = float(cfg["beta"]), float(cfg["mu"])
    coeffs = np.array([float(c) for c in _as_list(cfg["coeffs"])])
    space = fock.build_fock(len(energies), int(cfg["n_total"]), int(cfg["n_total"]))
    rep.gates["truncation"] = fock.truncation_weight(space, energies, beta, mu) <= 1e-10

    occ = qf.bose_occupation(np.array(energies), beta, mu)
    norm_sq = float((np.abs(coeffs) ** 2).sum())
    nbar = float((np.abs(coeffs) ** 2 * occ).sum()) / norm_sq
    sigma_sq = float((np.abs(coeffs) ** 2 * occ).sum())

    # field resolvent on a single effective mode with the same weight
    space_f = fock.build_fock(1, int(cfg["field_n_total"]), int(cfg["field_n_total"]))
    eps_eff = float(np.log1p(1.0 / (sigma_sq / norm_sq)) / beta) + mu

    ok = True
    for lam in [float(x) for x in _as_list(cfg["lam_list"])]:
        series = qf.geometric_resolvent_series(nbar, norm_sq, lam)
        gibbs = fock.gibbs_number_resolvent(space, lam, coeffs, energies, beta, mu)
        delta = abs(series - gibbs)
        field_quad = qf.field_resolvent_value(lam, sigma_sq)
        sig = np.sqrt(sigma_sq)
        field_closed = float(np.sqrt(np.pi / 2.0) / sig * erfcx(lam / (sig * np.sqrt(2.0))))
        fg = fock.gibbs_field_resolvent(
            space_f, lam, np.array([np.sqrt(norm_sq)]), [eps_eff], beta, mu
        )
        rep.rows.append(
            (lam, series, gibbs, delta, field_quad, field_closed,
             abs(field_quad - field_closed), abs(field_quad - fg))
        )
        ok = ok and delta <= float(cfg["match_tol"]) and abs(field_quad - field_closed) <= float(cfg["match_tol"])
    rep.verdicts["oracle_match"] = ok
    rep.notes.append(
        "field_gibbs_delta is reported only: the quadrature formula omits the "
        "vacuum fluctuation of the mode, so a finite offset from the exact "
        "trace is expected"
    )
    return rep


def run_condensate_1d(config: dict) -> Report:
    """
    1D condensate structure: smeared-mode limits, density offsets against
    the flat/linear limit profiles, and particle-count growth exponents.
    """
    cfg = {
        "radius_list_profiles": [20.0, 40.0, 80.0],
        "radius_list_counts": [20.0, 40.0, 80.0, 160.0],
        "kappa": 0.5,
        "x_probes": [1.0, 2.0, 4.0],
        "profile_tol": 0.02,
        "profile_min_R": 40.0,
        "slope_tol": 0.3,
        "count_tol": 0.1,
        "dx_target": 0.03125,
    }
    cfg.update(config)
    rep = Report(
        "condensate_1d",
        cfg,
        columns=["parity", "R", "x", "offset", "limit", "rel_deviation", "within_tol"],
    )
    kappa = float(cfg["kappa"])
    radii = [float(r) for r in _as_list(cfg["radius_list_profiles"])]
    probes = [float(x) for x in _as_list(cfg["x_probes"])]
    tol = float(cfg["profile_tol"])
    min_R = float(cfg["profile_min_R"])

    profiles_ok = True
    for parity in ("even", "odd"):
        for R in radii:
            eps, h = cond.trap_mode(R, parity, dx_target=float(cfg["dx_target"]))
            for xv in probes:
                j = h.grid.index_of(xv)
                offset = kappa**2 * float(h.values[j].real ** 2)
                limit = kappa**2 * (1.0 if parity == "even" else xv**2)
                dev = abs(offset - limit) / limit
                checked = R >= min_R
                ok = dev <= tol
                rep.rows.append((parity, R, xv, offset, limit, dev, ok if checked else "n/a"))
                if checked:
                    profiles_ok = profiles_ok and ok
    rep.verdicts["profiles"] = profiles_ok

    # smeared pairings
    def f_factory(grid):
        return bump(3.0, 1.0, grid)

    for parity, limit_name in (("even", "integral"), ("odd", "first_moment")):
        asym = cond.smeared_mode_limit(parity, f_factory, radii, dx_target=float(cfg["dx_target"]))
        rep.verdicts[f"pairing_slope[{parity}]"] = (
            np.isfinite(asym.slope) and asym.slope <= -2.0 + float(cfg["slope_tol"])
        )
        rep.notes.append(
            f"{parity} pairings -> {asym.limit:.6f} ({limit_name}), slope {asym.slope:.3f}"
        )

    count_radii = [float(r) for r in _as_list(cfg["radius_list_counts"])]
    for parity, target in (("even", 1.0), ("odd", 3.0)):
        expo, counts = cond.condensate_count_scaling(
            parity, kappa, count_radii, dx_target=float(cfg["dx_target"])
        )
        rep.verdicts[f"count_exponent[{parity}]"] = abs(expo - target) <= float(cfg["count_tol"])
        rep.notes.append(f"{parity} count exponent {expo:.4f} (target {target})")
    return rep


def run_mu_limit(config: dict) -> Report:
    """Saturation scan of number resolvents as the chemical potential rises to 0."""
    cfg = {
        "lam": 1.0,
        "beta": 0.05,
        "mu_list": [-0.1, -0.03, -0.01, -3e-3, -1e-3, -6e-4, -4e-4, -2.5e-4, -1.6e-4, -1e-4],
        "drop_ratio": 0.05,
        "cauchy_tol": 1e-4,
        "mean_one_radius": 8.0,
        "box": 20.0,
        "n_points": 4096,
    }
    cfg.update(config)
    rep = Report(
        "mu_limit",
        cfg,
        columns=["function", "mu", "value", "verdict"],
    )
    grid = make_grid(float(cfg["box"]), int(cfg["n_points"]))
    lam, beta = float(cfg["lam"]), float(cfg["beta"])
    mus = [float(m) for m in _as_list(cfg["mu_list"])]

    # unit-mean bump: sensitive to saturation
    f1 = bump(0.0, float(cfg["mean_one_radius"]), grid)
    f1 = f1.with_values(f1.values / f1.integral().real)
    v1, vals1 = qf.mu_limit_scan(lam, f1, beta, mus,
                                 cauchy_tol=float(cfg["cauchy_tol"]),
                                 vanish_ratio=float(cfg["drop_ratio"]))
    for mu, val in zip(mus, vals1):
        rep.rows.append(("mean_one", mu, float(val), v1))
    rep.verdicts["mean_one"] = v1 == "vanishes"

    # zero-mean, zero-dipole second difference: blind to the condensate
    b0 = bump(0.0, 1.0, grid).values
    bp = bump(2.0, 1.0, grid).values
    bm = bump(-2.0, 1.0, grid).values
    f0 = WaveFunction(grid, bp + bm - 2.0 * b0)
    f0 = f0.with_values(f0.values / f0.norm())
    v0, vals0 = qf.mu_limit_scan(lam, f0, beta, mus,
                                 cauchy_tol=float(cfg["cauchy_tol"]),
                                 vanish_ratio=float(cfg["drop_ratio"]))
    for mu, val in zip(mus, vals0):
        rep.rows.append(("zero_mean", mu, float(val), v0))
    rep.verdicts["zero_mean"] = v0 == "converges-positive"
    rep.verdicts["drop"] = bool(vals1[-1] <= float(cfg["drop_ratio"]) * vals1[0])
    return rep


def run_condensate_3d(config: dict) -> Report:
    """Axial (l = 1) condensate profile: deviation bound, pairings, mode energy."""
    cfg = {
        "radius_list": [20.0, 40.0, 80.0],
        "constant_factor": 2.0,
        "slope_max": -1.7,
        "k_factor": 1.1,
        "f_center": 3.0,
        "f_radius": 2.0,
    }
    cfg.update(config)
    rep = Report(
        "condensate_3d",
        cfg,
        columns=["R", "k", "k_bound", "bound_constant", "pairing", "limit"],
    )
    radii = [float(r) for r in _as_list(cfg["radius_list"])]
    rg = RadialGrid(10.0, 2048)
    phi1 = bump_profile((rg.r - float(cfg["f_center"])) / float(cfg["f_radius"]))
    f = qf.RadialFunction3D(rg, np.zeros_like(rg.r), phi1)
    res = cond.l1_profile_check(radii, f)
    k_ok, c_list = True, res["bound_constants"]
    for R, k, c, pair in zip(res["radii"], res["k"], c_list, res["pairings"]):
        kb = 3.0 * np.pi / (2.0 * R) * float(cfg["k_factor"])
        k_ok = k_ok and k <= kb
        rep.rows.append((R, k, kb, c, pair, res["limit"]))
    rep.verdicts["k_bound"] = k_ok
    rep.verdicts["constant_stable"] = max(c_list) <= float(cfg["constant_factor"]) * min(c_list)
    rep.verdicts["pairing_slope"] = res["deviation_slope"] <= float(cfg["slope_max"])
    rep.notes.append(f"pairing limit {res['limit']:.6f}, slope {res['deviation_slope']:.3f}")
    return rep


def run_memory(config: dict) -> Report:
    """
    Temporal correlations of the 3D limit state at zero chemical potential:
    the thermal part decays while the condensate plateau persists exactly.
    """
    cfg = {
        "beta": 1.0,
        "kappa": 0.5,
        "t_list": [5.0, 20.0, 80.0, 320.0, 1280.0, 2600.0],
        "decay_threshold": 1e-3,
        "plateau_tol": 1e-10,
        "f_radius": 4.0,
    }
    cfg.update(config)
    rep = Report(
        "memory",
        cfg,
        columns=["t", "thermal_abs", "total_minus_thermal", "plateau_error"],
    )
    beta, kappa = float(cfg["beta"]), float(cfg["kappa"])
    ts = [float(t) for t in _as_list(cfg["t_list"])]

    rg = RadialGrid(float(cfg["f_radius"]), 2048)
    phi0 = bump_profile(rg.r / float(cfg["f_radius"]))
    f = qf.RadialFunction3D(rg, phi0)
    f = qf.RadialFunction3D(rg, phi0 / f.integral_3d())  # unit 3D integral

    thermal_state = qf.HomogeneousState(beta=beta, mu=0.0, dimension=3)
    state = qf.HomogeneousState(
        beta=beta, mu=0.0, dimension=3, kappa=kappa, mode=qf.ConstantMode()
    )
    plateau = kappa**2 * f.integral_3d() ** 2
    mags, plateau_ok = [], True
    for t in ts:
        thermal = qf.temporal_correlation(thermal_state, f, f, t)
        total = qf.temporal_correlation(state, f, f, t)
        err = abs((total - thermal) - plateau)
        plateau_ok = plateau_ok and err <= float(cfg["plateau_tol"])
        mags.append(abs(thermal))
        rep.rows.append((t, abs(thermal), abs(total - thermal), err))
    rep.verdicts["thermal_decay"] = bool(np.all(np.diff(mags) < 0))
    rep.verdicts["thermal_below_threshold"] = mags[-1] <= float(cfg["decay_threshold"])
    if kappa > 0:
        rep.verdicts["plateau"] = plateau_ok
    else:
        rep.notes.append("kappa = 0: decay-only run")
    return rep


def run_oracle_selftest(config: dict) -> Report:
    """Fock-space self-tests: commutators, resolvent spectra, monotone norms."""
    cfg = {"seed": 20240817, "trials": 20}
    cfg.update(config)
    rep = Report("oracle_selftest", cfg, columns=["check", "value", "ok"])
    sp = fock.build_fock(2, 5, 5)
    ccr = fock.ccr_defect(sp)
    rep.rows.append(("ccr_defect", ccr, ccr < 1e-12))

    blocks = fock.number_resolvent_matrix(sp, 1.0, np.array([0.6, 0.8]))
    norm_ok = all(abs(b.norm() - 1.0) < 1e-12 for b in blocks)
    rep.rows.append(("resolvent_sector_norm_1_over_lam", 1.0, norm_ok))

    # spectator mode (see run_sector_norms) so monotonicity can hold
    rng = np.random.default_rng(int(cfg["seed"]))
    sp3 = fock.build_fock(3, 5, 5)
    mono_all = True
    for _ in range(int(cfg["trials"])):
        c1 = np.append(rng.normal(size=2) + 1j * rng.normal(size=2), 0.0)
        c2 = np.append(rng.normal(size=2) + 1j * rng.normal(size=2), 0.0)
        a1, a2 = sp3.annihilator_of(c1), sp3.annihilator_of(c2)
        A = np.linalg.inv(np.eye(sp3.dimension) + a1.conj().T @ a1)
        B = np.linalg.inv(np.eye(sp3.dimension) + a2.conj().T @ a2)
        ok, _, _ = fock.sector_norm_monotonicity(fock.sector_blocks(sp3, A - B)[:4])
        mono_all = mono_all and ok
    rep.rows.append(("difference_monotonicity_trials", int(cfg["trials"]), mono_all))
    rep.verdicts["all"] = all(bool(r[2]) for r in rep.rows)
    return rep


EXPERIMENTS = {
    "lemma31": run_propagator_scan,
    "lemma33": run_sector_norms,
    "thermal": run_thermal_convergence,
    "resolvent": run_resolvent_oracle,
    "condensate1d": run_condensate_1d,
    "mulimit": run_mu_limit,
    "condensate3d": run_condensate_3d,
    "memory": run_memory,
    "oracle": run_oracle_selftest,
}


def run(subcommand: str, config: dict) -> Report:
    """Dispatch one experiment by name; see EXPERIMENTS for the table."""
    if subcommand not in EXPERIMENTS:
        raise ConfigError(
            f"unknown experiment {subcommand!r}; choose from {sorted(EXPERIMENTS)}"
        )
    return EXPERIMENTS[subcommand](dict(config))


def spectrum_rows(decomp) -> list[tuple]:
    """(index, eigenvalue, parity) rows for CSV export of a decomposition."""
    from .hamiltonians import parity_of

    rows = []
    for k in range(decomp.n_modes):
        rows.append((k, float(decomp.eigenvalues[k]), parity_of(decomp.mode(k))))
    return rows


def write_spectrum_csv(decomp, path: str) -> None:
    """Export a decomposition as CSV with columns index, eigenvalue, parity."""
    with open(path, "w") as fh:
        fh.write("index,eigenvalue,parity\n")
        for row in spectrum_rows(decomp):
            fh.write(",".join(_fmt(v) for v in row) + "\n")

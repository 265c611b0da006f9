"""Command-line entry point: ``phrod {simulate,eigen,chain,validate}``."""
from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from .chain import build_chain
from .config import BENCHMARK, COMMANDS, FORMATS, ConfigError, RunConfig, dump_config, parse_config
from .export import write_summary, write_table
from .integrator import Trajectory, simulate
from .numerics import NotPositiveDefiniteError, cholesky
from .ph_core import validate
from .rod import AssembledRod, assemble_rod
from .spectral import rod_spectrum

log = logging.getLogger("phrod")

RESIDUAL_RTOL = 1e-9

TRAJECTORY_COLUMNS = (
    "t", "H", "dH_residual", "v_at_0", "v_at_L", "sigma_at_0", "sigma_at_L",
    "y1", "y2", "u_tau", "u_nu",
)


def _run_dirs(cfg: RunConfig) -> list[tuple[int, Path]]:
    base = Path(cfg.out_dir)
    if len(cfg.n_elements) == 1:
        return [(cfg.n_elements[0], base)]
    return [(n, base / f"n{n}") for n in cfg.n_elements]


def _port_columns(traj: Trajectory, u0, y0):
    """Interval quantities aligned with time rows: row k holds the
    midpoint values of the step ending at ``t_k``; row 0 holds the values
    at ``t = 0``."""
    u = np.vstack([u0, traj.inputs])
    y = np.vstack([y0, traj.outputs])
    return y, u


def _energy_summary(traj: Trajectory) -> dict:
    H = traj.hamiltonians
    res = traj.residuals
    h_max = float(H.max())
    max_res = float(np.abs(res).max())
    rel = max_res / h_max if h_max > 0 else (0.0 if max_res == 0 else float("inf"))
    return {
        "n_steps": traj.n_steps,
        "H_final_J": float(H[-1]),
        "H_max_J": h_max,
        "max_abs_dH_J": max_res,
        "max_abs_dH_rel": rel,
    }


def cmd_simulate(cfg: RunConfig) -> bool:
    ok = True
    for n, out in _run_dirs(cfg):
        rod = assemble_rod(replace(cfg.rod, n_elements=n))
        model = rod.model
        t0 = time.perf_counter()
        traj = simulate(model, rod.config.inputs, np.zeros(model.n_state), cfg.dt, cfg.t_final)
        wall = time.perf_counter() - t0
        X = traj.states
        y, u = _port_columns(traj, rod.config.inputs(0.0), X[0] @ model.G)
        sig = X[:, rod.n_v:]
        write_table(out / "trajectory", TRAJECTORY_COLUMNS, [
            traj.times, traj.hamiltonians, traj.residuals,
            X[:, rod.v_left], X[:, rod.v_right], sig[:, rod.s_left], sig[:, rod.s_right],
            y[:, 0], y[:, 1], u[:, 0], u[:, 1],
        ], cfg.fmt)
        report = validate(model)
        summary = _energy_summary(traj) | {
            "n_elements": n,
            "dt_s": cfg.dt,
            "T_s": cfg.t_final,
            "wall_time_s": wall,
            "skew_defect": report.skew_defect,
        }
        checks = {
            "structure": report.ok,
            "energy_residual": summary["max_abs_dH_rel"] < RESIDUAL_RTOL,
        }
        summary["checks"] = checks
        write_summary(out / "summary.json", summary)
        log.info("n=%d: H_final=%.6e J, max|dH|/maxH=%.3e, %.2f s",
                 n, summary["H_final_J"], summary["max_abs_dH_rel"], wall)
        ok &= _report_checks(checks, f"simulate n={n}")
    return ok


def cmd_eigen(cfg: RunConfig) -> bool:
    ok = True
    for n, out in _run_dirs(cfg):
        rod = assemble_rod(replace(cfg.rod, n_elements=n))
        t0 = time.perf_counter()
        spec = rod_spectrum(rod, min(cfg.k_max, rod.n_s + 1))
        wall = time.perf_counter() - t0
        rows = list(spec.rows())
        write_table(out / "spectrum", ("k", "lambda_computed", "lambda_exact", "abs_err"),
                    [np.array([r[i] for r in rows]) for i in range(4)], cfg.fmt)
        checks = {"structure": validate(rod.model).ok, "single_zero_mode": spec.zero_modes == 1}
        write_summary(out / "summary.json", {
            "n_elements": n,
            "zero_modes": spec.zero_modes,
            "eigenvalues": [float(x) for x in spec.eigenvalues],
            "wall_time_s": wall,
            "checks": checks,
        })
        for k, lam, ex, err in rows:
            exact = "-" if np.isnan(ex) else f"{ex:.4f}"
            print(f"n={n:4d}  k={k:3d}  computed={lam:12.4f}  exact={exact:>12}")
        ok &= _report_checks(checks, f"eigen n={n}")
    return ok


def cmd_chain(cfg: RunConfig) -> bool:
    chain = cfg.chain
    model = build_chain(chain)
    t0 = time.perf_counter()
    traj = simulate(model, chain.inputs, np.zeros(model.n_state), cfg.dt, cfg.t_final)
    wall = time.perf_counter() - t0
    X = traj.states
    y, u = _port_columns(traj, chain.inputs(0.0), X[0] @ model.G)
    N = chain.N
    header = ("t", "H", "dH_residual",
              *[f"v_{i}" for i in range(1, N + 1)], *[f"F_{i}" for i in range(1, N + 1)],
              "y1", "y2", "u_tau", "u_nu")
    out = Path(cfg.out_dir)
    write_table(out / "trajectory", header,
                [traj.times, traj.hamiltonians, traj.residuals, *X.T, y[:, 0], y[:, 1], u[:, 0], u[:, 1]],
                cfg.fmt)
    report = validate(model)
    summary = _energy_summary(traj) | {"N": N, "dt_s": cfg.dt, "T_s": cfg.t_final, "wall_time_s": wall}
    checks = {"structure": report.ok, "energy_residual": summary["max_abs_dH_rel"] < RESIDUAL_RTOL}
    summary["checks"] = checks
    write_summary(out / "summary.json", summary)
    return _report_checks(checks, "chain")


def _rod_checks(rod: AssembledRod) -> dict:
    c = rod.config
    total = rod.M_v.sum()
    try:
        A = rod.K.T @ np.linalg.solve(rod.M_v, rod.K)
        cholesky(0.5 * (A + A.T))
        full_rank = True
    except NotPositiveDefiniteError:
        full_rank = False
    return {
        "velocity_mass_total": abs(total - c.rho * c.length) <= 1e-12 * c.rho * c.length,
        "coupling_full_rank": full_rank,
    }


def cmd_validate(cfg: RunConfig) -> bool:
    ok = True
    for n in cfg.n_elements:
        rod = assemble_rod(replace(cfg.rod, n_elements=n))
        report = validate(rod.model)
        print(f"rod, {n} elements (n_v={rod.n_v}, n_sigma={rod.n_s})")
        for line in report.lines():
            print("  " + line)
        ok &= _report_checks({"structure": report.ok, **_rod_checks(rod)}, f"rod n={n}")
    report = validate(build_chain(cfg.chain))
    print(f"chain, N={cfg.chain.N}")
    for line in report.lines():
        print("  " + line)
    ok &= _report_checks({"structure": report.ok}, "chain")
    return ok


def _report_checks(checks: dict, label: str) -> bool:
    failed = [name for name, passed in checks.items() if not passed]
    for name in failed:
        log.error("%s: check failed: %s", label, name)
    return not failed


HANDLERS = {
    "simulate": cmd_simulate,
    "eigen": cmd_eigen,
    "chain": cmd_chain,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="phrod", description=__doc__)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", type=Path, help="key=value config file (default: rod benchmark)")
    p.add_argument("--out", help="output directory (overrides output.dir)")
    p.add_argument("--format", choices=FORMATS, help="data file format (overrides output.format)")
    p.add_argument("--dump-config", action="store_true",
                   help="print the resolved configuration in canonical form and exit")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        text = args.config.read_text() if args.config else BENCHMARK
        cfg = parse_config(text, command=args.command, **{"output.dir": args.out,
                                                          "output.format": args.format})
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        where = args.config or "<benchmark>"
        print(f"error: {where}: {exc}", file=sys.stderr)
        return 2
    if args.dump_config:
        sys.stdout.write(dump_config(cfg))
        return 0
    ok = HANDLERS[cfg.command](cfg)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

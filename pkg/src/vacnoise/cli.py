"""Command-line front end.

Four subcommands drive the pipelines with file-based, reproducible
outputs: tension (distance-matching fit), vacuum-energy (renormalized
energy table along a history), correlate (correlation-function grids)
and noise (mode-sum synthesis exports). Every run writes a manifest
JSON next to its output recording the resolved parameters, so
deterministic commands can be reproduced bit-exactly by re-running with
the same flags.

Exit codes: 0 success, 1 usage, 2 numeric or fit failure, 3 I/O.
"""

from __future__ import annotations

import argparse
import json
import math
import subprocess
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .errors import SingularityError, VacnoiseError
from .models import CosmologyParams, load_params, make_de_sitter, make_lcdm_history, make_power_law
from .numerics import brent_root, fd_derivative
from .tension import (
    fit_kappa,
    kappa_from_cutoff,
    tension_fit,
    tension_fit_json,
)
from . import correlation as corr
from . import noise as noisemod

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


@dataclass
class RunManifest:
    command: str
    params: dict
    outputs: list
    tool_version: str
    seed: int | None = None

    def write(self, path: str) -> str:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(asdict(self), fh, indent=2, sort_keys=True)
            fh.write("\n")
        return path


def _git_describe() -> str:
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            capture_output=True,
            text=True,
            timeout=5,
        )
        if out.returncode == 0:
            return out.stdout.strip()
    except Exception:
        pass
    return f"v{__version__}"


def _params_from_args(args) -> CosmologyParams:
    return load_params(
        path=getattr(args, "config", None),
        h0_km_s_mpc=getattr(args, "h0", None),
        omega_m=getattr(args, "omega_m", None),
        omega_l=getattr(args, "omega_l", None),
        omega_r=getattr(args, "omega_r", None),
    )


def _parse_grid(spec: str, name: str) -> np.ndarray:
    try:
        lo, hi, n = spec.split(":")
        return np.linspace(float(lo), float(hi), int(n))
    except ValueError as exc:
        raise VacnoiseError(f"bad {name} grid spec {spec!r}, expected start:stop:count") from exc


def _history_from_spec(spec: str, params: CosmologyParams, kappa: float):
    if spec == "de-sitter":
        return make_de_sitter(1.0)
    if spec.startswith("power-law:"):
        return make_power_law(float(spec.split(":", 1)[1]))
    if spec == "lcdm":
        return make_lcdm_history(params)
    if spec == "lcdm-modified":
        from .tension import solve_omega_infinity

        p = params if params.omega_inf is not None else params.with_omega_inf(
            solve_omega_infinity(params, kappa)
        )
        p = CosmologyParams(**{**p.__dict__, "kappa": kappa})
        return make_lcdm_history(p, modified=True)
    raise VacnoiseError(f"unknown history {spec!r}")


def _write_csv(path: str, header: list[str], rows: list[list]) -> str:
    fmt = lambda v: format(float(v), ".17g") if not isinstance(v, str) else v
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


# ---------------------------------------------------------------------------
# subcommands

def cmd_tension(args) -> int:
    params = _params_from_args(args)
    if args.target_ratio is not None:
        fit = fit_kappa(params, args.target_ratio)
    else:
        kappa = args.kappa if args.kappa is not None else kappa_from_cutoff(args.ell)
        fit = tension_fit(params, kappa)
    payload = tension_fit_json(
        fit, params, provenance={"tool_version": __version__, "build": _git_describe()}
    )
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(payload + "\n")
    print(f"{'kappa':>14} {'ell/lP':>10} {'omega_inf':>11} {'H/H0':>8} {'d [Gly]':>10}")
    ell_str = "inf" if math.isinf(fit.ell_over_lP) else f"{fit.ell_over_lP:10.4f}"
    print(
        f"{fit.kappa:14.6e} {ell_str:>10} {fit.omega_inf:11.6f} "
        f"{fit.hubble_ratio:8.5f} {fit.d_match_gly:10.4f}"
    )
    RunManifest(
        command="tension",
        params={
            "kappa": args.kappa,
            "ell": args.ell,
            "target_ratio": args.target_ratio,
            "h0": params.h0_km_s_mpc,
            "omega_m": params.omega_m,
            "omega_l": params.omega_l,
        },
        outputs=[args.out],
        tool_version=__version__,
    ).write(args.out + ".manifest.json")
    return EXIT_OK


def cmd_vacuum_energy(args) -> int:
    params = _params_from_args(args)
    kappa = args.kappa if args.kappa is not None else kappa_from_cutoff(args.ell)
    history = _history_from_spec(args.history, params, kappa)
    ts = _parse_grid(args.t_grid, "t")
    eps_inf = args.eps_inf
    rows = []
    for t in ts:
        H = history.H(t)
        if H == 0.0:
            raise SingularityError(f"H = 0 at t = {t}; vacuum energy undefined there")
        # critical-density units: eps_vac = -(kappa/2) Hddot/H, pair = eps_inf + 2 kappa Hdot
        eps_vac = -(kappa / 2.0) * history.Hddot(t) / H
        pair = lambda tt: eps_inf + 2.0 * kappa * history.Hdot(tt)
        eps_lambda = pair(t) - eps_vac
        dpair = fd_derivative(pair, t, order=1, h=1e-3 * (1.0 + abs(t)))
        residual = dpair + 4.0 * eps_vac * H
        rows.append(
            [t, eps_vac, eps_lambda, eps_vac / 3.0, -eps_lambda, residual]
        )
    _write_csv(
        args.out,
        ["t", "eps_vac", "eps_lambda", "p_vac", "p_lambda", "conservation_residual"],
        rows,
    )
    print(f"wrote {len(rows)} rows to {args.out} (critical-density units, kappa={kappa:.6g})")
    RunManifest(
        command="vacuum-energy",
        params={
            "history": args.history,
            "kappa": kappa,
            "eps_inf": eps_inf,
            "t_grid": args.t_grid,
        },
        outputs=[args.out],
        tool_version=__version__,
    ).write(args.out + ".manifest.json")
    return EXIT_OK


def cmd_correlate(args) -> int:
    H = args.hubble
    rows: list[list] = []
    if args.mode == "vacuum":
        taus = _parse_grid(args.tau_grid, "tau")
        rs = _parse_grid(args.r_grid, "r")
        header = ["tau", "r", "K"]
        for tau in taus:
            for r in rs:
                try:
                    k = corr.vacuum_correlation(corr.SpacetimeInterval(tau, r))
                    rows.append([tau, r, k])
                except SingularityError:
                    rows.append([tau, r, "nan"])
    elif args.mode == "desitter-thermal":
        thetas = _parse_grid(args.tau_grid, "theta")
        rhos = _parse_grid(args.r_grid, "rho")
        header = ["theta", "rho", "K_thermal", "K_expansion", "rel_diff"]
        for th in thetas:
            for rho in rhos:
                try:
                    kth = corr.thermal_correlation(H, th, rho)
                    kds = corr.vacuum_correlation(
                        corr.SpacetimeInterval(corr.desitter_conformal_tau(H, 1.0, th), rho)
                    )
                    rows.append([th, rho, kth, kds, abs(kth - kds) / abs(kds)])
                except SingularityError:
                    rows.append([th, rho, "nan", "nan", "nan"])
    elif args.mode == "kms-check":
        thetas = _parse_grid(args.tau_grid, "theta")
        rs = _parse_grid(args.r_grid, "r")
        header = ["theta", "r", "residual"]
        for th in thetas:
            for r in rs:
                try:
                    rows.append([th, r, corr.kms_check(H, th, r)])
                except SingularityError:
                    rows.append([th, r, "nan"])
    elif args.mode == "fdt-check":
        widths = [float(w) for w in args.widths.split(",")]
        interval = corr.SpacetimeInterval(args.tau, args.r)
        header = ["width", "abs_error"]
        for w in widths:
            rows.append([w, corr.hilbert_fdt_check(w, interval)])
    else:
        raise VacnoiseError(f"unknown correlate mode {args.mode!r}")
    _write_csv(args.out, header, rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    RunManifest(
        command="correlate",
        params={
            "mode": args.mode,
            "hubble": H,
            "tau_grid": getattr(args, "tau_grid", None),
            "r_grid": getattr(args, "r_grid", None),
            "tau": getattr(args, "tau", None),
            "r": getattr(args, "r", None),
            "widths": getattr(args, "widths", None),
        },
        outputs=[args.out],
        tool_version=__version__,
    ).write(args.out + ".manifest.json")
    return EXIT_OK


def _default_noise_tgrid(history, n: int) -> np.ndarray:
    # from the epoch when the universe was ten times smaller up to today
    lo, hi = history.domain
    res = brent_root(lambda t: history.a(t) - 0.1, lo, 0.0, tol=1e-10)
    return np.linspace(res.root, 0.0, n)


def cmd_noise(args) -> int:
    params = _params_from_args(args)
    history = _history_from_spec(args.history, params, 0.0)
    if args.t_grid is not None:
        ts = _parse_grid(args.t_grid, "t")
    else:
        ts = _default_noise_tgrid(history, args.t_samples)
    xs = _parse_grid(args.x_grid, "x") if args.x_grid else np.linspace(0.0, 2.0 * math.pi, 160)
    grid = noisemod.synthesize(
        history, ts, xs, n_modes=args.modes, seed=args.seed, box_length=args.box
    )
    noisemod.export_grid(grid, args.out, format=args.format)
    print(
        f"wrote {grid.values.shape[0]}x{grid.values.shape[1]} noise grid "
        f"({args.modes} modes, seed {args.seed}) to {args.out}"
    )
    RunManifest(
        command="noise",
        params={
            "history": args.history,
            "modes": args.modes,
            "box": args.box,
            "format": args.format,
            "t_grid": args.t_grid,
            "t_samples": args.t_samples,
            "x_grid": args.x_grid,
        },
        outputs=[args.out],
        tool_version=__version__,
        seed=args.seed,
    ).write(args.out + ".manifest.json")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(
        prog="vacnoise",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="Config file keys (key = value): h0_km_s_mpc, omega_r, omega_m, "
        "omega_l, omega_inf, kappa, a_star; environment overrides use the "
        "VACNOISE_ prefix (e.g. VACNOISE_OMEGA_M).",
    )
    parser.add_argument("--version", action="version", version=f"vacnoise {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="flat key = value parameter file")
        p.add_argument("--threads", type=int, default=0,
                       help="worker cap hint; results are identical for any value")
        p.add_argument("--h0", type=float, help="Hubble constant in km/s/Mpc")
        p.add_argument("--omega-m", type=float, dest="omega_m")
        p.add_argument("--omega-l", type=float, dest="omega_l")
        p.add_argument("--omega-r", type=float, dest="omega_r")

    p = sub.add_parser("tension", help="distance-matching fit of the vacuum coupling")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--kappa", type=float, help="vacuum coupling")
    group.add_argument("--ell", type=float, help="cutoff length in Planck lengths")
    group.add_argument("--target-ratio", type=float, dest="target_ratio",
                       help="measured H/H0 to invert for kappa")
    p.add_argument("--out", default="tension.json")
    common(p)
    p.set_defaults(func=cmd_tension)

    p = sub.add_parser("vacuum-energy", help="renormalized vacuum energy along a history")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--kappa", type=float)
    group.add_argument("--ell", type=float, help="cutoff length in Planck lengths")
    p.add_argument("--history", default="power-law:0.6666666666666666",
                   help="de-sitter | power-law:p | lcdm | lcdm-modified")
    p.add_argument("--t-grid", dest="t_grid", default="0.5:3.0:26", help="start:stop:count")
    p.add_argument("--eps-inf", dest="eps_inf", type=float, default=0.0,
                   help="late-time constant in critical-density units")
    p.add_argument("--out", default="vacuum_energy.csv")
    common(p)
    p.set_defaults(func=cmd_vacuum_energy)

    p = sub.add_parser("correlate", help="correlation-function grids")
    p.add_argument("--mode", required=True,
                   choices=["vacuum", "desitter-thermal", "kms-check", "fdt-check"])
    p.add_argument("--hubble", type=float, default=1.0, help="expansion rate (natural units)")
    p.add_argument("--tau-grid", dest="tau_grid", default="-2.0:2.0:41")
    p.add_argument("--r-grid", dest="r_grid", default="0.05:2.0:40")
    p.add_argument("--tau", type=float, default=0.2, help="fdt-check interval tau")
    p.add_argument("--r", type=float, default=1.0, help="fdt-check interval r")
    p.add_argument("--widths", default="0.04,0.02,0.01,0.005", help="fdt-check widths")
    p.add_argument("--out", default="correlation.csv")
    common(p)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("noise", help="synthesize and export a noise grid")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--modes", type=int, default=noisemod.DEFAULT_N_MODES)
    p.add_argument("--history", default="lcdm")
    p.add_argument("--t-grid", dest="t_grid", help="start:stop:count (1/H0 units)")
    p.add_argument("--t-samples", dest="t_samples", type=int, default=120)
    p.add_argument("--x-grid", dest="x_grid", help="start:stop:count (c/H0 units)")
    p.add_argument("--box", type=float, default=noisemod.DEFAULT_BOX,
                   help="comoving box length setting the mode spacing")
    p.add_argument("--format", default="csv", choices=["csv", "pgm", "svg-heatmap"])
    p.add_argument("--out", default="noise.csv")
    common(p)
    p.set_defaults(func=cmd_noise)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 0:
        parser.error("--threads must be non-negative")
    try:
        return args.func(args)
    except VacnoiseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        diag = getattr(exc, "diagnostics", None)
        if diag:
            print(f"diagnostics: {diag}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: ``gibbs`` (thermal state at a target inverse temperature),
``stationary`` (ground and excited states), ``thermal`` (Fermi/Bose
ensembles), ``verify`` (real-time stationarity check of a saved state), and
``oracle`` (dense-diagonalization cross-check).  Every run writes a
manifest.json echoing the fully resolved configuration; re-running from the
manifest reproduces the state files byte for byte.

Exit codes: 0 success, 1 usage/configuration error, 2 numerical failure.
A JSON config file may replace flags (``--config``); explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .errors import ConfigError, NumericalError
from .expressions import HamiltonianSpec
from .grid import PhaseGrid, WignerState, make_grid, trace_integral
from .bloch import SPLITTINGS, gibbs
from .moyal import MOYAL_SPLITTINGS, moyal_propagate
from .stationary import SolverConfig, excited_state, ground_state
from .ensembles import ThermalSpec, thermal_state
from .observables import report
from .oracle import diagonalize, wigner_of_mixture
from .stateio import load_state, save_state

__all__ = ["main"]

GRID_DEFAULTS = {
    "nx": 512,
    "np": 512,
    "x_min": -10.0,
    "x_max": 10.0,
    "p_min": -10.0,
    "p_max": 10.0,
    "hbar": 1.0,
}


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error[config]: {message}\n")
        sys.exit(1)


def _add_common(parser: _Parser, need_ham: bool):
    parser.add_argument("--config", help="JSON file of parameters; flags win on conflict")
    parser.add_argument("--out-dir", help="output directory (default: out)")
    parser.add_argument("--no-heatmap", action="store_true", default=None,
                        help="skip the heatmap CSV export")
    if need_ham:
        parser.add_argument("--V", dest="V", help="potential V(x) expression")
        parser.add_argument("--K", dest="K", help="kinetic K(p) expression")
    parser.add_argument("--nx", type=int, help="coordinate grid size")
    parser.add_argument("--np", dest="np", type=int, help="momentum grid size")
    parser.add_argument("--x-min", type=float)
    parser.add_argument("--x-max", type=float)
    parser.add_argument("--p-min", type=float)
    parser.add_argument("--p-max", type=float)
    parser.add_argument("--hbar", type=float)


def build_parser() -> _Parser:
    parser = _Parser(prog="wigner-forge",
                     description="Quantum thermal and stationary states in Wigner phase space")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gibbs", parents=[], help="thermal state at inverse temperature beta")
    _add_common(p, need_ham=True)
    p.add_argument("--beta", type=float, help="target inverse temperature")
    p.add_argument("--dbeta", type=float, help="inverse-temperature step")
    p.add_argument("--snapshots", help="comma-separated beta values to save along the way")
    p.add_argument("--splitting", choices=SPLITTINGS)

    p = sub.add_parser("stationary", help="ground and excited stationary states")
    _add_common(p, need_ham=True)
    p.add_argument("--states", type=int, help="number of states (1 = ground only)")
    p.add_argument("--dbeta-init", type=float)
    p.add_argument("--dbeta-min", type=float)
    p.add_argument("--energy-tol", type=float)
    p.add_argument("--max-iters", type=int)
    p.add_argument("--purity-slack", type=float)
    p.add_argument("--excited-dbeta-init", type=float,
                   help="initial step for excited levels (default: --dbeta-init)")
    p.add_argument("--excited-purity-slack", type=float,
                   help="purity slack for excited levels (default: --purity-slack)")
    p.add_argument("--splitting", choices=SPLITTINGS,
                   help="splitting used by the cooling loop")
    p.add_argument("--polish-steps", type=int,
                   help="fixed-step fourth-order refinement steps after convergence")
    p.add_argument("--polish-dbeta", type=float)

    p = sub.add_parser("thermal", help="Fermi or Bose occupation-weighted state")
    _add_common(p, need_ham=True)
    p.add_argument("--beta", type=float)
    p.add_argument("--mu", type=float)
    p.add_argument("--statistics", choices=["fermi", "bose"])
    p.add_argument("--dbeta", type=float)
    p.add_argument("--term-tol", type=float)
    p.add_argument("--max-terms", type=int)
    p.add_argument("--splitting", choices=SPLITTINGS)

    p = sub.add_parser("verify", help="propagate a saved state in real time, print residual")
    _add_common(p, need_ham=True)
    p.add_argument("--state", help="path to a .wst state file")
    p.add_argument("--t", dest="t", type=float, help="total propagation time")
    p.add_argument("--dt", type=float, help="time step")
    p.add_argument("--splitting", choices=MOYAL_SPLITTINGS)

    p = sub.add_parser("oracle", help="dense-diagonalization cross-check")
    _add_common(p, need_ham=True)
    p.add_argument("--n-states", type=int, help="number of eigenstates")
    p.add_argument("--beta", type=float, help="build the thermal-weight mixture at this beta")
    p.add_argument("--weights", help="comma-separated mixture weights")
    p.add_argument("--compare", help="state file to compare the mixture against")
    return parser


# -- parameter resolution ----------------------------------------------------

_DEFAULTS = {
    "gibbs": {**GRID_DEFAULTS, "V": None, "K": None, "beta": None, "dbeta": None,
              "snapshots": None, "splitting": "lie", "out_dir": "out", "no_heatmap": False},
    "stationary": {**GRID_DEFAULTS, "V": None, "K": None, "states": 1,
                   "dbeta_init": 1.0, "dbeta_min": 1e-8, "energy_tol": 1e-12,
                   "max_iters": 100_000, "purity_slack": 1e-6, "splitting": "lie",
                   "polish_steps": 0, "polish_dbeta": 0.05,
                   "excited_dbeta_init": None, "excited_purity_slack": None,
                   "out_dir": "out", "no_heatmap": False},
    "thermal": {**GRID_DEFAULTS, "V": None, "K": None, "beta": None, "mu": 0.0,
                "statistics": None, "dbeta": None, "term_tol": 1e-12, "max_terms": 200,
                "splitting": "lie", "out_dir": "out", "no_heatmap": False},
    "verify": {**GRID_DEFAULTS, "V": None, "K": None, "state": None, "t": 1.0, "dt": 0.01,
               "splitting": "lie", "out_dir": "out", "no_heatmap": False},
    "oracle": {**GRID_DEFAULTS, "V": None, "K": None, "n_states": 8, "beta": None,
               "weights": None, "compare": None, "out_dir": "out", "no_heatmap": False},
}


def _resolve(command: str, args: argparse.Namespace) -> dict:
    params = dict(_DEFAULTS[command])
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            loaded = json.loads(Path(config_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {config_path}: {exc}") from exc
        if "params" in loaded and isinstance(loaded["params"], dict):
            if loaded.get("command") not in (None, command):
                raise ConfigError(
                    f"config is a manifest for {loaded.get('command')!r}, not {command!r}"
                )
            loaded = loaded["params"]
        unknown = set(loaded) - set(params)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        params.update(loaded)
    for key in params:
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    return params


def _require(params: dict, *names: str):
    for name in names:
        if params[name] is None:
            raise ConfigError(f"missing required parameter: {name.replace('_', '-')}")


def _grid_from(params: dict) -> PhaseGrid:
    return make_grid(
        params["nx"], params["np"],
        (params["x_min"], params["x_max"]),
        (params["p_min"], params["p_max"]),
        params["hbar"],
    )


def _ham_from(params: dict) -> HamiltonianSpec:
    _require(params, "V", "K")
    return HamiltonianSpec.from_strings(params["V"], params["K"])


# -- output writers ----------------------------------------------------------

def _write_manifest(outdir: Path, command: str, params: dict):
    manifest = {"command": command, "params": params}
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _write_observables(outdir: Path, name: str, state: WignerState,
                       ham: HamiltonianSpec | None, extra: dict | None = None):
    payload = {
        "beta": state.beta,
        "log_norm": state.log_norm,
        "trace": trace_integral(state),
        "w_min": float(state.w.min()),
        "w_max": float(state.w.max()),
    }
    if ham is not None:
        obs = report(state, ham)
        payload.update(
            energy=obs.energy, purity=obs.purity, z_estimate=obs.z_estimate,
            sigma_x=obs.sigma_x, sigma_p=obs.sigma_p,
        )
    if extra:
        payload.update(extra)
    (outdir / f"{name}_observables.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n"
    )


def _write_marginals(outdir: Path, name: str, state: WignerState):
    g = state.grid
    marginal_x = state.w.sum(axis=1) * g.dp
    marginal_p = state.w.sum(axis=0) * g.dx
    for label, axis, values in (("x", g.x, marginal_x), ("p", g.p, marginal_p)):
        lines = [f"{label},density"]
        lines += [f"{a:.17g},{v:.17g}" for a, v in zip(axis, values)]
        (outdir / f"{name}_marginal_{label}.csv").write_text("\n".join(lines) + "\n")


def _write_heatmap(outdir: Path, name: str, state: WignerState):
    g = state.grid
    header = (f"# x_min={g.x_min:.17g} dx={g.dx:.17g} n_x={g.n_x} "
              f"p_min={g.p_min:.17g} dp={g.dp:.17g} n_p={g.n_p}")
    rows = [",".join(f"{v:.17g}" for v in row) for row in state.w]
    (outdir / f"{name}_heatmap.csv").write_text(header + "\n" + "\n".join(rows) + "\n")


def _emit_state(outdir: Path, name: str, state: WignerState,
                ham: HamiltonianSpec | None, params: dict, extra: dict | None = None):
    save_state(state, outdir / f"{name}.wst")
    _write_observables(outdir, name, state, ham, extra)
    _write_marginals(outdir, name, state)
    if not params["no_heatmap"]:
        _write_heatmap(outdir, name, state)


# -- subcommand drivers ------------------------------------------------------

def _run_gibbs(params: dict) -> int:
    _require(params, "beta", "dbeta")
    ham, grid = _ham_from(params), _grid_from(params)
    outdir = Path(params["out_dir"])
    outdir.mkdir(parents=True, exist_ok=True)
    _write_manifest(outdir, "gibbs", params)
    snapshots = None
    if params["snapshots"]:
        snapshots = [float(tok) for tok in str(params["snapshots"]).split(",") if tok.strip()]
    if params["beta"] > 0 and params["dbeta"] is None:
        raise ConfigError("missing required parameter: dbeta")
    result = gibbs(ham, grid, params["beta"], params["dbeta"],
                   snapshots=snapshots, splitting=params["splitting"])
    if snapshots is None:
        state, snaps = result, []
    else:
        state, snaps = result
    _emit_state(outdir, "gibbs", state, ham, params)
    for b, snap in zip(snapshots or [], snaps):
        save_state(snap, outdir / f"gibbs_beta_{b:g}.wst")
    obs = report(state, ham)
    print(f"gibbs: beta={state.beta:g} trace={obs.trace:.12g} energy={obs.energy:.12g} "
          f"purity={obs.purity:.12g} z_estimate={obs.z_estimate:.12g}")
    return 0


def _solver_config(params: dict, excited: bool) -> SolverConfig:
    dbeta_init = params["dbeta_init"]
    slack = params["purity_slack"]
    if excited:
        dbeta_init = params["excited_dbeta_init"] or dbeta_init
        slack = params["excited_purity_slack"] or slack
    return SolverConfig(
        dbeta_init=dbeta_init,
        dbeta_min=params["dbeta_min"],
        energy_tol=params["energy_tol"],
        max_iters=params["max_iters"],
        purity_slack=slack,
        splitting=params["splitting"],
        polish_steps=params["polish_steps"],
        polish_dbeta=params["polish_dbeta"],
    )


def _run_stationary(params: dict) -> int:
    ham, grid = _ham_from(params), _grid_from(params)
    if params["states"] < 1:
        raise ConfigError("states must be at least 1")
    outdir = Path(params["out_dir"])
    outdir.mkdir(parents=True, exist_ok=True)
    _write_manifest(outdir, "stationary", params)
    state, e = ground_state(ham, grid, _solver_config(params, excited=False))
    _emit_state(outdir, "ground", state, ham, params)
    print(f"ground: energy={e:.12g}")
    lower = [state]
    for level in range(1, params["states"]):
        state, e = excited_state(ham, grid, _solver_config(params, excited=True), lower)
        _emit_state(outdir, f"excited{level}", state, ham, params)
        print(f"excited{level}: energy={e:.12g}")
        lower.append(state)
    return 0


def _run_thermal(params: dict) -> int:
    _require(params, "beta", "statistics", "dbeta")
    ham, grid = _ham_from(params), _grid_from(params)
    outdir = Path(params["out_dir"])
    outdir.mkdir(parents=True, exist_ok=True)
    _write_manifest(outdir, "thermal", params)
    spec = ThermalSpec(
        s=+1 if params["statistics"] == "fermi" else -1,
        beta=params["beta"], mu=params["mu"],
        term_tol=params["term_tol"], max_terms=params["max_terms"],
    )
    state, occupation = thermal_state(ham, grid, spec, params["dbeta"],
                                      splitting=params["splitting"])
    _emit_state(outdir, "thermal", state, ham, params,
                extra={"occupation": occupation, "statistics": params["statistics"],
                       "mu": params["mu"]})
    print(f"thermal[{params['statistics']}]: beta={spec.beta:g} occupation={occupation:.12g} "
          f"peak={state.w.max():.12g}")
    return 0


def _resolve_verify_ham(params: dict) -> HamiltonianSpec:
    if params["V"] and params["K"]:
        return HamiltonianSpec.from_strings(params["V"], params["K"])
    manifest_path = Path(params["state"]).parent / "manifest.json"
    if manifest_path.exists():
        saved = json.loads(manifest_path.read_text()).get("params", {})
        if saved.get("V") and saved.get("K"):
            return HamiltonianSpec.from_strings(saved["V"], saved["K"])
    raise ConfigError(
        "verify needs the Hamiltonian: pass --V/--K or keep manifest.json next to the state"
    )


def _run_verify(params: dict) -> int:
    _require(params, "state", "t", "dt")
    state = load_state(params["state"])
    ham = _resolve_verify_ham(params)
    outdir = Path(params["out_dir"])
    outdir.mkdir(parents=True, exist_ok=True)
    _write_manifest(outdir, "verify", params)
    after = moyal_propagate(state, ham, params["t"], params["dt"],
                            splitting=params["splitting"])
    residual = float(np.abs(after.w - state.w).max() / np.abs(state.w).max())
    _emit_state(outdir, "verified", after, ham, params, extra={"residual": residual})
    (outdir / "verify_summary.json").write_text(json.dumps({
        "residual": residual, "t": params["t"], "dt": params["dt"],
        "splitting": params["splitting"], "state": str(params["state"]),
    }, indent=2, sort_keys=True) + "\n")
    print(f"residual: {residual:.6e}")
    return 0


def _run_oracle(params: dict) -> int:
    _require(params, "n_states")
    ham, grid = _ham_from(params), _grid_from(params)
    outdir = Path(params["out_dir"])
    outdir.mkdir(parents=True, exist_ok=True)
    _write_manifest(outdir, "oracle", params)
    spectrum = diagonalize(ham, grid, params["n_states"])
    (outdir / "oracle_energies.json").write_text(json.dumps({
        "energies": [float(e) for e in spectrum.energies],
    }, indent=2) + "\n")
    print("energies:", " ".join(f"{e:.12g}" for e in spectrum.energies))

    weights = None
    if params["weights"]:
        weights = np.array([float(tok) for tok in str(params["weights"]).split(",")])
    elif params["beta"] is not None:
        weights = np.exp(-params["beta"] * spectrum.energies)
    if weights is None:
        return 0
    mixture = wigner_of_mixture(spectrum, weights)
    trace = trace_integral(mixture)
    mixture.w /= trace
    _emit_state(outdir, "oracle", mixture, ham, params, extra={"mixture_trace": trace})
    if params["compare"]:
        other = load_state(params["compare"])
        if other.grid.shape != grid.shape:
            raise ConfigError(
                f"cannot compare: grid {other.grid.shape} vs {grid.shape}"
            )
        linf = float(np.abs(other.w - mixture.w).max())
        print(f"linf: {linf:.6e}")
        (outdir / "oracle_compare.json").write_text(json.dumps({
            "linf": linf, "compare": str(params["compare"]),
        }, indent=2) + "\n")
    return 0


_RUNNERS = {
    "gibbs": _run_gibbs,
    "stationary": _run_stationary,
    "thermal": _run_thermal,
    "verify": _run_verify,
    "oracle": _run_oracle,
}


def _fold_expression_flags(argv):
    """Join option/value pairs whose values may start with '-' (expressions,
    signed weight lists) so argparse does not mistake them for flags."""
    folded = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in ("--V", "--K", "--weights", "--snapshots") and i + 1 < len(argv):
            folded.append(f"{token}={argv[i + 1]}")
            i += 2
        else:
            folded.append(token)
            i += 1
    return folded


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_fold_expression_flags(list(argv)))
    try:
        params = _resolve(args.command, args)
        return _RUNNERS[args.command](params)
    except ConfigError as exc:
        sys.stderr.write(f"error[config]: {exc}\n")
        return 1
    except FileNotFoundError as exc:
        sys.stderr.write(f"error[config]: {exc}\n")
        return 1
    except NumericalError as exc:
        sys.stderr.write(f"error[numerical]: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

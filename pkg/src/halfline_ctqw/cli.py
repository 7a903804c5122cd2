"""Command-line entry point.

Subcommands: simulate | limit | oracle | sweep | invariant | convergence.
Options may come from a flat ``key = value`` config file (``--config``);
command-line flags override file values.  Every run writes its outputs
plus a ``manifest.json`` recording the resolved configuration and the
SHA-256 digest of each output file.

Exit codes: 0 success, 2 configuration error, 3 numerical failure
(non-finite amplitudes), 4 inconclusive results under ``--strict``.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .closed_form import (
    invariant_state,
    laplace_amplitude,
    normalized_invariant_state,
)
from .errors import (
    BadSize,
    ConfigError,
    NonFiniteDetected,
    SizeMismatch,
    WalkError,
    ZeroCoupling,
)
from .experiments import (
    convergence_study,
    default_grid,
    default_sweep_budget,
    sweep_phase_diagram,
)
from .hamiltonian import HoppingPair, LatticeKind, LatticeTopology
from .laplace import numeric_laplace
from .output import (
    sha256_of,
    trajectory_metadata,
    write_convergence_csv,
    write_field_csv,
    write_json,
    write_limit_csv,
    write_oracle_csv,
    write_sweep_csv,
    write_trajectory_csv,
)
from .propagator import Integrator, WalkConfig, evolve

_REQUIRED = object()


def _float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip() != ""]


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip() != ""]


def _bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


# dest -> (converter, default); _REQUIRED must come from flags or file.
_SCHEMAS: dict[str, dict[str, tuple]] = {
    "simulate": {
        "gamma0": (float, _REQUIRED),
        "gamma1": (float, _REQUIRED),
        "t_max": (float, _REQUIRED),
        "n_sites": (int, 500),
        "dt": (float, 1e-4),
        "integrator": (str, "reference"),
        "record_stride": (int, None),
    },
    "limit": {
        "gamma0": (float, _REQUIRED),
        "gamma1": (float, _REQUIRED),
        "cutoff": (int, 40),
    },
    "oracle": {
        "gamma0": (float, _REQUIRED),
        "gamma1": (float, _REQUIRED),
        "s_values": (_float_list, [0.5, 1.0, 2.0, 5.0]),
        "sites": (_int_list, [0, 1, 2, 3]),
        "t_max": (float, 50.0),
        "n_sites": (int, 500),
        "dt": (float, 1e-4),
        "record_stride": (int, None),
        "error_budget": (float, 1e-3),
    },
    "sweep": {
        "grid_points": (int, 41),
        "grid_bound": (float, 1.0),
        "n_sites": (int, 500),
        "t_max": (float, 200.0),
        "dt": (float, 0.01),
        "record_stride": (int, 20),
        "epsilon": (float, 0.05),
        "workers": (int, None),
    },
    "invariant": {
        "gamma0": (float, _REQUIRED),
        "gamma1": (float, _REQUIRED),
        "phi0_re": (float, 1.0),
        "phi0_im": (float, 0.0),
        "n_sites": (int, 500),
        "normalized": (_bool, False),
    },
    "convergence": {
        "gamma0": (float, _REQUIRED),
        "gamma1": (float, _REQUIRED),
        "checkpoints": (_float_list, [100.0, 250.0, 500.0]),
        "n_sites": (int, 500),
        "sample_spacing": (float, 0.1),
    },
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None,
                        help="flat key = value config file; flags override it")
    common.add_argument("--out-dir", type=Path, default=Path("."),
                        help="directory for output files (default: cwd)")
    common.add_argument("--strict", action="store_true",
                        help="exit 4 when results are inconclusive")

    parser = argparse.ArgumentParser(
        prog="halfline-ctqw",
        description="Continuous-time quantum walk on the half line with "
                    "2-periodic hopping.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", parents=[common],
                         help="evolve the walk and export the trajectory")
    sim.add_argument("--gamma0", type=float)
    sim.add_argument("--gamma1", type=float)
    sim.add_argument("--t-max", type=float)
    sim.add_argument("--n-sites", type=int)
    sim.add_argument("--dt", type=float)
    sim.add_argument("--integrator", choices=["euler", "reference"])
    sim.add_argument("--record-stride", type=int)

    lim = sub.add_parser("limit", parents=[common],
                         help="tabulate the long-time amplitudes and measure")
    lim.add_argument("--gamma0", type=float)
    lim.add_argument("--gamma1", type=float)
    lim.add_argument("--cutoff", type=int)

    orc = sub.add_parser("oracle", parents=[common],
                         help="compare numeric Laplace transforms with closed forms")
    orc.add_argument("--gamma0", type=float)
    orc.add_argument("--gamma1", type=float)
    orc.add_argument("--s-values", type=_float_list)
    orc.add_argument("--sites", type=_int_list)
    orc.add_argument("--t-max", type=float)
    orc.add_argument("--n-sites", type=int)
    orc.add_argument("--dt", type=float)
    orc.add_argument("--record-stride", type=int)
    orc.add_argument("--error-budget", type=float)

    swp = sub.add_parser("sweep", parents=[common],
                         help="run the localization phase diagram sweep")
    swp.add_argument("--grid-points", type=int)
    swp.add_argument("--grid-bound", type=float)
    swp.add_argument("--n-sites", type=int)
    swp.add_argument("--t-max", type=float)
    swp.add_argument("--dt", type=float)
    swp.add_argument("--record-stride", type=int)
    swp.add_argument("--epsilon", type=float)
    swp.add_argument("--workers", type=int)

    inv = sub.add_parser("invariant", parents=[common],
                         help="tabulate the stationary state")
    inv.add_argument("--gamma0", type=float)
    inv.add_argument("--gamma1", type=float)
    inv.add_argument("--phi0-re", type=float)
    inv.add_argument("--phi0-im", type=float)
    inv.add_argument("--n-sites", type=int)
    inv.add_argument("--normalized", action="store_const", const=True, default=None)

    conv = sub.add_parser("convergence", parents=[common],
                          help="track P(X_t = 0) toward its long-time limit")
    conv.add_argument("--gamma0", type=float)
    conv.add_argument("--gamma1", type=float)
    conv.add_argument("--checkpoints", type=_float_list)
    conv.add_argument("--n-sites", type=int)
    conv.add_argument("--sample-spacing", type=float)

    return parser


def _load_config_file(path: Path) -> dict[str, str]:
    if not path.exists():
        raise ConfigError(f"config: file not found: {path}")
    values: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(
                f"config: line {lineno} is not 'key = value': {raw!r}"
            )
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _resolve(args: argparse.Namespace, command: str) -> dict:
    file_values = _load_config_file(args.config) if args.config else {}
    schema = _SCHEMAS[command]
    unknown = set(file_values) - set(schema)
    if unknown:
        raise ConfigError(
            f"config: unknown keys for '{command}': {sorted(unknown)}"
        )
    resolved = {}
    for dest, (convert, default) in schema.items():
        flag_value = getattr(args, dest, None)
        if flag_value is not None:
            resolved[dest] = flag_value
        elif dest in file_values:
            try:
                resolved[dest] = convert(file_values[dest])
            except ValueError as exc:
                raise ConfigError(f"config: bad value for '{dest}': {exc}")
        elif default is _REQUIRED:
            raise ConfigError(f"config: missing required option '{dest}'")
        else:
            resolved[dest] = default
    return resolved


def _couplings(cfg: dict) -> HoppingPair:
    try:
        return HoppingPair(cfg["gamma0"], cfg["gamma1"])
    except ZeroCoupling as exc:
        raise ConfigError(
            f"gamma0/gamma1: {exc} (both couplings must be nonzero)"
        ) from exc


def _topology(n_sites: int) -> LatticeTopology:
    try:
        return LatticeTopology(LatticeKind.HALF_LINE_TRUNCATED, n_sites)
    except BadSize as exc:
        raise ConfigError(f"n_sites: {exc}") from exc


class _Manifest:
    def __init__(self, command: str, config: dict, out_dir: Path):
        self.command = command
        self.config = config
        self.out_dir = out_dir
        self.outputs: list[Path] = []
        self.started_at = datetime.now(timezone.utc).isoformat()

    def path(self, name: str) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / name
        self.outputs.append(path)
        return path

    def write(self) -> Path:
        payload = {
            "command": self.command,
            "config": {
                key: (str(val) if isinstance(val, Path) else val)
                for key, val in self.config.items()
            },
            "version": __version__,
            "started_at": self.started_at,
            "finished_at": datetime.now(timezone.utc).isoformat(),
            "outputs": [
                {"path": str(p), "sha256": sha256_of(p)} for p in self.outputs
            ],
        }
        self.out_dir.mkdir(parents=True, exist_ok=True)
        manifest_path = self.out_dir / "manifest.json"
        write_json(payload, manifest_path)
        return manifest_path


def _cmd_simulate(cfg: dict, manifest: _Manifest, strict: bool) -> int:
    config = WalkConfig(
        couplings=_couplings(cfg),
        topology=_topology(cfg["n_sites"]),
        t_max=cfg["t_max"],
        dt=cfg["dt"],
        integrator=Integrator(cfg["integrator"]),
        record_stride=cfg["record_stride"],
    )
    traj = evolve(config)
    write_trajectory_csv(traj, manifest.path("trajectory.csv"))
    write_json(trajectory_metadata(traj), manifest.path("trajectory_meta.json"))
    return 0


def _cmd_limit(cfg: dict, manifest: _Manifest, strict: bool) -> int:
    if cfg["cutoff"] < 1:
        raise ConfigError(f"cutoff: must be >= 1, got {cfg['cutoff']}")
    write_limit_csv(_couplings(cfg), cfg["cutoff"], manifest.path("limit.csv"))
    return 0


def _cmd_oracle(cfg: dict, manifest: _Manifest, strict: bool) -> int:
    couplings = _couplings(cfg)
    config = WalkConfig(
        couplings=couplings,
        topology=_topology(cfg["n_sites"]),
        t_max=cfg["t_max"],
        dt=cfg["dt"],
        integrator=Integrator.REFERENCE,
        record_stride=cfg["record_stride"],
    )
    traj = evolve(config)
    entries = []
    inconclusive = False
    for s in cfg["s_values"]:
        for x in cfg["sites"]:
            sample = numeric_laplace(traj, s, x)
            closed = laplace_amplitude(x, s, couplings)
            entries.append((sample, closed))
            if abs(sample.value - closed) > cfg["error_budget"] + sample.tail_bound:
                inconclusive = True
    write_oracle_csv(entries, manifest.path("oracle.csv"))
    return 4 if strict and inconclusive else 0


def _cmd_sweep(cfg: dict, manifest: _Manifest, strict: bool) -> int:
    budget = default_sweep_budget(
        n_sites=cfg["n_sites"],
        t_max=cfg["t_max"],
        dt=cfg["dt"],
        record_stride=cfg["record_stride"],
    )
    grid = default_grid(cfg["grid_points"], cfg["grid_bound"])
    points = sweep_phase_diagram(
        grid, budget, epsilon=cfg["epsilon"], workers=cfg["workers"]
    )
    write_sweep_csv(points, manifest.path("sweep.csv"))
    for index, point in enumerate(points):
        if point.flagged and point.trajectory is not None:
            write_trajectory_csv(
                point.trajectory, manifest.path(f"flagged_{index}_trajectory.csv")
            )
    n_rejected = sum(1 for p in points if p.predicted is None)
    n_inconclusive = sum(
        1 for p in points if p.observed is not None and p.observed.value == "inconclusive"
    )
    n_flagged = sum(1 for p in points if p.flagged)
    write_json(
        {
            "grid_points": cfg["grid_points"],
            "grid_bound": cfg["grid_bound"],
            "t_max": cfg["t_max"],
            "n_sites": cfg["n_sites"],
            "dt": cfg["dt"],
            "record_stride": cfg["record_stride"],
            "epsilon": cfg["epsilon"],
            "total_points": len(points),
            "rejected_points": n_rejected,
            "inconclusive_points": n_inconclusive,
            "flagged_points": n_flagged,
        },
        manifest.path("sweep_summary.json"),
    )
    return 4 if strict and (n_inconclusive or n_flagged) else 0


def _cmd_invariant(cfg: dict, manifest: _Manifest, strict: bool) -> int:
    couplings = _couplings(cfg)
    n_sites = cfg["n_sites"]
    if n_sites < 1:
        raise ConfigError(f"n_sites: must be >= 1, got {n_sites}")
    if cfg["normalized"]:
        field = normalized_invariant_state(couplings, n_sites)
    else:
        phi0 = complex(cfg["phi0_re"], cfg["phi0_im"])
        field = invariant_state(couplings, phi0, n_sites)
    write_field_csv(field, manifest.path("invariant.csv"))
    return 0


def _cmd_convergence(cfg: dict, manifest: _Manifest, strict: bool) -> int:
    points = convergence_study(
        _couplings(cfg),
        cfg["checkpoints"],
        n_sites=cfg["n_sites"],
        sample_spacing=cfg["sample_spacing"],
    )
    write_convergence_csv(points, manifest.path("convergence.csv"))
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "limit": _cmd_limit,
    "oracle": _cmd_oracle,
    "sweep": _cmd_sweep,
    "invariant": _cmd_invariant,
    "convergence": _cmd_convergence,
}


def run(argv: list[str]) -> int:
    """Parse argv, dispatch, and return the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _resolve(args, args.command)
        manifest = _Manifest(args.command, cfg, args.out_dir)
        code = _COMMANDS[args.command](cfg, manifest, args.strict)
        manifest.write()
        return code
    except NonFiniteDetected as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, ZeroCoupling, BadSize, SizeMismatch) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except WalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

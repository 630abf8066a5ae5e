"""Command-line driver.

    snhydrogen solve --level 1 --level 2 --level 3 --self-interaction both \
        --report-out report.json --density-out density_{level}.csv
    snhydrogen estimate --Z 0.3

Exit status of ``solve``: 0 when every requested level converged, 1 when
any level failed to converge (the report is still written), 2 on
configuration or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .config import SELF_INTERACTION_MODES, RunConfig, load_config
from .constants import CODATA2018
from .errors import ConfigurationError, NumericalFailure
from .reporting import emit_density_csv, emit_report_json, five_significant, report_document
from .scf import fixed_point_shift, scf_solve
from .spectroscopy import (
    build_report,
    ionization_energy_estimate,
    ionization_gravity_relative_shift,
    perturbative_gravity_shift,
)

log = logging.getLogger("snhydrogen")

EXIT_OK = 0
EXIT_NOT_CONVERGED = 1
EXIT_IO_ERROR = 2


@dataclass(frozen=True)
class RunManifest:
    config: RunConfig
    report_out: Path | None = None
    density_out: Path | None = None
    command: str = "solve"
    config_path: Path | None = None


def density_path(template: Path, level: int, n_levels: int) -> Path:
    """Per-level CSV path: ``{level}`` in the name is substituted, otherwise a
    ``_level<n>`` suffix is added when several levels share one template."""
    name = str(template)
    if "{level}" in name:
        return Path(name.format(level=level))
    if n_levels == 1:
        return template
    return template.with_name(f"{template.stem}_level{level}{template.suffix}")


def run_solve(manifest: RunManifest) -> int:
    """Solve every requested level, then write the report and density files."""
    cfg = manifest.config
    constants = CODATA2018.amplified_gravity(cfg.amplify_gravity) if cfg.amplify_gravity != 1.0 else CODATA2018

    results, shifts, failures = [], {}, {}
    for solver_cfg in cfg.solver_configs():
        level = solver_cfg.target_level
        log.info("solving level %d (%s)", level, cfg.self_interaction)
        try:
            result = scf_solve(solver_cfg, constants)
            shifts[level] = fixed_point_shift(result, constants)
        except NumericalFailure as exc:
            failures[level] = str(exc)
            log.error("level %d failed: %s", level, exc)
            continue
        log.info("level %d: E = %s eV after %d iterations", level, five_significant(result.energy_ev), result.iterations)
        results.append(result)

    pairs = cfg.transitions
    if pairs is not None:
        ok = {r.level for r in results if r.converged}
        pairs = [p for p in pairs if p[0] in ok and p[1] in ok]
    report = build_report(results, constants, pairs)
    document = report_document(
        results,
        report,
        run_config=cfg.to_dict(),
        constants=constants,
        fixed_point_shifts=shifts,
        failures=failures,
    )

    try:
        if manifest.report_out is not None:
            emit_report_json(document, manifest.report_out)
        else:
            sys.stdout.write(json.dumps(document, sort_keys=True, indent=2, allow_nan=False) + "\n")
        if manifest.density_out is not None:
            for result in results:
                emit_density_csv(result, density_path(manifest.density_out, result.level, len(cfg.levels)))
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR

    if manifest.report_out is not None:
        for block in document["levels"]:
            if "error" in block:
                print(f"level {block['level']}: FAILED ({block['error']})")
            else:
                status = "converged" if block["converged"] else "NOT converged"
                print(f"level {block['level']}: {block['energy_ev_5sf']} eV  ({status}, {block['iterations']} it)")
        for t in document["transitions"]:
            print(f"{t['n_initial']} -> {t['n_final']}: {t['gap_ev_5sf']} eV")

    all_ok = not failures and all(r.converged for r in results)
    return EXIT_OK if all_ok else EXIT_NOT_CONVERGED


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="snhydrogen",
        description="Hydrogen s-states with electric and gravitational self-interaction.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run the self-consistent solver")
    solve.add_argument("--config", type=Path, help="JSON run configuration")
    solve.add_argument("--level", type=int, action="append", dest="levels",
                       help="target s-level (repeatable)")
    solve.add_argument("--self-interaction", choices=SELF_INTERACTION_MODES)
    solve.add_argument("--r-max", type=float, help="box radius in Bohr")
    solve.add_argument("--grid-points", type=int, help="interior grid nodes")
    solve.add_argument("--beta", type=float, dest="mixing_beta", help="potential mixing fraction")
    solve.add_argument("--tolerance", type=float, dest="energy_tolerance", help="energy tolerance in Hartree")
    solve.add_argument("--max-iterations", type=int)
    solve.add_argument("--Z", type=float, help="nuclear charge multiplier")
    solve.add_argument("--amplify-gravity", type=float, metavar="FACTOR",
                       help="scale G (testing only)")
    solve.add_argument("--report-out", type=Path)
    solve.add_argument("--density-out", type=Path,
                       help="CSV path; '{level}' is replaced by the level index")

    est = sub.add_parser("estimate", help="closed-form ionization energy and gravity ratio")
    est.add_argument("--Z", type=float, default=1.0)
    est.add_argument("--n", type=int, default=1)
    return parser


def _estimate(args) -> int:
    doc = {
        "Z": args.Z,
        "n": args.n,
        "energy_ev": ionization_energy_estimate(CODATA2018, args.Z, args.n, include_gravity=False),
        "energy_with_gravity_ev": ionization_energy_estimate(CODATA2018, args.Z, args.n, include_gravity=True),
        "gravity_relative_shift": ionization_gravity_relative_shift(CODATA2018, args.Z, args.n),
        "gravity_ratio": perturbative_gravity_shift(CODATA2018),
    }
    print(json.dumps(doc, sort_keys=True, indent=2))
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if args.command == "estimate":
        return _estimate(args)

    try:
        base = load_config(args.config) if args.config else RunConfig()
        cfg = base.with_overrides(
            levels=tuple(args.levels) if args.levels else None,
            self_interaction=args.self_interaction,
            r_max=args.r_max,
            grid_points=args.grid_points,
            mixing_beta=args.mixing_beta,
            energy_tolerance=args.energy_tolerance,
            max_iterations=args.max_iterations,
            Z=args.Z,
            amplify_gravity=args.amplify_gravity,
        )
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR
    manifest = RunManifest(cfg, args.report_out, args.density_out, "solve", args.config)
    return run_solve(manifest)


if __name__ == "__main__":
    sys.exit(main())

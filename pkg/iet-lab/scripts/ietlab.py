#!/usr/bin/env python3
"""
IET Lab - Batch Command Line

Exact analyses of interval exchange transformations:

    perm      permutation facts (irreducible, sigma, type W), or --scan D
    analyze   full JSON report (CSV side files next to --out)
    catalog   list the named systems
    eps       eps_n sweep and the n*eps_n running minimum
    tower     greedy tower over --interval, or the loop towers at height N
    rigidity  rigidity measures Leb{|T^n x - x| > eps} for n <= N

JSON/CSV goes to stdout (or --out); progress banners and logs go to stderr.
Exit codes: 0 success, 2 configuration error, 3 computation error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

sys.path.insert(0, str(Path(__file__).parent))

from catalog import CatalogError
from config import (COMMANDS, AnalysisConfig, ConfigError, ResolvedAnalysis, load_config,
                    resolve_analysis, validate_config)
from diagnostics import DiagnosticsError, invariance_window_measure, rigidity_profile
from dynpart import (DynamicsError, bad_approx_stat, build_tower, idoc_check, lin_rec_stat,
                     loop_towers)
from iet import IETError, StepFunction
from perm import PermutationError, permutation_facts, scan_type_w
from report import (build_analysis_report, input_section, lin_rec_csv, lin_rec_section,
                    render_json, rigidity_csv, scalar_pair, scan_csv, side_file, write_output)
from scalar import ONE, ScalarError

logger = logging.getLogger("ietlab")

COMPUTATION_ERRORS = (DynamicsError, DiagnosticsError, IETError, PermutationError, ScalarError)


def banner(title: str, lines: List[str] = ()) -> None:
    print("=" * 60, file=sys.stderr)
    print(title, file=sys.stderr)
    print("=" * 60, file=sys.stderr)
    for line in lines:
        print(line, file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ietlab",
        description="Exact analysis of interval exchange transformations",
    )
    parser.add_argument("command", choices=COMMANDS, help="The command to run")
    parser.add_argument("target", nargs="?", default=None,
                        help="Permutation text or catalog name (same as --perm)")
    parser.add_argument("--config", type=str, default=None, help="JSON or key=value config file")
    parser.add_argument("--perm", type=str, default=None)
    parser.add_argument("--lengths", nargs="+", default=None,
                        help="Scalars, space or comma separated: 2/3 1/3 or '(sqrt(5)-1)/2, ...'")
    parser.add_argument("--normalize", action="store_true", default=None,
                        help="Rescale lengths whose sum is not 1")
    parser.add_argument("--N", type=int, default=None, help="Horizon")
    parser.add_argument("--eps", type=str, default=None)
    parser.add_argument("--delta", type=str, default=None)
    parser.add_argument("--b", type=int, default=None)
    parser.add_argument("--shift-power", type=int, default=None, dest="shift_power")
    parser.add_argument("--threshold", type=str, default=None,
                        help="Candidate rigid time cut-off (default: eps)")
    parser.add_argument("--interval", nargs=2, default=None, metavar=("LEFT", "RIGHT"))
    parser.add_argument("--out", type=str, default=None)
    parser.add_argument("--format", choices=("json", "csv"), default=None)
    parser.add_argument("--sample", action="store_true", default=None,
                        help="Draw rational lengths from a seeded generator")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--catalog", type=str, default=None)
    parser.add_argument("--digits", type=int, default=None)
    parser.add_argument("--scan", type=int, default=None, metavar="D",
                        help="perm: classify every permutation of {1..D}")
    return parser


def _split_lengths(values: Optional[List[str]]) -> Optional[List[str]]:
    if values is None:
        return None
    return [t.strip() for value in values for t in value.split(",") if t.strip()]


def make_config(args: argparse.Namespace, env: Dict) -> AnalysisConfig:
    """CLI flags override the config file, which overrides the environment defaults."""
    file_values = AnalysisConfig.from_file(args.config) if args.config else {}
    file_values.setdefault("workers", env["processing"]["max_workers"])
    file_values.setdefault("digits", env["processing"]["digits"])
    overrides = {
        "command": args.command,
        "perm": args.perm or args.target,
        "lengths": _split_lengths(args.lengths),
        "normalize": args.normalize,
        "N": args.N,
        "eps": args.eps,
        "delta": args.delta,
        "b": args.b,
        "shift_power": args.shift_power,
        "threshold": args.threshold,
        "interval": args.interval,
        "out": args.out,
        "format": args.format,
        "sample": args.sample,
        "seed": args.seed,
        "workers": args.workers,
        "catalog": args.catalog,
        "digits": args.digits,
        "scan": args.scan,
    }
    return AnalysisConfig.merged(file_values, overrides)


def parameters(resolved: ResolvedAnalysis) -> Dict:
    """Run parameters echoed into reports (worker count excluded: it never changes results)."""
    cfg = resolved.config
    return {
        "N": cfg.N,
        "eps": str(resolved.eps),
        "threshold": str(resolved.threshold or resolved.eps),
        "delta": str(resolved.delta),
        "b": cfg.b,
        "shift_power": cfg.shift_power,
        "digits": cfg.digits,
    }


# -- commands ------------------------------------------------------------------

def cmd_perm(resolved: ResolvedAnalysis, env: Dict) -> str:
    cfg = resolved.config
    if cfg.scan is not None:
        rows = scan_type_w(cfg.scan)
        banner(f"TYPE W SCAN d={cfg.scan}",
               [f"Permutations: {len(rows)}",
                f"Irreducible: {sum(r['irreducible'] for r in rows)}",
                f"Type W: {sum(bool(r['type_w']) for r in rows)}"])
        if cfg.format == "csv":
            return scan_csv(rows)
        return render_json({"d": cfg.scan, "count": len(rows), "rows": rows})

    facts = permutation_facts(resolved.perm)
    facts["provenance"] = resolved.provenance
    mark = "✓" if facts["irreducible"] else "✗"
    banner(f"PERMUTATION {resolved.perm}", [f"{mark} irreducible: {facts['irreducible']}",
                                            f"  type W: {facts['type_w']}"])
    return render_json(facts)


def cmd_catalog(resolved: ResolvedAnalysis, env: Dict) -> str:
    entries = []
    for entry in resolved.catalog.values():
        facts = permutation_facts(entry.perm)
        entries.append({
            "name": entry.name,
            "line": entry.line,
            "permutation": str(entry.perm),
            "lengths": [str(v) for v in entry.lengths] if entry.has_lengths else None,
            "irreducible": facts["irreducible"],
            "type_w": facts["type_w"],
        })
    source = next(iter(resolved.catalog.values())).source if resolved.catalog else None
    banner("CATALOG", [f"Source: {source}", f"Systems: {len(entries)}"])
    return render_json({"catalog": source, "systems": entries})


def cmd_eps(resolved: ResolvedAnalysis, env: Dict) -> str:
    cfg, T = resolved.config, resolved.iet
    stats = lin_rec_stat(T, cfg.N)
    mark = "✓" if stats.bounded_by_one else "✗"
    banner(f"EPS SWEEP {T}", [f"Horizon: {cfg.N}",
                              f"Running min n*eps_n: {stats.running_min.to_decimal(cfg.digits)}",
                              f"{mark} n*eps_n <= 1 throughout"])
    if cfg.format == "csv":
        return lin_rec_csv(stats, cfg.digits)
    return render_json({
        "input": input_section(T, resolved.provenance, parameters(resolved), cfg.digits),
        "lin_rec": lin_rec_section(stats, cfg.digits),
        "rows": [{"n": n, "eps_n": scalar_pair(eps, cfg.digits),
                  "n_eps_n": scalar_pair(n_eps, cfg.digits),
                  "min_so_far": scalar_pair(best, cfg.digits)}
                 for n, eps, n_eps, best in stats.rows],
    })


def _tower_json(tower) -> Dict:
    data = tower.to_json()
    data["height"] = tower.p + tower.q + 1
    data["reaches_height"] = tower.reaches_height
    data["translate_stack"] = tower.is_translate_stack()
    data["floors"] = [[str(a), str(b)] for a, b in tower.floors]
    return data


def cmd_tower(resolved: ResolvedAnalysis, env: Dict) -> str:
    cfg, T = resolved.config, resolved.iet
    report = {"input": input_section(T, resolved.provenance, parameters(resolved), cfg.digits)}
    if resolved.interval is not None:
        tower = build_tower(T, tuple(resolved.interval), n=cfg.N)
        banner("TOWER", [f"J = [{resolved.interval[0]}, {resolved.interval[1]})",
                         f"p = {tower.p}, q = {tower.q}",
                         f"{'✓' if tower.is_disjoint() else '✗'} floors disjoint"])
        report["tower"] = _tower_json(tower)
    else:
        towers = loop_towers(T, cfg.N)
        banner(f"LOOP TOWERS n={cfg.N}", [
            f"{'✓' if t['meets_bound'] else '⚠'} tower {t['index']} (vertex {t['vertex']}): "
            f"measure {t['measure'].to_decimal(cfg.digits)}"
            for t in towers])
        report["loop_towers"] = [{
            "index": t["index"],
            "vertex": t["vertex"],
            "complete": t["complete"],
            "measure": scalar_pair(t["measure"], cfg.digits),
            "measure_bound": scalar_pair(t["measure_bound"], cfg.digits),
            "meets_bound": t["meets_bound"],
            "tower": _tower_json(t["tower"]),
        } for t in towers]
    return render_json(report)


def cmd_rigidity(resolved: ResolvedAnalysis, env: Dict) -> str:
    cfg, T = resolved.config, resolved.iet
    profile = rigidity_profile(T, cfg.N, resolved.eps, resolved.threshold,
                               max_workers=cfg.workers,
                               chunk_size=env["processing"]["chunk_size"])
    summary = profile.summary(cfg.digits)
    banner(f"RIGIDITY {T}", [f"Horizon: {cfg.N}", f"Candidates: {summary['candidate_count']}",
                             f"⚠ {summary['verdict']}"])
    if cfg.format == "csv":
        return rigidity_csv(profile, cfg.digits)
    return render_json({
        "input": input_section(T, resolved.provenance, parameters(resolved), cfg.digits),
        "rigidity": summary,
    })


def window_section(resolved: ResolvedAnalysis) -> Dict:
    """Invariance-window measure for f = indicator of the first exchanged interval."""
    cfg, T = resolved.config, resolved.iet
    right = T.betas[0] if T.betas else ONE / 2
    f = StepFunction.indicator([(0, right)])
    measure = invariance_window_measure(T, f, resolved.delta, cfg.b, cfg.shift_power)
    return {
        "f": f"indicator [0, {right})",
        "delta": str(resolved.delta),
        "b": cfg.b,
        "shift_power": cfg.shift_power,
        "measure": scalar_pair(measure, cfg.digits),
    }


def cmd_analyze(resolved: ResolvedAnalysis, env: Dict) -> str:
    cfg, T = resolved.config, resolved.iet
    banner(f"ANALYZE {T}", [f"Horizon: {cfg.N}"])
    idoc = idoc_check(T, cfg.N)
    print(f"  {'✓' if idoc.passed else '✗'} idoc", file=sys.stderr)
    stats = lin_rec_stat(T, cfg.N)
    print(f"  ✓ lin-rec min {stats.running_min.to_decimal(cfg.digits)}", file=sys.stderr)
    bad = bad_approx_stat(T, cfg.N) if T.betas else None
    profile = rigidity_profile(T, cfg.N, resolved.eps, resolved.threshold,
                               max_workers=cfg.workers,
                               chunk_size=env["processing"]["chunk_size"])
    print(f"  ✓ rigidity: {profile.summary()['verdict']}", file=sys.stderr)
    window = window_section(resolved)

    report = build_analysis_report(T, resolved.provenance, parameters(resolved), idoc, stats, bad,
                                   profile, window, cfg.digits)
    if cfg.out:
        write_output(lin_rec_csv(stats, cfg.digits), side_file(cfg.out, "linrec"))
        write_output(rigidity_csv(profile, cfg.digits), side_file(cfg.out, "rigidity"))
    return render_json(report)


COMMAND_HANDLERS: Dict[str, Callable[[ResolvedAnalysis, Dict], str]] = {
    "perm": cmd_perm,
    "analyze": cmd_analyze,
    "catalog": cmd_catalog,
    "eps": cmd_eps,
    "tower": cmd_tower,
    "rigidity": cmd_rigidity,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    try:
        env = validate_config(load_config())
    except ConfigError as e:
        print(f"✗ {e}", file=sys.stderr)
        return 2
    logging.basicConfig(stream=sys.stderr, level=env["logging"]["level"],
                        format="%(levelname)s %(name)s: %(message)s")

    try:
        resolved = resolve_analysis(make_config(args, env))
    except (ConfigError, CatalogError, OSError, TypeError) as e:
        print(f"✗ {e}", file=sys.stderr)
        return 2

    try:
        text = COMMAND_HANDLERS[resolved.config.command](resolved, env)
        write_output(text, resolved.config.out)
    except COMPUTATION_ERRORS as e:
        print(f"✗ {resolved.config.command} failed: {e}", file=sys.stderr)
        logger.debug("computation error", exc_info=True)
        return 3
    except OSError as e:
        print(f"✗ could not write output: {e}", file=sys.stderr)
        return 3

    if resolved.config.out:
        print(f"\n✓ Output saved to: {resolved.config.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""
Batch Analysis Script

Run `analyze` on every catalog system that has lengths, one JSON report
per system, plus a summary.
"""

import json
import sys
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Dict, List, Optional

sys.path.insert(0, str(Path(__file__).parent))

from catalog import CatalogError, load_catalog
from config import AnalysisConfig, ConfigError, load_config, resolve_analysis, validate_config
from ietlab import COMPUTATION_ERRORS, cmd_analyze
from report import write_output


def process_single_system(name: str, catalog_path: str, output_dir: Path, N: int, eps: str,
                          env: Dict) -> dict:
    """
    Analyze one catalog system.

    Args:
        name: Catalog entry name
        catalog_path: Catalog file the entry comes from
        output_dir: Directory for the JSON report and CSV side files
        N: Horizon
        eps: Rigidity tolerance (scalar text)
        env: Validated environment settings

    Returns:
        Dictionary with the system's status and headline numbers
    """
    print(f"\nProcessing: {name}")

    result = {
        "name": name,
        "status": "success",
        "errors": [],
    }

    try:
        out = output_dir / f"{name}.json"
        cfg = AnalysisConfig(command="analyze", perm=name, catalog=catalog_path, N=N, eps=eps,
                             out=str(out), digits=env["processing"]["digits"])
        resolved = resolve_analysis(cfg)
        text = cmd_analyze(resolved, env)
        write_output(text, str(out))

        report = json.loads(text)
        result["output_file"] = str(out)
        result["idoc_pass"] = report["idoc"]["status"] == "pass"
        result["lin_rec_min"] = report["lin_rec"]["running_min"]["decimal"]
        result["main_theorem_applies"] = report["theorem"]["main_theorem_applies"]
        result["rigidity_verdict"] = report["rigidity"]["verdict"]
        if not result["idoc_pass"]:
            result["status"] = "warning"
            result["errors"].append(f"orbit collision at n={report['idoc']['n']}")
        print(f"  ✓ Complete: lin-rec min {result['lin_rec_min']}")

    except (ConfigError, CatalogError) as e:
        result["status"] = "error"
        result["errors"].append(str(e))
        print(f"  ✗ Failed: {e}")
    except COMPUTATION_ERRORS as e:
        result["status"] = "error"
        result["errors"].append(f"{type(e).__name__}: {e}")
        print(f"  ✗ Failed: {e}")

    return result


def batch_analyze(catalog_path: Optional[str], output_dir: str, parallel: int = 1,
                  N: int = 100, eps: str = "1/100") -> dict:
    """
    Analyze every catalog system with lengths.

    Args:
        catalog_path: Catalog file (None for the configured default)
        output_dir: Directory for output files
        parallel: Number of parallel processes
        N: Horizon
        eps: Rigidity tolerance

    Returns:
        Dictionary with batch results, systems listed in catalog order
    """
    env = validate_config(load_config())
    catalog = load_catalog(catalog_path)
    catalog_path = catalog_path or env["catalog"]["path"]
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    names = [name for name, entry in catalog.items() if entry.has_lengths]
    skipped = [name for name, entry in catalog.items() if not entry.has_lengths]
    if not names:
        raise ValueError(f"No systems with lengths in {catalog_path}")

    print("=" * 60)
    print("BATCH IET ANALYSIS")
    print("=" * 60)
    print(f"Catalog: {catalog_path}")
    print(f"Output directory: {output_dir}")
    print(f"Systems to analyze: {len(names)} ({len(skipped)} permutation-only skipped)")
    print(f"Parallel workers: {parallel}")
    print(f"Horizon: {N}")
    print("=" * 60)

    results = {
        "total_systems": len(names),
        "processed": 0,
        "successful": 0,
        "warnings": 0,
        "failed": 0,
        "skipped": skipped,
        "systems": [],
    }

    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as executor:
            futures = {
                executor.submit(process_single_system, name, catalog_path, output_dir, N, eps, env): name
                for name in names
            }
            collected = {}
            for future in as_completed(futures):
                collected[futures[future]] = future.result()
        ordered = [collected[name] for name in names]
    else:
        ordered = [process_single_system(name, catalog_path, output_dir, N, eps, env)
                   for name in names]

    for result in ordered:
        results["systems"].append(result)
        results["processed"] += 1
        if result["status"] == "success":
            results["successful"] += 1
        elif result["status"] == "warning":
            results["warnings"] += 1
        else:
            results["failed"] += 1

    return results


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if not argv:
        print("Usage: python batch_analyze.py <catalog-file|default> [options]")
        print("\nOptions:")
        print("  --output-dir <dir>     Output directory (default: ./iet_reports)")
        print("  --parallel <N>         Number of parallel workers (default: 1)")
        print("  --N <n>                Horizon (default: 100)")
        print("  --eps <scalar>         Rigidity tolerance (default: 1/100)")
        print("  --report <file>        Save summary report to file")
        return 1

    catalog_path = None if argv[0] == "default" else argv[0]
    output_dir = "./iet_reports"
    parallel = 1
    N = 100
    eps = "1/100"
    report_file = None

    try:
        # Parse arguments
        if "--output-dir" in argv:
            idx = argv.index("--output-dir")
            if idx + 1 < len(argv):
                output_dir = argv[idx + 1]

        if "--parallel" in argv:
            idx = argv.index("--parallel")
            if idx + 1 < len(argv):
                parallel = int(argv[idx + 1])

        if "--N" in argv:
            idx = argv.index("--N")
            if idx + 1 < len(argv):
                N = int(argv[idx + 1])

        if "--eps" in argv:
            idx = argv.index("--eps")
            if idx + 1 < len(argv):
                eps = argv[idx + 1]

        if "--report" in argv:
            idx = argv.index("--report")
            if idx + 1 < len(argv):
                report_file = argv[idx + 1]

        results = batch_analyze(catalog_path, output_dir, parallel, N, eps)
    except (ConfigError, CatalogError, ValueError) as e:
        print(f"\n✗ {e}")
        return 2

    # Print summary
    print("\n" + "=" * 60)
    print("BATCH ANALYSIS SUMMARY")
    print("=" * 60)
    print(f"Total systems: {results['total_systems']}")
    print(f"Successful: {results['successful']}")
    print(f"Warnings: {results['warnings']}")
    print(f"Failed: {results['failed']}")
    print("=" * 60)

    failed = [s for s in results["systems"] if s["status"] == "error"]
    if failed:
        print("\nFailed systems:")
        for s in failed:
            print(f"  • {s['name']}: {', '.join(s['errors'])}")

    if report_file:
        with open(report_file, "w") as f:
            json.dump(results, f, indent=2)
        print(f"\nDetailed report saved to: {report_file}")

    return 0 if results["failed"] == 0 else 3


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""
Regression Constant Freezer
Runs the long exact sweeps once, cross-checks them against the 200-digit
mpmath oracle and writes tests/data/regression_constants.json.
"""

import json
import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent / "iet-lab/scripts"))

import mpmath

from catalog import load_catalog
from diagnostics import rigidity_profile
from dynpart import bad_approx_stat, lin_rec_stat
from oracle import agree, bad_approx_min, lin_rec_min
from scalar import parse_scalar

OUTPUT = Path(__file__).parent / "tests" / "data" / "regression_constants.json"

LIN_REC_N = 10_000
BAD_APPROX_N = 1_000
RIGIDITY_N = 2_000
RIGIDITY_EPS = "1/100"


def main() -> int:
    print("IET Lab - Freezing Regression Constants")
    print("=" * 60)

    catalog = load_catalog()
    golden, fhz = catalog["golden"].iet(), catalog["fhz"].iet()
    constants = {}

    print(f"\n[1/3] golden lin-rec sweep, N={LIN_REC_N}...")
    stats = lin_rec_stat(golden, LIN_REC_N)
    value, n = lin_rec_min(golden, LIN_REC_N)
    print(f"  exact:  {stats.running_min.to_decimal(30)} (n={stats.argmin()})")
    print(f"  oracle: {mpmath.nstr(value, 30)} (n={n})")
    if not agree(stats.running_min, value, 50):
        print("✗ exact sweep and oracle disagree; nothing written")
        return 1
    constants["c_emp"] = {"system": "golden", "N": LIN_REC_N,
                          "value": str(stats.running_min), "n": stats.argmin()}

    print(f"\n[2/3] golden bad-approximation sweep, N={BAD_APPROX_N}...")
    bad = bad_approx_stat(golden, BAD_APPROX_N)
    value, n = bad_approx_min(golden, BAD_APPROX_N)
    print(f"  exact:  {bad.value.to_decimal(30)} (n={bad.n})")
    print(f"  oracle: {mpmath.nstr(value, 30)} (n={n})")
    if not agree(bad.value, value, 50):
        print("✗ exact sweep and oracle disagree; nothing written")
        return 1
    constants["b_emp"] = {"system": "golden", "N": BAD_APPROX_N, "value": str(bad.value), "n": bad.n}

    print(f"\n[3/3] fhz rigidity sweep, N={RIGIDITY_N}, eps={RIGIDITY_EPS}...")
    profile = rigidity_profile(fhz, RIGIDITY_N, parse_scalar(RIGIDITY_EPS))
    best_n, best = profile.minimum()
    print(f"  exact:  {best.to_decimal(30)} (n={best_n})")
    if best <= 0:
        print("⚠ rigidity minimum is zero; delta_emp not frozen")
    else:
        constants["delta_emp"] = {"system": "fhz", "N": RIGIDITY_N, "eps": RIGIDITY_EPS,
                                  "value": str(best), "n": best_n}

    OUTPUT.parent.mkdir(parents=True, exist_ok=True)
    with open(OUTPUT, "w") as f:
        json.dump(constants, f, indent=2)
        f.write("\n")
    print("\n" + "=" * 60)
    print(f"✓ {len(constants)} constants written to {OUTPUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""
Report Assembly

Builds the JSON analysis report and the CSV sweep tables. Every scalar is
rendered twice: the exact string form (authoritative) and a decimal
rounded toward -infinity.
"""

import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from diagnostics import MILD_MIXING_CAVEAT, RigidityProfile
from dynpart import BadApproxResult, IdocResult, LinRecStats
from iet import IET, inverse_discontinuity_check
from perm import permutation_facts
from scalar import Scalar

TOOL_VERSION = "0.1.0"

FINITE_EVIDENCE = "not certifiable at finite horizon; finite evidence only"


def scalar_pair(value: Optional[Scalar], digits: int = 12) -> Optional[Dict[str, str]]:
    if value is None:
        return None
    return {"exact": str(value), "decimal": value.to_decimal(digits)}


def input_section(T: Optional[IET], provenance: Dict, parameters: Dict, digits: int = 12) -> Dict:
    """Echo of the run inputs, exact scalars included."""
    section = {"tool_version": TOOL_VERSION, "provenance": provenance, "parameters": parameters}
    if T is not None:
        section["permutation"] = str(T.perm)
        section["lengths"] = [scalar_pair(v, digits) for v in T.lengths]
        section["normalized"] = T.normalized
    return section


def iet_section(T: IET, digits: int = 12) -> Dict:
    inverse = inverse_discontinuity_check(T)
    return {
        "radicand": T.radicand,
        "breakpoints": [scalar_pair(b, digits) for b in T.betas],
        "translations": [scalar_pair(t, digits) for t in T.translations],
        "discontinuities": [str(b) for b in T.discontinuities()],
        "min_spacing": scalar_pair(T.min_spacing(), digits),
        "inverse_discontinuities_explained": inverse["holds"],
        "inverse_discontinuity_witnesses": inverse["witnesses"],
    }


def lin_rec_section(stats: LinRecStats, digits: int = 12) -> Dict:
    last = stats.rows[-1]
    return {
        "horizon": stats.horizon,
        "eps_final": scalar_pair(last[1], digits),
        "running_min": scalar_pair(stats.running_min, digits),
        "argmin": stats.argmin(),
        "n_eps_bounded_by_one": stats.bounded_by_one,
        "first_collision": stats.first_collision,
    }


def bad_approx_section(result: Optional[BadApproxResult], digits: int = 12) -> Optional[Dict]:
    # d = 1 has no discontinuities to approximate
    return result.to_json(digits) if result is not None else None


def theorem_note(facts: Dict, idoc: IdocResult, stats: LinRecStats,
                 bad: Optional[BadApproxResult]) -> Dict:
    """
    Whether the mild-mixing theorem's hypotheses hold.

    Irreducibility and type W are decided exactly. Linear recurrence is an
    infinite-horizon property and is only ever reported as evidence.
    """
    applies = bool(facts["irreducible"] and facts["type_w"])
    if applies:
        statement = ("main theorem applies: irreducible and type W certified exactly; "
                     "mild mixing follows if T is linearly recurrent")
    else:
        missing = [name for name in ("irreducible", "type_w") if not facts[name]]
        statement = f"main theorem does not apply: {' and '.join(missing)} not satisfied"
    return {
        "main_theorem_applies": applies,
        "statement": statement,
        "linear_recurrence": FINITE_EVIDENCE,
        "evidence": {
            "idoc_pass": idoc.passed,
            "lin_rec_min_positive": stats.running_min > 0,
            "bad_approx_positive": bool(bad and bad.value > 0),
        },
        "mild_mixing": MILD_MIXING_CAVEAT,
    }


def build_analysis_report(T: IET, provenance: Dict, parameters: Dict, idoc: IdocResult,
                          stats: LinRecStats, bad: Optional[BadApproxResult],
                          profile: RigidityProfile, window: Dict, digits: int = 12) -> Dict:
    """
    Assemble the full `analyze` report.

    Returns:
        Ordered dictionary; rendering it twice gives identical bytes
    """
    facts = permutation_facts(T.perm)
    return {
        "input": input_section(T, provenance, parameters, digits),
        "permutation": facts,
        "iet": iet_section(T, digits),
        "idoc": idoc.to_json(),
        "lin_rec": lin_rec_section(stats, digits),
        "bad_approx": bad_approx_section(bad, digits),
        "rigidity": profile.summary(digits),
        "invariance_window": window,
        "theorem": theorem_note(facts, idoc, stats, bad),
    }


def render_json(report: Any) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _csv_text(header: List[str], rows: List[List[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def lin_rec_csv(stats: LinRecStats, digits: int = 12) -> str:
    """Columns n, eps_n, n_eps_n, min_so_far, each value exact then decimal."""
    header = ["n", "eps_n", "n_eps_n", "min_so_far",
              "eps_n_decimal", "n_eps_n_decimal", "min_so_far_decimal"]
    rows = [[n, str(eps), str(n_eps), str(best),
             eps.to_decimal(digits), n_eps.to_decimal(digits), best.to_decimal(digits)]
            for n, eps, n_eps, best in stats.rows]
    return _csv_text(header, rows)


def rigidity_csv(profile: RigidityProfile, digits: int = 12) -> str:
    header = ["n", "measure", "is_candidate", "measure_decimal"]
    rows = [[n, str(measure), str(measure < profile.threshold).lower(), measure.to_decimal(digits)]
            for n, measure in profile.entries]
    return _csv_text(header, rows)


def scan_csv(rows: List[Dict]) -> str:
    return _csv_text(["permutation", "irreducible", "type_w"],
                     [[r["permutation"], str(r["irreducible"]).lower(), str(r["type_w"]).lower()]
                      for r in rows])


def write_output(text: str, out: Optional[str]) -> None:
    """Write to `out`, or to stdout when no path is given."""
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def side_file(out: str, suffix: str) -> str:
    """report.json -> report_<suffix>.csv"""
    path = Path(out)
    return str(path.with_name(f"{path.stem}_{suffix}.csv"))

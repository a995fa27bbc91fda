#!/usr/bin/env python3
"""
Rigidity and Mixing Diagnostics

Exact finite-horizon probes:
- rigidity measure  Leb{x : |T^n x - x| > eps}
- correlations      Leb(A cap T^-n B) for finite unions of intervals
- invariance-window measure of {x : |f(T^{i+s} x) - f(T^i x)| < delta, -b <= i <= b}
  for piecewise-constant f

None of these can certify mild mixing; reports say so.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from iet import (IET, PiecewiseTranslation, StepFunction, checkpoint_powers,
                 displacement_profile, iterate_powers, power)
from scalar import ONE, ZERO, Scalar, parse_scalar

logger = logging.getLogger(__name__)

MILD_MIXING_CAVEAT = (
    "finite-horizon evidence only: mild mixing is an asymptotic property "
    "and is not certified by this computation"
)


class DiagnosticsError(ValueError):
    pass


# -- interval unions -----------------------------------------------------------

@dataclass(frozen=True)
class IntervalUnion:
    """Sorted, disjoint, non-adjacent half-open intervals inside [0,1)."""

    intervals: Tuple[Tuple[Scalar, Scalar], ...] = ()

    @staticmethod
    def of(pairs: Sequence[Tuple]) -> "IntervalUnion":
        cleaned = []
        for left, right in sorted(((Scalar._coerce(a), Scalar._coerce(b)) for a, b in pairs),
                                  key=lambda iv: iv[0]):
            left, right = max(left, ZERO), min(right, ONE)
            if left >= right:
                continue
            if cleaned and left <= cleaned[-1][1]:
                cleaned[-1] = (cleaned[-1][0], max(cleaned[-1][1], right))
            else:
                cleaned.append((left, right))
        return IntervalUnion(tuple(cleaned))

    @property
    def measure(self) -> Scalar:
        return sum((right - left for left, right in self.intervals), ZERO)

    def translate(self, shift: Scalar) -> "IntervalUnion":
        return IntervalUnion.of([(left + shift, right + shift) for left, right in self.intervals])

    def intersect(self, other: "IntervalUnion") -> "IntervalUnion":
        out = []
        i = j = 0
        while i < len(self.intervals) and j < len(other.intervals):
            (a, b), (c, e) = self.intervals[i], other.intervals[j]
            left, right = max(a, c), min(b, e)
            if left < right:
                out.append((left, right))
            if b <= e:
                i += 1
            else:
                j += 1
        return IntervalUnion(tuple(out))

    def to_json(self) -> List[List[str]]:
        return [[str(left), str(right)] for left, right in self.intervals]


# -- rigidity ------------------------------------------------------------------

def _as_scalar(value) -> Optional[Scalar]:
    return parse_scalar(value) if isinstance(value, str) else Scalar._coerce(value)


def _check_eps(eps) -> Scalar:
    eps = _as_scalar(eps)
    if eps is None or eps.sign <= 0:
        raise DiagnosticsError(f"eps must be positive, got {eps}")
    return eps


def _far_measure(p: PiecewiseTranslation, eps: Scalar) -> Scalar:
    total = ZERO
    for k, s in enumerate(p.shifts):
        if abs(s) > eps:
            total += p.breakpoints[k + 1] - p.breakpoints[k]
    return total


def rigidity_measure(T: IET, n: int, eps) -> Scalar:
    """Exact Leb{x : |T^n x - x| > eps}."""
    eps = _check_eps(eps)
    return displacement_profile(T, n).measure_where(lambda v: abs(v) > eps)


def near_return_measure(T: IET, n: int, eps) -> Scalar:
    """Exact Leb{x : |T^n x - x| <= eps}; complements rigidity_measure."""
    eps = _check_eps(eps)
    return displacement_profile(T, n).measure_where(lambda v: abs(v) <= eps)


@dataclass
class RigidityProfile:
    eps: Scalar
    threshold: Scalar
    horizon: int
    entries: List[Tuple[int, Scalar]] = field(default_factory=list)

    @property
    def candidate_rigid_times(self) -> List[int]:
        return [n for n, measure in self.entries if measure < self.threshold]

    def minimum(self) -> Tuple[Optional[int], Scalar]:
        best_n, best = None, ONE
        for n, measure in self.entries:
            if best_n is None or measure < best:
                best_n, best = n, measure
        return best_n, best

    def summary(self, digits: int = 12) -> Dict:
        best_n, best = self.minimum()
        candidates = self.candidate_rigid_times
        verdict = ("rigidity candidates found" if candidates
                   else f"no rigidity sequence detected up to N={self.horizon}")
        return {
            "eps": str(self.eps),
            "threshold": str(self.threshold),
            "horizon": self.horizon,
            "min_measure": str(best),
            "min_measure_decimal": best.to_decimal(digits),
            "argmin": best_n,
            "candidate_count": len(candidates),
            "candidates": candidates,
            "verdict": verdict,
            "caveat": MILD_MIXING_CAVEAT,
        }


def _rigidity_chunk(T: IET, start_n: int, start: PiecewiseTranslation,
                    count: int, eps: Scalar) -> List[Tuple[int, Scalar]]:
    """Worker: measures for n = start_n + 1 .. start_n + count, composing from a checkpoint."""
    rows = []
    for n, p in iterate_powers(T, count, start=start, start_n=start_n):
        if n > start_n:
            rows.append((n, _far_measure(p, eps)))
    return rows


def rigidity_profile(T: IET, N: int, eps, threshold=None,
                     max_workers: int = 1, chunk_size: int = 250) -> RigidityProfile:
    """
    Rigidity measures for every 1 <= n <= N; times below `threshold` are candidates.

    Args:
        T: The IET
        N: Horizon
        eps: Displacement tolerance (> 0)
        threshold: Candidate cut-off, defaults to eps
        max_workers: >1 splits n into chunks on a process pool
        chunk_size: n values per chunk

    Returns:
        RigidityProfile with entries in n order
    """
    if N < 1:
        raise DiagnosticsError(f"N must be >= 1, got {N}")
    eps = _check_eps(eps)
    threshold = eps if threshold is None else _as_scalar(threshold)
    profile = RigidityProfile(eps, threshold, N)

    if max_workers <= 1 or N <= chunk_size:
        profile.entries = _rigidity_chunk(T, 0, PiecewiseTranslation.identity(), N, eps)
        return profile

    checkpoints = checkpoint_powers(T, N - 1, chunk_size)
    jobs = [(start, checkpoints[start], min(chunk_size, N - start)) for start in sorted(checkpoints)]
    logger.info("rigidity sweep: %d chunks on %d workers", len(jobs), max_workers)
    with ProcessPoolExecutor(max_workers=max_workers) as executor:
        futures = [executor.submit(_rigidity_chunk, T, start, p, count, eps)
                   for start, p, count in jobs]
        for future in futures:
            profile.entries.extend(future.result())
    return profile


# -- correlations --------------------------------------------------------------

def correlation(T: IET, A, B, n: int) -> Scalar:
    """Exact Leb(A cap T^-n B) for interval unions A and B."""
    A = A if isinstance(A, IntervalUnion) else IntervalUnion.of(A)
    B = B if isinstance(B, IntervalUnion) else IntervalUnion.of(B)
    p = power(T, n)
    total = ZERO
    for k, s in enumerate(p.shifts):
        piece = IntervalUnion(((p.breakpoints[k], p.breakpoints[k + 1]),))
        total += A.intersect(piece).intersect(B.translate(-s)).measure
    return total


# -- invariance windows --------------------------------------------------------

def invariance_window_measure(T: IET, f: StepFunction, delta, b: int,
                              shift_power: int = 1) -> Scalar:
    """
    Exact measure of {x : |f(T^{i+s} x) - f(T^i x)| < delta for all -b <= i <= b}, s = shift_power.

    Every f o T^j is an exact step function, so the set is a finite union of
    intervals.
    """
    delta = Scalar._coerce(delta)
    if delta is None or delta.sign <= 0:
        raise DiagnosticsError(f"delta must be positive, got {delta}")
    if b < 0:
        raise DiagnosticsError(f"b must be >= 0, got {b}")
    lo = min(-b, -b + shift_power)
    hi = max(b, b + shift_power)
    pulled = {}
    for j, p in iterate_powers(T, hi - lo, start=power(T, lo), start_n=lo):
        pulled[j] = f.compose(p)

    worst = StepFunction.constant(ZERO)
    for i in range(-b, b + 1):
        gap = pulled[i + shift_power].combine(pulled[i], lambda u, v: abs(u - v))
        worst = worst.combine(gap, max)
    return worst.measure_where(lambda v: v < delta)


if __name__ == "__main__":
    import sys

    from catalog import load_catalog

    if len(sys.argv) < 4:
        print("Usage: python diagnostics.py <catalog-name> <N> <eps>")
        sys.exit(1)
    T = load_catalog()[sys.argv[1]].iet()
    profile = rigidity_profile(T, int(sys.argv[2]), parse_scalar(sys.argv[3]))
    for key, value in profile.summary().items():
        print(f"  {key}: {value}")

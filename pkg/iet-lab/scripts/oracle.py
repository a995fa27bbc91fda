#!/usr/bin/env python3
"""
High-Precision Floating Oracle

Re-runs the linear-recurrence and bad-approximation sweeps in mpmath
floating point, independent of the exact Scalar engine. Used only to
cross-check regression constants.
"""

import logging
import sys
from bisect import bisect_right, insort
from typing import List, Tuple

import mpmath

from iet import IET

logger = logging.getLogger(__name__)

DEFAULT_DPS = 200


class _FloatIET:
    """Float copy of an IET built from the lengths alone."""

    def __init__(self, T: IET, dps: int):
        lengths = [v.approx(dps) for v in T.lengths]
        d = len(lengths)
        inv = [T.perm.inverse()(k) - 1 for k in range(1, d + 1)]
        self.starts = [mpmath.mpf(0)]
        for length in lengths[:-1]:
            self.starts.append(self.starts[-1] + length)
        self.image_starts = [mpmath.mpf(0)]
        for k in range(d - 1):
            self.image_starts.append(self.image_starts[-1] + lengths[inv[k]])
        # shift of interval i is image_start[pi(i)] - start[i]
        self.shifts = [self.image_starts[T.perm(i + 1) - 1] - self.starts[i] for i in range(d)]
        self.sources = inv
        self.betas = self.starts[1:]

    def forward(self, x):
        return x + self.shifts[bisect_right(self.starts, x) - 1]

    def backward(self, y):
        k = bisect_right(self.image_starts, y) - 1
        return y - self.shifts[self.sources[k]]


def lin_rec_min(T: IET, N: int, dps: int = DEFAULT_DPS) -> Tuple[mpmath.mpf, int]:
    """
    min over 1 <= n <= N of n * eps_n in floating point.

    Gaps below 10**(-dps/2) count as collisions (eps_n = 0).

    Returns:
        (minimum, first n attaining it)
    """
    with mpmath.workdps(dps):
        F = _FloatIET(T, dps)
        tol = mpmath.mpf(10) ** (-(dps // 2))
        points: List = [mpmath.mpf(0)] + list(F.betas) + [mpmath.mpf(1)]
        frontier = list(F.betas)
        best, best_n = None, None
        if len(points) > 2:
            eps = min(points[i + 1] - points[i] for i in range(len(points) - 1))
        else:
            eps = mpmath.mpf(1)
        for n in range(1, N + 1):
            frontier = [F.backward(p) for p in frontier]
            for p in frontier:
                if abs(p) < tol:
                    continue
                idx = bisect_right(points, p)
                left_gap, right_gap = p - points[idx - 1], points[idx] - p
                eps = min(eps, left_gap, right_gap)
                insort(points, p)
            if eps < tol:
                eps = mpmath.mpf(0)
            value = eps * n
            if best is None or value < best:
                best, best_n = value, n
        logger.debug("oracle lin-rec min %s at n=%d", mpmath.nstr(best, 20), best_n)
        return +best, best_n


def bad_approx_min(T: IET, N: int, dps: int = DEFAULT_DPS) -> Tuple[mpmath.mpf, int]:
    """min over 1 <= n <= N and p, q in D of n * |q - T^n p| in floating point."""
    with mpmath.workdps(dps):
        F = _FloatIET(T, dps)
        if not F.betas:
            raise ValueError("D is empty for a single interval")
        orbit = list(F.betas)
        best, best_n = None, None
        for n in range(1, N + 1):
            orbit = [F.forward(y) for y in orbit]
            for y in orbit:
                for q in F.betas:
                    value = abs(q - y) * n
                    if best is None or value < best:
                        best, best_n = value, n
        return +best, best_n


def agree(exact, approx, digits: int = 50) -> bool:
    """True when an exact Scalar and an mpf agree to `digits` significant digits."""
    with mpmath.workdps(digits + 20):
        reference = exact.approx(digits + 20)
        if reference == 0:
            return abs(approx) < mpmath.mpf(10) ** (-digits)
        return abs(reference - approx) <= abs(reference) * mpmath.mpf(10) ** (-digits)


if __name__ == "__main__":
    from catalog import load_catalog

    if len(sys.argv) < 3:
        print("Usage: python oracle.py <catalog-name> <N>")
        sys.exit(1)
    T = load_catalog()[sys.argv[1]].iet()
    value, n = lin_rec_min(T, int(sys.argv[2]))
    print(f"lin-rec min  {mpmath.nstr(value, 30)}  at n={n}")
    if T.betas:
        value, n = bad_approx_min(T, int(sys.argv[2]))
        print(f"bad-approx   {mpmath.nstr(value, 30)}  at n={n}")

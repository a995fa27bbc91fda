#!/usr/bin/env python3
"""
Interval Exchange Maps and Piecewise Translations

An IET is the data (lambda, pi): lengths summing to 1 and a permutation.
On I_i = [beta_{i-1}, beta_i) it acts by

    T x = x - sum_{j < i} lambda_j + sum_{pi j < pi i} lambda_j

Every power T^n is held exactly as a PiecewiseTranslation: sorted
breakpoints 0 = b_0 < ... < b_m = 1 and one shift per piece, in canonical
(merged) form. Intervals are half-open [l, r) throughout.
"""

import logging
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from perm import Permutation
from scalar import ONE, ZERO, Scalar, common_radicand

logger = logging.getLogger(__name__)


class IETError(ValueError):
    """Base class for IET construction and evaluation problems."""


class NonpositiveLength(IETError):
    pass


class DimensionMismatch(IETError):
    pass


class OutOfDomain(IETError):
    pass


class LengthSumError(IETError):
    """Lengths do not sum to 1 and normalization was not requested."""


def _push(breaks: List[Scalar], values: List, end: Scalar, value) -> None:
    """Close the current piece at `end`, merging with the previous piece when values agree."""
    if values and values[-1] == value:
        breaks[-1] = end
    else:
        breaks.append(end)
        values.append(value)


def _pull_back(breakpoints: Sequence[Scalar], shifts: Sequence[Scalar],
               target: Sequence[Scalar]) -> Iterator[Tuple[Scalar, Scalar, int]]:
    """
    Walk the pieces of a translation against a target partition of [0,1).

    Yields (end, shift, target_index) segments in domain order: the domain
    segment ending at `end` moves by `shift` into target piece `target_index`.
    """
    for k, s in enumerate(shifts):
        hi = breakpoints[k + 1]
        image_hi = hi + s
        j = bisect_right(target, breakpoints[k] + s) - 1
        while True:
            cut = target[j + 1]
            if cut >= image_hi:
                yield hi, s, j
                break
            yield cut - s, s, j
            j += 1


@dataclass(frozen=True)
class PiecewiseTranslation:
    """Canonical piecewise translation of [0,1); piece k maps [b_k, b_{k+1}) by + shifts[k]."""

    breakpoints: Tuple[Scalar, ...]
    shifts: Tuple[Scalar, ...]

    @staticmethod
    def identity() -> "PiecewiseTranslation":
        return PiecewiseTranslation((ZERO, ONE), (ZERO,))

    @property
    def pieces(self) -> int:
        return len(self.shifts)

    def piece_of(self, x: Scalar) -> int:
        if x < 0 or x >= 1:
            raise OutOfDomain(f"{x} is outside [0, 1)")
        return bisect_right(self.breakpoints, x) - 1

    def __call__(self, x: Scalar) -> Scalar:
        return x + self.shifts[self.piece_of(x)]

    def compose(self, other: "PiecewiseTranslation") -> "PiecewiseTranslation":
        """Return self o other (apply `other` first)."""
        breaks, shifts = [ZERO], []
        for end, s, j in _pull_back(other.breakpoints, other.shifts, self.breakpoints):
            _push(breaks, shifts, end, s + self.shifts[j])
        return PiecewiseTranslation(tuple(breaks), tuple(shifts))

    def image_pieces(self) -> List[Tuple[Scalar, Scalar, Scalar]]:
        """Image intervals (left, right, shift) sorted by left endpoint."""
        pieces = [(self.breakpoints[k] + s, self.breakpoints[k + 1] + s, s)
                  for k, s in enumerate(self.shifts)]
        return sorted(pieces, key=lambda p: p[0])

    def inverse(self) -> "PiecewiseTranslation":
        breaks, shifts = [ZERO], []
        for _, right, s in self.image_pieces():
            _push(breaks, shifts, right, -s)
        return PiecewiseTranslation(tuple(breaks), tuple(shifts))

    def preserves_measure(self) -> bool:
        """Image pieces tile [0,1) with no gaps or overlaps."""
        edge = ZERO
        for left, right, _ in self.image_pieces():
            if left != edge:
                return False
            edge = right
        return edge == ONE

    def is_identity(self) -> bool:
        return self.pieces == 1 and self.shifts[0] == 0


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant function on [0,1) in canonical form."""

    breakpoints: Tuple[Scalar, ...]
    values: Tuple[Scalar, ...]

    @staticmethod
    def constant(value) -> "StepFunction":
        return StepFunction((ZERO, ONE), (Scalar._coerce(value),))

    @staticmethod
    def from_pieces(breakpoints: Sequence[Scalar], values: Sequence) -> "StepFunction":
        """Build from any (possibly uncanonical) pieces; adjacent equal values merge."""
        if len(breakpoints) != len(values) + 1:
            raise DimensionMismatch("need one more breakpoint than values")
        breaks, merged = [ZERO], []
        for k, v in enumerate(values):
            _push(breaks, merged, breakpoints[k + 1], Scalar._coerce(v))
        return StepFunction(tuple(breaks), tuple(merged))

    @staticmethod
    def indicator(intervals: Sequence[Tuple[Scalar, Scalar]]) -> "StepFunction":
        """Indicator of a union of half-open intervals (clipped to [0,1))."""
        cuts = []
        for left, right in sorted(intervals, key=lambda iv: iv[0]):
            left, right = max(Scalar._coerce(left), ZERO), min(Scalar._coerce(right), ONE)
            if left >= right:
                continue
            if cuts and left <= cuts[-1][1]:
                cuts[-1] = (cuts[-1][0], max(cuts[-1][1], right))
            else:
                cuts.append((left, right))
        breaks, values = [ZERO], []
        edge = ZERO
        for left, right in cuts:
            if left > edge:
                _push(breaks, values, left, ZERO)
            _push(breaks, values, right, ONE)
            edge = right
        if edge < ONE:
            _push(breaks, values, ONE, ZERO)
        return StepFunction(tuple(breaks), tuple(values))

    def __call__(self, x: Scalar) -> Scalar:
        if x < 0 or x >= 1:
            raise OutOfDomain(f"{x} is outside [0, 1)")
        return self.values[bisect_right(self.breakpoints, x) - 1]

    def compose(self, p: PiecewiseTranslation) -> "StepFunction":
        """Return f o P."""
        breaks, values = [ZERO], []
        for end, _, j in _pull_back(p.breakpoints, p.shifts, self.breakpoints):
            _push(breaks, values, end, self.values[j])
        return StepFunction(tuple(breaks), tuple(values))

    def combine(self, other: "StepFunction", op: Callable[[Scalar, Scalar], Scalar]) -> "StepFunction":
        """Pointwise op(self, other) on the common refinement."""
        breaks, values = [ZERO], []
        i = j = 0
        while i < len(self.values):
            a_end, b_end = self.breakpoints[i + 1], other.breakpoints[j + 1]
            end = min(a_end, b_end)
            _push(breaks, values, end, Scalar._coerce(op(self.values[i], other.values[j])))
            if a_end == end:
                i += 1
            if b_end == end:
                j += 1
        return StepFunction(tuple(breaks), tuple(values))

    def measure_where(self, predicate: Callable[[Scalar], bool]) -> Scalar:
        total = ZERO
        for k, v in enumerate(self.values):
            if predicate(v):
                total += self.breakpoints[k + 1] - self.breakpoints[k]
        return total

    def integral(self) -> Scalar:
        total = ZERO
        for k, v in enumerate(self.values):
            total += v * (self.breakpoints[k + 1] - self.breakpoints[k])
        return total

    def pieces_with_lengths(self) -> List[Tuple[Scalar, Scalar, Scalar]]:
        """(left, right, value) per piece."""
        return [(self.breakpoints[k], self.breakpoints[k + 1], v) for k, v in enumerate(self.values)]


@dataclass(frozen=True)
class IET:
    """
    Interval exchange transformation on [0,1).

    Build with build_iet(); the derived fields are filled on construction.
    """

    lengths: Tuple[Scalar, ...]
    perm: Permutation
    normalized: bool = False
    betas: Tuple[Scalar, ...] = field(init=False)
    translations: Tuple[Scalar, ...] = field(init=False)
    radicand: Optional[int] = field(init=False)
    _image_starts: Tuple[Scalar, ...] = field(init=False, repr=False)
    _image_sources: Tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        d = self.perm.d
        prefix = [ZERO]
        for length in self.lengths:
            prefix.append(prefix[-1] + length)
        inv = self.perm.inverse()
        # image_start[k] = total length of intervals landing before position k
        image_starts = [ZERO]
        for k in range(1, d):
            image_starts.append(image_starts[-1] + self.lengths[inv(k) - 1])
        translations = tuple(image_starts[self.perm(i) - 1] - prefix[i - 1] for i in range(1, d + 1))
        object.__setattr__(self, "betas", tuple(prefix[1:d]))
        object.__setattr__(self, "translations", translations)
        object.__setattr__(self, "radicand", common_radicand(self.lengths))
        object.__setattr__(self, "_image_starts", tuple(image_starts))
        object.__setattr__(self, "_image_sources", tuple(inv(k) - 1 for k in range(1, d + 1)))

    @property
    def d(self) -> int:
        return self.perm.d

    def evaluate(self, x: Scalar) -> Scalar:
        if x < 0 or x >= 1:
            raise OutOfDomain(f"{x} is outside [0, 1)")
        return x + self.translations[bisect_right(self.betas, x)]

    def evaluate_inverse(self, y: Scalar) -> Scalar:
        if y < 0 or y >= 1:
            raise OutOfDomain(f"{y} is outside [0, 1)")
        k = bisect_right(self._image_starts, y) - 1
        return y - self.translations[self._image_sources[k]]

    def one_sided_limits(self, a: Scalar) -> Tuple[Optional[Scalar], Optional[Scalar]]:
        """(T_+(a), T_-(a)); a side outside the domain is None."""
        if a < 0 or a > 1:
            raise OutOfDomain(f"{a} is outside [0, 1]")
        plus = a + self.translations[bisect_right(self.betas, a)] if a < 1 else None
        minus = a + self.translations[bisect_left(self.betas, a)] if a > 0 else None
        return plus, minus

    def breakpoints(self) -> List[Scalar]:
        """All formal breakpoints beta_1..beta_{d-1}."""
        return list(self.betas)

    def discontinuities(self) -> List[Scalar]:
        """The betas where adjacent translations differ."""
        return [b for i, b in enumerate(self.betas)
                if self.translations[i] != self.translations[i + 1]]

    def min_spacing(self) -> Optional[Scalar]:
        """Minimal spacing between points of D (None when |D| < 2)."""
        gaps = [self.betas[i + 1] - self.betas[i] for i in range(len(self.betas) - 1)]
        return min(gaps) if gaps else None

    def to_piecewise(self) -> PiecewiseTranslation:
        breaks, shifts = [ZERO], []
        for i, s in enumerate(self.translations):
            _push(breaks, shifts, self.betas[i] if i < len(self.betas) else ONE, s)
        return PiecewiseTranslation(tuple(breaks), tuple(shifts))

    def inverse_iet(self) -> "IET":
        """T^-1 as an IET: lengths in image order with permutation pi^-1."""
        inv = self.perm.inverse()
        return IET(tuple(self.lengths[inv(k) - 1] for k in range(1, self.d + 1)), inv, self.normalized)

    def __str__(self):
        return f"IET(pi={self.perm}; lambda={', '.join(str(v) for v in self.lengths)})"


def build_iet(lengths: Sequence, perm: Permutation, normalize: bool = True) -> IET:
    """
    Validate lengths and build the IET.

    Args:
        lengths: d positive scalars
        perm: Permutation of {1..d}
        normalize: Divide by the sum when it is not 1 (flagged on the result)

    Returns:
        IET with betas and translations computed

    Raises:
        DimensionMismatch: len(lengths) != d
        NonpositiveLength: some length <= 0
        LengthSumError: sum != 1 and normalize is False
        IncompatibleRadicands: lengths from different quadratic fields
    """
    values = tuple(Scalar._coerce(v) for v in lengths)
    if any(v is None for v in values):
        raise IETError("lengths must be Scalars, ints or Fractions")
    if len(values) != perm.d:
        raise DimensionMismatch(f"{len(values)} lengths for a permutation on {perm.d} symbols")
    for i, v in enumerate(values, 1):
        if v.sign <= 0:
            raise NonpositiveLength(f"lambda_{i} = {v} is not positive")
    common_radicand(values)
    total = sum(values, ZERO)
    normalized = False
    if total != 1:
        if not normalize:
            raise LengthSumError(f"lengths sum to {total}, not 1")
        values = tuple(v / total for v in values)
        normalized = True
        logger.info("normalized lengths by their sum %s", total)
    return IET(values, perm, normalized)


def iterate_powers(T: IET, n_max: int, step: int = 1,
                   start: Optional[PiecewiseTranslation] = None,
                   start_n: int = 0) -> Iterator[Tuple[int, PiecewiseTranslation]]:
    """
    Yield (n, T^n) for n = start_n, start_n + step, ... up to |n - start_n| = n_max.

    Each power is T o T^n (or T^-1 o T^-n), merged canonically.
    """
    base = T.to_piecewise() if step > 0 else T.to_piecewise().inverse()
    current = start or PiecewiseTranslation.identity()
    n = start_n
    yield n, current
    for _ in range(n_max):
        current = base.compose(current)
        n += 1 if step > 0 else -1
        yield n, current


def power(T: IET, n: int) -> PiecewiseTranslation:
    """Exact canonical T^n (negative n gives the inverse power)."""
    result = PiecewiseTranslation.identity()
    for _, result in iterate_powers(T, abs(n), 1 if n >= 0 else -1):
        pass
    return result


def checkpoint_powers(T: IET, n_max: int, chunk: int) -> Dict[int, PiecewiseTranslation]:
    """T^0, T^chunk, T^{2 chunk}, ... up to n_max, built by repeated composition with T^chunk."""
    jump = power(T, chunk)
    checkpoints = {0: PiecewiseTranslation.identity()}
    current, n = checkpoints[0], 0
    while n + chunk <= n_max:
        current = jump.compose(current)
        n += chunk
        checkpoints[n] = current
    return checkpoints


def displacement_profile(T: IET, n: int) -> StepFunction:
    """The step function x -> T^n x - x."""
    p = power(T, n)
    return StepFunction(p.breakpoints, p.shifts)


def formal_breakpoints(T: IET, n: int) -> List[Scalar]:
    """Sorted union of T^-i D for 0 <= i < n: every breakpoint of T^n lies in it."""
    points = set()
    frontier = list(T.betas)
    for _ in range(n):
        points.update(frontier)
        frontier = [T.evaluate_inverse(p) for p in frontier]
    return sorted(points)


def inverse_discontinuity_check(T: IET) -> Dict:
    """
    Check that every discontinuity of T^-1 equals T(r) or T(T(r)) for a discontinuity r of T.

    Returns:
        Dictionary with `holds`, per-point witnesses and unexplained points
    """
    targets = T.discontinuities()
    witnesses, unexplained = [], []
    for y in T.inverse_iet().discontinuities():
        found = None
        for r in targets:
            once = T.evaluate(r)
            if once == y:
                found = (r, 1)
                break
            if T.evaluate(once) == y:
                found = (r, 2)
                break
        if found:
            witnesses.append({"point": str(y), "source": str(found[0]), "power": found[1]})
        else:
            unexplained.append(str(y))
    return {"holds": not unexplained, "witnesses": witnesses, "unexplained": unexplained}


if __name__ == "__main__":
    import sys

    from perm import parse_permutation
    from scalar import parse_scalar

    if len(sys.argv) < 4:
        print("Usage: python iet.py \"<perm>\" \"<l1, l2, ...>\" <n>")
        sys.exit(1)
    T = build_iet([parse_scalar(t) for t in sys.argv[2].split(",")], parse_permutation(sys.argv[1]))
    p = power(T, int(sys.argv[3]))
    print(T)
    print(f"T^{sys.argv[3]}: {p.pieces} pieces")
    for k, s in enumerate(p.shifts):
        print(f"  [{p.breakpoints[k]}, {p.breakpoints[k + 1]})  + {s}")

#!/usr/bin/env python3
"""
Dynamical Partitions, Towers and Recurrence Statistics

Partitions of [0,1) by the union of T^-i D (0 <= i <= n), the shortest
cell length eps_n, towers T^-p J, ..., J, ..., T^q J, and the finite-horizon
statistics behind linear recurrence and bad approximation.

All quantities are exact Scalars.
"""

import logging
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from iet import IET
from perm import build_sigma, is_type_w, loop_through_zero
from scalar import ONE, ZERO, Scalar

logger = logging.getLogger(__name__)

Interval = Tuple[Scalar, Scalar]


class DynamicsError(ValueError):
    """Base class for dynamical-partition and tower failures."""


class EmptyDiscontinuitySet(DynamicsError):
    pass


class EmptyInterval(DynamicsError):
    pass


class NotTypeW(DynamicsError):
    pass


class IdocViolation(DynamicsError):
    pass


# -- partitions ----------------------------------------------------------------

@dataclass(frozen=True)
class DynamicalPartition:
    """
    Partition of [0,1) by the points of T^-i D, 0 <= i <= n.

    `eps` is the shortest cell length, or 0 once two orbit points have
    collided; `min_gap` is the shortest cell of the merged partition either way.
    """

    n: int
    points: Tuple[Scalar, ...]
    eps: Scalar
    min_gap: Scalar
    collision: Optional[Dict] = None

    @property
    def collided(self) -> bool:
        return self.collision is not None

    def cells(self) -> List[Interval]:
        edges = [ZERO, *self.points, ONE]
        return [(edges[k], edges[k + 1]) for k in range(len(edges) - 1)]


class PartitionSweep:
    """Incremental partition: advance() moves from n to n + 1 by pulling the frontier back under T."""

    def __init__(self, T: IET):
        self.T = T
        self.n = 0
        self.points: List[Scalar] = []
        self.min_gap = ONE
        self.collision: Optional[Dict] = None
        self.frontier: List[Tuple[Scalar, Scalar]] = [(b, b) for b in T.betas]
        for point, source in self.frontier:
            self._insert(point, source)

    def _insert(self, point: Scalar, source: Scalar) -> None:
        if point == 0:
            return  # merges with the left boundary
        idx = bisect_left(self.points, point)
        if idx < len(self.points) and self.points[idx] == point:
            if self.collision is None:
                self.collision = {"n": self.n, "point": point, "source": source}
                logger.info("orbit collision at n=%d: %s (from %s)", self.n, point, source)
            return
        left = self.points[idx - 1] if idx else ZERO
        right = self.points[idx] if idx < len(self.points) else ONE
        self.points.insert(idx, point)
        self.min_gap = min(self.min_gap, point - left, right - point)

    @property
    def eps(self) -> Scalar:
        return ZERO if self.collision else self.min_gap

    def advance(self) -> None:
        self.n += 1
        self.frontier = [(self.T.evaluate_inverse(p), src) for p, src in self.frontier]
        for point, source in self.frontier:
            self._insert(point, source)

    def snapshot(self) -> DynamicalPartition:
        return DynamicalPartition(self.n, tuple(self.points), self.eps, self.min_gap, self.collision)


def partition(T: IET, n: int) -> DynamicalPartition:
    """Exact partition by the union of T^-i D for 0 <= i <= n."""
    if n < 0:
        raise DynamicsError(f"n must be >= 0, got {n}")
    sweep = PartitionSweep(T)
    while sweep.n < n:
        sweep.advance()
    return sweep.snapshot()


# -- infinite distinct orbits --------------------------------------------------

@dataclass(frozen=True)
class IdocResult:
    passed: bool
    horizon: int
    n: Optional[int] = None
    point: Optional[Scalar] = None    # p in D with p = T^-n q
    source: Optional[Scalar] = None   # q in D

    def to_json(self) -> Dict:
        if self.passed:
            return {"status": "pass", "horizon": self.horizon}
        return {"status": "fail", "horizon": self.horizon, "n": self.n,
                "point": str(self.point), "source": str(self.source)}


def idoc_check(T: IET, N: int) -> IdocResult:
    """
    Check D cap T^-n D = empty for 1 <= n <= N.

    An empty D (d = 1) passes vacuously.
    """
    if N < 1:
        raise DynamicsError(f"N must be >= 1, got {N}")
    targets = set(T.betas)
    frontier = [(b, b) for b in T.betas]
    for n in range(1, N + 1):
        frontier = [(T.evaluate_inverse(p), src) for p, src in frontier]
        for point, source in frontier:
            if point in targets:
                return IdocResult(False, N, n, point, source)
    return IdocResult(True, N)


# -- recurrence statistics -----------------------------------------------------

@dataclass
class LinRecStats:
    """Rows (n, eps_n, n*eps_n, running min) for 1 <= n <= N."""

    horizon: int
    rows: List[Tuple[int, Scalar, Scalar, Scalar]] = field(default_factory=list)
    bounded_by_one: bool = True
    first_collision: Optional[int] = None

    @property
    def running_min(self) -> Scalar:
        return self.rows[-1][3] if self.rows else ONE

    def argmin(self) -> Optional[int]:
        best = self.running_min
        for n, _, n_eps, _ in self.rows:
            if n_eps == best:
                return n
        return None


def lin_rec_stat(T: IET, N: int) -> LinRecStats:
    """Sweep n = 1..N recording eps_n, n*eps_n and the running minimum of n*eps_n."""
    if N < 1:
        raise DynamicsError(f"N must be >= 1, got {N}")
    stats = LinRecStats(N)
    sweep = PartitionSweep(T)
    best = None
    for n in range(1, N + 1):
        sweep.advance()
        eps = sweep.eps
        n_eps = eps * n
        best = n_eps if best is None or n_eps < best else best
        stats.rows.append((n, eps, n_eps, best))
        if n_eps > 1:
            stats.bounded_by_one = False
        if sweep.collision and stats.first_collision is None:
            stats.first_collision = n
        if n % 1000 == 0:
            logger.debug("lin-rec sweep at n=%d, running min %s", n, best)
    return stats


@dataclass(frozen=True)
class BadApproxResult:
    value: Scalar
    n: int
    p: Scalar
    q: Scalar

    def to_json(self, digits: int = 12) -> Dict:
        return {"value": str(self.value), "decimal": self.value.to_decimal(digits),
                "n": self.n, "p": str(self.p), "q": str(self.q)}


def bad_approx_stat(T: IET, N: int) -> BadApproxResult:
    """
    Minimum of n*|q - T^n p| over 1 <= n <= N and p, q in D.

    Raises:
        EmptyDiscontinuitySet: d = 1
    """
    if not T.betas:
        raise EmptyDiscontinuitySet("D is empty for a single interval")
    if N < 1:
        raise DynamicsError(f"N must be >= 1, got {N}")
    orbit = list(T.betas)
    best = None
    for n in range(1, N + 1):
        orbit = [T.evaluate(y) for y in orbit]
        for p, y in zip(T.betas, orbit):
            for q in T.betas:
                value = abs(q - y) * n
                if best is None or value < best.value:
                    best = BadApproxResult(value, n, p, q)
    return best


def proposition_check(T: IET, N: int) -> Dict:
    """
    Finite-horizon form of "badly approximable implies linearly recurrent":
    bad_approx > 0 and idoc pass must give a positive lin-rec running minimum.
    """
    idoc = idoc_check(T, N)
    lin = lin_rec_stat(T, N)
    bad = bad_approx_stat(T, N) if T.betas else None
    premise = bad is not None and bad.value > 0 and idoc.passed
    return {
        "horizon": N,
        "bad_approx_positive": bool(bad and bad.value > 0),
        "idoc_pass": idoc.passed,
        "lin_rec_min_positive": lin.running_min > 0,
        "consistent": (not premise) or lin.running_min > 0,
    }


# -- towers --------------------------------------------------------------------

@dataclass(frozen=True)
class Tower:
    """Disjoint floors T^-p J, ..., J, ..., T^q J listed bottom to top."""

    J: Interval
    p: int
    q: int
    floors: Tuple[Interval, ...]
    n: Optional[int] = None

    @property
    def width(self) -> Scalar:
        return self.J[1] - self.J[0]

    @property
    def bottom_floor(self) -> Interval:
        return self.floors[0]

    @property
    def top_floor(self) -> Interval:
        return self.floors[-1]

    @property
    def measure(self) -> Scalar:
        return self.width * len(self.floors)

    @property
    def reaches_height(self) -> Optional[bool]:
        return None if self.n is None else self.p + self.q >= self.n - 1

    def shifts(self) -> List[Scalar]:
        """alpha_k with T^k J = T^{k-1} J + alpha_k."""
        return [self.floors[k][0] - self.floors[k - 1][0] for k in range(1, len(self.floors))]

    def is_disjoint(self) -> bool:
        ordered = sorted(self.floors, key=lambda f: f[0])
        return all(ordered[k][1] <= ordered[k + 1][0] for k in range(len(ordered) - 1))

    def is_translate_stack(self) -> bool:
        return all(f[1] - f[0] == self.width for f in self.floors)

    def truncate(self, n: int) -> "Tower":
        """Sub-tower with p + q = n - 1 floors above the bottom, keeping J."""
        if self.p + self.q < n - 1:
            raise DynamicsError(f"tower of height {self.p + self.q + 1} cannot give {n} floors")
        p = min(self.p, n - 1)
        q = n - 1 - p
        return Tower(self.J, p, q, self.floors[self.p - p:self.p + q + 1], n)

    def to_json(self) -> Dict:
        return {
            "J": [str(self.J[0]), str(self.J[1])],
            "p": self.p,
            "q": self.q,
            "measure": str(self.measure),
            "bottom_floor": [str(v) for v in self.bottom_floor],
            "top_floor": [str(v) for v in self.top_floor],
            "disjoint": self.is_disjoint(),
        }


def _has_interior_point(points: Sequence[Scalar], left: Scalar, right: Scalar) -> bool:
    idx = bisect_right(points, left)
    return idx < len(points) and points[idx] < right


class _FloorIndex:
    """Sorted floor left endpoints; equal-width floors overlap iff their lefts are closer than the width."""

    def __init__(self, width: Scalar):
        self.width = width
        self.lefts: List[Scalar] = []

    def overlaps(self, left: Scalar) -> bool:
        idx = bisect_left(self.lefts, left)
        for k in (idx - 1, idx):
            if 0 <= k < len(self.lefts) and abs(self.lefts[k] - left) < self.width:
                return True
        return False

    def add(self, left: Scalar) -> None:
        self.lefts.insert(bisect_left(self.lefts, left), left)


def build_tower(T: IET, J: Interval, n: Optional[int] = None,
                max_forward: Optional[int] = None,
                max_backward: Optional[int] = None) -> Tower:
    """
    Greedy-maximal tower over J.

    Moves up while the current floor has no discontinuity of T in its
    interior, down while it has no discontinuity of T^-1 in its interior,
    and stops a direction as soon as the next floor would overlap an
    existing one.

    Args:
        T: The IET
        J: Half-open interval [left, right) inside [0,1)
        n: Height the tower is measured against (p + q >= n - 1), optional
        max_forward: Cap on q (None = maximal)
        max_backward: Cap on p (None = maximal)

    Raises:
        EmptyInterval: right <= left
    """
    left, right = Scalar._coerce(J[0]), Scalar._coerce(J[1])
    if right <= left:
        raise EmptyInterval(f"[{left}, {right}) is empty")
    if left < 0 or right > 1:
        raise DynamicsError(f"[{left}, {right}) is not inside [0, 1)")
    width = right - left
    index = _FloorIndex(width)
    index.add(left)

    forward_cuts = T.discontinuities()
    up = []
    cur = left
    while max_forward is None or len(up) < max_forward:
        if _has_interior_point(forward_cuts, cur, cur + width):
            break
        nxt = T.evaluate(cur)
        if index.overlaps(nxt):
            break
        index.add(nxt)
        up.append(nxt)
        cur = nxt

    backward_cuts = T.inverse_iet().discontinuities()
    down = []
    cur = left
    while max_backward is None or len(down) < max_backward:
        if _has_interior_point(backward_cuts, cur, cur + width):
            break
        prv = T.evaluate_inverse(cur)
        if index.overlaps(prv):
            break
        index.add(prv)
        down.append(prv)
        cur = prv

    lefts = list(reversed(down)) + [left] + up
    floors = tuple((a, a + width) for a in lefts)
    return Tower((left, right), len(down), len(up), floors, n)


def loop_towers(T: IET, n: int) -> List[Dict]:
    """
    Towers of height n whose top floors sit on the loop through 0.

    I_0 = [0, eps_n/2) and I_i = [zeta_i - eps_n/2, zeta_i + eps_n/2) for the
    interior vertices zeta_i of the loop; each tower is T^-(n-1) I_i, ..., I_i.

    Raises:
        NotTypeW: the permutation is not type W
        IdocViolation: D cap T^-k D is nonempty for some k <= n
    """
    if T.d < 2 or not is_type_w(T.perm):
        raise NotTypeW(f"permutation {T.perm} is not type W")
    idoc = idoc_check(T, max(n, 1))
    if not idoc.passed:
        raise IdocViolation(f"orbit collision at n={idoc.n}")
    eps = partition(T, n).eps
    half = eps / 2
    loop = loop_through_zero(build_sigma(T.perm))
    tops = [(0, (ZERO, half))]
    for vertex in loop[1:]:
        zeta = T.betas[vertex - 1]
        tops.append((vertex, (zeta - half, zeta + half)))

    towers = []
    for i, (vertex, top) in enumerate(tops):
        tower = build_tower(T, top, n, max_forward=0, max_backward=n - 1)
        bound = eps * n if i else eps * n / 2
        towers.append({
            "index": i,
            "vertex": vertex,
            "tower": tower,
            "complete": tower.p == n - 1,
            "measure": tower.measure,
            "measure_bound": bound,
            "meets_bound": tower.measure >= bound,
        })
    return towers


if __name__ == "__main__":
    import sys

    from catalog import load_catalog

    if len(sys.argv) < 3:
        print("Usage: python dynpart.py <catalog-name> <N>")
        sys.exit(1)
    T = load_catalog()[sys.argv[1]].iet()
    stats = lin_rec_stat(T, int(sys.argv[2]))
    for n, eps, n_eps, best in stats.rows:
        print(f"{n:6d}  eps={eps.to_decimal()}  n*eps={n_eps.to_decimal()}  min={best.to_decimal()}")

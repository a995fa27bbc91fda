#!/usr/bin/env python3
"""
Permutation Combinatorics

Irreducibility, the auxiliary permutation sigma on {0..d}, the endpoint
identification graph (stored as sigma plus its orbits), the type W
predicate and the loop through vertex 0.

Vertex i of the graph stands for omega_i, with omega_0 = 0 and omega_d = 1.
"""

import itertools
import sys
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple


class PermutationError(ValueError):
    """Base class for permutation input problems."""


class NotABijection(PermutationError):
    pass


class EmptyInput(PermutationError):
    pass


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..d}; images[i-1] = pi(i)."""

    images: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))
        if not self.images:
            raise EmptyInput("permutation has no entries")
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise NotABijection(
                f"{' '.join(map(str, self.images))} is not a bijection of 1..{len(self.images)}")

    @property
    def d(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.d
        for i, image in enumerate(self.images, 1):
            inv[image - 1] = i
        return Permutation(tuple(inv))

    def __str__(self):
        return " ".join(str(v) for v in self.images)


@dataclass(frozen=True)
class EndpointGraph:
    """Functional graph of sigma; components are exactly the sigma-orbits."""

    d: int
    sigma: Tuple[int, ...]
    orbits: Tuple[Tuple[int, ...], ...]

    def orbit_of(self, vertex: int) -> Tuple[int, ...]:
        for orbit in self.orbits:
            if vertex in orbit:
                return orbit
        raise PermutationError(f"vertex {vertex} outside 0..{self.d}")

    def edges(self) -> List[Tuple[int, int]]:
        return list(enumerate(self.sigma))


def parse_permutation(text: str) -> Permutation:
    """
    Parse "a1 a2 ... ad" (1-indexed images).

    Raises:
        EmptyInput: blank text
        NotABijection: repeated or out-of-range images, or non-integer tokens
    """
    tokens = text.split()
    if not tokens:
        raise EmptyInput("empty permutation text")
    try:
        images = tuple(int(t) for t in tokens)
    except ValueError:
        raise NotABijection(f"non-integer entry in {text!r}") from None
    return Permutation(images)


def is_irreducible(p: Permutation) -> bool:
    """True iff no prefix {1..k}, k < d, is mapped onto itself."""
    running_max = 0
    for k in range(1, p.d):
        running_max = max(running_max, p(k))
        if running_max == k:
            return False
    return True


def _orbits(sigma: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    seen = [False] * len(sigma)
    orbits = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        orbit = []
        v = start
        while not seen[v]:
            seen[v] = True
            orbit.append(v)
            v = sigma[v]
        orbits.append(tuple(orbit))
    return tuple(orbits)


def build_sigma(p: Permutation) -> EndpointGraph:
    """
    Build the auxiliary permutation sigma of {0..d}:

        sigma(0) = pi^-1(1) - 1
        sigma(j) = d                       if pi(j) = d
        sigma(j) = pi^-1(pi(j) + 1) - 1    otherwise
    """
    d = p.d
    inv = p.inverse()
    sigma = [inv(1) - 1]
    for j in range(1, d + 1):
        sigma.append(d if p(j) == d else inv(p(j) + 1) - 1)
    return EndpointGraph(d=d, sigma=tuple(sigma), orbits=_orbits(sigma))


def is_type_w(p: Permutation) -> bool:
    """True iff vertices 0 and 1 (index d) lie in different sigma-orbits."""
    graph = build_sigma(p)
    return p.d not in graph.orbit_of(0)


def loop_through_zero(g: EndpointGraph) -> List[int]:
    """The sigma-orbit of 0 in edge order: [0, sigma(0), sigma^2(0), ...]."""
    loop = [0]
    v = g.sigma[0]
    while v != 0:
        loop.append(v)
        v = g.sigma[v]
    return loop


def scan_type_w(d: int) -> List[Dict]:
    """
    Classify every permutation of {1..d}.

    Args:
        d: Number of symbols (kept small; d! rows are produced)

    Returns:
        One dict per permutation with irreducible / type_w flags
    """
    if not 1 <= d <= 7:
        raise PermutationError(f"scan supports 1 <= d <= 7, got {d}")
    rows = []
    for images in itertools.permutations(range(1, d + 1)):
        p = Permutation(images)
        rows.append({
            "permutation": str(p),
            "irreducible": is_irreducible(p),
            "type_w": is_type_w(p),
        })
    return rows


def permutation_facts(p: Permutation) -> Dict:
    """Everything the reports say about a permutation."""
    graph = build_sigma(p)
    facts = {
        "permutation": str(p),
        "d": p.d,
        "irreducible": is_irreducible(p),
        "sigma": list(graph.sigma),
        "orbits": [list(o) for o in graph.orbits],
        "loop_through_zero": loop_through_zero(graph),
    }
    # type W is vacuous for a single interval
    facts["type_w"] = is_type_w(p) if p.d > 1 else None
    return facts


if __name__ == "__main__":
    if len(sys.argv) < 2:
        print("Usage: python perm.py \"a1 a2 ... ad\"")
        sys.exit(1)
    try:
        facts = permutation_facts(parse_permutation(" ".join(sys.argv[1:])))
    except PermutationError as e:
        print(f"✗ {e}")
        sys.exit(2)
    for key, value in facts.items():
        print(f"  {key}: {value}")

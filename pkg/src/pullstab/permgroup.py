"""Permutations of {0, ..., d-1} and block systems of transitive actions.

Composition follows the functional convention: ``p * q`` maps ``i`` to
``p(q(i))``, so ``q`` acts first.

Block systems of a transitive group correspond one-to-one with the blocks
containing the point 0, so enumeration only has to find those blocks.  Every
such block is the closure of a seed containing 0, which is what
``block_closure`` computes by union-find propagation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DegreeCapExceeded, DegreeMismatch, InvariantViolation, NotTransitive

DEFAULT_MAX_DEGREE = 16


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., d-1}; ``images[i]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if not images:
            raise ValueError("a permutation needs degree at least 1")
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, d: int) -> Permutation:
        return cls(tuple(range(d)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], d: int) -> Permutation:
        """Build a permutation from disjoint cycles; omitted points are fixed.

        Raises ``ValueError`` if a point repeats or falls outside range.
        """
        images = list(range(d))
        seen = set()
        for cycle in cycles:
            cycle = [int(i) for i in cycle]
            for i in cycle:
                if not 0 <= i < d:
                    raise ValueError(f"point {i} out of range for degree {d}")
                if i in seen:
                    raise ValueError(f"point {i} appears twice in cycle notation")
                seen.add(i)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
        return cls(tuple(images))

    @property
    def d(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * self.d
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self, include_fixed: bool = True) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its smallest point, ordered by it."""
        seen = [False] * self.d
        out = []
        for start in range(self.d):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cycle.append(j)
                j = self.images[j]
            if include_fixed or len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> list[int]:
        return cycle_type(self)

    def __str__(self):
        cycles = self.cycles(include_fixed=False)
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self):
        return f"Permutation({self}, d={self.d})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p`` after ``q``: i -> p(q(i))."""
    if p.d != q.d:
        raise DegreeMismatch(f"cannot compose permutations of degree {p.d} and {q.d}")
    return Permutation(tuple(p.images[j] for j in q.images))


def cycle_type(p: Permutation) -> list[int]:
    """Cycle lengths in descending order, fixed points included."""
    return sorted((len(c) for c in p.cycles()), reverse=True)


def _check_degrees(generators: Sequence[Permutation], d: int):
    for g in generators:
        if g.d != d:
            raise DegreeMismatch(f"generator of degree {g.d} in an action of degree {d}")


def orbit(generators: Sequence[Permutation], point: int, d: int) -> set[int]:
    _check_degrees(generators, d)
    seen = {point}
    todo = [point]
    while todo:
        i = todo.pop()
        for g in generators:
            j = g.images[i]
            if j not in seen:
                seen.add(j)
                todo.append(j)
    return seen


def is_transitive(generators: Sequence[Permutation], d: int) -> bool:
    """True iff the orbit of 0 under the generated group is everything."""
    return len(orbit(generators, 0, d)) == d


@dataclass(frozen=True)
class BlockSystem:
    """A partition of {0, ..., d-1} given by block ids.

    Ids are normalized: point 0 is in block 0 and ids appear in first-use
    order, so two equal partitions have equal ``block_of`` tuples.
    """

    block_of: tuple[int, ...]

    def __post_init__(self):
        relabel: dict[int, int] = {}
        normalized = tuple(relabel.setdefault(int(k), len(relabel)) for k in self.block_of)
        if not normalized:
            raise ValueError("empty partition")
        object.__setattr__(self, "block_of", normalized)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], d: int) -> BlockSystem:
        block_of = [-1] * d
        for k, block in enumerate(blocks):
            for i in block:
                if block_of[i] != -1:
                    raise ValueError(f"point {i} lies in two blocks")
                block_of[i] = k
        if -1 in block_of:
            raise ValueError(f"point {block_of.index(-1)} is in no block")
        return cls(tuple(block_of))

    @classmethod
    def singletons(cls, d: int) -> BlockSystem:
        return cls(tuple(range(d)))

    @classmethod
    def one_block(cls, d: int) -> BlockSystem:
        return cls((0,) * d)

    @property
    def d(self) -> int:
        return len(self.block_of)

    @property
    def b(self) -> int:
        return max(self.block_of) + 1

    @property
    def block_size(self) -> int:
        return self.d // self.b

    def blocks(self) -> list[tuple[int, ...]]:
        out: list[list[int]] = [[] for _ in range(self.b)]
        for i, k in enumerate(self.block_of):
            out[k].append(i)
        return [tuple(block) for block in out]

    def block_containing(self, i: int) -> tuple[int, ...]:
        k = self.block_of[i]
        return tuple(j for j, kk in enumerate(self.block_of) if kk == k)

    def is_invariant_under(self, p: Permutation) -> bool:
        if p.d != self.d:
            return False
        image_block: dict[int, int] = {}
        for i, k in enumerate(self.block_of):
            if image_block.setdefault(k, self.block_of[p.images[i]]) != self.block_of[p.images[i]]:
                return False
        return True

    def refines(self, other: BlockSystem) -> bool:
        """True iff every block of ``self`` lies inside a block of ``other``."""
        if other.d != self.d:
            raise DegreeMismatch("partitions of different sets")
        target: dict[int, int] = {}
        return all(target.setdefault(k, kk) == kk for k, kk in zip(self.block_of, other.block_of))

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks()) + "}"


def common_refinement(p: BlockSystem, q: BlockSystem) -> BlockSystem:
    """Partition into nonempty pairwise intersections of blocks."""
    if p.d != q.d:
        raise DegreeMismatch("partitions of different sets")
    pairs: dict[tuple[int, int], int] = {}
    return BlockSystem(tuple(pairs.setdefault(k, len(pairs)) for k in zip(p.block_of, q.block_of)))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, k):
        root = k
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[k] != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def union(self, a, b):
        """Merge the classes of a and b; return False if already merged."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _closure(generators: Sequence[Permutation], seed: Iterable[int], d: int) -> BlockSystem:
    uf = _UnionFind(d)
    pending: deque[tuple[int, int]] = deque()
    seed = sorted(set(seed))
    for a in seed[1:]:
        if uf.union(seed[0], a):
            pending.append((seed[0], a))
    # every merged pair must have merged images under each generator
    while pending:
        a, b = pending.popleft()
        for g in generators:
            ga, gb = g.images[a], g.images[b]
            if uf.union(ga, gb):
                pending.append((ga, gb))
    return BlockSystem(tuple(uf.find(i) for i in range(d)))


def block_closure(generators: Sequence[Permutation], seed: Iterable[int], d: int | None = None) -> BlockSystem:
    """Finest block system of the action in which all of ``seed`` is one block."""
    if d is None:
        if not generators:
            raise ValueError("degree must be given when there are no generators")
        d = generators[0].d
    seed = set(seed)
    if 0 not in seed:
        raise ValueError("seed must contain the point 0")
    if not seed <= set(range(d)):
        raise ValueError(f"seed {sorted(seed)} not inside 0..{d - 1}")
    _check_degrees(generators, d)
    if not is_transitive(generators, d):
        raise NotTransitive("block systems require a transitive action")
    return _closure(generators, seed, d)


def all_block_systems(
    generators: Sequence[Permutation],
    d: int,
    max_degree: int = DEFAULT_MAX_DEGREE,
    method: str = "lattice",
) -> list[BlockSystem]:
    """Every block system of a transitive action, both trivial ones included.

    ``method="subsets"`` closes {0} together with every subset of the other
    points (2**(d-1) closures).  The default ``"lattice"`` grows blocks from
    {0} one point at a time, which reaches every block containing 0 with far
    fewer closures.  Both return the same list, sorted by block count and then
    by ``block_of``.
    """
    if d > max_degree:
        raise DegreeCapExceeded(d, max_degree)
    _check_degrees(generators, d)
    if not is_transitive(generators, d):
        raise NotTransitive("block systems require a transitive action")

    found: set[BlockSystem] = set()
    if method == "subsets":
        rest = range(1, d)
        for size in range(d):
            for subset in combinations(rest, size):
                found.add(_closure(generators, (0, *subset), d))
    elif method == "lattice":
        start = _closure(generators, (0,), d)
        found.add(start)
        todo = [start]
        while todo:
            system = todo.pop()
            block = system.block_containing(0)
            inside = set(block)
            for j in range(1, d):
                if j in inside:
                    continue
                bigger = _closure(generators, (*block, j), d)
                if bigger not in found:
                    found.add(bigger)
                    todo.append(bigger)
    else:
        raise ValueError(f"unknown enumeration method {method!r}")
    return sorted(found, key=lambda s: (s.b, s.block_of))


def action_on_blocks(p: Permutation, system: BlockSystem) -> tuple[Permutation, list[int]]:
    """Permutation induced on block ids, and its cycle type."""
    if p.d != system.d:
        raise DegreeMismatch(f"permutation of degree {p.d} on a partition of {system.d} points")
    if not system.is_invariant_under(p):
        raise InvariantViolation(f"partition {system} is not preserved by {p}")
    images = [0] * system.b
    for i, k in enumerate(system.block_of):
        images[k] = system.block_of[p.images[i]]
    induced = Permutation(tuple(images))
    return induced, cycle_type(induced)

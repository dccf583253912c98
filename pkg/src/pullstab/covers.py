"""Branched covers of curves encoded by monodromy permutations.

A degree-d cover f: Y -> X of a genus-g base is described by one permutation
per branch point and 2g handle permutations a1, b1, ..., ag, bg satisfying

    [a1,b1] ... [ag,bg] * s_1 * ... * s_k = id,    [a,b] = a b a^-1 b^-1,

with the branch product taken in the stored order.  The points over x are the
cycles of the permutation at x; their lengths are the local multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InvalidCover, SelfCheckError
from .permgroup import Permutation, cycle_type, is_transitive

PRODUCT_RELATION_FAILS = "product relation fails"
NOT_TRANSITIVE = "action not transitive (Y reducible)"
IDENTITY_BRANCH = "identity permutation listed as branch point"
DEGREE_MISMATCH = "degree mismatch"


@dataclass(frozen=True)
class MonodromyCover:
    """Monodromy datum of a cover; construction does not validate.

    ``branch`` is an ordered sequence of ``(point, permutation)`` pairs; a
    mapping is accepted and taken in its iteration order.
    """

    degree: int
    base_genus: int = 0
    branch: tuple[tuple[str, Permutation], ...] = ()
    handles: tuple[Permutation, ...] = field(default=())

    def __post_init__(self):
        branch = self.branch.items() if isinstance(self.branch, Mapping) else self.branch
        object.__setattr__(self, "branch", tuple((str(x), p) for x, p in branch))
        object.__setattr__(self, "handles", tuple(self.handles))

    @property
    def d(self) -> int:
        return self.degree

    def permutation_at(self, x: str) -> Permutation:
        """Local monodromy at ``x``; identity for points not listed."""
        for y, p in self.branch:
            if y == x:
                return p
        return Permutation.identity(self.degree)

    @property
    def generators(self) -> list[Permutation]:
        return [*self.handles, *(p for _, p in self.branch)]

    def fiber(self, x: str) -> list[tuple[int, ...]]:
        """Points of Y over ``x`` as cycles, indexed by smallest element."""
        return self.permutation_at(x).cycles()

    def relabel(self, h: Permutation) -> MonodromyCover:
        """Conjugate every generator by ``h`` (renames the fiber points)."""
        hi = h.inverse()
        return MonodromyCover(
            self.degree,
            self.base_genus,
            tuple((x, h * p * hi) for x, p in self.branch),
            tuple(h * a * hi for a in self.handles),
        )


def relation_product(c: MonodromyCover) -> Permutation:
    """Left side of the product relation; identity for a valid cover."""
    total = Permutation.identity(c.degree)
    hs = c.handles
    for a, b in zip(hs[0::2], hs[1::2]):
        total = total * a * b * a.inverse() * b.inverse()
    for _, p in c.branch:
        total = total * p
    return total


def cover_violations(c: MonodromyCover) -> list[str]:
    """Every violated cover invariant, as human-readable messages."""
    problems = []
    if not isinstance(c.degree, int) or c.degree < 1:
        return [f"degree must be a positive integer, got {c.degree!r}"]
    if not isinstance(c.base_genus, int) or c.base_genus < 0:
        problems.append(f"base genus must be a nonnegative integer, got {c.base_genus!r}")
    if len(c.handles) != 2 * max(c.base_genus, 0):
        problems.append(
            f"{DEGREE_MISMATCH}: expected {2 * max(c.base_genus, 0)} handle permutations, got {len(c.handles)}"
        )
    labels = [x for x, _ in c.branch]
    if any(not x for x in labels):
        problems.append("empty point label")
    dup = sorted({x for x in labels if labels.count(x) > 1})
    if dup:
        problems.append(f"point labels repeated: {', '.join(dup)}")

    bad_degree = [g for g in c.generators if g.d != c.degree]
    if bad_degree:
        problems.append(
            f"{DEGREE_MISMATCH}: permutations of degree {sorted({g.d for g in bad_degree})} in a degree-{c.degree} cover"
        )
        return problems

    for x, p in c.branch:
        if p.is_identity():
            problems.append(f"{IDENTITY_BRANCH}: {x}")
    if len(c.handles) % 2 == 0 and not relation_product(c).is_identity():
        problems.append(f"{PRODUCT_RELATION_FAILS}: product is {relation_product(c)}")
    if not is_transitive(c.generators, c.degree):
        problems.append(NOT_TRANSITIVE)
    return problems


def validate_cover(c: MonodromyCover) -> MonodromyCover:
    """Return ``c`` unchanged if valid, else raise ``InvalidCover`` listing all problems."""
    problems = cover_violations(c)
    if problems:
        raise InvalidCover(problems)
    return c


def branch_locus(c: MonodromyCover) -> set[str]:
    return {x for x, _ in c.branch}


def ramification_profile(c: MonodromyCover, x: str) -> list[int]:
    """Multiplicities of f at the points over ``x``, descending."""
    return cycle_type(c.permutation_at(x))


def ramification_degree(c: MonodromyCover) -> int:
    """Total ramification: sum over branch cycles of (length - 1)."""
    return sum(c.degree - len(p.cycles()) for _, p in c.branch)


def genus_of_Y(c: MonodromyCover) -> int:
    """Genus of the covering curve by Riemann-Hurwitz."""
    two_g_minus_2 = c.degree * (2 * c.base_genus - 2) + ramification_degree(c)
    if two_g_minus_2 % 2 or two_g_minus_2 < -2:
        raise SelfCheckError(f"non-integral or negative genus: 2g - 2 = {two_g_minus_2}")
    return two_g_minus_2 // 2 + 1


def make_cover(
    degree: int,
    branch: Iterable[tuple[str, Sequence[Sequence[int]]]] | Mapping[str, Sequence[Sequence[int]]],
    base_genus: int = 0,
    handles: Iterable[Sequence[Sequence[int]]] = (),
) -> MonodromyCover:
    """Build a cover from cycle notation; does not validate."""
    items = branch.items() if isinstance(branch, Mapping) else branch
    return MonodromyCover(
        degree,
        base_genus,
        tuple((x, Permutation.from_cycles(cyc, degree)) for x, cyc in items),
        tuple(Permutation.from_cycles(cyc, degree) for cyc in handles),
    )

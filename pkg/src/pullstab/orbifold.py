"""Orbifold-etale intermediate covers and the rank of the canonical subbundle.

An intermediate cover Y -> Z -> X is a block system of the monodromy action;
the number of blocks is deg(Z -> X) and the local monodromy of Z -> X over a
point x is the action of the branch permutation on blocks.  Z is etale over
the orbifold (X, {N_x}) when every block orbit over an unmarked point has
length 1 and over a marked point has length dividing N_x.

The canonical subbundle of f_* O_Y is the direct image of O_Z for the finest
such Z, so its rank is the block count of the finest etale system.  Rank 1
means pullback along f keeps stable parabolic bundles (with weights in
(1/N_x)Z) stable; rank >= 2 means some stable bundle destabilizes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd
from typing import Mapping

from .covers import MonodromyCover, ramification_profile, validate_cover
from .errors import SelfCheckError
from .permgroup import DEFAULT_MAX_DEGREE, BlockSystem, action_on_blocks, all_block_systems


@dataclass(frozen=True)
class OrbifoldStructure:
    """Marked points of X with their integers N_x >= 1."""

    marked: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        marked = {str(x): n for x, n in dict(self.marked).items()}
        for x, n in marked.items():
            if not x:
                raise ValueError("empty point label")
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise ValueError(f"N at {x} must be an integer >= 1, got {n!r}")
        object.__setattr__(self, "marked", dict(sorted(marked.items())))

    def __hash__(self):
        return hash(tuple(self.marked.items()))

    def N(self, x: str) -> int | None:
        return self.marked.get(x)


@dataclass(frozen=True)
class IntermediateCoverReport:
    system: BlockSystem
    etale: bool
    ramification: dict[str, list[int]]

    @property
    def degree_over_X(self) -> int:
        return self.system.b


class Verdict(enum.Enum):
    PRESERVED = "PRESERVED"
    NOT_PRESERVED = "NOT_PRESERVED"


@dataclass(frozen=True)
class StabilityVerdict:
    verdict: Verdict
    rank: int
    maximal: IntermediateCoverReport
    # the maximal etale cover when it is nontrivial, else None
    witness: IntermediateCoverReport | None

    @property
    def preserved(self) -> bool:
        return self.verdict is Verdict.PRESERVED


def _block_ramification(system: BlockSystem, c: MonodromyCover) -> dict[str, list[int]]:
    return {x: action_on_blocks(p, system)[1] for x, p in c.branch}


def _etale(ramification: Mapping[str, list[int]], o: OrbifoldStructure) -> bool:
    for x, lengths in ramification.items():
        n = o.N(x)
        if n is None:
            if any(k != 1 for k in lengths):
                return False
        elif any(n % k for k in lengths):
            return False
    return True


def is_orbifold_etale(system: BlockSystem, c: MonodromyCover, o: OrbifoldStructure) -> bool:
    """Whether the intermediate cover given by ``system`` is etale over the orbifold.

    Handle generators are only checked for invariance; they impose no
    ramification condition.
    """
    for h in c.handles:
        action_on_blocks(h, system)
    return _etale(_block_ramification(system, c), o)


def describe_intermediate(system: BlockSystem, c: MonodromyCover, o: OrbifoldStructure) -> IntermediateCoverReport:
    ramification = _block_ramification(system, c)
    return IntermediateCoverReport(system, _etale(ramification, o), ramification)


def intermediate_covers(
    c: MonodromyCover, o: OrbifoldStructure, max_degree: int = DEFAULT_MAX_DEGREE
) -> list[IntermediateCoverReport]:
    """Report for every block system of the monodromy action, etale or not."""
    validate_cover(c)
    systems = all_block_systems(c.generators, c.degree, max_degree=max_degree)
    return [describe_intermediate(s, c, o) for s in systems]


def etale_intermediate_covers(
    c: MonodromyCover, o: OrbifoldStructure, max_degree: int = DEFAULT_MAX_DEGREE
) -> list[IntermediateCoverReport]:
    return [r for r in intermediate_covers(c, o, max_degree) if r.etale]


def _select_maximal(etale: list[IntermediateCoverReport]) -> IntermediateCoverReport:
    if not etale or not any(r.system.b == 1 for r in etale):
        raise SelfCheckError("the one-block system must always be etale")
    top = max(r.system.b for r in etale)
    best = [r for r in etale if r.system.b == top]
    if len(best) != 1:
        raise SelfCheckError(
            f"uniqueness violated: {len(best)} etale systems with {top} blocks: "
            + ", ".join(str(r.system) for r in best)
        )
    maximal = best[0]
    for r in etale:
        if not maximal.system.refines(r.system):
            raise SelfCheckError(f"uniqueness violated: maximal system {maximal.system} does not refine {r.system}")
    return maximal


def maximal_etale_cover(
    c: MonodromyCover, o: OrbifoldStructure, max_degree: int = DEFAULT_MAX_DEGREE
) -> IntermediateCoverReport:
    """The finest orbifold-etale intermediate cover.

    Raises ``SelfCheckError`` if the etale systems do not have a unique finest
    member refining all others.
    """
    return _select_maximal(etale_intermediate_covers(c, o, max_degree))


def rank_of_F(c: MonodromyCover, o: OrbifoldStructure, max_degree: int = DEFAULT_MAX_DEGREE) -> int:
    return maximal_etale_cover(c, o, max_degree).degree_over_X


def stability_verdict(
    c: MonodromyCover, o: OrbifoldStructure, max_degree: int = DEFAULT_MAX_DEGREE
) -> StabilityVerdict:
    maximal = maximal_etale_cover(c, o, max_degree)
    rank = maximal.degree_over_X
    if rank == 1:
        return StabilityVerdict(Verdict.PRESERVED, rank, maximal, None)
    return StabilityVerdict(Verdict.NOT_PRESERVED, rank, maximal, maximal)


def gr1_hypothesis_holds(c: MonodromyCover, o: OrbifoldStructure) -> bool:
    """True iff every N_x is coprime to all multiplicities of f over x."""
    return all(gcd(n, m) == 1 for x, n in o.marked.items() for m in ramification_profile(c, x))

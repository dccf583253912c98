"""Exact parabolic degree calculus on weight data.

Two models are used.  ``ParabolicLineBundle`` / ``SplitParabolicBundle``
carry one weight per point per summand and support tensor and pullback.
``WeightProfile`` keeps only the rank, the degree and a weight multiset at each
point, which is all that parabolic degree, dual and divisibility need.

All arithmetic uses ``fractions.Fraction``; nothing here touches floats.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Mapping, Union

from .covers import MonodromyCover, genus_of_Y, validate_cover
from .errors import NamespaceMismatch
from .orbifold import OrbifoldStructure

X = "X"
Y = "Y"


def weight(value) -> Fraction:
    """Coerce to an exact weight in [0, 1)."""
    if isinstance(value, float):
        raise TypeError("weights must be exact; got a float")
    w = Fraction(value)
    if not 0 <= w < 1:
        raise ValueError(f"weight {w} outside [0, 1)")
    return w


def frac_part(q: Fraction) -> Fraction:
    return q - floor(q)


def fiber_point_name(x: str, cycle_index: int) -> str:
    return f"{x}#{cycle_index}"


@dataclass(frozen=True)
class ParabolicLineBundle:
    """Degree plus one weight per marked point; zero weights are dropped."""

    deg: int
    weights: Mapping[str, Fraction] = field(default_factory=dict)
    namespace: str = X

    def __post_init__(self):
        if isinstance(self.deg, bool) or not isinstance(self.deg, int):
            raise TypeError(f"degree must be an integer, got {self.deg!r}")
        if self.namespace not in (X, Y):
            raise ValueError(f"namespace must be X or Y, got {self.namespace!r}")
        ws = {str(x): weight(a) for x, a in dict(self.weights).items()}
        object.__setattr__(self, "weights", {x: a for x, a in sorted(ws.items()) if a})

    @property
    def rank(self) -> int:
        return 1


@dataclass(frozen=True)
class SplitParabolicBundle:
    summands: tuple[ParabolicLineBundle, ...]

    def __post_init__(self):
        summands = tuple(self.summands)
        if not summands:
            raise ValueError("a split bundle needs at least one summand")
        if len({s.namespace for s in summands}) != 1:
            raise NamespaceMismatch("summands live on different curves")
        object.__setattr__(self, "summands", summands)

    @property
    def rank(self) -> int:
        return len(self.summands)

    @property
    def namespace(self) -> str:
        return self.summands[0].namespace


@dataclass(frozen=True)
class WeightProfile:
    """Rank, degree and per-point weight multiplicities.

    ``profile[x]`` maps weight -> multiplicity and always sums to ``rank``
    (zero weights included).  Points carrying only the zero weight are
    dropped, so equal data compares equal.
    """

    rank: int
    deg: int
    profile: Mapping[str, Mapping[Fraction, int]] = field(default_factory=dict)

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        out = {}
        for x, ws in dict(self.profile).items():
            merged: Counter = Counter()
            for a, m in dict(ws).items():
                if m < 0:
                    raise ValueError(f"negative multiplicity at {x}")
                if m:
                    merged[weight(a)] += m
            if sum(merged.values()) != self.rank:
                raise ValueError(f"multiplicities at {x} sum to {sum(merged.values())}, not rank {self.rank}")
            if set(merged) != {Fraction(0)}:
                out[str(x)] = dict(sorted(merged.items()))
        object.__setattr__(self, "profile", dict(sorted(out.items())))


Bundle = Union[WeightProfile, ParabolicLineBundle, SplitParabolicBundle]


def to_profile(e: ParabolicLineBundle | SplitParabolicBundle) -> WeightProfile:
    """Forget the summand structure, keeping rank, degree and weight multisets."""
    summands = e.summands if isinstance(e, SplitParabolicBundle) else (e,)
    r = len(summands)
    points = sorted({x for s in summands for x in s.weights})
    profile = {}
    for x in points:
        ws = Counter(s.weights.get(x, Fraction(0)) for s in summands)
        profile[x] = ws
    return WeightProfile(r, sum(s.deg for s in summands), profile)


def par_deg(e: Bundle) -> Fraction:
    """Degree plus the sum of all weights counted with multiplicity."""
    if isinstance(e, SplitParabolicBundle):
        return sum((par_deg(s) for s in e.summands), Fraction(0))
    if isinstance(e, ParabolicLineBundle):
        return e.deg + sum(e.weights.values(), Fraction(0))
    return e.deg + sum((a * m for ws in e.profile.values() for a, m in ws.items()), Fraction(0))


def par_mu(e: Bundle) -> Fraction:
    return par_deg(e) / e.rank


def direct_image_structure(c: MonodromyCover) -> WeightProfile:
    """Parabolic structure on f_* O_Y.

    A point of Y over x with multiplicity l contributes weights 0, 1/l, ...,
    (l-1)/l.  The underlying degree is chi(O_Y) - d * chi(O_X).
    """
    validate_cover(c)
    d = c.degree
    profile = {}
    for x, p in c.branch:
        ws: Counter = Counter()
        for cycle in p.cycles():
            ell = len(cycle)
            ws.update(Fraction(j, ell) for j in range(ell))
        profile[x] = ws
    deg = (1 - genus_of_Y(c)) - d * (1 - c.base_genus)
    return WeightProfile(d, deg, profile)


def dual(w: WeightProfile) -> WeightProfile:
    """Parabolic dual: nonzero weights a -> 1 - a, degree chosen so par_deg negates."""
    shift = 0
    profile = {}
    for x, ws in w.profile.items():
        new: Counter = Counter()
        for a, m in ws.items():
            if a:
                new[1 - a] += m
                shift += m
            else:
                new[a] += m
        profile[x] = new
    return WeightProfile(w.rank, -w.deg - shift, profile)


def dual_line(L: ParabolicLineBundle) -> ParabolicLineBundle:
    return ParabolicLineBundle(-L.deg - len(L.weights), {x: 1 - a for x, a in L.weights.items()}, L.namespace)


def tensor_line(L: ParabolicLineBundle, M: ParabolicLineBundle) -> ParabolicLineBundle:
    if L.namespace != M.namespace:
        raise NamespaceMismatch(f"cannot tensor bundles on {L.namespace} and {M.namespace}")
    deg = L.deg + M.deg
    weights = {}
    for x in set(L.weights) | set(M.weights):
        s = L.weights.get(x, Fraction(0)) + M.weights.get(x, Fraction(0))
        deg += floor(s)
        weights[x] = frac_part(s)
    return ParabolicLineBundle(deg, weights, L.namespace)


def pullback_line(c: MonodromyCover, L: ParabolicLineBundle) -> ParabolicLineBundle:
    """Pull back a parabolic line bundle on X along the cover.

    At a point of Y of multiplicity m over x the weight becomes frac(m*a) and
    floor(m*a) is added to the degree; points are named ``"<x>#<cycle index>"``.
    """
    if L.namespace != X:
        raise NamespaceMismatch("pullback needs a bundle on the base curve X")
    deg = c.degree * L.deg
    weights = {}
    for x, a in L.weights.items():
        for k, cycle in enumerate(c.fiber(x)):
            ma = len(cycle) * a
            deg += floor(ma)
            weights[fiber_point_name(x, k)] = frac_part(ma)
    return ParabolicLineBundle(deg, weights, Y)


def pullback_split(c: MonodromyCover, E: SplitParabolicBundle) -> SplitParabolicBundle:
    return SplitParabolicBundle(tuple(pullback_line(c, s) for s in E.summands))


def weights_divisible(e: WeightProfile | ParabolicLineBundle | SplitParabolicBundle, o: OrbifoldStructure) -> bool:
    """Every nonzero weight sits at a marked x and lies in (1/N_x)Z."""
    w = e if isinstance(e, WeightProfile) else to_profile(e)
    for x, ws in w.profile.items():
        n = o.N(x)
        for a in ws:
            if not a:
                continue
            if n is None or (a * n).denominator != 1:
                return False
    return True

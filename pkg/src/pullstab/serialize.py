"""JSON document formats for covers, orbifold weights and parabolic bundles.

Cover document::

    {"degree": 6, "base_genus": 0,
     "branch": [{"point": "0", "perm": [[0, 1, 2, 3, 4, 5]]},
                {"point": "infty", "perm": [[0, 5, 4, 3, 2, 1]]}],
     "handles": []}

Permutations are lists of 0-based cycles with fixed points omitted.  The
branch list order is the order of the product relation.  Orbifold documents
are ``{"marked": [{"point": "0", "N": 2}, ...]}``; bundle documents are
``{"line": L}`` or ``{"split": [L, ...]}`` with
``L = {"deg": k, "weights": [{"point": "0", "num": 1, "den": 3}, ...]}``.
Fractions are always ``{"num", "den"}`` integer pairs, never decimals.
"""

from __future__ import annotations

import json
from collections import Counter
from fractions import Fraction
from typing import Any

from .covers import MonodromyCover
from .errors import PullstabError
from .orbifold import IntermediateCoverReport, OrbifoldStructure
from .parabolic import X, ParabolicLineBundle, SplitParabolicBundle, WeightProfile
from .permgroup import BlockSystem, Permutation


class DocumentError(PullstabError, ValueError):
    """Malformed document; ``where`` locates the problem (JSON path or line:col)."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.message = message


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)


def _get(doc, key, where, kind, default=...):
    if not isinstance(doc, dict):
        raise DocumentError(where, "expected an object")
    if key not in doc:
        if default is not ...:
            return default
        raise DocumentError(where, f"missing key {key!r}")
    value = doc[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise DocumentError(f"{where}.{key}", f"expected an integer, got {value!r}")
    if kind is not int and not isinstance(value, kind):
        raise DocumentError(f"{where}.{key}", f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _point(value, where) -> str:
    if not isinstance(value, str) or not value:
        raise DocumentError(where, f"point label must be a nonempty string, got {value!r}")
    return value


def perm_from_cycles(cycles, d: int, where: str) -> Permutation:
    if not isinstance(cycles, list) or not all(isinstance(c, list) for c in cycles):
        raise DocumentError(where, "expected a list of cycles (lists of integers)")
    for k, cycle in enumerate(cycles):
        if not all(isinstance(i, int) and not isinstance(i, bool) for i in cycle):
            raise DocumentError(f"{where}[{k}]", "cycle entries must be integers")
    try:
        return Permutation.from_cycles(cycles, d)
    except ValueError as exc:
        raise DocumentError(where, str(exc)) from None


def perm_to_cycles(p: Permutation) -> list[list[int]]:
    return [list(c) for c in p.cycles(include_fixed=False)]


def cover_from_doc(doc) -> MonodromyCover:
    d = _get(doc, "degree", "$", int)
    if d < 1:
        raise DocumentError("$.degree", "degree must be positive")
    g = _get(doc, "base_genus", "$", int, default=0)
    if g < 0:
        raise DocumentError("$.base_genus", "genus must be nonnegative")
    branch = []
    for k, entry in enumerate(_get(doc, "branch", "$", list, default=[])):
        where = f"$.branch[{k}]"
        x = _point(_get(entry, "point", where, str), f"{where}.point")
        branch.append((x, perm_from_cycles(_get(entry, "perm", where, list), d, f"{where}.perm")))
    handles = [
        perm_from_cycles(h, d, f"$.handles[{k}]") for k, h in enumerate(_get(doc, "handles", "$", list, default=[]))
    ]
    return MonodromyCover(d, g, tuple(branch), tuple(handles))


def cover_to_doc(c: MonodromyCover) -> dict:
    return {
        "degree": c.degree,
        "base_genus": c.base_genus,
        "branch": [{"point": x, "perm": perm_to_cycles(p)} for x, p in c.branch],
        "handles": [perm_to_cycles(h) for h in c.handles],
    }


def orbifold_from_doc(doc) -> OrbifoldStructure:
    marked = {}
    for k, entry in enumerate(_get(doc, "marked", "$", list)):
        where = f"$.marked[{k}]"
        x = _point(_get(entry, "point", where, str), f"{where}.point")
        n = _get(entry, "N", where, int)
        if n < 1:
            raise DocumentError(f"{where}.N", f"N must be >= 1, got {n}")
        if x in marked:
            raise DocumentError(where, f"point {x!r} marked twice")
        marked[x] = n
    return OrbifoldStructure(marked)


def orbifold_to_doc(o: OrbifoldStructure) -> dict:
    return {"marked": [{"point": x, "N": n} for x, n in o.marked.items()]}


def fraction_from_doc(doc, where) -> Fraction:
    num = _get(doc, "num", where, int)
    den = _get(doc, "den", where, int)
    if den == 0:
        raise DocumentError(f"{where}.den", "zero denominator")
    return Fraction(num, den)


def fraction_to_doc(q: Fraction) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def line_from_doc(doc, where: str = "$.line", namespace: str = X) -> ParabolicLineBundle:
    deg = _get(doc, "deg", where, int)
    weights = {}
    for k, entry in enumerate(_get(doc, "weights", where, list, default=[])):
        w_where = f"{where}.weights[{k}]"
        x = _point(_get(entry, "point", w_where, str), f"{w_where}.point")
        a = fraction_from_doc(entry, w_where)
        if not 0 <= a < 1:
            raise DocumentError(w_where, f"weight {a} outside [0, 1)")
        if x in weights:
            raise DocumentError(w_where, f"two weights at point {x!r}")
        weights[x] = a
    return ParabolicLineBundle(deg, weights, namespace)


def line_to_doc(L: ParabolicLineBundle) -> dict:
    return {
        "deg": L.deg,
        "weights": [{"point": x, **fraction_to_doc(a)} for x, a in L.weights.items()],
    }


def bundle_from_doc(doc) -> ParabolicLineBundle | SplitParabolicBundle:
    if not isinstance(doc, dict) or len(doc.keys() & {"line", "split"}) != 1:
        raise DocumentError("$", "expected exactly one of 'line' or 'split'")
    if "line" in doc:
        return line_from_doc(doc["line"])
    summands = _get(doc, "split", "$", list)
    if not summands:
        raise DocumentError("$.split", "a split bundle needs at least one summand")
    return SplitParabolicBundle(tuple(line_from_doc(s, f"$.split[{k}]") for k, s in enumerate(summands)))


def bundle_to_doc(e: ParabolicLineBundle | SplitParabolicBundle) -> dict:
    if isinstance(e, ParabolicLineBundle):
        return {"line": line_to_doc(e)}
    return {"split": [line_to_doc(s) for s in e.summands]}


def profile_to_doc(w: WeightProfile) -> dict:
    return {
        "rank": w.rank,
        "deg": w.deg,
        "weights": {
            x: [{**fraction_to_doc(a), "mult": m} for a, m in ws.items()] for x, ws in w.profile.items()
        },
    }


def profile_from_doc(doc) -> WeightProfile:
    rank = _get(doc, "rank", "$", int)
    deg = _get(doc, "deg", "$", int)
    profile = {}
    for x, entries in _get(doc, "weights", "$", dict, default={}).items():
        ws: Counter = Counter()
        for k, e in enumerate(entries):
            ws[fraction_from_doc(e, f"$.weights.{x}[{k}]")] += _get(e, "mult", f"$.weights.{x}[{k}]", int)
        profile[x] = ws
    try:
        return WeightProfile(rank, deg, profile)
    except ValueError as exc:
        raise DocumentError("$", str(exc)) from None


def blocks_to_doc(s: BlockSystem) -> list[list[int]]:
    return [list(b) for b in s.blocks()]


def report_to_doc(r: IntermediateCoverReport) -> dict:
    return {
        "blocks": blocks_to_doc(r.system),
        "degree_over_X": r.degree_over_X,
        "etale": r.etale,
        "ramification": dict(sorted(r.ramification.items())),
    }

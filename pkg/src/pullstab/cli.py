"""Command-line front end.

Exit codes: 0 success, 1 semantically invalid input, 2 parse error,
3 degree cap exceeded, 4 internal self-check failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .covers import branch_locus, cover_violations, genus_of_Y
from .errors import DegreeCapExceeded, InvalidCover, PullstabError, SelfCheckError
from .orbifold import (
    OrbifoldStructure,
    Verdict,
    gr1_hypothesis_holds,
    intermediate_covers,
    _select_maximal,
)
from .parabolic import direct_image_structure, dual, par_deg, pullback_line, pullback_split, ParabolicLineBundle
from .permgroup import DEFAULT_MAX_DEGREE, all_block_systems
from .serialize import (
    DocumentError,
    blocks_to_doc,
    bundle_from_doc,
    bundle_to_doc,
    cover_from_doc,
    cover_to_doc,
    dumps,
    fraction_to_doc,
    loads,
    orbifold_from_doc,
    orbifold_to_doc,
    profile_to_doc,
    report_to_doc,
)

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_CAP, EXIT_SELF_CHECK = 0, 1, 2, 3, 4


def _read(path: str | None, stdin) -> tuple[str, str]:
    if path is None or path == "-":
        return stdin.read(), "<stdin>"
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read(), path
    except OSError as exc:
        raise DocumentError(path, exc.strerror or str(exc)) from None


def _load(path, stdin, parse):
    text, source = _read(path, stdin)
    try:
        return parse(loads(text, source))
    except DocumentError as exc:
        if exc.where.startswith("$"):
            raise DocumentError(f"{source} {exc.where}", exc.message) from None
        raise


def _load_cover(args, stdin):
    return _load(args.input, stdin, cover_from_doc)


def _load_valid_cover(args, stdin):
    c = _load_cover(args, stdin)
    problems = cover_violations(c)
    if problems:
        raise InvalidCover(problems)
    return c


def _load_orbifold(args, stdin) -> OrbifoldStructure:
    if args.orbifold is None:
        return OrbifoldStructure({})
    return _load(args.orbifold, stdin, orbifold_from_doc)


def _frac(q: Fraction) -> str:
    return str(Fraction(q))


def _ram_text(ramification: dict) -> str:
    if not ramification:
        return "unramified"
    return ", ".join(f"{x} {lengths}" for x, lengths in sorted(ramification.items()))


def cmd_validate(args, out, stdin) -> int:
    c = _load_cover(args, stdin)
    problems = cover_violations(c)
    if problems:
        if args.format == "json":
            out.write(dumps({"valid": False, "violations": problems}) + "\n")
        else:
            out.write("invalid cover:\n" + "".join(f"  - {p}\n" for p in problems))
        return EXIT_INVALID
    if args.format == "json":
        out.write(dumps({"valid": True, "cover": cover_to_doc(c), "genus_of_Y": genus_of_Y(c)}) + "\n")
    else:
        out.write(f"valid cover: degree {c.degree}, base genus {c.base_genus}, genus of Y {genus_of_Y(c)}\n")
        out.write(dumps(cover_to_doc(c)) + "\n")
    return EXIT_OK


def analyze_document(c, o: OrbifoldStructure, max_degree: int, list_blocks: bool) -> dict:
    reports = intermediate_covers(c, o, max_degree)
    etale = [r for r in reports if r.etale]
    maximal = _select_maximal(etale)
    rank = maximal.degree_over_X
    verdict = Verdict.PRESERVED if rank == 1 else Verdict.NOT_PRESERVED
    doc = {
        "cover": {"degree": c.degree, "base_genus": c.base_genus, "genus_of_Y": genus_of_Y(c),
                  "branch_locus": sorted(branch_locus(c))},
        "orbifold": orbifold_to_doc(o),
        "rank_F": rank,
        "verdict": verdict.value,
        "gr1_hypothesis_holds": gr1_hypothesis_holds(c, o),
        "etale_covers": [report_to_doc(r) for r in etale],
        "maximal_etale_cover": report_to_doc(maximal),
        "witness": report_to_doc(maximal) if rank > 1 else None,
    }
    if list_blocks:
        doc["block_systems"] = [report_to_doc(r) for r in reports]
    return doc


def cmd_analyze(args, out, stdin) -> int:
    c = _load_valid_cover(args, stdin)
    o = _load_orbifold(args, stdin)
    doc = analyze_document(c, o, args.max_degree, args.list_blocks)
    if args.format == "json":
        out.write(dumps(doc) + "\n")
        return EXIT_OK
    cov = doc["cover"]
    marks = ", ".join(f"N({x}) = {n}" for x, n in o.marked.items()) or "no marked points"
    lines = [
        f"cover: degree {cov['degree']} over genus {cov['base_genus']}, "
        f"branched at {', '.join(cov['branch_locus']) or 'no points'}; genus of Y = {cov['genus_of_Y']}",
        f"orbifold: {marks}",
        f"rank F = {doc['rank_F']}",
    ]
    if doc["rank_F"] == 1:
        lines.append(
            "verdict: PRESERVED by the rank-one criterion: rank F = 1, f factors through no nontrivial "
            "orbifold-etale cover, so pullback keeps every stable bundle with weights in (1/N_x)Z stable"
        )
    else:
        w = doc["witness"]
        lines.append(
            f"verdict: NOT_PRESERVED by the converse criterion: rank F = {doc['rank_F']} >= 2, some stable bundle "
            f"with weights in (1/N_x)Z pulls back unstable; witness: orbifold-etale intermediate cover of degree "
            f"{w['degree_over_X']} with blocks {w['blocks']}"
        )
    lines.append(f"coprime-ramification hypothesis holds: {str(doc['gr1_hypothesis_holds']).lower()}")
    lines.append(f"orbifold-etale intermediate covers ({len(doc['etale_covers'])}):")
    for r in doc["etale_covers"]:
        lines.append(f"  degree {r['degree_over_X']}  blocks {r['blocks']}  ramification: {_ram_text(r['ramification'])}")
    if args.list_blocks:
        lines.append(f"all block systems ({len(doc['block_systems'])}):")
        for r in doc["block_systems"]:
            tag = "etale" if r["etale"] else "not etale"
            lines.append(f"  degree {r['degree_over_X']}  blocks {r['blocks']}  {tag}  ramification: {_ram_text(r['ramification'])}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_blocks(args, out, stdin) -> int:
    c = _load_valid_cover(args, stdin)
    systems = all_block_systems(c.generators, c.degree, max_degree=args.max_degree)
    if args.format == "json":
        out.write(dumps({"block_systems": [{"blocks": blocks_to_doc(s), "count": s.b} for s in systems]}) + "\n")
    else:
        out.write(f"{len(systems)} block systems:\n")
        for s in systems:
            out.write(f"  {s.b} blocks: {s}\n")
    return EXIT_OK


def cmd_direct_image(args, out, stdin) -> int:
    c = _load_valid_cover(args, stdin)
    w = direct_image_structure(c)
    pd = par_deg(w)
    if pd != 0:
        raise SelfCheckError(f"parabolic degree of the direct image is {pd}, expected 0")
    if dual(w) != w:
        raise SelfCheckError("direct image is not self-dual")
    if args.format == "json":
        out.write(dumps({**profile_to_doc(w), "par_deg": fraction_to_doc(pd), "self_dual": True}) + "\n")
        return EXIT_OK
    lines = [f"direct image f_* O_Y: rank {w.rank}, degree {w.deg}"]
    for x, ws in w.profile.items():
        items = ", ".join(_frac(a) if m == 1 else f"{_frac(a)} (x{m})" for a, m in ws.items())
        lines.append(f"  weights at {x}: {items}")
    if not w.profile:
        lines.append("  no parabolic weights")
    lines.append("par-deg = 0 (verified)")
    lines.append("self-dual (verified)")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_pullback(args, out, stdin) -> int:
    c = _load_valid_cover(args, stdin)
    if args.bundle is None:
        raise DocumentError("--bundle", "pullback needs a bundle document")
    e = _load(args.bundle, stdin, bundle_from_doc)
    pulled = pullback_line(c, e) if isinstance(e, ParabolicLineBundle) else pullback_split(c, e)
    lhs, rhs = par_deg(pulled), c.degree * par_deg(e)
    if lhs != rhs:
        raise SelfCheckError(f"par-deg of pullback {lhs} != degree * par-deg {rhs}")
    if args.format == "json":
        doc = {
            "pullback": bundle_to_doc(pulled),
            "par_deg_X": fraction_to_doc(par_deg(e)),
            "degree": c.degree,
            "par_deg_Y": fraction_to_doc(lhs),
            "identity_holds": True,
        }
        out.write(dumps(doc) + "\n")
        return EXIT_OK
    summands = pulled.summands if hasattr(pulled, "summands") else (pulled,)
    lines = [f"pullback along degree-{c.degree} cover ({len(summands)} summand{'s' if len(summands) != 1 else ''}):"]
    for s in summands:
        ws = ", ".join(f"{y}: {_frac(a)}" for y, a in s.weights.items()) or "no weights"
        lines.append(f"  deg {s.deg}; {ws}")
    lines.append(f"par-deg on Y = {_frac(lhs)} = {c.degree} * {_frac(par_deg(e))} (verified)")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


COMMANDS = {
    "validate": (cmd_validate, "check a cover document and print its canonical form"),
    "analyze": (cmd_analyze, "rank of F, stability verdict and orbifold-etale intermediate covers"),
    "blocks": (cmd_blocks, "list all block systems of the monodromy action"),
    "direct-image": (cmd_direct_image, "parabolic structure on f_* O_Y"),
    "pullback": (cmd_pullback, "pull a parabolic line or split bundle back along the cover"),
}


def _add_io_flags(parser, sub: bool):
    # subcommand copies default to SUPPRESS so flags before the subcommand survive
    d = (lambda v: argparse.SUPPRESS) if sub else (lambda v: v)
    parser.add_argument("--input", "-i", default=d(None), help="cover document (default: stdin)")
    parser.add_argument("--orbifold", "-o", default=d(None), help="orbifold document")
    parser.add_argument("--bundle", "-b", default=d(None), help="bundle document")
    parser.add_argument("--format", choices=("text", "json"), default=d("text"))
    parser.add_argument("--max-degree", type=int, default=d(DEFAULT_MAX_DEGREE), help="block enumeration degree cap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pullstab", description="Decide whether pullback along a branched cover preserves parabolic stability."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_io_flags(parser, sub=False)
    subs = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = subs.add_parser(name, help=help_text)
        _add_io_flags(p, sub=True)
        if name == "analyze":
            p.add_argument("--list-blocks", action="store_true", help="include every block system")
    return parser


def main(argv=None, out=None, err=None, stdin=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    args = build_parser().parse_args(argv)
    if not hasattr(args, "list_blocks"):
        args.list_blocks = False
    handler = COMMANDS[args.command][0]
    try:
        return handler(args, out, stdin)
    except DocumentError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except InvalidCover as exc:
        err.write("invalid cover:\n" + "".join(f"  - {p}\n" for p in exc.violations))
        return EXIT_INVALID
    except DegreeCapExceeded as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CAP
    except SelfCheckError as exc:
        err.write(f"self-check failed: {exc}\n")
        return EXIT_SELF_CHECK
    except PullstabError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

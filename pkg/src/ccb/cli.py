"""Command line front end.

Exit codes: 0 analysis completed (whether or not a certificate was found),
1 usage or parse error, 3 internal invariant violation, 4 resource bound hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections.abc import Sequence

from . import __version__
from .boundary import CompleteMultipartite, build_sbc_fragment, parse_target, verify_fragment
from .branching import classify_all
from .errors import CCBError, InvalidInputError, InvariantViolation, WordSyntaxError
from .graph import DEFAULT_MAX_CHI_VERTICES, load_graph
from .median import DEFAULT_MAX_FRAGMENT, build_fragment, parse_element
from .obstruction import obstruct_finite_target, obstruct_product, verify_certificate
from .words import (
    DEFAULT_MAX_RADIUS,
    DEFAULT_MAX_WORD_LENGTH,
    commutes,
    format_word,
    is_identity,
    normalize,
    parse_word,
)

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL, EXIT_RESOURCE = 0, 1, 3, 4


class UsageError(CCBError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {value}")
    return value


def _positive(text: str) -> int:
    value = _nonneg(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _threads_default() -> int:
    env = os.environ.get("CCB_THREADS")
    if not env:
        return 1
    try:
        return _positive(env)
    except argparse.ArgumentTypeError:
        raise UsageError(f"CCB_THREADS must be a positive integer, got {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("graph", help="defining graph file (edge list or JSON object)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--max-fragment", type=_positive, default=DEFAULT_MAX_FRAGMENT,
                        help="largest fragment or ball to build (default %(default)s)")
    common.add_argument("--max-chi-vertices", type=_positive, default=DEFAULT_MAX_CHI_VERTICES,
                        help="largest graph for exact chromatic number (default %(default)s)")
    common.add_argument("--max-radius", type=_nonneg, default=DEFAULT_MAX_RADIUS,
                        help="largest accepted radius (default %(default)s)")
    common.add_argument("--max-word-length", type=_positive, default=DEFAULT_MAX_WORD_LENGTH,
                        help="longest accepted input word (default %(default)s)")
    common.add_argument("--threads", type=_positive, default=None,
                        help="worker threads (default: $CCB_THREADS or 1)")

    parser = _Parser(prog="ccb", description="Branching and boundary-graph analysis of right-angled Artin groups.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("analyze", parents=[common], help="classify vertices and cliques")

    p = sub.add_parser("boundary", parents=[common], help="build a boundary-graph fragment")
    p.add_argument("--radius", type=_nonneg, default=0)

    p = sub.add_parser("obstruct", parents=[common], help="search for an embedding obstruction")
    p.add_argument("--radius", type=_nonneg, default=0)
    p.add_argument("--target", required=True, help="multipartite:N or a graph file")

    p = sub.add_parser("median", parents=[common], help="median-graph checks on a Cayley fragment")
    p.add_argument("--radius", type=_nonneg, default=2)
    # --json may also follow the action; SUPPRESS keeps an earlier --json intact
    late = _Parser(add_help=False)
    late.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    msub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    msub.add_parser("verify", parents=[late], help="check the median axioms")
    msub.add_parser("rank", parents=[late], help="largest cube dimension")
    h = msub.add_parser("hull", parents=[late], help="convex hull of elements")
    h.add_argument("elements", nargs="+")
    s = msub.add_parser("singular", parents=[late], help="test whether a path is singular")
    s.add_argument("path", nargs="+")

    p = sub.add_parser("words", parents=[common], help="normal forms and commutation")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--normal-form", metavar="WORD")
    group.add_argument("--identity", metavar="WORD")
    group.add_argument("--commutes", nargs=2, metavar=("U", "W"))
    return parser


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text.rstrip("\n"))


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_analyze(args) -> int:
    g = load_graph(args.graph)
    report = classify_all(g)
    width = max(len(v) for v in g.vertices)
    lines = [f"rank {report.rank}", "", f"{'vertex':<{width}}  branching  bc   sbc"]
    for v, f in sorted(report.per_vertex.items()):
        lines.append(f"{v:<{width}}  {_yn(f.branching):<9}  {_yn(f.branch_complemented):<3}  "
                     f"{_yn(f.strongly_branch_complemented)}")
    sbc = sum(f.strongly_branch_complemented for f in report.per_vertex.values())
    lines += ["", f"strongly branch-complemented: {sbc} of {len(g)}", "", "clique  top  dbc  dsbc"]
    for c, f in sorted(report.per_clique.items()):
        lines.append(f"{' '.join(c)}  {_yn(f.top_dimensional)}  {_yn(f.directionally_bc)}  "
                     f"{_yn(f.directionally_strongly_bc)}")
    _emit(args, report.to_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_boundary(args) -> int:
    g = load_graph(args.graph)
    frag = build_sbc_fragment(g, args.radius, args.max_radius, args.max_fragment, args.threads)
    verify_fragment(g, frag)
    fg = frag.to_graph()
    lines = [f"radius {args.radius}: {len(fg)} vertices, {fg.num_edges()} edges"]
    lines += [f"vertex {v}" for v in fg.vertices]
    lines += [f"edge {u} -- {w}" for u, w in fg.edges()]
    _emit(args, fg.to_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_obstruct(args) -> int:
    g = load_graph(args.graph)
    target = parse_target(args.target, load_graph)
    if isinstance(target, CompleteMultipartite):
        verdict = obstruct_product(g, target.parts, args.radius, args.max_radius,
                                   args.max_fragment, args.max_chi_vertices, args.threads)
    else:
        frag = build_sbc_fragment(g, args.radius, args.max_radius, args.max_fragment, args.threads)
        verdict = obstruct_finite_target(frag.to_graph(), target.graph)
    if verdict.certificate is not None:
        verify_certificate(verdict.certificate, g if isinstance(target, CompleteMultipartite) else None)
    payload = {"target": args.target, **verdict.to_dict()}
    cert = verdict.certificate
    if cert is None:
        text = f"certificate: none\nreason: {verdict.reason}"
    else:
        shown = {k: v for k, v in cert.payload.items() if k not in ("fragment", "source", "target")}
        text = "\n".join([
            f"certificate: {cert.kind}" + (" (advisory)" if cert.advisory else ""),
            f"reason: {verdict.reason}",
            f"payload: {json.dumps(shown, sort_keys=True, ensure_ascii=False)}",
            f"citation: {cert.citation}",
        ])
    _emit(args, payload, text)
    return EXIT_OK


def _elements(g, tokens: Sequence[str]):
    return [parse_element(g, t) for arg in tokens for t in arg.split()]


def cmd_median(args) -> int:
    g = load_graph(args.graph)
    frag = build_fragment(g, args.radius, args.max_fragment, args.max_radius)
    base = {"radius": args.radius, "vertices": len(frag), "action": args.action}
    if args.action == "verify":
        report = frag.verify_median_axioms()
        if not report.passed:
            raise InvariantViolation(f"median axioms fail on the built fragment: {report.to_dict()}")
        payload = {**base, **report.to_dict()}
        text = (f"median axioms: {'pass' if report.passed else 'FAIL'} "
                f"({report.triples_checked} triples, {'all' if report.exhaustive else 'sampled'})")
    elif args.action == "rank":
        dim = frag.max_cube_dim()
        payload = {**base, "rank": dim}
        text = str(dim)
    elif args.action == "hull":
        seeds = _elements(g, args.elements)
        for s in seeds:
            frag.idx(s)
        hull = frag.hull(frag.idx(s) for s in seeds)
        if hull != frag.hull_by_halfspaces(seeds):
            raise InvariantViolation("hull by medians and by halfspaces disagree")
        names = [format_word(frag.elements[i]) for i in sorted(hull)]
        payload = {**base, "hull": names}
        text = "\n".join(names)
    else:
        path = _elements(g, args.path)
        flag = frag.is_singular_path(path)
        payload = {**base, "path": [format_word(x) for x in path], "singular": flag}
        text = "true" if flag else "false"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_words(args) -> int:
    g = load_graph(args.graph)

    def word(text: str):
        w = parse_word(text, g)
        if len(w) > args.max_word_length:
            raise WordSyntaxError(f"word longer than {args.max_word_length} letters")
        return w

    if args.normal_form is not None:
        nf = normalize(g, word(args.normal_form))
        payload = {"word": args.normal_form, "normal_form": format_word(nf, ""), "length": len(nf)}
        text = format_word(nf)
    elif args.identity is not None:
        flag = is_identity(g, word(args.identity))
        payload = {"word": args.identity, "identity": flag}
        text = "true" if flag else "false"
    else:
        u, w = (word(x) for x in args.commutes)
        flag = commutes(g, u, w)
        payload = {"u": args.commutes[0], "w": args.commutes[1], "commutes": flag}
        text = "true" if flag else "false"
    _emit(args, payload, text)
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "boundary": cmd_boundary,
    "obstruct": cmd_obstruct,
    "median": cmd_median,
    "words": cmd_words,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.threads is None:
            args.threads = _threads_default()
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CCBError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Examples::

    factororder eta 154 16563
    factororder swe 234156 256143 --output json
    factororder classes --permutations 5 --relation shift
    factororder search --sum 14
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from typing import Sequence

from . import clusters, equivalence, skyline
from .polyring import evaluate_z
from .words import Word, WordParseError, embeddings, eta, generate_by_sum, generate_permutations, parse_word

MAX_SUM = 16
DEFAULT_SUM_LIMIT = 14
DEFAULT_PERMUTATION_LIMIT = 6
MAX_PERMUTATIONS = equivalence.MAX_SEQUENCE_N


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _word(text: str) -> Word:
    try:
        return parse_word(text)
    except WordParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _offsets(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid offsets {text!r}") from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["text", "json", "csv", "svg"], default="text")
    common.add_argument("--compact", action="store_true", help="print words as digit strings when possible")
    common.add_argument("--y-cap", type=_positive, help="sum truncation (default 2*||u||)")
    common.add_argument("--z-cap", type=_positive, help="mark-count truncation (default y-cap)")
    common.add_argument("--jobs", type=_positive, default=None, help="worker processes (default: all CPUs)")
    common.add_argument("--extended", action="store_true", help="allow n = 7 and sums above 14")

    parser = _Parser(prog="factororder", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    p = cmd("eta", "count embeddings of U in W")
    p.add_argument("u", type=_word)
    p.add_argument("w", type=_word)
    p = cmd("embeddings", "list embedding start positions of U in W")
    p.add_argument("u", type=_word)
    p.add_argument("w", type=_word)
    p = cmd("render", "draw the skyline diagram of U")
    p.add_argument("u", type=_word)
    p.add_argument("--format", choices=["ascii", "svg"], default=None)
    p.add_argument("--out", help="write to FILE instead of stdout")
    p = cmd("shifts", "list the valid rigid shifts of U")
    p.add_argument("u", type=_word)
    p = cmd("shift-class", "closure of U under reversal and rigid shifts")
    p.add_argument("u", type=_word)
    p = cmd("cluster", "minimal cluster of U with marks at OFFSETS")
    p.add_argument("u", type=_word)
    p.add_argument("offsets", type=_offsets, help="e.g. 1,3,6")
    p = cmd("mlevel", "z^M coefficient of the minimal cluster series")
    p.add_argument("u", type=_word)
    p.add_argument("m", type=_positive)
    p.add_argument("--method", choices=["dp", "enum"], default="dp")
    p.add_argument("--dump-automaton", action="store_true")
    p = cmd("series", "truncated generating function of U")
    p.add_argument("u", type=_word)
    p.add_argument("--kind", choices=["M", "C", "A", "F"], default="A")
    p.add_argument("--method", choices=["cluster", "brute"], default="cluster")
    p = cmd("swe", "decide strong Wilf equivalence of U and V")
    p.add_argument("u", type=_word)
    p.add_argument("v", type=_word)
    p = cmd("wilf", "compare avoider series of U and V up to the y cap")
    p.add_argument("u", type=_word)
    p.add_argument("v", type=_word)
    for name, help in (("classes", "partition a word family"), ("search", "strongly Wilf but not shift equivalent pairs")):
        p = cmd(name, help)
        family = p.add_mutually_exclusive_group(required=True)
        family.add_argument("--permutations", type=_positive, metavar="N")
        family.add_argument("--sum", type=_positive, metavar="S")
        if name == "classes":
            family.add_argument("--sequence", type=_positive, metavar="N_MAX", help="class counts for n = 1..N_MAX")
            p.add_argument("--relation", choices=["shift", "strong_wilf"], default="shift")
    return parser


def _fmt(w: Word, args) -> str:
    return w.format(args.compact)


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _check_family(args) -> tuple[list[Word], str]:
    if getattr(args, "permutations", None) is not None:
        n = args.permutations
        limit = MAX_PERMUTATIONS if args.extended else DEFAULT_PERMUTATION_LIMIT
        if n > limit:
            raise UsageError(f"--permutations {n} exceeds {limit}" + ("" if args.extended else " (use --extended)"))
        return generate_permutations(n), f"permutations of 1..{n}"
    s = args.sum
    limit = MAX_SUM if args.extended else DEFAULT_SUM_LIMIT
    if s > limit:
        raise UsageError(f"--sum {s} exceeds {limit}" + ("" if args.extended else " (use --extended)"))
    return list(generate_by_sum(s)), f"sum = {s}"


def _jobs(args) -> int:
    return args.jobs or equivalence.default_jobs()


def _y_cap(args, u: Word) -> int:
    return args.y_cap or 2 * u.total


def _do_eta(args):
    n = eta(args.u, args.w)
    if args.output == "json":
        _emit_json({"pattern": list(args.u), "host": list(args.w), "eta": n})
    else:
        print(n)


def _do_embeddings(args):
    e = embeddings(args.u, args.w)
    if args.output == "json":
        _emit_json(e.to_json())
    else:
        print(" ".join(map(str, e.positions)))


def _do_render(args):
    fmt = args.format or ("svg" if args.output == "svg" else "ascii")
    text = skyline.render(args.u, fmt)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _do_shifts(args):
    moves = skyline.enumerate_shifts(args.u)
    if args.output == "json":
        _emit_json([{"shift": s.to_json(), "word": list(v)} for s, v in moves])
    else:
        for s, v in moves:
            print(f"h={s.h} k={s.k} -> {_fmt(v, args)}")


def _do_shift_class(args):
    cls = skyline.shift_class(args.u)
    if args.output == "json":
        _emit_json(cls.to_json())
    else:
        for w in cls.members:
            print(_fmt(w, args))
        print(f"size: {len(cls)}")


def _do_cluster(args):
    try:
        c = clusters.minimal_cluster(args.u, args.offsets)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.output == "json":
        _emit_json(c.to_json() | {"length": len(c.word), "sum": c.word.total})
    else:
        print(_fmt(c.word, args))
        print(f"length: {len(c.word)} sum: {c.word.total} marks: {c.m}")


def _do_mlevel(args):
    y_cap = _y_cap(args, args.u)
    if args.method == "enum":
        p = clusters.m_level_enum(args.u, args.m, y_cap)
    else:
        auto = clusters.build_automaton(args.u)
        if args.dump_automaton:
            _emit_json(auto.to_json())
            return
        p = clusters.m_level_dp(auto, args.m, y_cap)
    if args.output == "json":
        _emit_json({"y_cap": y_cap, "terms": p.to_json()})
    else:
        print(p)


def _do_series(args):
    u = args.u
    y_cap = _y_cap(args, u)
    z_cap = args.z_cap or y_cap
    if args.method == "brute":
        if args.kind not in ("A", "F"):
            raise UsageError("--method brute only computes A and F")
        if y_cap > clusters.BRUTE_FORCE_MAX_Y_CAP:
            raise UsageError(f"--y-cap {y_cap} exceeds brute-force limit {clusters.BRUTE_FORCE_MAX_Y_CAP}")
        p = clusters.brute_force_A(u, y_cap)
    elif args.kind == "M":
        p = clusters.series_M(u, y_cap, z_cap)
    elif args.kind == "C":
        p = clusters.series_C(u, y_cap, z_cap)
    else:
        p = clusters.series_A(u, y_cap, z_cap)
    if args.kind == "F":
        p = evaluate_z(p, 0)
    if args.output == "json":
        _emit_json({"kind": args.kind, "y_cap": y_cap, "terms": p.to_json()})
    else:
        print(p)


def _do_swe(args):
    cert = clusters.strong_wilf_equivalent(args.u, args.v)
    if args.output == "json":
        _emit_json(cert.to_json())
        return
    verdict = "equivalent" if cert.equivalent else "not equivalent"
    print(f"{_fmt(args.u, args)} {_fmt(args.v, args)}: strongly Wilf {verdict} (levels compared: {cert.levels_compared})")
    if cert.witness:
        w = cert.witness
        a, b, c = w.monomial
        print(f"witness: x^{a}*y^{b}*z^{c} coefficient {w.coef_u} vs {w.coef_v}")


def wilf_compare(u: Word, v: Word, y_cap: int) -> dict:
    fu = evaluate_z(clusters.series_A(u, y_cap), 0)
    fv = evaluate_z(clusters.series_A(v, y_cap), 0)
    diffs = [
        (b, a)
        for (a, b, _) in set(dict(fu.items())) | set(dict(fv.items()))
        if fu.coefficient(a, b, 0) != fv.coefficient(a, b, 0)
    ]
    witness = None
    if diffs:
        b, a = min(diffs)
        witness = {"monomial": [a, b, 0], "coef_u": str(fu.coefficient(a, b, 0)), "coef_v": str(fv.coefficient(a, b, 0))}
    return {"equal_up_to_y_cap": not diffs, "y_cap": y_cap, "witness": witness}


def _do_wilf(args):
    result = wilf_compare(args.u, args.v, _y_cap(args, args.u))
    if args.output == "json":
        _emit_json(result)
        return
    verdict = "agree" if result["equal_up_to_y_cap"] else "differ"
    print(f"{_fmt(args.u, args)} {_fmt(args.v, args)}: avoider series {verdict} up to y^{result['y_cap']}")
    if result["witness"]:
        w = result["witness"]
        a, b, _ = w["monomial"]
        print(f"witness: x^{a}*y^{b} coefficient {w['coef_u']} vs {w['coef_v']}")


def _do_classes(args):
    jobs = _jobs(args)
    if args.sequence is not None:
        limit = MAX_PERMUTATIONS if args.extended else DEFAULT_PERMUTATION_LIMIT
        if args.sequence > limit:
            raise UsageError(f"--sequence {args.sequence} exceeds {limit}" + ("" if args.extended else " (use --extended)"))
        seq = equivalence.class_count_sequence(args.relation, args.sequence, jobs)
        if args.output == "json":
            _emit_json({"relation": args.relation, "sequence": seq})
        else:
            print(",".join(map(str, seq)))
        return
    words, label = _check_family(args)
    report = equivalence.partition(words, args.relation, jobs, label)
    if args.output == "json":
        _emit_json(report.to_json())
    elif args.output == "csv":
        print(report.to_csv(args.compact), end="")
    else:
        print(f"relation: {report.relation.value}")
        print(f"universe: {report.universe}")
        for cls in report.classes:
            print(f"{_fmt(cls[0], args)} ({len(cls)}): " + " ".join(_fmt(w, args) for w in cls))
        print(f"classes: {report.class_count}")


def _do_search(args):
    words, label = _check_family(args)
    jobs = _jobs(args)
    splits = equivalence.split_classes(words, jobs)
    pairs = equivalence.find_swe_not_shift(words, jobs) if splits else []
    if args.output == "json":
        _emit_json(
            {
                "universe": label,
                "split_classes": [s.to_json() for s in splits],
                "pairs": [p.to_json() for p in pairs],
            }
        )
        return
    print(f"universe: {label}")
    for i, s in enumerate(splits, 1):
        parts = " | ".join(" ".join(_fmt(w, args) for w in c) for c in s.shift_classes)
        print(f"split class {i}: {parts}")
    for p in pairs:
        print(f"pair: {_fmt(p.u, args)} {_fmt(p.v, args)} (levels compared: {p.swe.levels_compared})")
    print(f"split classes: {len(splits)}")
    print(f"pairs: {len(pairs)}")


_HANDLERS = {
    "eta": _do_eta,
    "embeddings": _do_embeddings,
    "render": _do_render,
    "shifts": _do_shifts,
    "shift-class": _do_shift_class,
    "cluster": _do_cluster,
    "mlevel": _do_mlevel,
    "series": _do_series,
    "swe": _do_swe,
    "wilf": _do_wilf,
    "classes": _do_classes,
    "search": _do_search,
}


def run(argv: Sequence[str]) -> tuple[int, str, str]:
    """Run one command, returning (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    code = 0
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            args = build_parser().parse_args(list(argv))
            _HANDLERS[args.command](args)
        except UsageError as exc:
            print(f"factororder: error: {exc}", file=sys.stderr)
            code = 2
        except SystemExit as exc:  # --help
            code = exc.code if isinstance(exc.code, int) else 0
    return code, out.getvalue(), err.getvalue()


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: generation, analysis, auditing, and SVG export.

Every subcommand prints human-readable text by default and a single JSON
document with --json.  Exact numbers appear in JSON as objects carrying
the canonical expression string plus a convenience float.  Exit codes:
0 for success (including not-applicable audit outcomes), 1 for usage or
input errors, 2 when a verified instance violates a necessary condition,
which indicates a bug in this artifact rather than new mathematics.
"""

from __future__ import annotations

import argparse
import json
import sys
from xml.etree import ElementTree

from .audit import (
    AuditReport,
    CertificateReport,
    RecoveredParameters,
    is_sturm,
    recover_parameters,
    search_substitutions,
    substitution_audit,
    three_iet_certificate,
)
from .dynamics import (
    IetParameters,
    Interval,
    Rotation,
    ThreeIet,
    first_return,
    idoc,
    in_z_epsilon,
)
from .morphisms import Morphism
from .qfield import as_quadratic, parse_quadratic
from .stepline import stepped_line_svg
from .words import TERNARY, Word, balance, complexity

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors exit 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _num(x) -> dict:
    q = as_quadratic(x)
    return {"exact": str(q), "approx": float(f"{float(q):.17g}")}


def _opt_num(x) -> dict | None:
    return None if x is None else _num(x)


def _read_word_argument(args) -> Word:
    if args.word is not None:
        text = args.word
    else:
        with open(args.file, "r", encoding="ascii") as handle:
            text = handle.read().rstrip("\n")
    if not text:
        raise ValueError("empty input word")
    return Word(text)


def _parameters(args) -> IetParameters:
    return IetParameters(
        parse_quadratic(args.epsilon),
        parse_quadratic(args.l),
        parse_quadratic(args.c),
    )


# -- shared serializers -----------------------------------------------------------


def _params_json(params: IetParameters) -> dict:
    return {
        "epsilon": _num(params.epsilon),
        "l": _num(params.length_l),
        "c": _num(params.offset_c),
    }


def _certificate_json(cert: CertificateReport) -> dict:
    return {
        "verdict": cert.verdict,
        "witness": cert.witness,
        "word_length": cert.word_length,
        "balance_window": cert.balance_window,
        "complexity_window": cert.complexity_window,
        "image_lengths": cert.image_lengths,
        "max_imbalance": cert.max_imbalance,
    }


def _recovery_json(rec: RecoveredParameters) -> dict:
    return {
        "epsilon": _num(rec.epsilon),
        "c_hat": _num(rec.c_hat),
        "l_hat": _num(rec.l_hat),
        "attained_infimum": rec.attained_infimum,
        "sample_size": rec.sample_size,
        "position_count": rec.position_count,
        "threshold_consistent": rec.threshold_consistent,
        "convention": rec.convention,
        "match_fraction": _num(rec.match_fraction),
        "first_mismatch": rec.first_mismatch,
    }


def _spectral_json(spectral) -> dict:
    return {
        "charpoly": list(spectral.charpoly),
        "classification": spectral.classification,
        "dominant": _opt_num(spectral.dominant),
        "dominant_conjugate": _opt_num(spectral.dominant_conjugate),
        "integer_roots": list(spectral.integer_roots),
        "quadratic_factor": (
            list(spectral.quadratic_factor) if spectral.quadratic_factor else None
        ),
        "determinant": spectral.determinant,
    }


def _sturm_json(value, verdict) -> dict:
    return {
        "value": _num(value),
        "is_quadratic_irrational": verdict.is_quadratic_irrational,
        "in_unit_interval": verdict.in_unit_interval,
        "conjugate_outside_unit_interval": verdict.conjugate_outside_unit_interval,
        "is_sturm": verdict.is_sturm,
    }


def _audit_json(report: AuditReport) -> dict:
    return {
        "morphism": report.morphism.to_text(),
        "prefix_length": report.prefix_length,
        "expanding": (
            {"letter": report.expanding[0], "power": report.expanding[1]}
            if report.expanding
            else None
        ),
        "fixed_point_consistent": report.fixed_point_consistent,
        "primitive": report.primitive,
        "certificate": (
            _certificate_json(report.certificate) if report.certificate else None
        ),
        "spectral": _spectral_json(report.spectral) if report.spectral else None,
        "epsilon": _opt_num(report.epsilon),
        "l": _opt_num(report.l_exact),
        "frequencies_consistent": report.frequencies_consistent,
        "frequency_deviation": report.frequency_deviation,
        "recovery": _recovery_json(report.recovery) if report.recovery else None,
        "non_degenerate": report.non_degenerate,
        "sturm": (
            _sturm_json(report.epsilon, report.sturm) if report.sturm else None
        ),
        "eigenvector_relation_holds": report.eigenvector_relation_holds,
        "non_singular": report.non_singular,
        "quadratic_unit": report.quadratic_unit,
        "parameters_in_field": report.parameters_in_field,
        "conjugate_vector_uniform_sign": report.conjugate_vector_uniform_sign,
        "scaling_relation_holds": report.scaling_relation_holds,
        "scaling_prefixes": report.scaling_prefixes,
        "overall": report.overall,
        "reason": report.reason,
        "note": report.note,
    }


# -- subcommand handlers ----------------------------------------------------------


def _cmd_gen3iet(args):
    params = _parameters(args)
    if args.n < 0:
        raise ValueError("n must be non-negative")
    coding = ThreeIet(params).code_orbit(args.n, right_closed=args.right_closed)
    payload = {
        "command": "gen3iet",
        "parameters": _params_json(params),
        "n": args.n,
        "word": coding.word.letters,
        "orbit": [_num(x) for x in coding.points],
    }
    return payload, coding.word.letters, 0


def _cmd_gensturm(args):
    eps = parse_quadratic(args.epsilon)
    lo = parse_quadratic(args.lo)
    if not 0 < eps < 1:
        raise ValueError(f"constraint violated: require 0 < epsilon < 1, got {eps}")
    if args.n < 0:
        raise ValueError("n must be non-negative")
    rotation = Rotation(lo, lo + eps, lo + 1)
    coding = rotation.code_orbit(args.n)
    payload = {
        "command": "gensturm",
        "epsilon": _num(eps),
        "lo": _num(lo),
        "n": args.n,
        "word": coding.word.letters,
        "orbit": [_num(x) for x in coding.points],
    }
    return payload, coding.word.letters, 0


def _cmd_induce(args):
    params = _parameters(args)
    rotation = Rotation.plain_for(params)
    whole = Interval(params.offset_c, params.offset_c + params.length_l)
    if args.e_lo is not None or args.e_hi is not None:
        if args.e_lo is None or args.e_hi is None:
            raise ValueError("--e-lo and --e-hi must be given together")
        target = Interval(parse_quadratic(args.e_lo), parse_quadratic(args.e_hi))
    else:
        target = whole
    induced = first_return(rotation, target, cap=args.cap)
    matches = None
    if target.lo == whole.lo and target.hi == whole.hi:
        matches = induced.matches_exchange(ThreeIet(params))
    payload = {
        "command": "induce",
        "parameters": _params_json(params),
        "domain": {"lo": _num(target.lo), "hi": _num(target.hi)},
        "pieces": [
            {
                "lo": _num(piece.interval.lo),
                "hi": _num(piece.interval.hi),
                "return_time": piece.return_time,
                "translation": _num(piece.translation),
            }
            for piece in induced.pieces
        ],
        "matches_exchange": matches,
    }
    lines = [
        f"first return to [{target.lo}, {target.hi}) in {len(induced.pieces)} pieces"
    ]
    for piece in induced.pieces:
        lines.append(
            f"  [{piece.interval.lo}, {piece.interval.hi})  "
            f"return time {piece.return_time}  translation {piece.translation}"
        )
    if matches is not None:
        lines.append(f"matches the three-interval exchange: {matches}")
    return payload, "\n".join(lines), 0


def _cmd_analyze(args):
    word = _read_word_argument(args)
    alphabet = "ternary" if word.is_over(TERNARY) else "binary"
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    known = {"complexity", "balance", "certificate"}
    unknown = set(checks) - known
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    if not checks:
        checks = ["complexity", "balance"]
        if alphabet == "ternary":
            checks.append("certificate")
    payload = {
        "command": "analyze",
        "word_length": len(word),
        "alphabet": alphabet,
        "complexity": None,
        "balance": None,
        "certificate": None,
    }
    lines = [f"{alphabet} word of {len(word)} letters"]
    if "complexity" in checks:
        profile = complexity(word, n_max=min(args.n_max, len(word)))
        payload["complexity"] = {
            "counts": list(profile.counts),
            "reliable_up_to": profile.reliable_up_to,
        }
        lines.append(
            "complexity C(1..{top}): {vals} (reliable up to n={rel})".format(
                top=profile.n_max,
                vals=" ".join(str(profile.count(n)) for n in range(1, profile.n_max + 1)),
                rel=profile.reliable_up_to,
            )
        )
    if "balance" in checks:
        report = balance(word, n_max=args.balance_window)
        payload["balance"] = {
            "window": report.window,
            "max_imbalance": report.max_imbalance,
            "table": {a: list(v) for a, v in sorted(report.table.items())},
        }
        lines.append(
            f"balance: max imbalance {report.max_imbalance} "
            f"over factor lengths 1..{report.window}"
        )
    if "certificate" in checks:
        if alphabet != "ternary":
            raise ValueError("certificate requires a ternary word")
        cert = three_iet_certificate(word, min_length=min(1000, len(word)))
        payload["certificate"] = _certificate_json(cert)
        lines.append(f"certificate: {cert.verdict}")
        if cert.witness:
            lines.append(f"  witness: {cert.witness}")
    return payload, "\n".join(lines), 0


def _cmd_idoc(args):
    params = _parameters(args)
    eps_irrational = params.epsilon.radicand is not None
    l_in_module = in_z_epsilon(params.length_l, params.epsilon)
    verdict = idoc(params)
    payload = {
        "command": "idoc",
        "parameters": _params_json(params),
        "epsilon_irrational": eps_irrational,
        "l_in_z_epsilon": l_in_module,
        "idoc": verdict,
    }
    text = (
        f"idoc: {str(verdict).lower()} "
        f"(epsilon irrational: {str(eps_irrational).lower()}, "
        f"l in Z[epsilon]: {str(l_in_module).lower()})"
    )
    return payload, text, 0


def _cmd_sturm(args):
    value = parse_quadratic(args.value)
    verdict = is_sturm(value)
    payload = {"command": "sturm", **_sturm_json(value, verdict)}
    text = (
        f"sturm: {str(verdict.is_sturm).lower()} "
        f"(quadratic irrational: {str(verdict.is_quadratic_irrational).lower()}, "
        f"in (0,1): {str(verdict.in_unit_interval).lower()}, "
        f"conjugate outside (0,1): "
        f"{str(verdict.conjugate_outside_unit_interval).lower()})"
    )
    return payload, text, 0


def _cmd_recover(args):
    word = _read_word_argument(args)
    eps = parse_quadratic(args.epsilon)
    rec = recover_parameters(word, eps)
    payload = {"command": "recover", **_recovery_json(rec)}
    text = (
        f"c_hat = {rec.c_hat}\n"
        f"l_hat = {rec.l_hat}\n"
        f"convention = {rec.convention}\n"
        f"match fraction = {rec.match_fraction} "
        f"(first mismatch: {rec.first_mismatch})\n"
        f"attained infimum = {str(rec.attained_infimum).lower()}"
    )
    return payload, text, 0


def _cmd_audit(args):
    morphism = Morphism.from_text(args.morphism)
    report = substitution_audit(morphism, prefix_len=args.seed_prefix_len)
    payload = {"command": "audit", **_audit_json(report)}
    lines = [f"substitution {morphism.to_text()}: {report.overall}"]
    if report.reason:
        lines.append(f"  reason: {report.reason}")
    if report.note:
        lines.append(f"  note: {report.note}")
    if report.epsilon is not None:
        lines.append(f"  epsilon = {report.epsilon}")
        lines.append(f"  l = {report.l_exact}")
    if report.sturm is not None:
        lines.append(f"  sturm: {str(report.sturm.is_sturm).lower()}")
    if report.spectral is not None:
        spot = report.spectral
        parts = [f"  spectrum: {spot.classification}, det = {spot.determinant}"]
        if spot.dominant is not None:
            parts.append(f"dominant eigenvalue = {spot.dominant}")
        lines.append(", ".join(parts))
    code = 0
    if report.overall == "fail":
        code = 2
        print(
            "necessary-condition violation on a verified instance; "
            "this indicates a bug in this artifact",
            file=sys.stderr,
        )
    return payload, "\n".join(lines), code


def _cmd_search(args):
    report = search_substitutions(
        max_total=args.max_total_length,
        max_image=args.max_image_length,
        audit_prefix=args.seed_prefix_len,
    )
    payload = {
        "command": "search",
        "max_total": report.max_total,
        "max_image": report.max_image,
        "counts": report.counts,
        "audited": [
            {
                "morphism": s.text,
                "overall": s.overall,
                "reason": s.reason,
                "epsilon": s.epsilon,
                "is_sturm": s.is_sturm,
            }
            for s in report.audited
        ],
        "passes": [s.text for s in report.passes],
    }
    lines = [
        f"searched {report.counts['total']} substitutions "
        f"(total image length <= {report.max_total})"
    ]
    for key, value in report.counts.items():
        if key != "total":
            lines.append(f"  {key}: {value}")
    for s in report.passes:
        lines.append(f"  pass: {s.text}  epsilon = {s.epsilon}")
    code = 0
    if report.failures:
        code = 2
        print(
            f"{len(report.failures)} necessary-condition violation(s) on verified "
            "instances; this indicates a bug in this artifact",
            file=sys.stderr,
        )
    return payload, "\n".join(lines), code


def _cmd_svg(args):
    # an empty word is legal here: the figure degrades to bare axes
    if args.word is not None:
        word = Word(args.word)
    elif args.file is not None:
        with open(args.file, "r", encoding="ascii") as handle:
            word = Word(handle.read().rstrip("\n"))
    else:
        word = Word("")
    if args.out is None:
        raise ValueError("--out is required for svg output")
    document = stepped_line_svg(word, unit=args.unit)
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write(document)
    root = ElementTree.fromstring(document)
    payload = {
        "command": "svg",
        "path": args.out,
        "word_length": len(word),
        "segments": len(word),
        "unit": args.unit,
        "width": float(root.get("width")),
        "height": float(root.get("height")),
    }
    return payload, f"wrote {args.out} ({len(word)} segments)", 0


# -- parser -----------------------------------------------------------------------


def _add_word_source(sub, required: bool = True):
    group = sub.add_mutually_exclusive_group(required=required)
    group.add_argument("--word", help="word given inline")
    group.add_argument("--file", help="file holding one word (ASCII)")


def _build_parser() -> _Parser:
    parser = _Parser(prog="iet3", description=__doc__.splitlines()[0])

    def add_common(target, json_default, prefix_default, out_default):
        target.add_argument(
            "--json",
            action="store_true",
            default=json_default,
            help="emit one JSON document",
        )
        target.add_argument(
            "--seed-prefix-len",
            type=int,
            default=prefix_default,
            metavar="N",
            help="prefix length for generated fixed points (audit, search)",
        )
        target.add_argument(
            "--out",
            default=out_default,
            help="write the payload (or SVG) to this file",
        )

    # the same flags are accepted before and after the subcommand; the
    # per-subcommand copies default to SUPPRESS so, when absent, they do
    # not clobber values parsed at the top level
    add_common(parser, False, 10_000, None)
    common = argparse.ArgumentParser(add_help=False)
    add_common(common, argparse.SUPPRESS, argparse.SUPPRESS, argparse.SUPPRESS)
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = commands.add_parser(
        "gen3iet", parents=[common], help="code the orbit of 0 under the exchange"
    )
    gen.add_argument("--epsilon", required=True)
    gen.add_argument("--l", required=True)
    gen.add_argument("--c", default="0")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument(
        "--right-closed", action="store_true", help="use right-closed intervals"
    )
    gen.set_defaults(handler=_cmd_gen3iet)

    gsturm = commands.add_parser(
        "gensturm", parents=[common], help="code the orbit of 0 under a rotation")
    gsturm.add_argument("--epsilon", required=True)
    gsturm.add_argument("--lo", default="0")
    gsturm.add_argument("--n", type=int, required=True)
    gsturm.set_defaults(handler=_cmd_gensturm)

    induce = commands.add_parser(
        "induce", parents=[common], help="first-return map of the rotation")
    induce.add_argument("--epsilon", required=True)
    induce.add_argument("--l", required=True)
    induce.add_argument("--c", default="0")
    induce.add_argument("--e-lo", help="left endpoint of the return interval")
    induce.add_argument("--e-hi", help="right endpoint of the return interval")
    induce.add_argument("--cap", type=int, default=10**6)
    induce.set_defaults(handler=_cmd_induce)

    analyze = commands.add_parser(
        "analyze", parents=[common], help="complexity, balance, certificate")
    _add_word_source(analyze)
    analyze.add_argument(
        "--checks", default="", help="comma list: complexity,balance,certificate"
    )
    analyze.add_argument("--n-max", type=int, default=30)
    analyze.add_argument("--balance-window", type=int, default=300)
    analyze.set_defaults(handler=_cmd_analyze)

    idoc_cmd = commands.add_parser(
        "idoc", parents=[common], help="infinite distinct orbit condition")
    idoc_cmd.add_argument("--epsilon", required=True)
    idoc_cmd.add_argument("--l", required=True)
    idoc_cmd.add_argument("--c", default="0")
    idoc_cmd.set_defaults(handler=_cmd_idoc)

    sturm = commands.add_parser(
        "sturm", parents=[common], help="Sturm-number predicate")
    sturm.add_argument("--value", required=True)
    sturm.set_defaults(handler=_cmd_sturm)

    recover = commands.add_parser(
        "recover", parents=[common], help="recover (c, l) from a coding")
    _add_word_source(recover)
    recover.add_argument("--epsilon", required=True)
    recover.set_defaults(handler=_cmd_recover)

    audit = commands.add_parser(
        "audit", parents=[common], help="substitution invariance audit")
    audit.add_argument("--morphism", required=True, help='e.g. "A>AB;B>AC;C>A"')
    audit.set_defaults(handler=_cmd_audit)

    search = commands.add_parser(
        "search", parents=[common], help="exhaustive small-substitution audit")
    search.add_argument("--max-total-length", type=int, default=8)
    search.add_argument("--max-image-length", type=int, default=None)
    search.set_defaults(handler=_cmd_search)

    svg = commands.add_parser(
        "svg", parents=[common], help="stepped-line figure")
    _add_word_source(svg, required=False)
    svg.add_argument("--unit", type=float, default=20)
    svg.set_defaults(handler=_cmd_svg)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, text, code = args.handler(args)
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    rendered = json.dumps(payload, indent=2) if args.json else text
    if args.json or rendered:
        print(rendered)
    if args.out and args.command != "svg":
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(rendered + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

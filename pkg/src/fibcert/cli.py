"""Command-line surface: abelianize, certify, scan, and selftest.

Reports are canonical JSON (sorted keys, fixed separators), so one
RunConfig always reproduces byte-identical output.  Exit codes: 0 success
or Fibred, 1 selftest failure, 2 parse error, 3 engine or data rejection,
10 NotFibredByRank, 11 Inconclusive.
"""

from __future__ import annotations

import argparse
import hashlib
import sys

from .chains import build_complex
from .errors import EngineError, FibcertError, ParseError, ValidationError
from .fibring import Verdict, character_scan, fibred_check, ray_samples
from .presentation import GroupPresentation, parse_presentation
from .selftest import all_ok, run_all
from .serialize import (
    canonical_json,
    character_to_json,
    digest,
    frac_from_str,
    load_character,
    parse_inline_character,
    report_envelope,
)
from .valuefield import DEFAULT_FIELD

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_PARSE = 2
EXIT_ENGINE = 3
EXIT_NOT_FIBRED = 10
EXIT_INCONCLUSIVE = 11

_VERDICT_EXIT = {
    Verdict.FIBRED.value: EXIT_OK,
    Verdict.NOT_FIBRED_BY_RANK.value: EXIT_NOT_FIBRED,
    Verdict.INCONCLUSIVE.value: EXIT_INCONCLUSIVE,
}


def _load_presentation(path: str) -> tuple[GroupPresentation, str]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read presentation file {path!r}: {exc}") from exc
    return parse_presentation(text), hashlib.sha256(text.encode("utf-8")).hexdigest()


def _parse_cutoff(raw: str | None):
    if raw is None:
        return None
    cutoff = DEFAULT_FIELD.rational(frac_from_str(raw))
    if cutoff.sign() <= 0:
        raise ValidationError(f"cutoff must be positive, got {raw!r}")
    return cutoff


_SQRT_NAMES = ("", "sqrt2", "sqrt3", "sqrt5")


def _fmt_value(v) -> str:
    """Render a serialized value (coords list, "inf", or None) for text mode."""
    if v is None or isinstance(v, str):
        return str(v)
    parts = []
    for coord, name in zip(v, _SQRT_NAMES):
        if coord == "0":
            continue
        parts.append(coord if not name else f"{coord}*{name}")
    return " + ".join(parts) if parts else "0"


def _emit(args, report: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        payload = canonical_json(report) + "\n"
    else:
        payload = "\n".join(text_lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def cmd_abelianize(args) -> int:
    pres, pres_digest = _load_presentation(args.presentation)
    ab = pres.abelianization()
    report = report_envelope(
        "abelianize",
        inputs={"presentation": pres_digest},
        generators=list(pres.generators),
        rank=ab.rank,
        torsion=list(ab.torsion),
        projection=[list(row) for row in ab.projection],
    )
    lines = [
        f"generators: {', '.join(pres.generators)}",
        f"rank: {ab.rank}",
        f"torsion: {list(ab.torsion)}",
        f"projection: {[list(row) for row in ab.projection]}",
    ]
    _emit(args, report, lines)
    return EXIT_OK


def cmd_certify(args) -> int:
    pres, pres_digest = _load_presentation(args.presentation)
    inputs = {"presentation": pres_digest}
    if args.phi is not None:
        phi = parse_inline_character(args.phi)
        inputs["character"] = digest(character_to_json(phi))
    else:
        phi = load_character(args.character)
        inputs["character"] = digest(character_to_json(phi))
    cc = build_complex(pres)
    verdict = fibred_check(cc, phi, _parse_cutoff(args.cutoff))
    body = verdict.to_json()
    report = report_envelope("certify", inputs=inputs, **body)
    lines = [
        f"verdict: {body['verdict']}",
        f"plus:    {body['plus']}",
        f"minus:   {body['minus']}",
        f"cutoff:  {_fmt_value(body['cutoff'])}",
        f"margin:  {_fmt_value(body['margin'])}",
    ]
    _emit(args, report, lines)
    return _VERDICT_EXIT[body["verdict"]]


def cmd_scan(args) -> int:
    pres, pres_digest = _load_presentation(args.presentation)
    cc = build_complex(pres)
    rank = pres.abelianization().rank
    samples = ray_samples(rank, args.samples)
    scan = character_scan(cc, samples, _parse_cutoff(args.cutoff))
    report = report_envelope(
        "scan",
        seed=args.seed,
        inputs={"presentation": pres_digest},
        rank=rank,
        requested=args.samples,
        **scan,
    )
    counts = scan["summary"]["counts"]
    lines = [f"rank: {rank}", f"samples: {len(scan['samples'])}"]
    lines += [f"{k}: {v}" for k, v in sorted(counts.items())]
    lines.append(f"certified rays: {scan['summary']['certified_rays']}")
    _emit(args, report, lines)
    return EXIT_OK


def cmd_selftest(args) -> int:
    cutoff = frac_from_str(args.cutoff) if args.cutoff is not None else None
    results = run_all(seed=args.seed, cutoff=cutoff, samples=args.samples)
    ok = all_ok(results)
    report = report_envelope(
        "selftest",
        seed=args.seed,
        ok=ok,
        suites=[r.to_json() for r in results],
    )
    lines = []
    for r in results:
        lines.append(f"{r.name}: passed {r.passed}, failed {r.failed}")
        for key, count in sorted(r.counters.items()):
            lines.append(f"  {key}: {count}")
        for note in r.notes:
            lines.append(f"  FAIL {note}")
        for note in r.info:
            lines.append(f"  note {note}")
    lines.append("result: all suites passed" if ok else "result: FAILURES")
    _emit(args, report, lines)
    return EXIT_OK if ok else EXIT_SELFTEST


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibcert",
        description="Exact fibring certificates over truncated Novikov rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", help="write the report to this path instead of stdout")
        p.add_argument("--format", choices=("json", "text"), default="json",
                       help="report format (default json)")

    p_ab = sub.add_parser("abelianize", help="free abelianization: rank, torsion, projection")
    p_ab.add_argument("presentation", help="path to a presentation file")
    common(p_ab)
    p_ab.set_defaults(fn=cmd_abelianize)

    p_cert = sub.add_parser("certify", help="two-sided fibring check for one character")
    p_cert.add_argument("presentation", help="path to a presentation file")
    spec = p_cert.add_mutually_exclusive_group(required=True)
    spec.add_argument("--phi", help="inline character: comma-separated rationals")
    spec.add_argument("--character", help="path to a character JSON file")
    p_cert.add_argument("--cutoff", help="truncation cutoff as a positive rational")
    common(p_cert)
    p_cert.set_defaults(fn=cmd_certify)

    p_scan = sub.add_parser("scan", help="fibred verdicts over sampled primitive rays")
    p_scan.add_argument("presentation", help="path to a presentation file")
    p_scan.add_argument("--samples", type=int, default=16,
                        help="ray sample budget (default 16)")
    p_scan.add_argument("--seed", type=int, default=0, help="recorded in the report")
    p_scan.add_argument("--cutoff", help="truncation cutoff as a positive rational")
    common(p_scan)
    p_scan.set_defaults(fn=cmd_scan)

    p_self = sub.add_parser("selftest", help="run the built-in lemma suites")
    p_self.add_argument("--seed", type=int, default=0, help="pseudo-random stream seed")
    p_self.add_argument("--samples", type=int, default=None,
                        help="cap the instance count of every suite")
    p_self.add_argument("--cutoff",
                        help="starve the inversion battery to this cutoff")
    common(p_self)
    p_self.set_defaults(fn=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"fibcert: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (EngineError, ValidationError) as exc:
        print(f"fibcert: rejected: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    except FibcertError as exc:
        print(f"fibcert: {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())

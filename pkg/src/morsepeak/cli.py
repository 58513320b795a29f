"""Command-line front end: morsepeak extract|transform|distance|stability.

Exit codes: 2 parse/input error, 3 invalid Morse set, 4 kind mismatch.
Extended reals are printed as "inf"/"-inf"; structured JSON uses null.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import plots
from .core import (EmptyInputError, InvalidMorseSetError, MorseSet,
                   NonMonotoneAbscissaError, extract_critical_points,
                   read_csv_series)
from .metrics import (DIAGONAL, PAD_ORIGIN, KindMismatchError, morse_distance,
                      wasserstein)
from .pairing import (PDSet, PTSet, RPTSet, denoise, join_pd, join_pt,
                      join_rpt, persistence_transformation,
                      reduced_persistence_transformation,
                      to_persistence_diagram)
from .stability import GenParams, reports_to_json, run_trials

EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_KIND = 4


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(path).write_text(text)


def _parse_p(token: str) -> float:
    if token.strip().lower() in ("inf", "infinity"):
        return math.inf
    p = float(token)
    if p < 1:
        raise argparse.ArgumentTypeError("p must be >= 1 or 'inf'")
    return p


def _slack(token: str) -> str:
    return {"diagonal": DIAGONAL, "pad-origin": PAD_ORIGIN}[token]


def _load_morse_sets(text: str, plateau_eps: float) -> list[MorseSet]:
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        data = json.loads(text)
        if isinstance(data, dict):
            data = [data]
        return [MorseSet.from_json_dict(d) for d in data]
    return extract_critical_points(read_csv_series(text), plateau_eps)


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1)


def _fmt_scalar(v: float) -> str:
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".12g")


# ---------------------------------------------------------------------------
# Subcommands


def cmd_extract(args) -> int:
    sets = extract_critical_points(read_csv_series(_read_input(args.input)),
                                   args.plateau_eps)
    docs = [s.to_json_dict() for s in sets]
    payload = docs[0] if len(docs) == 1 else docs
    _write_output(_dump_json(payload), args.output)
    return 0


def cmd_transform(args) -> int:
    sets = _load_morse_sets(_read_input(args.input), args.plateau_eps)
    if args.kind == "pt":
        result = join_pt(denoise(persistence_transformation(s), args.tau)
                         for s in sets)
        svg = plots.render_pt(result)
    elif args.kind == "rpt":
        result = join_rpt(reduced_persistence_transformation(s, args.clip_essential)
                          for s in sets)
        svg = plots.render_rpt(result)
    else:
        result = join_pd(to_persistence_diagram(
            denoise(persistence_transformation(s), args.tau)) for s in sets)
        svg = plots.render_pd(result)
    if args.svg:
        Path(args.svg).write_text(svg)
    if args.format == "csv":
        _write_output(_to_csv(result), args.output)
    else:
        _write_output(_dump_json(result.to_json_dict()), args.output)
    return 0


def _to_csv(result) -> str:
    rows = []
    if isinstance(result, PTSet):
        rows.append("x,birth,death")
        for f in result.features:
            rows.append(f"{_fmt_scalar(f.x)},{_fmt_scalar(f.birth)},"
                        f"{_fmt_scalar(f.death)}")
        for f in result.diagonal:
            rows.append(f"{_fmt_scalar(f.x)},{_fmt_scalar(f.birth)},"
                        f"{_fmt_scalar(f.death)}")
    elif isinstance(result, RPTSet):
        rows.append("x,persistence")
        for f in result.features:
            rows.append(f"{_fmt_scalar(f.x)},{_fmt_scalar(f.persistence)}")
    else:
        rows.append("birth,death")
        for q in result.points:
            rows.append(f"{_fmt_scalar(q.birth)},{_fmt_scalar(q.death)}")
    return "\n".join(rows) + "\n"


def _load_transform(text: str, kind: str):
    data = json.loads(text)
    if kind == "pt":
        return PTSet.from_json_dict(data)
    if kind == "rpt":
        return RPTSet.from_json_dict(data)
    return PDSet.from_json_dict(data)


def cmd_distance(args) -> int:
    ta, tb = _read_input(args.a), _read_input(args.b)
    if args.kind == "morse":
        sa = _load_morse_sets(ta, args.plateau_eps)
        sb = _load_morse_sets(tb, args.plateau_eps)
        if len(sa) != 1 or len(sb) != 1:
            raise ValueError("morse distance expects single-segment inputs")
        d = morse_distance(sa[0], sb[0], args.p)
    else:
        d = wasserstein(_load_transform(ta, args.kind),
                        _load_transform(tb, args.kind),
                        args.p, args.slack)
    sys.stdout.write(_fmt_scalar(d) + "\n")
    return 0


def cmd_stability(args) -> int:
    params = GenParams(peak_count_range=tuple(args.peaks),
                       domain=tuple(args.domain),
                       height_range=tuple(args.heights),
                       seed=args.seed)
    transforms = ("pt", "rpt") if args.transform == "both" else (args.transform,)
    workers = int(os.environ.get("MORSEPEAK_THREADS", "1") or "1")
    reports = run_trials(params, args.trials, epsilon=args.epsilon,
                         ps=tuple(args.p), transforms=transforms,
                         slack=args.slack, max_workers=max(1, workers))
    _write_output(reports_to_json(reports), args.output)
    gated = [r for r in reports
             if r.slack == PAD_ORIGIN and r.equal_cardinality]
    return 0 if all(r.holds for r in gated) else 1


# ---------------------------------------------------------------------------
# Argument parsing


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="morsepeak",
        description="Peak persistence transforms and metrics for 1-D signals")
    sub = top.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("extract", help="CSV -> validated Morse-set JSON")
    ex.add_argument("input", help="CSV path or '-' for stdin")
    ex.add_argument("--plateau-eps", type=float, default=0.0)
    ex.add_argument("-o", "--output", default=None)
    ex.set_defaults(func=cmd_extract)

    tr = sub.add_parser("transform", help="Morse JSON or CSV -> PT/RPT/PD")
    tr.add_argument("input")
    tr.add_argument("--kind", choices=("pt", "rpt", "pd"), required=True)
    tr.add_argument("--tau", type=float, default=0.0)
    tr.add_argument("--clip-essential", action="store_true")
    tr.add_argument("--plateau-eps", type=float, default=0.0)
    tr.add_argument("--svg", default=None, metavar="PATH")
    tr.add_argument("--format", choices=("json", "csv"), default="json")
    tr.add_argument("-o", "--output", default=None)
    tr.set_defaults(func=cmd_transform)

    di = sub.add_parser("distance", help="distance between two inputs")
    di.add_argument("a")
    di.add_argument("b")
    di.add_argument("--kind", choices=("morse", "pt", "rpt", "pd"),
                    default="morse")
    di.add_argument("--p", type=_parse_p, default=2.0)
    di.add_argument("--slack", type=_slack, choices=(DIAGONAL, PAD_ORIGIN),
                    default=DIAGONAL)
    di.add_argument("--plateau-eps", type=float, default=0.0)
    di.set_defaults(func=cmd_distance)

    st = sub.add_parser("stability", help="randomized stability trials")
    st.add_argument("--trials", type=int, default=100)
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--p", type=_parse_p, nargs="+",
                    default=[1.0, 2.0, math.inf])
    st.add_argument("--transform", choices=("pt", "rpt", "both"),
                    default="both")
    st.add_argument("--slack", type=_slack, choices=(DIAGONAL, PAD_ORIGIN),
                    default=PAD_ORIGIN)
    st.add_argument("--epsilon", type=float, default=0.1)
    st.add_argument("--peaks", type=int, nargs=2, default=[1, 10],
                    metavar=("LO", "HI"))
    st.add_argument("--domain", type=float, nargs=2, default=[0.0, 100.0])
    st.add_argument("--heights", type=float, nargs=2, default=[0.0, 10.0])
    st.add_argument("-o", "--output", default="stability-report.json")
    st.set_defaults(func=cmd_stability)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InvalidMorseSetError as exc:
        print(f"morsepeak: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except KindMismatchError as exc:
        print(f"morsepeak: {exc}", file=sys.stderr)
        return EXIT_KIND
    except (EmptyInputError, NonMonotoneAbscissaError, ValueError, OSError,
            json.JSONDecodeError, KeyError) as exc:
        print(f"morsepeak: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

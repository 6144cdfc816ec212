"""Command-line interface: ``nucube check | normalize | erase | corpus``.

Exit codes: 0 success, 1 judgement failure, 2 parse or configuration error,
3 fuel exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from .checker import CheckConfig, check_judgement, sort_of, synth_type
from .derivation import TRACE_SCHEMA, replay, to_json
from .encoding import corpus
from .erasure import erase, erase_undeclared
from .errors import FuelExhausted, NotErasable, NuCubeError, ParseError, ReplayError, TypeCheckError
from .rewriting import Fuel, default_fuel, normalize
from .systems import RULE_SETS, Mode, SystemId
from .text import parse_context, parse_term, print_context, print_pure, print_term

EXIT_OK, EXIT_REJECTED, EXIT_USAGE, EXIT_FUEL = 0, 1, 2, 3

SATISFACTION_SCHEMA = TRACE_SCHEMA["properties"]["nodes"]["items"]["properties"]["satisfaction"]["oneOf"][1]


class _Usage(Exception):
    """Bad flags or unreadable input; maps to exit code 2."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror or exc}") from exc
    except UnicodeDecodeError as exc:
        raise _Usage(f"{path} is not UTF-8 text") from exc


def _config(args) -> CheckConfig:
    fuel = default_fuel() if args.fuel is None else Fuel(max_steps=args.fuel)
    return CheckConfig(SystemId(args.system, Mode(args.mode)), fuel, args.audit)


def _emit(out: TextIO, args, text_lines: list[str], doc) -> None:
    """``doc`` may be a zero-argument callable so JSON is only built when asked for."""
    if args.format == "json":
        json.dump(doc() if callable(doc) else doc, out, indent=2, ensure_ascii=False, sort_keys=False)
        out.write("\n")
    else:
        for line in text_lines:
            out.write(line + "\n")


def _failure_doc(command: str, exc: Exception) -> dict:
    doc = {"command": command, "status": "error", "error": type(exc).__name__, "message": str(exc)}
    report = getattr(exc, "report", None)
    if report is not None:
        doc["satisfaction"] = report.to_json()
    return doc


# --- subcommands ------------------------------------------------------------------


def _judge(ctx, term, ty, cfg: CheckConfig, command: str, args, out) -> int:
    if ty is None:
        ty, der = synth_type(ctx, term, cfg)
    else:
        der = check_judgement(ctx, term, ty, cfg)
    nodes = replay(der, cfg.system, cfg.fuel)
    sort = sort_of(ctx, term, cfg)
    sort_text = "none" if sort is None else sort.value
    lines = [
        f"ok in {cfg.system}",
        f"judgement: {print_context(ctx) or 'ε'} |- {print_term(term)} : {print_term(ty)}",
        f"type sort: {sort_text}",
        f"derivation nodes: {nodes} (replayed)",
    ]

    def doc() -> dict:
        return {
            "command": command,
            "status": "ok",
            "system": args.system,
            "mode": args.mode,
            "judgement": {
                "context": print_context(ctx),
                "subject": print_term(term),
                "type": print_term(ty),
            },
            "type_sort": None if sort is None else sort.value,
            "replayed_nodes": nodes,
            "derivation": to_json(der),
            "schemas": {"derivation": TRACE_SCHEMA, "satisfaction": SATISFACTION_SCHEMA},
        }

    _emit(out, args, lines, doc)
    return EXIT_OK


def cmd_check(args, out) -> int:
    cfg = _config(args)
    ctx = parse_context(_read(args.context))
    term = parse_term(_read(args.term), ctx)
    ty = parse_term(_read(args.type), ctx) if args.type else None
    return _judge(ctx, term, ty, cfg, "check", args, out)


def cmd_normalize(args, out) -> int:
    cfg = _config(args)
    ctx = parse_context(_read(args.context)) if args.context else ()
    term = parse_term(_read(args.term), ctx)
    steps: list[tuple[int, tuple, int, int]] = []

    def record(step, path, pre, post):
        steps.append((step, path, pre, post))
        if args.trace and args.format == "text":
            out.write(f"step {step} at {'.'.join(map(str, path)) or 'root'} size {pre} -> {post}\n")

    outcome = normalize(term, cfg.fuel, trace=record)
    trace = [{"step": s, "path": list(p), "pre_size": a, "post_size": b} for s, p, a, b in steps]
    doc = {
        "command": "normalize",
        "status": "ok",
        "normal_form": print_term(outcome.result),
        "steps": outcome.steps_used,
    }
    if args.trace:
        doc["trace"] = trace
    _emit(out, args, [print_term(outcome.result), f"steps: {outcome.steps_used}"], doc)
    return EXIT_OK


def cmd_erase(args, out) -> int:
    if args.context:
        ctx = parse_context(_read(args.context))
        term = parse_term(_read(args.term), ctx)
        res = erase(term)
    else:
        res = erase_undeclared(parse_term(_read(args.term)))
    text = print_pure(res.pure)
    doc = {"command": "erase", "status": "ok", "pure": text, "dropped_nodes": res.dropped_nodes}
    _emit(out, args, [text], doc)
    return EXIT_OK


def cmd_corpus(args, out) -> int:
    entries = corpus()
    if args.action == "list":
        lines = [f"{name}  {e.note}".rstrip() for name, e in entries.items()]
        doc = {"command": "corpus list", "status": "ok", "entries": [{"name": n, "note": e.note} for n, e in entries.items()]}
        _emit(out, args, lines, doc)
        return EXIT_OK
    if not args.name:
        raise _Usage("corpus check needs an entry name (see `nucube corpus list`)")
    if args.name not in entries:
        raise _Usage(f"no corpus entry named {args.name!r}")
    e = entries[args.name]
    return _judge(e.context, e.term, e.type, _config(args), f"corpus check {args.name}", args, out)


# --- argument parsing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", choices=list(RULE_SETS), default="C", help="rule set (default: C)")
    common.add_argument("--mode", choices=[m.value for m in Mode], default="nu", help="lambda or nu (default: nu)")
    common.add_argument("--fuel", type=int, default=None, help="reduction step budget (default: 100000 or $NUCUBE_FUEL)")
    common.add_argument("--audit", action="store_true", help="explore every restriction branch")
    common.add_argument("--format", choices=["text", "json"], default="text")

    p = argparse.ArgumentParser(prog="nucube", description="Type checker for the nu-cube.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="check or synthesise a judgement read from files")
    c.add_argument("context", help="context file")
    c.add_argument("term", help="term file")
    c.add_argument("type", nargs="?", help="type file; omit to synthesise")
    c.set_defaults(run=cmd_check)

    n = sub.add_parser("normalize", parents=[common], help="beta-normalise a term")
    n.add_argument("term")
    n.add_argument("--context", help="context file for the term's free variables")
    n.add_argument("--trace", action="store_true", help="print one line per reduction step")
    n.set_defaults(run=cmd_normalize)

    e = sub.add_parser("erase", parents=[common], help="erase a term to a pure lambda term")
    e.add_argument("term")
    e.add_argument("--context", help="context file for the term's free variables")
    e.set_defaults(run=cmd_erase)

    k = sub.add_parser("corpus", parents=[common], help="list or check the built-in judgements")
    k.add_argument("action", choices=["list", "check"])
    k.add_argument("name", nargs="?")
    k.set_defaults(run=cmd_corpus)
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.fuel is not None and args.fuel < 0:
        err.write("nucube: --fuel must be non-negative\n")
        return EXIT_USAGE
    command = args.command

    def fail(code: int, exc: Exception, label: str) -> int:
        if args.format == "json":
            json.dump(_failure_doc(command, exc), out, indent=2, ensure_ascii=False)
            out.write("\n")
        err.write(f"nucube: {label}: {exc}\n")
        return code

    try:
        return args.run(args, out)
    except FuelExhausted as exc:
        return fail(EXIT_FUEL, exc, "stopped")
    except (ParseError, _Usage, ValueError) as exc:
        return fail(EXIT_USAGE, exc, "error")
    except (TypeCheckError, NotErasable, ReplayError) as exc:
        return fail(EXIT_REJECTED, exc, "rejected")
    except NuCubeError as exc:
        return fail(EXIT_REJECTED, exc, "rejected")
    except RecursionError as exc:
        return fail(EXIT_USAGE, exc, "input nested too deeply")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

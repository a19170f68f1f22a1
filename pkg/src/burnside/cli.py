"""Command-line client for the report handlers.

The CLI holds no logic of its own: every subcommand builds the same
report dict the HTTP service serves, either in-process (default) or by
POSTing to a running service via --url.  Exit codes: 0 success, 1
verification failure or aborted run, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import urllib.error
import urllib.request
from typing import Any

from . import reports
from .corpus import (
    DEFAULT_CORPUS,
    CorpusSpec,
    DescriptorError,
    group_from_json,
    load_corpus,
    parse_descriptor,
)
from .groups import Group, GroupError
from .units import BudgetError

GROUP_HELP = ("group descriptor (D16, C2xC4, dihedral:16, ...) or @file.json "
              "with an ingestion object")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.url:
            payload = _remote(args)
        else:
            payload = _local(args)
    except (DescriptorError, GroupError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if payload is None:  # serve never returns a payload
        return 0
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(_render(payload)))
    if args.command == "verify" and not payload.get("passed", False):
        return 1
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="burnside",
        description="Units of Burnside rings of small finite groups.")
    parser.add_argument("--json", action="store_true",
                        help="emit raw JSON instead of the text rendering")
    parser.add_argument("--url", metavar="URL", default=None,
                        help="send the request to a running burnside service")
    # the same flags are accepted after the subcommand; SUPPRESS keeps the
    # subparser from clobbering values parsed before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--url", metavar="URL", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in [
            ("describe", "order, type, and class counts of one group"),
            ("lattice", "subgroups, conjugacy classes, and Moebius table"),
            ("genetic", "genetic basis entries with section types"),
    ]:
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument("group", help=GROUP_HELP)

    p = sub.add_parser("marks", help="table of marks, optionally idempotents",
                       parents=[common])
    p.add_argument("group", help=GROUP_HELP)
    p.add_argument("--idempotents", action="store_true",
                   help="include primitive idempotent coordinates")

    p = sub.add_parser("units", help="the unit group of the Burnside ring",
                       parents=[common])
    p.add_argument("group", help=GROUP_HELP)
    p.add_argument("--method", choices=("brute", "genetic", "both"),
                   default="both")
    p.add_argument("--budget", type=int, default=None,
                   help="candidate cap for brute force (default 2^24, "
                        "or BURNSIDE_BUDGET)")

    p = sub.add_parser("exp", help="image of the exponential map",
                       parents=[common])
    p.add_argument("group", help=GROUP_HELP)
    p.add_argument("--budget", type=int, default=None)

    p = sub.add_parser("verify", help="run the verification corpus",
                       parents=[common])
    p.add_argument("--corpus", metavar="FILE", default=None,
                   help="JSON corpus file (default: the built-in corpus)")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1,
                   help="number of parallel worker processes")
    p.add_argument("--timings", action="store_true",
                   help="include per-group timings (breaks byte-stability)")

    p = sub.add_parser("serve", help="run the HTTP service",
                       parents=[common])
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _group_spec(text: str) -> str | dict[str, Any]:
    if text.startswith("@"):
        try:
            return json.loads(open(text[1:], encoding="utf-8").read())
        except (OSError, json.JSONDecodeError) as exc:
            raise DescriptorError(f"cannot read group file {text[1:]}: {exc}")
    return text


def _resolve(text: str) -> Group:
    spec = _group_spec(text)
    if isinstance(spec, str):
        return parse_descriptor(spec)
    return group_from_json(spec)


def _local(args: argparse.Namespace) -> dict[str, Any] | None:
    if args.command == "describe":
        return reports.describe_report(_resolve(args.group))
    if args.command == "lattice":
        return reports.lattice_report(_resolve(args.group))
    if args.command == "marks":
        return reports.marks_report(_resolve(args.group),
                                    include_idempotents=args.idempotents)
    if args.command == "units":
        return reports.units_report(_resolve(args.group),
                                    method=args.method, budget=args.budget)
    if args.command == "genetic":
        return reports.genetic_report(_resolve(args.group))
    if args.command == "exp":
        return reports.exp_report(_resolve(args.group), budget=args.budget)
    if args.command == "verify":
        if args.corpus:
            corpus = load_corpus(args.corpus)
            if args.budget is not None:
                corpus = CorpusSpec(groups=corpus.groups, budget=args.budget,
                                    check_exp=corpus.check_exp,
                                    check_faithful=corpus.check_faithful)
        else:
            corpus = CorpusSpec(groups=DEFAULT_CORPUS, budget=args.budget)
        return reports.verify_report(corpus, jobs=args.jobs,
                                     include_timings=args.timings)
    if args.command == "serve":
        import uvicorn

        uvicorn.run("burnside.service:app", host=args.host, port=args.port)
        return None
    raise ValueError(f"unknown command {args.command!r}")


def _remote(args: argparse.Namespace) -> dict[str, Any]:
    if args.command == "serve":
        raise ValueError("serve cannot be combined with --url")
    body: dict[str, Any] = {}
    if args.command == "verify":
        if args.corpus:
            corpus = load_corpus(args.corpus)
            body["groups"] = list(corpus.groups)
            body["check_exp"] = corpus.check_exp
            body["check_faithful"] = corpus.check_faithful
            body["budget"] = args.budget if args.budget is not None else corpus.budget
        else:
            body["budget"] = args.budget
        body["jobs"] = args.jobs
        body["include_timings"] = args.timings
    else:
        spec = _group_spec(args.group)
        if isinstance(spec, str):
            body["descriptor"] = spec
        else:
            body["group"] = spec
        if args.command == "marks":
            body["include_idempotents"] = args.idempotents
        if args.command == "units":
            body["method"] = args.method
            body["budget"] = args.budget
        if args.command == "exp":
            body["budget"] = args.budget
    url = args.url.rstrip("/") + "/" + args.command
    request = urllib.request.Request(
        url, data=json.dumps(body).encode("utf-8"),
        headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(request) as response:
            return json.loads(response.read().decode("utf-8"))
    except urllib.error.HTTPError as exc:
        detail = exc.read().decode("utf-8", errors="replace")
        raise DescriptorError(f"service rejected the request ({exc.code}): {detail}")
    except urllib.error.URLError as exc:
        raise RuntimeError(f"cannot reach service at {args.url}: {exc.reason}")


def _scalar(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    return str(value)


def _inline(values: list[Any]) -> str:
    return "[" + ", ".join(_scalar(v) for v in values) + "]"


def _render(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, dict) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_render(item, indent + 1))
            elif isinstance(item, list) and item and any(
                    isinstance(x, (dict, list)) for x in item):
                lines.append(f"{pad}{key}:")
                lines.extend(_render(item, indent + 1))
            elif isinstance(item, list):
                lines.append(f"{pad}{key}: {_inline(item)}")
            else:
                lines.append(f"{pad}{key}: {_scalar(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines.extend(_render(item, indent + 1))
            elif isinstance(item, list):
                lines.append(f"{pad}- {_inline(item)}")
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(value)}")
    return lines


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success or affirmative verdict, 1 domain-negative result
(invalid bundle, not isomorphic), 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .bundlefile import BundleFileError, format_rational, load_bundle, save_bundle
from .bundles import Bundle, classify, degree, is_isomorphic, pull_back_cover, validate_bundle
from .curve import Divisor
from .sections import canonical_section, chern1

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


def _load(path: str) -> Bundle:
    try:
        return load_bundle(path)
    except OSError as exc:
        raise _Usage(f"{path}: {exc.strerror or exc}") from None
    except BundleFileError as exc:
        raise _Usage(f"{path}: {exc}") from None


def _classes(bundle: Bundle) -> list[dict]:
    return [
        {
            "rank": c.rank,
            "degree": c.degree,
            "offset": format_rational(c.offset),
            "modulus": format_rational(c.modulus),
        }
        for c in classify(bundle)
    ]


def _divisor(d: Divisor) -> list[dict]:
    return [{"position": format_rational(p), "weight": int(w)} for p, w in d.points]


def cmd_validate(args) -> tuple[int, dict]:
    bundle = _load(args.path)
    violations = validate_bundle(bundle)
    return (EXIT_NEGATIVE if violations else EXIT_OK), {
        "command": "validate",
        "path": args.path,
        "verdict": "invalid" if violations else "ok",
        "violations": violations,
    }


def _invalid(command: str, path: str, violations: list[str]) -> tuple[int, dict]:
    return EXIT_NEGATIVE, {"command": command, "path": path, "verdict": "invalid", "violations": violations}


def cmd_info(args) -> tuple[int, dict]:
    bundle = _load(args.path)
    violations = validate_bundle(bundle)
    if violations:
        return _invalid("info", args.path, violations)
    return EXIT_OK, {
        "command": "info",
        "path": args.path,
        "rank": bundle.rank,
        "degree": degree(bundle),
        "classes": _classes(bundle),
    }


def cmd_iso(args) -> tuple[int, dict]:
    a, b = _load(args.path_a), _load(args.path_b)
    for path, bundle in ((args.path_a, a), (args.path_b, b)):
        violations = validate_bundle(bundle)
        if violations:
            return _invalid("iso", path, violations)
    if a.curve != b.curve:
        raise _Usage("bundles live on different curves")
    iso = is_isomorphic(a, b)
    return (EXIT_OK if iso else EXIT_NEGATIVE), {
        "command": "iso",
        "paths": [args.path_a, args.path_b],
        "verdict": "isomorphic" if iso else "not isomorphic",
    }


def cmd_section(args) -> tuple[int, dict]:
    bundle = _load(args.path)
    violations = validate_bundle(bundle)
    if violations:
        return _invalid("section", args.path, violations)
    div = chern1(bundle, canonical_section(bundle))
    return EXIT_OK, {
        "command": "section",
        "path": args.path,
        "divisor": _divisor(div),
        "degree": div.degree,
    }


def cmd_pullback(args) -> tuple[int, dict]:
    if args.m < 1:
        raise _Usage(f"--m must be at least 1, got {args.m}")
    bundle = _load(args.path)
    violations = validate_bundle(bundle)
    if violations:
        return _invalid("pullback", args.path, violations)
    pulled = pull_back_cover(bundle, args.m)
    save_bundle(pulled, args.out)
    return EXIT_OK, {
        "command": "pullback",
        "path": args.path,
        "m": args.m,
        "out": args.out,
        "length": format_rational(pulled.curve.length),
        "charts": pulled.curve.charts,
        "degree": degree(pulled),
    }


def render_text(report: dict) -> str:
    lines = []
    if report.get("verdict") == "invalid":
        lines.extend(report["violations"])
    elif report["command"] == "validate":
        lines.append("ok")
    elif report["command"] == "info":
        lines.append(f"rank={report['rank']}")
        lines.append(f"degree={report['degree']}")
        lines.extend(
            f"r={c['rank']} d={c['degree']} t={c['offset']} mod {c['modulus']}" for c in report["classes"]
        )
    elif report["command"] == "iso":
        lines.append(report["verdict"])
    elif report["command"] == "section":
        lines.extend(f"({p['position']}, {p['weight']})" for p in report["divisor"])
        lines.append(f"degree={report['degree']}")
    elif report["command"] == "pullback":
        lines.append(f"wrote {report['out']}")
        lines.append(f"curve length={report['length']} charts={report['charts']}")
        lines.append(f"degree={report['degree']}")
    return "".join(line + "\n" for line in lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropbundles",
        description="Tropical vector bundles on a tropical elliptic curve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the bundle conditions").add_argument("path")
    add("info", cmd_info, "rank, degree and classification").add_argument("path")
    p = add("iso", cmd_iso, "decide isomorphism of two bundles")
    p.add_argument("path_a")
    p.add_argument("path_b")
    add("section", cmd_section, "divisor of the canonical section").add_argument("path")
    p = add("pullback", cmd_pullback, "pull back along the m-fold cover")
    p.add_argument("path")
    p.add_argument("--m", type=int, required=True, help="degree of the cover")
    p.add_argument("--out", "-o", required=True, help="where to write the pulled-back bundle")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, report = args.func(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        sys.stdout.write(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())

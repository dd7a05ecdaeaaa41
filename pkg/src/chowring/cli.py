"""Command line entry point: ``chowring verify <suite>``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import verifier

EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chowring", description="Exact verification of Chow ring computations.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=list(verifier.SUITES) + ["all"])
    v.add_argument("--max-degree", type=int, default=None, help="degree bound (suite default if omitted)")
    v.add_argument("--format", choices=["text", "json"], default="text")
    v.add_argument("--catalog", default=None, help="directory with JSON catalogs overriding the built-in ones")
    v.add_argument("--negative-controls", action="store_true", help="also run the deliberately broken inputs")
    return parser


def _write_report_dir(reports, payload: dict):
    target = os.environ.get("CHOWRING_REPORT_DIR")
    if not target:
        return None
    out = Path(target)
    out.mkdir(parents=True, exist_ok=True)
    for r in reports:
        (out / f"{r.suite}.json").write_text(r.dumps())
    (out / "summary.json").write_text(json.dumps(payload, indent=2, sort_keys=True))
    return out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_degree is not None and args.max_degree < 0:
        print("error: --max-degree must be non-negative", file=sys.stderr)
        return EXIT_ERROR
    try:
        catalogs = verifier.load_catalogs(args.catalog) if args.catalog else None
        suites = verifier.SUITES if args.suite == "all" else (args.suite,)
        reports = verifier.run_all(args.max_degree, catalogs, suites, include_controls=args.negative_controls)
    except (OSError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    payload = verifier.combined_json(reports)
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(verifier.format_text(reports))
    _write_report_dir(reports, payload)
    return EXIT_OK if payload["passed"] else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())

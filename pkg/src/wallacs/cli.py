"""Command line front end.

Exit codes: 0 success, 1 semantic failure (invalid system, or an Unknown
verdict under ``--strict``), 2 I/O or parse failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from . import __version__, catalog
from .document import DocumentError, dumps, parse
from .ktheory import KRow, manifold_row, sphere_row
from .quadrep import DEFAULT_SEARCH_BOUND
from .report import build_report, render_json, render_text, validation_dict
from .wall import validate

EXIT_OK, EXIT_FAIL, EXIT_IO = 0, 1, 2


def default_bound() -> int:
    raw = os.environ.get("WALLACS_BOUND")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise SystemExit(f"WALLACS_BOUND must be a positive integer, got {raw!r}")
        if value >= 1:
            return value
    return DEFAULT_SEARCH_BOUND


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load(path: str):
    try:
        return parse(_read(path)), None
    except OSError as exc:
        return None, f"{path}: {exc.strerror or exc}"
    except DocumentError as exc:
        return None, f"{path}: {exc}"


def cmd_validate(args) -> int:
    w, err = _load(args.file)
    if err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    v = validate(w)
    if args.format == "json":
        print(json.dumps(validation_dict(v)))
    else:
        print("valid" if v.valid else "invalid")
        for f in v.violations:
            print(f"  violation [{f.code}] {f.message}")
        for f in v.warnings:
            print(f"  warning [{f.code}] {f.message}")
    return EXIT_OK if v.valid else EXIT_FAIL


def _exit_for(report: dict, strict: bool) -> int:
    if not report["validation"]["valid"]:
        return EXIT_FAIL
    if strict and report["acs"]["admits"] == "Unknown":
        return EXIT_FAIL
    return EXIT_OK


def cmd_decide(args) -> int:
    w, err = _load(args.file)
    if err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    report = build_report(w, args.bound, with_ktheory=args.ktheory)
    print(render_json(report) if args.format == "json" else render_text(report))
    return _exit_for(report, args.strict)


def cmd_catalog(args) -> int:
    if args.emit:
        try:
            w = catalog.get(args.emit)
        except KeyError as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return EXIT_IO
        sys.stdout.write(dumps(w))
    elif args.dump:
        for w in catalog.CATALOG.values():
            print(json.dumps(json.loads(dumps(w)), separators=(",", ":")))
    else:
        for name in catalog.catalog_names():
            print(name)
    return EXIT_OK


def _row_dict(row: KRow) -> dict:
    label = lambda o: "Z" if o is None else f"Z{o}"  # noqa: E731
    return {
        "K": [[g, label(o)] for g, o in row.complex.summands],
        "KO": [[g, label(o)] for g, o in row.real.summands],
        "reduction": row.reduction,
    }


def _print_row(title: str, row: KRow, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps({"table": title, **_row_dict(row)}))
        return
    print(title)
    print(f"  K~  : {row.complex.render()}")
    print(f"  KO~ : {row.real.render()}")
    print(f"  real reduction: {row.render_reduction()}")


def cmd_ktheory(args) -> int:
    if args.spheres is None and args.n is None:
        print("error: give --n/--k and/or --spheres", file=sys.stderr)
        return EXIT_IO
    try:
        if args.spheres is not None:
            m = args.spheres
            _print_row(f"S^{m} (m mod 8 = {m % 8})", sphere_row(m), args.format)
        if args.n is not None:
            n, k = args.n, args.k
            _print_row(f"M with n = {n} (n mod 8 = {n % 8}), k = {k}", manifold_row(n, k), args.format)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _batch_one(item: tuple[int, str, str, int]) -> tuple[str, bool]:
    index, source, text, bound = item
    try:
        w = parse(text)
    except DocumentError as exc:
        record = {"index": index, "source": source, "error": str(exc)}
        return json.dumps(record, separators=(",", ":")), False
    report = build_report(w, bound)
    report = {"index": index, "source": source, **report}
    return render_json(report), report["validation"]["valid"]


def _batch_items(path: Path, bound: int) -> list[tuple[int, str, str, int]]:
    if path.is_dir():
        files = sorted(p for p in path.iterdir() if p.suffix == ".json")
        return [(i, p.name, p.read_text(), bound) for i, p in enumerate(files)]
    items = []
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        if line.strip():
            items.append((len(items), f"line {lineno}", line, bound))
    return items


def cmd_batch(args) -> int:
    path = Path(args.path)
    try:
        items = _batch_items(path, args.bound) if args.path != "-" else [
            (i, f"line {n}", line, args.bound)
            for i, (n, line) in enumerate(
                (n, l) for n, l in enumerate(sys.stdin.read().splitlines(), 1) if l.strip())
        ]
    except OSError as exc:
        print(f"error: {args.path}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_one, items))
    else:
        results = [_batch_one(it) for it in items]
    ok = True
    for line, good in results:
        print(line)
        ok = ok and good
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wallacs",
        description="Decide (stable) almost complex structures on (n-1)-connected 2n-manifolds.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    bound = default_bound()

    p = sub.add_parser("validate", help="check an invariant system")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("decide", help="full decision report")
    p.add_argument("file")
    p.add_argument("--bound", type=int, default=bound)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--strict", action="store_true", help="exit 1 on an Unknown verdict")
    p.add_argument("--ktheory", action="store_true", help="include K-group presentations")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("catalog", help="built-in invariant systems")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true")
    g.add_argument("--emit", metavar="NAME")
    g.add_argument("--dump", action="store_true", help="all entries as JSON lines")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("ktheory", help="K-group tables")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--spheres", type=int, metavar="M")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_ktheory)

    p = sub.add_parser("batch", help="one JSON report per input document")
    p.add_argument("path", help="directory of *.json files, a JSONL file, or - for stdin")
    p.add_argument("--format", choices=("jsonl",), default="jsonl")
    p.add_argument("--bound", type=int, default=bound)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "bound", 1) < 1:
        print("error: --bound must be positive", file=sys.stderr)
        return EXIT_IO
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line frontend: file parsing, command dispatch, report emission."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from .oracle import CounterexampleFound, Grid, GridValid, Unknown, verify_bundle
from .proofs import check_proof, delta_set
from .reduce import normalize, value_to_term
from .sexpr import (
    ParseError,
    parse_bundle,
    parse_formula,
    parse_proof,
    parse_term,
    print_bundle,
    print_formula,
    print_term,
    print_translated,
    read_one,
)
from .terms import NsdialError, type_check
from .translate import Flavor, dst_translate, u_translate
from .extract import extract

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


def _digest(path: Path) -> dict:
    return {
        "path": str(path),
        "sha256": hashlib.sha256(path.read_bytes()).hexdigest(),
    }


def _flavor(args) -> Flavor:
    return Flavor.DST if args.dst else Flavor.U


def _grid(args) -> Grid:
    return Grid(args.nat_bound, args.len_bound, args.depth_bound)


def _verdict_dict(v) -> dict:
    if isinstance(v, GridValid):
        return {"verdict": "grid-valid"}
    if isinstance(v, CounterexampleFound):
        env = {name: print_term(value_to_term(val)) for name, val in v.environment}
        return {"verdict": "counterexample", "environment": env}
    assert isinstance(v, Unknown)
    return {"verdict": "unknown", "reason": v.reason}


def _translate_for(flavor: Flavor):
    return dst_translate if flavor is Flavor.DST else u_translate


def cmd_check_term(path: Path, args) -> tuple[int, dict]:
    term = parse_term(read_one(path.read_text()))
    ty = type_check(term, {})
    nf = normalize(term)
    out = {"type": None, "normal_form": print_term(nf)}
    from .sexpr import print_type

    out["type"] = print_type(ty)
    print(out["normal_form"])
    return EXIT_OK, out


def cmd_translate(path: Path, args) -> tuple[int, dict]:
    formula = parse_formula(read_one(path.read_text()))
    tf = _translate_for(_flavor(args))(formula)
    text = print_translated(tf)
    print(text)
    return EXIT_OK, {"translated": text}


def cmd_check_proof(path: Path, args) -> tuple[int, dict]:
    proof = parse_proof(read_one(path.read_text()))
    flavor = _flavor(args)
    conclusion = check_proof(proof, flavor)
    deltas = [print_formula(d) for d in delta_set(proof)]
    text = print_formula(conclusion)
    print(f"checked: {text}")
    for d in deltas:
        print(f"assuming: {d}")
    return EXIT_OK, {"conclusion": text, "deltas": deltas}


def cmd_extract(path: Path, args) -> tuple[int, dict]:
    proof = parse_proof(read_one(path.read_text()))
    flavor = _flavor(args)
    bundle = extract(proof, flavor)
    text = print_bundle(bundle)
    print(text)
    return EXIT_OK, {"bundle": text, "deltas": [print_formula(d) for d in delta_set(proof)]}


def cmd_verify(path: Path, args) -> tuple[int, dict]:
    bundle = parse_bundle(read_one(path.read_text()))
    verdict = verify_bundle(bundle, _grid(args))
    out = _verdict_dict(verdict)
    if isinstance(verdict, GridValid):
        print("grid-valid")
        return EXIT_OK, out
    if isinstance(verdict, CounterexampleFound):
        print("counterexample:")
        for name, val in verdict.environment:
            print(f"  {name} = {print_term(value_to_term(val))}")
        return EXIT_FAIL, out
    print(f"unknown: {verdict.reason}")
    return EXIT_FAIL, out


_CORPUS_KINDS = (
    ".term",
    ".u.fml",
    ".dst.fml",
    ".u.proof",
    ".dst.proof",
    ".u.bundle",
    ".dst.bundle",
)


def cmd_corpus(directory: Path, args) -> tuple[int, dict]:
    items = []
    status = EXIT_OK
    files = sorted(
        p for p in directory.iterdir() if any(p.name.endswith(k) for k in _CORPUS_KINDS)
    )
    for path in files:
        entry = {"file": path.name}
        try:
            entry.update(_corpus_item(path, args))
        except (NsdialError, ParseError) as e:
            entry["status"] = "error"
            entry["error"] = str(e)
            status = EXIT_ERROR
        if entry.get("status") == "fail" and status == EXIT_OK:
            status = EXIT_FAIL
        items.append(entry)
        print(f"{entry['status']:5s} {path.name}")
    return status, {"items": items}


def _corpus_item(path: Path, args) -> dict:
    name = path.name
    text = path.read_text()
    if name.endswith(".term"):
        term = parse_term(read_one(text))
        type_check(term, {})
        return {"status": "ok", "normal_form": print_term(normalize(term))}
    flavor = Flavor.DST if ".dst." in name else Flavor.U
    if name.endswith(".fml"):
        tf = _translate_for(flavor)(parse_formula(read_one(text)))
        return {"status": "ok", "translated": print_translated(tf)}
    if name.endswith(".proof"):
        proof = parse_proof(read_one(text))
        bundle = extract(proof, flavor)
        return {"status": "ok", "bundle": print_bundle(bundle)}
    if name.endswith(".bundle"):
        verdict = verify_bundle(parse_bundle(read_one(text)), _grid(args))
        out = _verdict_dict(verdict)
        out["status"] = "ok" if isinstance(verdict, GridValid) else "fail"
        return out
    raise ParseError(f"unrecognised corpus file {name}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nsdial",
        description="Check terms and proofs, translate formulas, extract and verify realisers.",
    )
    parser.add_argument("--json", type=Path, help="write a machine-readable report here")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_grid(p):
        p.add_argument("--nat-bound", type=int, default=3)
        p.add_argument("--len-bound", type=int, default=2)
        p.add_argument("--depth-bound", type=int, default=2)

    def add_flavor(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--dst", action="store_true")
        group.add_argument("--u", action="store_true")

    p = sub.add_parser("check-term", help="parse, type and normalize a closed term")
    p.add_argument("file", type=Path)

    p = sub.add_parser("translate", help="translate a formula")
    add_flavor(p)
    p.add_argument("file", type=Path)

    p = sub.add_parser("check-proof", help="check a proof file")
    add_flavor(p)
    p.add_argument("file", type=Path)

    p = sub.add_parser("extract", help="check a proof and extract its realiser bundle")
    add_flavor(p)
    p.add_argument("file", type=Path)

    p = sub.add_parser("verify", help="verify a realiser bundle on a grid")
    p.add_argument("file", type=Path)
    add_grid(p)

    p = sub.add_parser("corpus", help="batch-run a fixture directory")
    p.add_argument("action", choices=["run"])
    p.add_argument("directory", type=Path)
    add_grid(p)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    report = {"command": argv, "grid": None, "inputs": [], "outcome": {}}
    if hasattr(args, "nat_bound"):
        report["grid"] = {
            "nat_bound": args.nat_bound,
            "len_bound": args.len_bound,
            "depth_bound": args.depth_bound,
        }
    try:
        if args.command == "corpus":
            report["inputs"] = [
                _digest(p)
                for p in sorted(args.directory.iterdir())
                if any(p.name.endswith(k) for k in _CORPUS_KINDS)
            ]
            status, outcome = cmd_corpus(args.directory, args)
        else:
            report["inputs"] = [_digest(args.file)]
            handler = {
                "check-term": cmd_check_term,
                "translate": cmd_translate,
                "check-proof": cmd_check_proof,
                "extract": cmd_extract,
                "verify": cmd_verify,
            }[args.command]
            status, outcome = handler(args.file, args)
    except (ParseError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        status, outcome = EXIT_ERROR, {"error": str(e)}
    except NsdialError as e:
        kind = type(e).__name__
        print(f"{kind}: {e}", file=sys.stderr)
        from .terms import IllTyped, TypeMismatch, UnboundVariable
        from .translate import IllTypedInput

        parse_like = isinstance(e, (IllTyped, UnboundVariable, TypeMismatch, IllTypedInput))
        status = EXIT_ERROR if parse_like else EXIT_FAIL
        outcome = {"error": str(e), "kind": kind}
    report["outcome"] = outcome
    report["wall_time_s"] = round(time.monotonic() - started, 6)
    if args.json:
        args.json.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return status


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

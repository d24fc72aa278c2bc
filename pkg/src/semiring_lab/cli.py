"""``semiring-lab`` command-line entry point.

Exit codes: 0 success, 1 mathematical failure or counterexample, 2 input
error, 3 enumeration cap reached.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from .congruences import (
    bourne_congruence,
    classify_all,
    enumerate_congruences,
    enumerate_right_congruences,
    enumerate_right_ideals,
    is_saturated,
    saturation,
)
from .corpus import SpecError, default_manifest, from_spec, load_manifest
from .partition import EnumerationLimitError, Partition
from .radical import rad
from .semimodule import semimodule_from_json
from .semiring import AxiomError, FiniteSemiring, TableShapeError, semiring_from_json
from .structure import classify_semiring, is_primitive, subdirect_decomposition
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _load(path_or_spec: str) -> FiniteSemiring:
    """A semiring file, or a generator spec when no such file exists."""
    if Path(path_or_spec).is_file():
        obj = _read_json(path_or_spec)
        try:
            return semiring_from_json(obj)
        except KeyError as exc:
            raise InputError(f"{path_or_spec}: {exc.args[0]}") from exc
        except (TableShapeError, TypeError) as exc:
            raise InputError(f"{path_or_spec}: {exc}") from exc
    try:
        return from_spec(path_or_spec)
    except (SpecError, OSError) as exc:
        raise InputError(f"{path_or_spec}: not a file and not a generator spec ({exc})") from exc


def _classes(p: Partition) -> list[list[int]]:
    return p.to_json()["classes"]


# -- pretty printing ---------------------------------------------------------------


def _pretty(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            sub = _pretty(item, indent + 1)
            if sub:
                sub[0] = pad + "- " + sub[0].lstrip()
            lines.extend(sub)
        return lines
    return [pad + _inline(value)]


def _flat(v: Any) -> bool:
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, dict) for x in v) and len(json.dumps(v)) <= 72


def _inline(v: Any) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v)
    if v is None:
        return "-"
    return str(v)


def _leafy(v: Any) -> bool:
    # lists of scalars, or of lists of scalars, print on one line
    return isinstance(v, list) and all(
        not isinstance(x, (dict, list)) or (isinstance(x, list) and _leafy(x) and all(not isinstance(y, list) for y in x))
        for x in v
    )


def to_json_text(value: Any, indent: int = 0) -> str:
    """Indented JSON with short arrays kept on one line; output is stable for
    equal inputs."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {to_json_text(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list):
        if _leafy(value):
            return json.dumps(value, ensure_ascii=False)
        items = [inner + to_json_text(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value, ensure_ascii=False)


def _emit(report: Any, args: argparse.Namespace) -> None:
    if args.pretty:
        text = "\n".join(_pretty(report)) + "\n"
    else:
        text = to_json_text(report) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# -- commands -----------------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> int:
    obj = _read_json(args.path)
    is_module = "action" in obj
    try:
        if is_module:
            M = semimodule_from_json(obj, Path(args.path).parent)
            report = {"kind": "semimodule", "valid": True, "size": M.size, "violations": []}
        else:
            S = semiring_from_json(obj)
            report = {"kind": "semiring", "valid": True, "size": S.n, "violations": []}
    except AxiomError as exc:
        report = {
            "kind": "semimodule" if is_module else "semiring",
            "valid": False,
            "violations": [v.to_json() for v in exc.violations],
        }
        _emit(report, args)
        return EXIT_FAIL
    except KeyError as exc:
        raise InputError(f"{args.path}: {exc.args[0]}") from exc
    except (TableShapeError, TypeError, ValueError, OSError) as exc:
        raise InputError(f"{args.path}: {exc}") from exc
    _emit(report, args)
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        S = from_spec(args.spec)
    except (SpecError, OSError) as exc:
        raise InputError(str(exc)) from exc
    _emit(S.to_json(), args)
    return EXIT_OK


def cmd_congruences(args: argparse.Namespace) -> int:
    S = _load(args.path)
    if args.two_sided:
        found = enumerate_congruences(S)
    else:
        found = enumerate_right_congruences(S)
    if args.classify:
        tags = {c.congruence: c for c in classify_all(S)}
        entries = [tags[p].to_json() for p in found]
    else:
        entries = [{"classes": _classes(p)} for p in found]
    report = {
        "semiring": S.name,
        "relation": "two-sided" if args.two_sided else "right",
        "count": len(found),
        "congruences": entries,
    }
    _emit(report, args)
    return EXIT_OK


def cmd_ideals(args: argparse.Namespace) -> int:
    S = _load(args.path)
    entries = []
    for I in sorted(enumerate_right_ideals(S), key=lambda I: (len(I), sorted(I))):
        entries.append(
            {
                "members": sorted(I),
                "saturation": sorted(saturation(S, I)),
                "saturated": is_saturated(S, I),
                "bourne": _classes(bourne_congruence(S, I)),
            }
        )
    _emit({"semiring": S.name, "count": len(entries), "ideals": entries}, args)
    return EXIT_OK


def _expected(S: FiniteSemiring, text: str) -> Partition:
    if text == "full":
        return Partition.full(S.n)
    if text in ("discrete", "delta"):
        return Partition.discrete(S.n)
    try:
        return Partition.from_classes(S.n, json.loads(text))
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise InputError(f"--expect: use 'full', 'discrete' or a JSON list of classes ({exc})") from exc


def cmd_radical(args: argparse.Namespace) -> int:
    S = _load(args.path)
    report = rad(S, args.kind).to_json()
    status = EXIT_OK
    if args.expect is not None:
        claimed = _expected(S, args.expect)
        agrees = claimed == rad(S, args.kind).radical
        report["comparison"] = {"expected": _classes(claimed), "agrees": agrees}
        if not agrees:
            status = EXIT_FAIL
    _emit(report, args)
    return status


def cmd_classify(args: argparse.Namespace) -> int:
    S = _load(args.path)
    report = {"semiring": S.name, "size": S.n, "flags": classify_semiring(S).to_json()}
    for kind in "ms":
        r = rad(S, kind)
        report[f"rad_{kind}"] = _classes(r.radical)
        report[f"{kind}_semisimple"] = r.semisimple
        report[f"{kind}_primitive"] = is_primitive(S, kind).to_json()
    _emit(report, args)
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    S = _load(args.path)
    d = subdirect_decomposition(S, args.kind)
    if d is None:
        r = rad(S, args.kind)
        _emit(
            {
                "semiring": S.name,
                "kind": args.kind,
                "decomposable": False,
                "reason": f"not {args.kind}-semisimple",
                "radical": r.to_json(),
            },
            args,
        )
        return EXIT_FAIL
    report = {"decomposable": True, **d.to_json(), "meet": _classes(d.meet)}
    _emit(report, args)
    return EXIT_OK if d.injective and d.projections_surjective else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    if args.corpus is None:
        manifest = default_manifest()
    else:
        try:
            manifest = load_manifest(args.corpus)
        except (KeyError, SpecError, OSError, json.JSONDecodeError, TableShapeError) as exc:
            raise InputError(f"{args.corpus}: {exc}") from exc
        except AxiomError as exc:
            raise InputError(f"{args.corpus}: invalid entry ({exc})") from exc
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    outcomes = [run_suite(s, manifest, jobs=args.jobs) for s in suites]
    if len(outcomes) == 1:
        report = outcomes[0].to_json(timing=args.timing)
    else:
        report = {
            "passed": all(o.passed for o in outcomes),
            "suites": [o.to_json(timing=args.timing) for o in outcomes],
        }
    _emit(report, args)
    return EXIT_OK if all(o.passed for o in outcomes) else EXIT_FAIL


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semiring-lab", description="Radicals and congruences of finite semirings.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a semiring or semimodule file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("generate", parents=[common], help="write a generated semiring as JSON")
    p.add_argument("spec", help="e.g. zmod:6, group-semiring-b:z2, product:a.json:b.json")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("congruences", parents=[common], help="list right or two-sided congruences")
    p.add_argument("path", help="semiring file or generator spec")
    side = p.add_mutually_exclusive_group()
    side.add_argument("--right", action="store_true", help="right congruences (default)")
    side.add_argument("--two-sided", action="store_true")
    p.add_argument("--classify", action="store_true", help="tag each with its regularity class")
    p.set_defaults(func=cmd_congruences)

    p = sub.add_parser("ideals", parents=[common], help="right ideals with saturations")
    p.add_argument("path")
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("radical", parents=[common], help="m- or s-radical with all three characterizations")
    p.add_argument("path")
    p.add_argument("--kind", choices=["m", "s"], default="m")
    p.add_argument("--expect", help="compare against 'full', 'discrete' or JSON classes; exit 1 on mismatch")
    p.set_defaults(func=cmd_radical)

    p = sub.add_parser("classify", parents=[common], help="structure flags and primitivity")
    p.add_argument("path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", parents=[common], help="subdirect decomposition into primitive factors")
    p.add_argument("path")
    p.add_argument("--kind", choices=["m", "s"], default="m")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", parents=[common], help="run a property suite over a corpus")
    p.add_argument("corpus", nargs="?", help="manifest JSON (default: the bundled corpus)")
    p.add_argument("--suite", required=True, choices=[*SUITES, "all"])
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EnumerationLimitError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``cayley <command> ...``.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .dickson import CDSpec, basis_label, cd_basis_table, table_to_json
from .expr import ParseError, parse, parse_word
from .normalizer import canonical_mul, normalize_expr, replay, rewrite_trace, term_to_canonical
from .presentations import PresentationSpec, build_torus, specialized_table
from .rings import BaseRing, format_rational
from . import verify


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    mode: str = "poly"
    nvars: int = 3
    assoc: str = "strict"
    output: str = "text"
    seed: int = 0


def _parse_mus(text: str | None):
    if text is None:
        return None
    try:
        return tuple(Fraction(p.strip()) for p in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot read structure constants {text!r}; expected e.g. -1,-1,-1") from None


def _common(parser: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--mode", choices=("poly", "torus"), default=d("poly"))
    parser.add_argument("--nvars", type=int, default=d(None), help="number of generators (default 3)")
    parser.add_argument("--assoc", choices=("strict", "left"), default=d("strict"),
                        help="strict rejects unparenthesized triple products")
    parser.add_argument("--output", choices=("text", "json"), default=d("text"))
    parser.add_argument("--seed", type=int, default=d(None), help="sampling seed (fallback: $CAYLEY_SEED, then 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cayley", description="Cayley polynomials, octonion tori and Cayley-Dickson towers.")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        _common(p, suppress=True)
        return p

    p = add("normalize", "canonical form of an expression")
    p.add_argument("expr")
    p = add("trace", "rewrite steps taking a word to its canonical form")
    p.add_argument("expr")
    p = add("mul", "normalized product of two expressions")
    p.add_argument("left")
    p.add_argument("right")
    p = add("table", "basis multiplication table of a Cayley-Dickson tower")
    p.add_argument("--mus", help="comma-separated rationals; omitted means symbolic z1..zk")
    p.add_argument("--k", type=int)
    p = add("check", "check an identity on a tower")
    p.add_argument("identity", choices=tuple(verify.IDENTITIES))
    p.add_argument("--k", type=int, help="tower height (default: number of --mus, else 3)")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--mus", help="comma-separated rationals (default all -1)")
    p = add("presentation", "verify a presentation: relations, or the specialized table")
    p.add_argument("kind", choices=("octonion", "quaternion"))
    p.add_argument("--mus")
    p = add("demo", "worked demonstrations")
    p.add_argument("name", choices=("dorofeev", "example43", "closure", "sedenion"))
    return parser


def _config(args) -> CliConfig:
    seed = args.seed
    if seed is None:
        env = os.environ.get("CAYLEY_SEED")
        try:
            seed = int(env) if env not in (None, "") else 0
        except ValueError:
            raise UsageError(f"CAYLEY_SEED must be an integer, got {env!r}") from None
    quaternion = args.command == "presentation" and args.kind == "quaternion"
    nvars = args.nvars if args.nvars is not None else (2 if quaternion else 3)
    if nvars < (2 if quaternion else 3):
        raise UsageError(f"--nvars must be at least {2 if quaternion else 3}")
    return CliConfig(args.mode, nvars, args.assoc, args.output, seed)


def _parse(text: str, cfg: CliConfig):
    return parse(text, cfg.nvars, cfg.mode, cfg.assoc)


def _emit(out, cfg: CliConfig, text: str, data):
    if cfg.output == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _grid(rows: list[list[str]], header: list[str]) -> str:
    cells = [[""] + header] + [[h] + r for h, r in zip(header, rows)]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


# --------------------------------------------------------------------------
# commands

def cmd_normalize(args, cfg, out):
    c = normalize_expr(_parse(args.expr, cfg), cfg.mode, cfg.nvars)
    _emit(out, cfg, c.to_text(), c.to_json())
    return 0


def cmd_mul(args, cfg, out):
    x = normalize_expr(_parse(args.left, cfg), cfg.mode, cfg.nvars)
    y = normalize_expr(_parse(args.right, cfg), cfg.mode, cfg.nvars)
    c = canonical_mul(x, y)
    _emit(out, cfg, c.to_text(), c.to_json())
    return 0


def cmd_trace(args, cfg, out):
    w = parse_word(args.expr, cfg.nvars, cfg.mode, cfg.assoc)
    try:
        steps = rewrite_trace(w)
    except ValueError as e:
        raise UsageError(str(e)) from None
    final = term_to_canonical(replay(w, steps), cfg.nvars)
    lines = [f"{k:3d}. {s}" for k, s in enumerate(steps, 1)]
    lines.append(f"result: {final.to_text()}")
    data = {"steps": [{"rule": s.rule, "before": str(s.before), "after": str(s.after)} for s in steps],
            "result": final.to_json()}
    _emit(out, cfg, "\n".join(lines), data)
    return 0


def cmd_table(args, cfg, out):
    mus = _parse_mus(args.mus)
    if mus is None:
        k = 3 if args.k is None else args.k
        base = BaseRing("polynomial", k)
        mus = tuple(base.var(i) for i in range(1, k + 1))
    else:
        base = BaseRing()
        if args.k is not None and args.k != len(mus):
            raise UsageError(f"--k {args.k} does not match {len(mus)} structure constants")
    if not 1 <= len(mus) <= 4:
        raise UsageError("tower height must be between 1 and 4")
    try:
        spec = CDSpec(base, mus)
    except ValueError as e:
        raise UsageError(str(e)) from None
    table = cd_basis_table(spec)
    fmt = base.format
    labels = [basis_label(S, spec.k) for S in range(spec.dim)]

    def cell(c, U):
        text = fmt(c)
        if U == 0:
            return text
        if text == "1":
            return labels[U]
        if text == "-1":
            return "-" + labels[U]
        return f"{text}*{labels[U]}" if "+" not in text and " - " not in text else f"({text})*{labels[U]}"

    rows = [[cell(c, U) for c, U in row] for row in table]
    text = f"tower {spec.describe()}\n" + _grid(rows, labels)
    _emit(out, cfg, text, {"spec": spec.describe(), "labels": labels, "table": table_to_json(spec, table)})
    return 0


def cmd_check(args, cfg, out):
    mus = _parse_mus(args.mus)
    k = args.k if args.k is not None else (len(mus) if mus else 3)
    if not 1 <= k <= 4:
        raise UsageError("--k must be between 1 and 4")
    if args.samples < 0:
        raise UsageError("--samples must be non-negative")
    mus = mus or (Fraction(-1),) * k
    if len(mus) != k:
        raise UsageError(f"--k {k} does not match {len(mus)} structure constants")
    try:
        spec = CDSpec(BaseRing(), mus)
    except ValueError as e:
        raise UsageError(str(e)) from None
    report = verify.check_identity(args.identity, spec, args.samples, cfg.seed)
    lines = [f"{report.identity} on {report.spec}: {'passed' if report.passed else 'FAILED'}",
             f"exhaustive cases: {report.exhaustive_tested}, random samples: {report.samples_tested} (seed {cfg.seed})"]
    if report.witness:
        lines.append("witness: " + ", ".join(report.witness["inputs"]))
        lines.append(f"  lhs = {report.witness['lhs']}")
        lines.append(f"  rhs = {report.witness['rhs']}")
        if "value" in report.witness:
            lines.append(f"  associator = {report.witness['value']}")
    _emit(out, cfg, "\n".join(lines), report.to_json())
    return 0 if report.passed else 1


def cmd_presentation(args, cfg, out):
    mus = _parse_mus(args.mus)
    if mus is not None:
        try:
            report = specialized_table(args.kind, mus)
        except ValueError as e:
            raise UsageError(str(e)) from None
        labels = [basis_label(S, len(mus)) for S in range(1 << len(mus))]
        lines = [f"{args.kind} presentation with t_i^2 -> ({', '.join(format_rational(m) for m in report.mus)})",
                 _grid([[str(x) for x in row] for row in report.table], labels),
                 f"matches doubling table: {report.matches_tower}",
                 f"associative: {report.associative}",
                 f"commutative: {report.commutative}"]
        _emit(out, cfg, "\n".join(lines), report.to_json())
        return 0 if report.matches_tower else 1
    handle = build_torus(PresentationSpec(args.kind, cfg.mode, cfg.nvars))
    rel = handle.check_relations()
    lines = [f"{args.kind} {'torus' if cfg.mode == 'torus' else 'polynomial ring'} in {cfg.nvars} generators"]
    for group in ("inverses", "anticommute", "central"):
        for key, ok in rel[group].items():
            lines.append(f"  {group:11s} {key:8s} {'ok' if ok else 'FAILED'}")
    lines.append(f"relations hold: {rel['ok']}")
    _emit(out, cfg, "\n".join(lines), rel)
    return 0 if rel["ok"] else 1


def _demo_text(report: dict) -> str:
    name = report["demo"]
    lines = []
    if name == "dorofeev":
        for r in report["results"]:
            lines.append(f"{r['spec']}: {r['triples']} triples, {r['non_degenerate']} non-degenerate, "
                         f"{r['failures']} failures")
    elif name == "example43":
        lines.append(f"variables: {', '.join(f'{k} = {v}' for k, v in report['variables'].items())}")
        lines.append(f"generators: {', '.join(report['generators'])}")
        lines.append(f"products checked: {report['products_checked']} (all Z-multiples of listed generators)")
        w = report["non_octonion_witness"]
        lines.append(f"witness: {w['element']} has coordinate {w['coordinate']} on {w['label']}, "
                     f"in Z: {w['coordinate_in_Z']}")
    elif name == "closure":
        for r in report["decompositions"]:
            lines.append(f"{r['element']:>10s} = {r['coefficient']} * {r['label']}")
        lines.append(f"closure dimension: {report['closure_dimension']} "
                     f"(R needs {report['module_generators_of_R']} module generators)")
        lines.append(f"zt1^2/t1^2 == z^2t1^2/zt1^2: {report['zt1^2/t1^2 == z^2t1^2/zt1^2']}")
    elif name == "sedenion":
        for k in ("k4_witness", "k3_witness"):
            w = report[k]
            lines.append(f"{k[:2]}: " + ("no witness" if w is None else
                                          f"({w['x']}, {w['x']}, {w['y']}) = {w['associator']}"))
    lines.append(f"passed: {report['passed']}")
    return "\n".join(lines)


def cmd_demo(args, cfg, out):
    if args.name == "dorofeev":
        report = verify.dorofeev_demo(cfg.seed)
    elif args.name == "example43":
        report = verify.example43_report()
    elif args.name == "closure":
        report = verify.central_closure_demo()
    else:
        report = verify.sedenion_demo()
    _emit(out, cfg, _demo_text(report), report)
    return 0 if report["passed"] else 1


COMMANDS = {
    "normalize": cmd_normalize,
    "trace": cmd_trace,
    "mul": cmd_mul,
    "table": cmd_table,
    "check": cmd_check,
    "presentation": cmd_presentation,
    "demo": cmd_demo,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # "--mus -1,-1,-1" would otherwise be read as an unknown option
    for i in range(len(argv) - 1):
        if argv[i] == "--mus":
            argv[i:i + 2] = [f"--mus={argv[i + 1]}", ""]
    argv = [a for a in argv if a != ""]
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = _config(args)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            code = COMMANDS[args.command](args, cfg, out)
        for w in caught:
            err.write(f"warning: {w.message}\n")
        return code
    except ParseError as e:
        err.write(f"error: {e}\n")
        if e.text is not None and e.pos is not None:
            err.write(f"  {e.text}\n  {' ' * e.pos}^\n")
        return 2
    except (UsageError, ValueError) as e:
        err.write(f"error: {e}\n")
        return 2


def main():
    sys.exit(run())

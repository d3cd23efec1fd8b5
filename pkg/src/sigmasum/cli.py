"""Command line front end: law suites, sum evaluation, net summation.

Exit codes: 0 success (requested laws pass, or the sum/net command ran),
1 law failure, 2 usage/config error. ``check`` emits one JSON object per law
on stdout (or to --out); ``sum`` and ``net`` print single-line results.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .family import OMEGA, Family, canonicalize
from .core import Budget, CarrierError, ConstructionError, Defined, UNDEFINED, SigmaInstance, FiniteCarrier
from .checker import suite_for
from .instances import (
    ElementCodec,
    ext_nat_instance,
    cyclic_instance,
    int_group_instance,
    pm_instance,
    powerset_parity_instance,
    real_abs_instance,
    unit_interval_instance,
)
from .constructions import unit_instance
from .net_sum import extended_sum_real, parse_generator_spec


class UsageError(ValueError):
    pass


def resolve_instance(selector: str) -> SigmaInstance:
    """Built-in selectors: pm, parity:<e1,e2,...>, real, int, extnat, unit,
    interval, zmod:<n>; anything ending in .json is a definition file."""
    if selector.endswith(".json"):
        return load_definition_file(selector)
    name, _, arg = selector.partition(":")
    try:
        if name == "pm":
            return pm_instance()
        if name == "parity":
            if not arg:
                raise UsageError("parity needs a universe, e.g. parity:a,b")
            return powerset_parity_instance(tuple(s.strip() for s in arg.split(",")))
        if name == "real":
            return real_abs_instance()
        if name == "int":
            return int_group_instance()
        if name == "extnat":
            return ext_nat_instance()
        if name == "unit":
            return unit_instance()
        if name == "interval":
            return unit_interval_instance()
        if name == "zmod":
            return cyclic_instance(int(arg))
    except UsageError:
        raise
    except (ValueError, ConstructionError) as exc:
        raise UsageError(str(exc))
    raise UsageError(f"unknown instance selector {selector!r}")


def load_definition_file(path: str) -> SigmaInstance:
    """Declarative finite instance: elements, zero, and an explicit table of
    summable families (everything else is undefined)."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot load instance file: {exc}")
    try:
        elements = [str(e) for e in data["elements"]]
        zero = str(data["zero"])
        rows = data.get("sums", [])
    except (KeyError, TypeError) as exc:
        raise UsageError(f"bad instance file: missing {exc}")
    if zero not in elements:
        raise UsageError("zero must be one of the elements")
    codec = ElementCodec(lambda s: s.strip(), str)
    table = {}
    for row in rows:
        fam = canonicalize(
            [(str(e), 1) for e in row.get("finite", [])]
            + [(str(e), OMEGA) for e in row.get("omega", [])])
        value = str(row["value"])
        if value not in elements:
            raise UsageError(f"table value {value!r} not among the elements")
        table[fam] = value

    def rule(fam: Family):
        value = table.get(fam)
        return Defined(value) if value is not None else UNDEFINED

    return SigmaInstance(data.get("name", os.path.basename(path)),
                         FiniteCarrier(elements), zero, rule,
                         flavor=data.get("flavor", "weak"), codec=codec)


def _split_top_level(text: str) -> list:
    """Split on commas that are not nested inside brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail:
        parts.append(tail)
    return [p.strip() for p in parts if p.strip()]


def parse_family_literal(text: str, codec: ElementCodec) -> Family:
    """``{finite: [e, e, ...], omega: [e, ...]}`` with instance element syntax."""
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise UsageError("family literal must be {finite: [...], omega: [...]}")
    body = text[1:-1]
    sections = {}
    for part in _split_top_level(body):
        key, _, rest = part.partition(":")
        key = key.strip()
        rest = rest.strip()
        if key not in ("finite", "omega"):
            raise UsageError(f"unknown family section {key!r}")
        if not (rest.startswith("[") and rest.endswith("]")):
            raise UsageError(f"section {key!r} must be a [...] list")
        sections[key] = _split_top_level(rest[1:-1])
    try:
        pairs = [(codec.parse(e), 1) for e in sections.get("finite", [])]
        omegas = [(codec.parse(e), OMEGA) for e in sections.get("omega", [])]
    except ValueError as exc:
        raise UsageError(f"bad element: {exc}")
    return canonicalize(pairs + omegas)


def format_family_literal(fam: Family, codec: ElementCodec) -> str:
    fin = ", ".join(codec.format(e) for e, c in fam.finite for _ in range(c))
    om = ", ".join(codec.format(e) for e in fam.omega)
    return "{finite: [" + fin + "], omega: [" + om + "]}"


def _default_seed() -> int:
    env = os.environ.get("SIGMA_SUM_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError("SIGMA_SUM_SEED must be an integer")
    return 7


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigmasum",
        description="partial-summation law suites, sums, and net evaluation")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run a law suite against an instance")
    check.add_argument("--instance", required=True)
    check.add_argument("--laws", default="weak",
                       choices=["weak", "strong", "ft", "group", "all"])
    check.add_argument("--max-size", type=int, default=4)
    check.add_argument("--omega", type=int, default=1)
    check.add_argument("--block-count", type=int, default=4)
    check.add_argument("--block-size", type=int, default=4)
    check.add_argument("--omega-splits", type=int, default=2)
    check.add_argument("--trials", type=int, default=20)
    check.add_argument("--seed", type=int, default=None)
    check.add_argument("--out", default=None)

    ssum = sub.add_parser("sum", help="evaluate one family in an instance")
    ssum.add_argument("--instance", required=True)
    ssum.add_argument("--family", default=None)
    ssum.add_argument("--family-file", default=None)

    net = sub.add_parser("net", help="evaluate a real generator family")
    net.add_argument("--gen", required=True)
    net.add_argument("--eps", type=float, default=1e-9)
    net.add_argument("--max-terms", type=int, default=200_000)
    net.add_argument("--require-certificate", action="store_true")
    return parser


def cmd_check(args, out) -> int:
    inst = resolve_instance(args.instance)
    seed = args.seed if args.seed is not None else _default_seed()
    budget = Budget(
        max_finite_size=args.max_size,
        max_omega_elems=args.omega,
        block_count=args.block_count,
        block_size=args.block_size,
        omega_splits=args.omega_splits,
        trials=args.trials,
        seed=seed,
    )
    report = suite_for(args.laws)(inst, budget)
    lines = []
    for verdict in report.laws:
        row = {
            "instance": inst.name,
            "law": verdict.law,
            "verdict": verdict.status,
            "checked": verdict.checked,
            "budget": budget.to_dict(),
            "seed": seed,
        }
        if verdict.witness is not None:
            row["witness"] = verdict.witness
        lines.append(json.dumps(row, sort_keys=True))
    if report.flavor is not None:
        lines.append(json.dumps({
            "instance": inst.name, "law": "flavor_conclusion",
            "verdict": report.flavor, "budget": budget.to_dict(), "seed": seed,
        }, sort_keys=True))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0 if report.ok else 1


def cmd_sum(args, out) -> int:
    inst = resolve_instance(args.instance)
    if inst.codec is None:
        raise UsageError(f"instance {inst.name} has no element syntax")
    if (args.family is None) == (args.family_file is None):
        raise UsageError("need exactly one of --family or --family-file")
    literal = args.family
    if literal is None:
        try:
            with open(args.family_file) as fh:
                literal = fh.read()
        except OSError as exc:
            raise UsageError(str(exc))
    fam = parse_family_literal(literal, inst.codec)
    try:
        result = inst.sum(fam)
    except CarrierError as exc:
        raise UsageError(str(exc))
    if result.defined:
        out.write(f"defined {inst.codec.format(result.value)}\n")
    else:
        out.write("undefined\n")
    return 0


def _fmt_float(x: float) -> str:
    return str(int(x)) if x == int(x) else repr(x)


def cmd_net(args, out) -> int:
    try:
        gf = parse_generator_spec(args.gen)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.require_certificate and gf.certificate is None:
        raise UsageError(f"generator {gf.description} has no certificate")
    if args.eps <= 0:
        raise UsageError("--eps must be positive")
    verdict = extended_sum_real(gf, args.eps, args.max_terms)
    if verdict.kind == "converged":
        out.write(f"converged {_fmt_float(verdict.value)} "
                  f"±{_fmt_float(verdict.error_bound)}\n")
    elif verdict.kind == "diverged":
        first, second = verdict.evidence
        out.write(
            "diverged: partial sum over {%s} is %s, over {%s} is %s\n"
            % (first.description, _fmt_float(first.partial_sum),
               second.description, _fmt_float(second.partial_sum)))
    else:
        out.write(f"inconclusive after {verdict.terms_used} terms\n")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "check":
            return cmd_check(args, sys.stdout)
        if args.command == "sum":
            return cmd_sum(args, sys.stdout)
        if args.command == "net":
            return cmd_net(args, sys.stdout)
    except (UsageError, CarrierError, ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())

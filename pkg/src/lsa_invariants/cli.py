"""Command-line front end.

Exit codes: 0 when every check passes, 1 on a mathematical failure (an
invariant that should vanish does not), 2 on usage, parse or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .algebra.poly import format_rational, to_fraction
from .algebra.variables import parse_var
from .errors import InvariantError, SizeCapExceeded, VariableMismatch
from .examples import EXAMPLES, reproduce_example
from .families import applicable_families, generate, parse_lines
from .invariant_set import Family, InvariantSet
from .model import Shape, WeightAssignment, enumerate_labels, mu_point_for
from .verify import (
    SampleSpec,
    VerificationReport,
    ambient_point,
    check_nonvanishing,
    check_vanishing,
    sample_weights,
    symbolic_zero_check,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _indices(text: str | None):
    return tuple(int(x) for x in text.split(",")) if text else None


def _shape(args) -> Shape:
    return Shape(args.d, args.t, args.a if args.a is not None else args.d, args.dprime)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _add_shape(p: argparse.ArgumentParser, t_default: int = 2) -> None:
    p.add_argument("--d", type=int, required=True, help="token dimension")
    p.add_argument("--t", type=int, default=t_default, help="sequence length")
    p.add_argument("--a", type=int, default=None, help="attention dimension (default: d)")
    p.add_argument("--dprime", type=int, default=1, help="output rows")


def cmd_generate(args) -> int:
    shape = _shape(args)
    lines = parse_lines(args.lines, shape.d) if args.lines else None
    inv = generate(
        args.family, shape, r=args.r, K=_indices(args.K), L=_indices(args.L), lines=lines, mode=args.mode
    )
    if args.out:
        base = Path(args.out)
        if base.suffix in (".txt", ".json"):
            base = base.with_suffix("")
        base.with_suffix(".txt").write_text(inv.to_text())
        base.with_suffix(".json").write_text(inv.to_json())
        print(f"wrote {len(inv)} invariants to {base}.txt and {base}.json", file=sys.stderr)
    else:
        sys.stdout.write(inv.to_json() if args.json else inv.to_text())
    return EXIT_OK


def _load_point(data: dict, inv: InvariantSet) -> dict:
    if "point" in data:
        point = {parse_var(k): to_fraction(v) for k, v in data["point"].items()}
        missing = [v for v in inv.variables() if v not in point]
        if missing:
            raise VariableMismatch(f"point file lacks {len(missing)} variables, e.g. {missing[0]}")
        return point
    w = WeightAssignment.from_json(data)
    s = inv.shape
    if (w.d, w.d_prime) != (s.d, s.d_prime):
        raise VariableMismatch(f"weights have d={w.d}, d'={w.d_prime}; invariants need shape {s}")
    return mu_point_for(inv.variables(), w)


def cmd_evaluate(args) -> int:
    inv = InvariantSet.load(Path(args.invariants).read_text())
    point = _load_point(json.loads(Path(args.weights).read_text()), inv)
    values = [p.evaluate(point) for p in inv.polys]
    nonzero = [i for i, v in enumerate(values) if v]
    if args.json:
        doc = {
            "family": inv.family.value,
            "count": len(values),
            "nonzero": nonzero,
            "values": [format_rational(v) for v in values],
        }
        text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    else:
        text = "".join(f"{i}\t{format_rational(v)}\n" for i, v in enumerate(values))
        text += f"# {len(values) - len(nonzero)} of {len(values)} values are zero\n"
    _emit(text, args.out)
    return EXIT_FAIL if args.expect_zero and nonzero else EXIT_OK


def cmd_sample(args) -> int:
    shape = _shape(args)
    if args.ambient:
        variables = [lab.var for lab in enumerate_labels(shape)]
        point = ambient_point(variables, random.Random(f"ambient:{args.seed}:0"))
        doc = {"point": {str(v): format_rational(x) for v, x in point.items()}}
    else:
        spec = SampleSpec(shape, args.seed, rank_constraint=args.rank, full_rank=args.full_rank)
        doc = sample_weights(spec).to_json()
    _emit(json.dumps(doc, indent=1, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def verify_suite(shape: Shape, families: list, seed: int, samples: int, symbolic: bool = True) -> VerificationReport:
    report = VerificationReport(f"verify {shape}", shape)
    spec = SampleSpec(shape, seed)
    for family in families:
        inv = generate(family, shape)
        report.absorb(check_vanishing(inv, spec, samples), f"{family.value}: {len(inv)} invariants vanish")
        if symbolic and inv.polys:
            try:
                report.absorb(symbolic_zero_check(inv), f"{family.value}: symbolic")
            except SizeCapExceeded:
                report.check(f"{family.value}: symbolic check skipped (too large)", True)
        if inv.polys:
            report.absorb(check_nonvanishing(inv, seed), f"{family.value}: nonzero off the variety")
    report.samples = samples
    return report


def cmd_verify(args) -> int:
    shape = _shape(args)
    families = [Family(args.family)] if args.family else applicable_families(shape)
    report = verify_suite(shape, families, args.seed, args.samples, symbolic=not args.no_symbolic)
    _emit(report.to_json() if args.json else report.to_text(), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_reproduce(args) -> int:
    report = reproduce_example(args.example, seed=args.seed, samples=args.samples)
    _emit(report.to_json() if args.json else report.to_text(), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lsa-invariants", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    families = [f.value for f in Family]

    g = sub.add_parser("generate", help="write one invariant family")
    _add_shape(g)
    g.add_argument("--family", required=True, choices=families)
    g.add_argument("--r", type=int, default=2, help="Veronese degree")
    g.add_argument("--K", help="context indices, e.g. 1,2 (default: all increasing choices)")
    g.add_argument("--L", help="target indices, e.g. 2,1 (default: all increasing choices)")
    g.add_argument("--lines", help="resultant lines as xi:zeta;xi:zeta (default: coordinate lines)")
    g.add_argument("--mode", default="both", choices=["pairwise", "pencil", "both"])
    g.add_argument("--out", help="output base name; writes .txt and .json")
    g.add_argument("--json", action="store_true", help="print JSON instead of text")
    g.set_defaults(func=cmd_generate)

    e = sub.add_parser("evaluate", help="evaluate an invariant file at weights or at a point")
    e.add_argument("invariants")
    e.add_argument("weights", help="weights JSON (Q, K, V) or a point JSON {\"point\": {...}}")
    e.add_argument("--expect-zero", action="store_true", help="exit 1 if any value is nonzero")
    e.add_argument("--json", action="store_true")
    e.add_argument("--out")
    e.set_defaults(func=cmd_evaluate)

    s = sub.add_parser("sample", help="write seeded weights or an ambient point")
    _add_shape(s)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--rank", type=int, default=None, help="cap on rank(A)")
    s.add_argument("--full-rank", action="store_true")
    s.add_argument("--ambient", action="store_true", help="random coefficient point instead of weights")
    s.add_argument("--out")
    s.set_defaults(func=cmd_sample)

    v = sub.add_parser("verify", help="run the default vanishing suite for a shape")
    _add_shape(v)
    v.add_argument("--family", choices=families, help="restrict to one family")
    v.add_argument("--samples", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--no-symbolic", action="store_true")
    v.add_argument("--json", action="store_true")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reproduce", help="run a scripted example")
    r.add_argument("example", help="one of: " + ", ".join(EXAMPLES))
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--samples", type=int, default=None)
    r.add_argument("--json", action="store_true")
    r.add_argument("--out")
    r.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvariantError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

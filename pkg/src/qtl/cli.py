"""``qtl`` command-line front end.

Exit codes: 0 success, 1 an axiom or theorem check failed, 2 bad input.
"""

import argparse
import json
import sys

from . import ideals, quantale, suite, topology
from ._config import MAX_ENUM_CAP, enum_cap
from .errors import (AxiomViolation, NotALattice, NotAPartialOrder, QtlError,
                     SizeCapExceeded)

OK, VIOLATION, INPUT_ERROR = 0, 1, 2

# structural failures of the object itself, as opposed to unreadable input
_VIOLATIONS = (AxiomViolation, NotALattice, NotAPartialOrder)


def _emit(data, fmt, out):
    if fmt == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(render_text(data))


def _scalar(val):
    if isinstance(val, bool):
        return "true" if val else "false"
    if val is None:
        return "null"
    if isinstance(val, list):
        return "[" + ", ".join(_scalar(v) for v in val) + "]"
    return str(val)


def render_text(data, indent=""):
    """Indented ``key: value`` lines for a JSON-ready report."""
    lines = []
    for key, val in data.items():
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(render_text(val, indent + "  ").rstrip("\n"))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{indent}{key}:")
            for item in val:
                lines.append(f"{indent}  - " + ", ".join(f"{k}={_scalar(v)}" for k, v in item.items()))
        else:
            lines.append(f"{indent}{key}: {_scalar(val)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- commands

def cmd_validate(args, out):
    try:
        Q = quantale.load(args.path)
    except AxiomViolation as exc:
        _emit({"valid": False, "axiom": exc.axiom, "witness": list(exc.witness)}, args.format, out)
        return VIOLATION
    _emit({"name": Q.name, "elements": len(Q), "valid": True}, args.format, out)
    return OK


def _ideal_row(Q, I, c):
    row = {"ideal": topology.ideal_ref(I), "elements": [Q.labels[x] for x in I.elements]}
    row.update(c.as_dict())
    return row


def cmd_ideals(args, out):
    Q = quantale.load(args.path)
    sel = ideals.normalize_selector(args.klass)
    spec = ideals.spectrum(Q, sel)
    cls = dict(zip(ideals.all_ideals(Q), ideals.classifications(Q)))
    try:
        radical = topology.ideal_ref(ideals.jacobson_radical(Q))
    except QtlError:
        radical = None
    report = {
        "quantale": Q.name,
        "class": sel,
        "ideals": [_ideal_row(Q, I, cls[I]) for I in spec.points],
        "jacobson_radical": radical,
    }
    _emit(report, args.format, out)
    return OK


def cmd_topology(args, out):
    Q = quantale.load(args.path)
    sel = ideals.normalize_selector(args.klass)
    report = topology.report_record(Q, sel, disconnect=args.disconnect, seed=args.seed,
                                    sampled=args.kuratowski == "sampled")
    _emit(report, args.format, out)
    return OK


def cmd_suite(args, out):
    cap = enum_cap()
    if not 1 <= args.max_size <= min(cap, MAX_ENUM_CAP):
        raise SizeCapExceeded(f"--max-size must lie in 1..{cap} (raise QTL_ENUM_CAP up to {MAX_ENUM_CAP})")
    records, corpus = suite.run_suite(args.max_size, seed=args.seed, jobs=args.jobs,
                                      homs=args.homs, hom_max_size=min(args.max_size, 3))
    failure = suite.counterexample(records, corpus)
    report = {
        "max_size": args.max_size,
        "seed": args.seed,
        "quantales": len(corpus),
        "checks": len(records),
        "failures": sum(1 for r in records if not r.passed and not r.informational),
        "summary": {k: {"checked": v[0], "failed": v[1]} for k, v in suite.summary(records).items()},
        "counterexample": failure,
    }
    if args.records:
        report["records"] = [r.as_dict() for r in records]
    _emit(report, args.format, out)
    return OK if failure is None else VIOLATION


def hasse_dot(Q):
    lines = [f'digraph "{Q.name or "quantale"}" {{', "  rankdir=BT;"]
    lines += [f'  n{x} [label="{lab}"];' for x, lab in enumerate(Q.labels)]
    lines += [f"  n{x} -> n{y};" for x, y in sorted(Q.lattice.covers)]
    return "\n".join(lines) + "\n}\n"


def specialization_dot(Q, sel):
    spec = ideals.spectrum(Q, sel)
    T = topology.build_topology(spec)
    lines = [f'digraph "{Q.name or "quantale"}:{sel}" {{', "  rankdir=BT;"]
    lines += [f'  p{i} [label="{topology.ideal_ref(P)}"];' for i, P in enumerate(spec.points)]
    for q in range(len(spec)):
        for p in range(len(spec)):
            if p != q and T.point_closure[q] >> p & 1:
                lines.append(f"  p{q} -> p{p};")
    return "\n".join(lines) + "\n}\n"


def cmd_dot(args, out):
    Q = quantale.load(args.path)
    if args.kind == "hasse":
        out.write(hasse_dot(Q))
    else:
        if args.spectrum is None:
            raise QtlError("--kind specialization needs --spectrum <class>")
        out.write(specialization_dot(Q, ideals.normalize_selector(args.spectrum)))
    return OK


# ---------------------------------------------------------------- parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INPUT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="qtl", description="Finite quantales, their ideals and spectra.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    fmt = dict(choices=("json", "text"), default="json")

    v = sub.add_parser("validate", help="parse and check the quantale axioms")
    v.add_argument("path", help="JSON file or gen:chain:N, gen:powerset:K, gen:zn:N")
    v.add_argument("--format", **fmt)
    v.set_defaults(func=cmd_validate)

    i = sub.add_parser("ideals", help="list the ideals of one class")
    i.add_argument("path")
    i.add_argument("--class", dest="klass", default="proper")
    i.add_argument("--format", **fmt)
    i.set_defaults(func=cmd_ideals)

    t = sub.add_parser("topology", help="topology report for one spectrum")
    t.add_argument("path")
    t.add_argument("--class", dest="klass", default="proper")
    t.add_argument("--disconnect", choices=("pair", "family"), default="pair")
    t.add_argument("--kuratowski", choices=("auto", "sampled"), default="auto")
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--format", **fmt)
    t.set_defaults(func=cmd_topology)

    s = sub.add_parser("suite", help="theorem sweep over every small quantale")
    s.add_argument("--max-size", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--homs", action="store_true",
                   help="also sweep homomorphisms between quantales of size <= 3")
    s.add_argument("--records", action="store_true", help="include every per-instance record")
    s.add_argument("--format", **fmt)
    s.set_defaults(func=cmd_suite)

    d = sub.add_parser("dot", help="Graphviz output")
    d.add_argument("path")
    d.add_argument("--kind", choices=("hasse", "specialization"), default="hasse")
    d.add_argument("--spectrum", default=None)
    d.set_defaults(func=cmd_dot)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except _VIOLATIONS as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return VIOLATION
    except (QtlError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())

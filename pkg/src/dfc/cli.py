"""Command-line front end.

Exit codes: 0 every check passed, 1 a mathematical check failed, 2 usage,
configuration or budget error.
"""

from __future__ import annotations

import argparse
import os
import sys
from collections import Counter
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import serialize
from .codes import (
    CodeSpec,
    dimension_check,
    minimum_distance,
    weight_distribution_bruteforce,
    weight_distribution_closed,
)
from .cyclo import CycInt, gauss_sum, p_star
from .designs import DEFAULT_MAX_BLOCKS, check_weight, closed_form_lambdas, support_bound
from .gf import FieldError, linearized_map, make_field
from .invariance import defining_set, is_affine_invariant, is_affine_invariant_local
from .sums import (
    DEFAULT_MAX_WORK,
    BudgetExceeded,
    SumSpec,
    S_ab_closed,
    S_ab_direct,
    check_budget,
    expected_table,
    value_distribution_abc,
)

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    p: int
    m: int
    l: int = 1
    family: str = "c1"
    weight: int | None = None
    shards: int = 1
    out: str | None = None
    max_work: int = DEFAULT_MAX_WORK
    max_blocks: int = DEFAULT_MAX_BLOCKS
    fmt: str = "text"
    members: tuple[int, ...] | None = None

    def field(self):
        try:
            return make_field(self.p, self.m)
        except FieldError as exc:
            raise UsageError(str(exc)) from exc

    def code_spec(self):
        if self.m < 3:
            raise UsageError("code commands need m >= 3")
        if gcd(self.m, self.l) != 1:
            raise UsageError(f"gcd(m, l) must be 1 (m={self.m}, l={self.l})")
        return CodeSpec(self.family, self.field(), self.l)


# -- commands -------------------------------------------------------------------


def cmd_field(cfg):
    f = cfg.field()
    fibers = np.bincount(f.trace_table, minlength=f.p).tolist()
    etas = Counter(f.eta(np.arange(1, f.q)).tolist())
    checks = {
        "trace fibers balanced": all(n == f.q // f.p for n in fibers),
        "eta balanced": etas[1] == etas[-1] == (f.q - 1) // 2,
    }
    report = {
        "p": f.p,
        "m": f.m,
        "q": f.q,
        "modulus": list(f.modulus),
        "trace_fibers": fibers,
        "eta_counts": {"+1": etas[1], "-1": etas[-1]},
        "checks": checks,
    }
    return report, all(checks.values())


def cmd_weights(cfg):
    spec = cfg.code_spec()
    check_budget(spec.field.q, spec.quadratic, cfg.max_work)
    brute = weight_distribution_bruteforce(spec, cfg.shards, cfg.max_work)
    closed = weight_distribution_closed(spec)
    printed = weight_distribution_closed(spec, as_printed=True)
    dim = dimension_check(spec)
    checks = {
        "bruteforce == closed form": brute == closed,
        f"dimension == {spec.expected_dimension}": dim == spec.expected_dimension,
        "A_0 == 1": brute.get(0) == 1,
        f"total == p^{spec.expected_dimension}": sum(brute.values()) == spec.size,
    }
    report = {
        "family": spec.family,
        "p": spec.field.p,
        "m": spec.field.m,
        "l": spec.l,
        "length": spec.length,
        "dimension": dim,
        "minimum_distance": minimum_distance(brute),
        "bruteforce": {str(w): str(a) for w, a in brute.items()},
        "closed_form": {str(w): str(a) for w, a in closed.items()},
        "printed_table_matches": printed == brute,
        "checks": checks,
    }
    if cfg.out:
        serialize.write(cfg.out, serialize.weight_distribution_doc(spec.length, dim, brute))
    return report, all(checks.values())


def _l_values(m):
    return [l for l in range(1, max(m, 2)) if gcd(m, l) == 1]


def cmd_sums(cfg):
    spec = cfg.code_spec()
    f = spec.field
    sspec = SumSpec(f, cfg.l)
    check_budget(f.q, True, cfg.max_work)
    dist = value_distribution_abc(sspec, cfg.shards, cfg.max_work)
    checks = {"value distribution == table": dist == expected_table(sspec)}
    mismatches = sum(
        S_ab_closed(sspec, a, b) != S_ab_direct(sspec, a, b)
        for a in range(1, f.q)
        for b in range(f.q)
    )
    checks["S(a,b) closed == direct"] = mismatches == 0
    checks["gauss_sum^2 == p*"] = gauss_sum(f.p) ** 2 == CycInt.rational(f.p, p_star(f.p))
    others = [l for l in _l_values(f.m) if l != cfg.l]
    checks["l-invariance"] = all(
        value_distribution_abc(SumSpec(f, l), cfg.shards, cfg.max_work) == dist for l in others
    )
    if f.m % 2 == 0:
        sign = f.from_prime((-1) ** (f.m // 2))
        ok = True
        for a in range(1, f.q):
            kernel = int(np.count_nonzero(linearized_map(f, a, cfg.l) == 0))
            special = f.pow(a, (f.q - 1) // (f.p + 1)) == sign
            ok &= kernel == (f.p**2 if special else 1)
        checks["kernel size dichotomy"] = ok
    report = {
        "p": f.p,
        "m": f.m,
        "l": cfg.l,
        "distinct_values": len(dist),
        "total": str(sum(dist.values())),
        "closed_vs_direct_mismatches": mismatches,
        "l_values_compared": others,
        "checks": checks,
    }
    return report, all(checks.values())


def cmd_designs(cfg):
    spec = cfg.code_spec()
    f = spec.field
    check_budget(f.q, spec.quadratic, cfg.max_work)
    dist = weight_distribution_bruteforce(spec, cfg.shards, cfg.max_work)
    d = minimum_distance(dist)
    bound = support_bound(f.p, d, spec.length)
    formulas = closed_form_lambdas(spec)
    weights = [w for w in dist if w > 0]
    if cfg.weight is not None:
        if dist.get(cfg.weight, 0) == 0:
            raise UsageError(f"no codewords of weight {cfg.weight}")
        weights = [cfg.weight]
    rows = []
    for i in weights:
        row = check_weight(
            spec, i, dist[i], bound, formulas, shards=cfg.shards,
            max_blocks=cfg.max_blocks, max_work=cfg.max_work,
        )
        rows.append(row)
        if cfg.out and row.lam is not None:
            path = cfg.out
            if cfg.weight is None:
                os.makedirs(cfg.out, exist_ok=True)
                path = os.path.join(cfg.out, f"design_{spec.family}_{f.p}_{f.m}_{spec.l}_w{i}.json")
            serialize.write(path, serialize.design_doc(row.design, row.lam))
    report = {
        "family": spec.family,
        "p": f.p,
        "m": f.m,
        "l": spec.l,
        "minimum_distance": d,
        "support_bound": bound,
        "rows": [
            {
                "i": r.i,
                "b": str(r.b),
                "lambda_counted": "-" if r.lam is None else str(r.lam),
                "lambda_formula": r.lam_formula,
                "verdict": r.verdict,
                "note": r.note,
            }
            for r in rows
        ],
    }
    return report, all(r.verdict != "FAIL" for r in rows)


def cmd_invariance(cfg):
    if cfg.members is not None:
        if cfg.m < 1:
            raise UsageError("m must be >= 1")
        members = sorted(cfg.members)
        label = "given"
    else:
        spec = cfg.code_spec()
        members = sorted(defining_set(spec).members)
        label = spec.family
    ok, witness = is_affine_invariant(members, cfg.p, cfg.m)
    ok_local, _ = is_affine_invariant_local(members, cfg.p, cfg.m)
    report = {
        "p": cfg.p,
        "m": cfg.m,
        "set": label,
        "defining_set": members,
        "affine_invariant": ok,
        "witness": list(witness) if witness else None,
        "checks": {"downward closed": ok, "local test agrees": ok == ok_local},
    }
    return report, ok and ok == ok_local


COMMANDS = {
    "field": cmd_field,
    "weights": cmd_weights,
    "sums": cmd_sums,
    "designs": cmd_designs,
    "invariance": cmd_invariance,
}


# -- output -----------------------------------------------------------------------


def render_text(command, report, passed):
    lines = []
    if command == "designs":
        lines.append(
            f"{report['family']} p={report['p']} m={report['m']} l={report['l']} "
            f"d={report['minimum_distance']} support bound={report['support_bound']}"
        )
        lines.append(f"{'i':>6} {'b':>10} {'lambda':>10} {'formula':>10}  verdict")
        for r in report["rows"]:
            lines.append(
                f"{r['i']:>6} {r['b']:>10} {r['lambda_counted']:>10} "
                f"{r['lambda_formula']:>10}  {r['verdict']}"
                + (f"  ({r['note']})" if r["note"] else "")
            )
    else:
        for key, value in report.items():
            if key == "checks":
                continue
            if isinstance(value, dict):
                value = " ".join(f"{k}:{v}" for k, v in value.items())
            lines.append(f"{key}: {value}")
        for name, ok in report.get("checks", {}).items():
            lines.append(f"[{'PASS' if ok else 'FAIL'}] {name}")
    lines.append("PASS" if passed else "FAIL")
    return "\n".join(lines) + "\n"


def _int_list(text):
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser():
    parser = argparse.ArgumentParser(prog="dfc", description=__doc__)
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--p", type=int, required=True)
    parser.add_argument("--m", type=int, required=True)
    parser.add_argument("--l", type=int, default=1)
    parser.add_argument("--family", choices=["c1", "c2"], default="c1")
    parser.add_argument("--weight", type=int)
    parser.add_argument("--shards", type=int)
    parser.add_argument("--out")
    parser.add_argument("--max-work", type=int, default=DEFAULT_MAX_WORK)
    parser.add_argument("--max-blocks", type=int, default=DEFAULT_MAX_BLOCKS)
    parser.add_argument("--format", choices=["json", "text"], default="text")
    parser.add_argument("--set", type=_int_list, dest="members",
                        help="comma-separated set to test with the invariance command")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    shards = args.shards if args.shards is not None else int(os.environ.get("DFC_SHARDS", "1"))
    cfg = RunConfig(
        command=args.command, p=args.p, m=args.m, l=args.l, family=args.family,
        weight=args.weight, shards=shards, out=args.out, max_work=args.max_work,
        max_blocks=args.max_blocks, fmt=args.format, members=args.members,
    )
    try:
        if cfg.shards < 1:
            raise UsageError("--shards must be >= 1")
        report, passed = COMMANDS[cfg.command](cfg)
    except (UsageError, BudgetExceeded, FieldError) as exc:
        print(f"dfc: error: {exc}", file=sys.stderr)
        return USAGE
    if cfg.fmt == "json":
        sys.stdout.write(serialize.dumps({"command": cfg.command, "passed": passed, "report": report}))
    else:
        sys.stdout.write(render_text(cfg.command, report, passed))
    return OK if passed else FAILED


if __name__ == "__main__":
    sys.exit(main())

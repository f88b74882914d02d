"""Command line entry point: ``python -m addcomb <command> ...``.

Exit status is 0 when every requested verdict holds.  A failing verdict exits
with 10 + the checker's position in THEOREM_CODES; bad input exits with 2.
"""

from __future__ import annotations

import argparse
import json
import operator
import random
import re
import statistics
import sys
import time
from typing import Sequence

from addcomb.energy import check_energy_lemma, check_energy_upper_bound, energy_report
from addcomb.families import build_example1, build_example2
from addcomb.group import GroupSpec, GSet, Subgroup, make_group
from addcomb.search import (
    ALL_CHECKERS,
    CampaignConfig,
    CounterexampleError,
    default_threads,
    run_campaign,
)
from addcomb.serialize import example_dict, group_dict, record_dict, verdict_dict
from addcomb.sums import KERNELS, rep_counts
from addcomb.theorems import (
    TheoremVerdict,
    check_chowla_pollard,
    check_corollary,
    check_critical_pair,
    check_double_rep_remark,
    check_green_ruzsa,
    check_kneser,
    check_main_theorem,
    check_multiplicity_prop,
    check_pollard_cyclic,
    check_t2_theorem,
    not_applicable,
)

THEOREM_CODES = (
    "main", "t2", "kneser", "pollard", "chowla", "green-ruzsa",
    "corollary", "mult", "critical", "remark", "energy",
)
EXIT_BAD_INPUT = 2


class SetLiteralError(ValueError):
    """A malformed set literal; ``code`` names the problem."""

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(f"{code}: {message}")


_LITERAL = re.compile(r"^\{\s*(.*?)\s*\}$", re.S)


def parse_set(text: str, group: GroupSpec) -> GSet:
    """Parse ``"{i1,i2,...}"`` (flat indices) into a set of ``group``."""
    m = _LITERAL.match(text.strip())
    if m is None:
        raise SetLiteralError("MALFORMED", f"expected {{i1,i2,...}}, got {text!r}")
    body = m.group(1)
    if not body:
        raise SetLiteralError("EMPTY_SET", "the set literal is empty")
    seen: set[int] = set()
    for part in body.split(","):
        part = part.strip()
        if not re.fullmatch(r"\d+", part):
            raise SetLiteralError("MALFORMED", f"bad element {part!r}")
        g = int(part)
        if g >= group.order:
            raise SetLiteralError("OUT_OF_RANGE", f"{g} is not below the group order {group.order}")
        if g in seen:
            raise SetLiteralError("DUPLICATE", f"{g} listed twice")
        seen.add(g)
    return group.set(seen)


def format_set(S: GSet | Subgroup) -> str:
    return "{" + ",".join(map(str, S.elements)) + "}"


def parse_orders(text: str) -> GroupSpec:
    try:
        return make_group([int(p) for p in text.split(",") if p.strip()])
    except ValueError as exc:
        raise SetLiteralError("BAD_GROUP", str(exc)) from exc


def parse_params(text: str) -> dict[str, int]:
    out = {}
    for item in filter(None, (p.strip() for p in text.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise SetLiteralError("MALFORMED", f"expected key=value, got {item!r}")
        out[key.strip()] = int(value)
    return out


def _verdict_for(name: str, A: GSet, B: GSet, t: int, k: int) -> TheoremVerdict:
    if name == "main":
        return check_main_theorem(A, B, t)
    if name == "t2":
        return check_t2_theorem(A, B)
    if name == "kneser":
        return check_kneser(A, B)
    if name == "pollard":
        return check_pollard_cyclic(A, B, t)
    if name == "chowla":
        return check_chowla_pollard(A, B, t)
    if name == "green-ruzsa":
        return check_green_ruzsa(A, B, t)
    if name == "corollary":
        return check_corollary(A, B)
    if name == "mult":
        return check_multiplicity_prop(A, B)
    if name == "critical":
        return check_critical_pair(A, B)
    if name == "remark":
        return check_double_rep_remark(A, B, t)
    if name == "energy":
        return check_energy_lemma(A, B, k, t)
    raise ValueError(name)


_RELATIONS = {">=": operator.ge, "<=": operator.le, "==": operator.eq}


def _human(v: TheoremVerdict) -> str:
    status = "holds" if v.holds else "FAILS"
    lines = [f"{v.theorem}: {status} [{v.branch.value}]  {v.lhs} {v.relation} {v.rhs}"]
    for name, lhs, rel, rhs in v.checks:
        ok = _RELATIONS[rel](lhs, rhs)
        lines.append(f"  {name}: {lhs} {rel} {rhs}{'' if ok else '  (not satisfied)'}")
    if v.witness is not None:
        w = v.witness
        lines.append(
            f"  witness: A'={format_set(w.A_prime)} B'={format_set(w.B_prime)} "
            f"l={w.l} H={format_set(w.H)} rho={w.rho}"
        )
    return "\n".join(lines)


def _emit(verdicts: list[TheoremVerdict], G: GroupSpec, fmt: str, out) -> None:
    if fmt == "json":
        for v in verdicts:
            payload = {"group": group_dict(G), **verdict_dict(v)}
            print(json.dumps(payload), file=out)
    elif fmt == "tsv":
        print("theorem\tholds\tbranch\tlhs\trhs", file=out)
        for v in verdicts:
            print(f"{v.theorem}\t{int(v.holds)}\t{v.branch.value}\t{v.lhs}\t{v.rhs}", file=out)
    else:
        print(f"G = {G}", file=out)
        for v in verdicts:
            print(_human(v), file=out)


def _exit_code(verdicts: list[TheoremVerdict]) -> int:
    for v in verdicts:
        if not v.holds:
            name = v.theorem if v.theorem in THEOREM_CODES else "energy"
            return 10 + THEOREM_CODES.index(name)
    return 0


def cmd_verify(args, out) -> int:
    G = parse_orders(args.group)
    A, B = parse_set(args.A, G), parse_set(args.B, G)
    names = THEOREM_CODES if args.theorem == "all" else [args.theorem]
    verdicts = []
    for name in names:
        start = time.perf_counter_ns()
        try:
            v = _verdict_for(name, A, B, args.t, args.k)
        except ValueError:
            if args.theorem != "all":
                raise
            v = not_applicable(name)
        v = TheoremVerdict(**{**v.__dict__, "elapsed_ns": time.perf_counter_ns() - start})
        verdicts.append(v)
    _emit(verdicts, G, args.format, out)
    return _exit_code(verdicts)


def cmd_energy(args, out) -> int:
    G = parse_orders(args.group)
    A, B = parse_set(args.A, G), parse_set(args.B, G)
    report = energy_report(A, B, args.k, args.t)
    verdicts = [
        check_energy_upper_bound(A, B, None, args.k),
        check_energy_lemma(A, B, args.k, args.t),
    ]
    if args.format == "json":
        payload = {
            "group": group_dict(G),
            "energy": report.energy,
            "T": list(report.T.elements),
            "k": report.k,
            "t": report.t,
            "lower_bound": None if report.lower_bound is None else float(report.lower_bound),
            "upper_bound_rhs": None
            if report.upper_bound_rhs is None
            else float(report.upper_bound_rhs),
            "verdicts": [verdict_dict(v) for v in verdicts],
        }
        print(json.dumps(payload), file=out)
    else:
        print(f"E(A,B) = {report.energy}, T = {format_set(report.T)}, k = {args.k}, t = {args.t}", file=out)
        if report.lower_bound is not None:
            print(f"lower bound >= {float(report.lower_bound):.6f}", file=out)
        _emit(verdicts, G, args.format, out)
    return _exit_code(verdicts)


def cmd_example(args, out) -> int:
    params = parse_params(args.params)
    if args.family == "1":
        inst = build_example1(
            params["H"], params["q"], params.get("d", 1), params["s"], params["r"], params["x"]
        )
    else:
        G = make_group([int(n) for n in args.group.split(",")])
        H = Subgroup(parse_set(args.H, G))
        L = Subgroup(parse_set(args.L, G))
        inst = build_example2(G, H, L, params["r"], params["x"], params.get("g"))
    payload = example_dict(inst)
    if args.format == "json":
        print(json.dumps(payload), file=out)
    else:
        print(f"family {inst.family} in {inst.G}: t = {inst.t}, |A| = {inst.A.card}, |B| = {inst.B.card}", file=out)
        print(f"A = {format_set(inst.A)}", file=out)
        print(f"B = {format_set(inst.B)}", file=out)
        print(
            f"sum_(i<=t) |A +_i B| - t|A| - t|B| + t^2 = {payload['defect']}"
            f"  (closed form {inst.predicted_defect})",
            file=out,
        )
    return 0 if payload["holds"] else 10 + THEOREM_CODES.index("main")


def _parse_t_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    return (int(lo), int(hi)) if sep else (int(lo), int(lo))


def cmd_search(args, out) -> int:
    checkers = tuple(args.checkers.split(",")) if args.checkers else None
    kwargs = {} if checkers is None else {"checkers": checkers}
    config = CampaignConfig(
        max_order=args.max_order,
        t_range=_parse_t_range(args.t),
        mode=args.mode,
        samples_per_group=args.samples,
        seed=args.seed,
        threads=args.threads,
        min_order=args.min_order,
        **kwargs,
    )
    sink = open(args.out, "w", encoding="utf-8", buffering=1) if args.out else out
    n = 0
    try:
        for record in run_campaign(config):
            n += 1
            if args.emit == "all" or record.tightness_gap <= 0:
                print(json.dumps(record_dict(record), separators=(",", ":")), file=sink)
    except CounterexampleError as exc:
        print(str(exc), file=sys.stderr)
        bad = next(v for v in exc.record.verdicts.values() if not v.holds)
        return _exit_code([bad])
    finally:
        if sink is not out:
            sink.close()
    print(f"{n} records, no counterexamples", file=sys.stderr)
    return 0


def cmd_bench(args, out) -> int:
    G = make_group([args.order])
    rng = random.Random(args.seed)
    A = G.set(g for g in range(G.order) if rng.random() < args.density)
    B = G.set(g for g in range(G.order) if rng.random() < args.density)
    if not A or not B:
        raise SetLiteralError("EMPTY_SET", "density too low for a nonempty set")
    from addcomb.sums import _KERNEL_FUNCS

    fn = _KERNEL_FUNCS[args.kernel]
    times = []
    for _ in range(args.reps):
        start = time.perf_counter()
        fn(A, B)
        times.append((time.perf_counter() - start) * 1000)
    agree = bool((fn(A, B) == rep_counts(A, B, "naive").counts).all())
    payload = {
        "kernel": args.kernel,
        "order": G.order,
        "A": A.card,
        "B": B.card,
        "reps": args.reps,
        "median_ms": statistics.median(times),
        "min_ms": min(times),
        "agrees_with_naive": agree,
    }
    if args.format == "json":
        print(json.dumps(payload), file=out)
    else:
        print(
            f"{args.kernel}: order {G.order}, |A|={A.card}, |B|={B.card}: "
            f"median {payload['median_ms']:.2f} ms over {args.reps} reps, "
            f"{'agrees' if agree else 'DISAGREES'} with naive",
            file=out,
        )
    return 0 if agree else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="addcomb", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "json", "tsv"), default="text")

    v = sub.add_parser("verify", help="check one statement on one pair")
    v.add_argument("--group", required=True, help="cyclic factor orders, e.g. 2,6")
    v.add_argument("--A", required=True)
    v.add_argument("--B", required=True)
    v.add_argument("--t", type=int, default=1)
    v.add_argument("--k", type=int, default=1, help="representation cap for --theorem energy")
    v.add_argument("--theorem", choices=THEOREM_CODES + ("all",), default="main")
    fmt(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="exhaustive or sampled campaign, JSONL out")
    s.add_argument("--max-order", type=int, required=True)
    s.add_argument("--min-order", type=int, default=1)
    s.add_argument("--t", default="1..3", help="t range, e.g. 1..3")
    s.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--threads", type=int, default=default_threads())
    s.add_argument("--checkers", default=None, help=f"comma list from {','.join(ALL_CHECKERS)}")
    s.add_argument("--emit", choices=("all", "tight"), default="all")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_search)

    e = sub.add_parser("example", help="build an extremal family instance")
    e.add_argument("--family", choices=("1", "2"), required=True)
    e.add_argument("--params", default="", help="family 1: H,q,d,s,r,x; family 2: r,x[,g]")
    e.add_argument("--group", default=None, help="family 2 only")
    e.add_argument("--H", default=None, help="family 2 only")
    e.add_argument("--L", default=None, help="family 2 only")
    fmt(e)
    e.set_defaults(func=cmd_example)

    en = sub.add_parser("energy", help="additive energy report for a pair")
    en.add_argument("--group", required=True)
    en.add_argument("--A", required=True)
    en.add_argument("--B", required=True)
    en.add_argument("--k", type=int, required=True)
    en.add_argument("--t", type=int, default=1)
    fmt(en)
    en.set_defaults(func=cmd_energy)

    b = sub.add_parser("bench", help="time one rep_counts kernel on Z_N")
    b.add_argument("--order", type=int, default=4096)
    b.add_argument("--density", type=float, default=0.3)
    b.add_argument("--reps", type=int, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--kernel", choices=KERNELS, default="bitset")
    fmt(b)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except SetLiteralError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())

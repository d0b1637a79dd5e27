"""Command-line front end.

Exit codes: 0 success, 1 domain error (bad input, failed verification),
2 resource error (node budget or state cap exhausted).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import core, exact, heuristics, sequences
from .core import JarSet, MovePlan, make_jarset
from .errors import DomainError, ResourceError

log = logging.getLogger("cookie_monster")


@dataclass
class RunRecord:
    instance: tuple[int, ...]
    seed: int
    cm: int | None
    lower: int
    upper: int
    heuristics: dict[str, int]
    timing: dict[str, float] = field(default_factory=dict)

    def to_dict(self, with_timing=False) -> dict:
        d = {
            "seed": self.seed,
            "instance": list(self.instance),
            "cm": self.cm,
            "lower": self.lower,
            "upper": self.upper,
            "heuristics": dict(self.heuristics),
        }
        if with_timing:
            d["timing"] = {k: round(v, 6) for k, v in self.timing.items()}
        return d


# ---------------------------------------------------------------- input


def parse_instance(text: str) -> tuple[JarSet, bool]:
    """Comma/whitespace separated integers, or @path to a file of them.

    Returns the jar set and whether duplicate values were collapsed.
    """
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise DomainError(f"cannot read instance file: {exc}") from None
    tokens = text.replace(",", " ").split()
    try:
        values = [int(t) for t in tokens]
    except ValueError:
        raise DomainError(f"instance must be integers, got {text.strip()!r}") from None
    s = make_jarset(values)
    return s, len(s) != len(values)


def _note_collapse(collapsed):
    if collapsed:
        print("note: equal jars collapsed into one", file=sys.stderr)


def _fmt_fraction(r: Fraction) -> str:
    return f"{float(r):.6f}"


def _emit(args, payload: dict, rows: list[dict] | None = None, text: str | None = None):
    out = sys.stdout
    if args.format == "json":
        json.dump(payload, out, sort_keys=False)
        out.write("\n")
    elif args.format == "csv":
        rows = rows if rows is not None else [payload]
        writer = csv.DictWriter(out, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        out.write((text if text is not None else json.dumps(payload, indent=2)) + "\n")


# ------------------------------------------------------------ commands


def cmd_solve(args):
    s, collapsed = parse_instance(args.instance)
    _note_collapse(collapsed)
    if args.oracle:
        cm = exact.cm_bfs(s, max_states=args.max_states)
        payload = {"instance": list(s), "cm": cm, "method": "bfs", "collapsed_duplicates": collapsed}
        _emit(args, payload, text=f"CM{s} = {cm} (breadth-first search)")
        return 0
    res = exact.cm_exact(s, budget=args.budget, workers=args.workers)
    plan = exact.plan_from_certificate(s, res.certificate)
    payload = {
        "instance": list(s),
        "cm": res.cm,
        "certificate": res.certificate.to_dict(),
        "plan": plan.to_list(),
        "nodes_explored": res.nodes_explored,
        "collapsed_duplicates": collapsed,
    }
    row = {
        "instance": " ".join(map(str, s)),
        "cm": res.cm,
        "amounts": " ".join(map(str, res.certificate.amounts)),
        "nodes_explored": res.nodes_explored,
    }
    lines = [f"CM{s} = {res.cm}", f"amounts: {list(res.certificate.amounts)}"]
    lines += [f"  {v} = {' + '.join(map(str, a))}" for v, a in res.certificate.assignments.items()]
    lines += [f"move {i + 1}: take {m.amount} from {sorted(m.targets)}" for i, m in enumerate(plan)]
    _emit(args, payload, [row], "\n".join(lines))
    return 0


def cmd_heuristic(args):
    s, collapsed = parse_instance(args.instance)
    _note_collapse(collapsed)
    run = heuristics.run_heuristic(s, args.alg)
    payload = {
        "instance": list(s),
        "algorithm": run.algorithm,
        "move_count": run.move_count,
        "plan": run.plan.to_list(),
        "cookies_removed_per_move": list(run.cookies_removed_per_move),
    }
    rows = [
        {"move": i + 1, "amount": m.amount, "targets": " ".join(map(str, sorted(m.targets))), "removed": m.removed}
        for i, m in enumerate(run.plan)
    ]
    lines = [f"{run.algorithm.upper()} on {s}: {run.move_count} moves"]
    lines += [
        f"move {r['move']}: take {r['amount']} from [{r['targets']}] ({r['removed']} cookies)" for r in rows
    ]
    _emit(args, payload, rows, "\n".join(lines))
    return 0


def bounds_report(s: JarSet) -> dict:
    rep = {
        "instance": list(s),
        "k": s.k,
        "lower": core.lower_bound(s),
        "upper_trivial": core.upper_bound_trivial(s),
        "upper_binary": core.upper_bound_binary(s) if s.k else 0,
        "upper_diameter": core.upper_bound_diameter(s) if s.k >= 2 else None,
        "superincreasing": core.is_superincreasing(s),
        "two_powerful": core.is_two_powerful(s),
    }
    rep["cm_two_powerful"] = core.cm_two_powerful(s) if rep["two_powerful"] else None
    return rep


def cmd_bounds(args):
    s, collapsed = parse_instance(args.instance)
    _note_collapse(collapsed)
    rep = bounds_report(s)
    row = {k: (" ".join(map(str, v)) if isinstance(v, list) else v) for k, v in rep.items()}
    text = "\n".join(f"{k}: {v}" for k, v in row.items())
    _emit(args, rep, [row], text)
    return 0


def cmd_seq(args):
    if args.nacci is not None:
        if args.k is None:
            raise DomainError("--nacci needs --k")
        s = sequences.nacci_set(args.nacci, args.k)
        payload = {
            "n": args.nacci,
            "k": args.k,
            "jars": list(s),
            "closed_form_cm": sequences.closed_form_cm(args.nacci, args.k),
        }
        if args.solve:
            payload["cm"] = exact.cm_exact(s, budget=args.budget).cm
    else:
        try:
            k, m = (int(x) for x in args.construct.split(","))
        except ValueError:
            raise DomainError(f"--construct expects k,m, got {args.construct!r}") from None
        s = sequences.construct_set_with_cm(k, m)
        payload = {"k": k, "m": m, "jars": list(s), "cm": core.cm_two_powerful(s)}
        if args.solve:
            payload["cm_exact"] = exact.cm_exact(s, budget=args.budget).cm
    row = {k: (" ".join(map(str, v)) if isinstance(v, list) else v) for k, v in payload.items()}
    _emit(args, payload, [row], "\n".join(f"{k}: {v}" for k, v in row.items()))
    return 0


def cmd_ratio(args):
    traj = sequences.build_ratio_sequence(args.r, args.terms)
    rows = [{"k": k, "s_k": s, "cm": cm, "ratio": _fmt_fraction(r)} for k, s, cm, r in traj.rows()]
    payload = {
        "r": str(traj.target_ratio),
        "terms": [row["s_k"] for row in rows],
        "cm": [row["cm"] for row in rows],
        "ratios": [str(r) for r in traj.ratios],
        "power_indices": {str(e): k for e, k in traj.power_indices.items()},
    }
    text = "\n".join(f"{r['k']:>5} {r['s_k']:>12} {r['cm']:>4} {r['ratio']}" for r in rows)
    _emit(args, payload, rows, "    k          s_k   cm ratio\n" + text)
    if args.plot:
        from .plots import plot_ratio_trajectory

        log.info("wrote %s", plot_ratio_trajectory(traj, args.plot))
    return 0


def random_instance(rng: random.Random, max_k: int, max_value: int) -> JarSet:
    k = rng.randint(2, max_k)
    return make_jarset(rng.sample(range(1, max_value + 1), k))


def bench_one(instance_seed: int, max_k: int, max_value: int, budget: int | None) -> RunRecord:
    s = random_instance(random.Random(instance_seed), max_k, max_value)
    timing = {}
    t0 = time.perf_counter()
    try:
        cm = exact.cm_exact(s, budget=budget).cm
    except ResourceError:
        cm = None
    timing["exact"] = time.perf_counter() - t0
    counts = {}
    for alg in heuristics.ALGORITHMS:
        t0 = time.perf_counter()
        counts[alg] = heuristics.run_heuristic(s, alg).move_count
        timing[alg] = time.perf_counter() - t0
    ub = exact.best_upper_bound(s)
    return RunRecord(s.jars, instance_seed, cm, core.lower_bound(s), ub, counts, timing)


def run_bench(count, max_k, max_value, seed, budget=None, workers=1) -> list[RunRecord]:
    if max_k < 2 or max_value < max_k:
        raise DomainError("bench needs 2 <= max-k <= max-value")
    master = random.Random(seed)
    seeds = [master.getrandbits(32) for _ in range(count)]
    argv = (seeds, [max_k] * count, [max_value] * count, [budget] * count)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(bench_one, *argv))
    return list(map(bench_one, *argv))


def cmd_bench(args):
    records = run_bench(args.count, args.max_k, args.max_value, args.seed, args.budget, args.workers)
    dicts = [r.to_dict(with_timing=args.timing) for r in records]
    rows = []
    for r in records:
        row = {"seed": r.seed, "instance": " ".join(map(str, r.instance)), "cm": r.cm, "lower": r.lower, "upper": r.upper}
        row.update(r.heuristics)
        if args.timing:
            row.update({f"t_{k}": f"{v:.6f}" for k, v in r.timing.items()})
        rows.append(row)
    payload = {"seed": args.seed, "records": dicts}
    text = "\n".join(
        f"{r['seed']:>10}  {{{r['instance']}}}  cm={r['cm']}  " + "  ".join(f"{a}={r[a]}" for a in heuristics.ALGORITHMS)
        for r in rows
    )
    _emit(args, payload, rows, text)
    if args.plot:
        from .plots import plot_bench

        log.info("wrote %s", plot_bench(records, args.plot))
    return 0


def cmd_verify(args):
    try:
        data = json.loads(Path(args.plan).read_text())
        s = make_jarset(data["instance"])
        plan = MovePlan.from_list(data["plan"])
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise DomainError(f"cannot read plan file {args.plan}: {exc}") from None
    check = core.verify_plan(s, plan)
    payload = {"instance": list(s), "valid": check.ok, "moves": len(plan)}
    if check.ok:
        payload["certificate"] = check.certificate.to_dict()
    else:
        payload["failed_at"] = check.failed_at
        payload["reason"] = check.reason
    row = {"instance": " ".join(map(str, s)), "valid": check.ok, "moves": len(plan), "failed_at": check.failed_at}
    text = f"plan of {len(plan)} moves on {s}: " + ("valid" if check.ok else f"INVALID at move {check.failed_at}: {check.reason}")
    _emit(args, payload, [row], text)
    return 0 if check.ok else 1


# -------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    group = fmt.add_mutually_exclusive_group()
    group.add_argument("--json", dest="format", action="store_const", const="json")
    group.add_argument("--csv", dest="format", action="store_const", const="csv")
    group.add_argument("--text", dest="format", action="store_const", const="text")
    fmt.set_defaults(format="json")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument(
        "--budget", type=int, default=None, help=f"cover-search node budget (default ${exact.BUDGET_ENV} or 10^7)"
    )

    p = argparse.ArgumentParser(prog="cookie-monster", description="Cookie Monster problem solver.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", parents=[fmt, budget], help="exact Cookie Monster number")
    sp.add_argument("instance", help="comma-separated jar values or @file")
    sp.add_argument("--oracle", action="store_true", help="use breadth-first search over states")
    sp.add_argument("--max-states", type=int, default=exact.DEFAULT_BFS_STATES)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("heuristic", parents=[fmt], help="run EMJA, TCA or BA")
    sp.add_argument("instance")
    sp.add_argument("--alg", choices=heuristics.ALGORITHMS, required=True)
    sp.set_defaults(func=cmd_heuristic)

    sp = sub.add_parser("bounds", parents=[fmt], help="closed-form bounds and predicates")
    sp.add_argument("instance")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("seq", parents=[fmt, budget], help="n-nacci sets and (k, m) constructions")
    which = sp.add_mutually_exclusive_group(required=True)
    which.add_argument("--nacci", type=int, metavar="N")
    which.add_argument("--construct", metavar="K,M")
    sp.add_argument("--k", type=int)
    sp.add_argument("--solve", action="store_true", help="also run the exact solver")
    sp.set_defaults(func=cmd_seq)

    sp = sub.add_parser("ratio", parents=[fmt], help="sequence whose CM(S_k)/k tends to r")
    sp.add_argument("--r", required=True, help="target ratio, p/q for exact arithmetic")
    sp.add_argument("--terms", type=int, required=True)
    sp.add_argument("--plot", metavar="FILE", help="also write a trajectory figure")
    sp.set_defaults(func=cmd_ratio)

    sp = sub.add_parser("bench", parents=[fmt, budget], help="heuristics against the exact solver")
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--max-k", type=int, default=6)
    sp.add_argument("--max-value", type=int, default=40)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--timing", action="store_true", help="include wall-clock times (not reproducible)")
    sp.add_argument("--plot", metavar="FILE", help="also write a heuristic-gap histogram")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("verify", parents=[fmt], help="check a plan file produced by solve")
    sp.add_argument("--plan", required=True, metavar="FILE")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.lower is not None or exc.upper is not None:
            print(f"bounds: {exc.lower} <= CM <= {exc.upper}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point ``subelect``.

Every analysis command prints one JSON report to stdout. Exit codes:
0 for ``ok`` and ``not_found``, 2 for unreadable input, 3 for invalid
sizes or specs, 4 when an enumeration or the solver runs out of budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import statistics
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

from . import antagonism, clones, identity, ilp
from .core import Election, format_election, read_election
from .errors import BudgetExceeded, InvalidSpec, ParseError, SizeError
from .generators import CULTURES, CultureSpec, sample, sample_batch

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SIZE = 3
EXIT_BUDGET = 4


@dataclass
class RunReport:
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    result: Any = None
    wall_time_ms: float = 0.0
    status: str = "ok"

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=False)


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(args) -> Election:
    try:
        return read_election(args.file, args.format)
    except ParseError as exc:
        raise _Failure(EXIT_PARSE, str(exc)) from exc
    except OSError as exc:
        raise _Failure(EXIT_PARSE, f"cannot read {args.file}: {exc}") from exc


def _voter_list(text: str) -> list[int]:
    """``v3`` is the third voter (1-based); a bare integer is a 0-based index."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok[0] in "vV":
            out.append(int(tok[1:]) - 1)
        else:
            out.append(int(tok))
    return out


def _label_list(e: Election, text: str) -> list[int]:
    return e.candidate_indices(t.strip() for t in text.split(",") if t.strip())


def _witness(e: Election, w) -> Optional[dict]:
    return None if w is None else w.to_json(e)


def _signature(sig) -> list[list[int]]:
    return [list(p) for p in sig.points]


def _write_lp(path: str, model) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(ilp.export_lp(model))


def _solve_report(e: Election, model, node_budget: int) -> dict:
    sol = ilp.solve(model, node_budget)
    out = {"status": sol.status, "objective": sol.objective_value, "nodes": sol.nodes}
    if sol.status == "optimal":
        out["witness"] = ilp.decode_witness(model, sol).to_json(e)
    elif sol.status == "budget_exceeded":
        raise BudgetExceeded("solver node budget exhausted")
    return out


# -- commands ----------------------------------------------------------------------


def cmd_clones(args) -> RunReport:
    e = _load(args)
    report = RunReport("clones", {"file": args.file, "m_prime": args.m_prime, "n_prime": args.n_prime})
    if args.swap_set:
        cset = _label_list(e, args.swap_set)
        n_prime = args.n_prime or e.n
        dist, chosen = clones.clone_swap_distance(e, cset, n_prime)
        report.inputs["swap_set"] = args.swap_set
        report.result = {"swap_distance": dist, "voters": list(chosen)}
        return report
    if args.count:
        if args.n_prime is None:
            raise _Failure(EXIT_SIZE, "--count needs n'")
        report.result = {"count": str(clones.count_hidden_clones(e, args.m_prime, args.n_prime))}
        return report
    if args.n_prime is None:
        n_prime, w = clones.max_clone(e, args.m_prime)
        report.result = {"n_prime": n_prime, "witness": _witness(e, w)}
        return report
    w = clones.hidden_clones(e, args.m_prime, args.n_prime)
    report.result = {"witness": _witness(e, w)}
    report.status = "ok" if w else "not_found"
    return report


def cmd_identity(args) -> RunReport:
    e = _load(args)
    report = RunReport(
        "identity",
        {"file": args.file, "m_prime": args.m_prime, "n_prime": args.n_prime, "strategy": args.strategy},
    )
    if args.signature:
        report.result = {"signature": _signature(identity.identity_signature(e, args.budget, args.backend))}
        return report
    if args.m_prime is None and not args.candidates:
        raise _Failure(EXIT_SIZE, "m' is required")
    if args.lp_out or args.solve:
        if args.m_prime is None:
            raise _Failure(EXIT_SIZE, "m' is required for the ILP")
        if args.n_prime is None:
            model = ilp.build_max_id(e, args.m_prime)
        else:
            model = ilp.build_hidden_id(e, args.m_prime, args.n_prime)
        report.result = {}
        if args.lp_out:
            _write_lp(args.lp_out, model)
            report.result["lp_out"] = args.lp_out
        if args.solve:
            report.result["solution"] = _solve_report(e, model, args.node_budget)
        return report
    if args.voters:
        voters = _voter_list(args.voters)
        report.inputs["voters"] = voters
        if args.count:
            report.result = {"count": str(identity.count_identity_candidate_subsets(e, voters, args.m_prime))}
            return report
        chain = identity.verify_identity_voters(e, voters, args.m_prime)
        report.result = {"order": None if chain is None else e.labels_of(chain), "voters": voters}
        report.status = "ok" if chain else "not_found"
        return report
    if args.candidates:
        cands = _label_list(e, args.candidates)
        report.inputs["candidates"] = args.candidates
        # with pinned candidates the only size left to give is n'
        n_prime = args.n_prime if args.n_prime is not None else (args.m_prime or 1)
        if args.count:
            report.result = {"count": str(identity.count_identity_voter_subsets(e, cands, n_prime))}
            return report
        found = identity.verify_identity_candidates(e, cands, n_prime)
        if found is None:
            report.result, report.status = {"order": None, "voters": []}, "not_found"
        else:
            report.result = {"order": e.labels_of(found[0]), "voters": found[1]}
        return report
    if args.count:
        if args.n_prime is None:
            raise _Failure(EXIT_SIZE, "--count needs n'")
        report.result = {
            "count": str(identity.count_hidden_id(e, args.m_prime, args.n_prime, args.strategy, args.budget))
        }
        return report
    if args.n_prime is None:
        n_prime, w = identity.max_id(e, args.m_prime, args.budget, args.backend, args.node_budget)
        report.result = {"n_prime": n_prime, "witness": _witness(e, w)}
        return report
    w = identity.hidden_id(
        e,
        args.m_prime,
        args.n_prime,
        args.strategy,
        args.budget,
        ilp_fallback=args.backend == "internal",
        node_budget=args.node_budget,
    )
    report.result = {"witness": _witness(e, w)}
    report.status = "ok" if w else "not_found"
    return report


def cmd_antagonism(args) -> RunReport:
    e = _load(args)
    report = RunReport(
        "antagonism",
        {"file": args.file, "m_prime": args.m_prime, "n_prime": args.n_prime, "variant": args.variant},
    )
    if args.signature:
        report.result = {"signature": _signature(antagonism.antagonism_signature(e, args.budget, args.backend))}
        return report
    if args.m_prime is None:
        raise _Failure(EXIT_SIZE, "m' is required")
    if args.lp_out or args.solve:
        if args.n_prime is None:
            model = ilp.build_max_an(e, args.m_prime)
        else:
            model = ilp.build_hidden_an(e, args.m_prime, args.n_prime)
        report.result = {}
        if args.lp_out:
            _write_lp(args.lp_out, model)
            report.result["lp_out"] = args.lp_out
        if args.solve:
            report.result["solution"] = _solve_report(e, model, args.node_budget)
        return report
    if args.voters:
        voters = _voter_list(args.voters)
        report.inputs["voters"] = voters
        w = antagonism.verify_antagonism_voters(e, voters, args.m_prime)
        report.result = {"witness": _witness(e, w)}
        report.status = "ok" if w else "not_found"
        return report
    if args.n_prime is None:
        score, w = antagonism.max_an(e, args.m_prime, args.variant, args.budget, args.backend, args.node_budget)
        report.result = {"score": score, "witness": _witness(e, w)}
        return report
    w = antagonism.hidden_an(
        e,
        args.m_prime,
        args.n_prime,
        args.strategy,
        args.budget,
        ilp_fallback=args.backend == "internal",
        node_budget=args.node_budget,
    )
    report.result = {"witness": _witness(e, w)}
    report.status = "ok" if w else "not_found"
    return report


def curve_values(e: Election, kind: str, budget: int = identity.DEFAULT_BUDGET) -> list[tuple[int, int]]:
    """``(m', value)`` for every ``m'``: MaxClone, Max-ID or rigid Max-AN."""
    rows = []
    for mp in range(1, e.m + 1):
        if kind == "clone":
            value = clones.max_clone(e, mp)[0]
        elif kind == "id":
            value = identity.max_id(e, mp, budget)[0]
        else:
            value = antagonism.max_an(e, mp, "rigid", budget)[0]
        rows.append((mp, value))
    return rows


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_curve(args) -> RunReport:
    e = _load(args)
    rows = curve_values(e, args.kind, args.budget)
    text = _csv_text(["m_prime", "value"], rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return RunReport(
        "curve",
        {"file": args.file, "kind": args.kind, "out": args.out},
        {"rows": [list(r) for r in rows]},
    )


def _parse_params(pairs) -> dict[str, Any]:
    params: dict[str, Any] = {}
    for item in pairs or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise _Failure(EXIT_SIZE, f"--param expects k=v, got {item!r}")
        try:
            params[key] = int(value)
        except ValueError:
            try:
                params[key] = float(value)
            except ValueError:
                params[key] = value
    return params


def _spec(args) -> CultureSpec:
    spec = CultureSpec(args.culture, args.m, args.n, args.seed, _parse_params(args.param))
    spec.validate()
    return spec


def cmd_generate(args) -> RunReport:
    spec = _spec(args)
    e = sample(spec)
    text = format_election(e)
    inputs = {"culture": spec.kind, "m": spec.m, "n": spec.n, "seed": spec.seed, "params": spec.params}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return RunReport("generate", inputs, {"out": args.out})
    sys.stdout.write(text)
    return None


METRICS = {
    "maxclone2": lambda e: clones.max_clone(e, 2)[0],
    "maxid5": lambda e: identity.max_id(e, 5)[0],
    "maxan5": lambda e: antagonism.max_an(e, 5, "rigid")[0],
}


def batch_values(spec: CultureSpec, repeat: int, metric: str) -> list[int]:
    fn = METRICS[metric]
    return [fn(e) for e in sample_batch(spec, repeat)]


def cmd_batch_stats(args) -> RunReport:
    spec = _spec(args)
    values = batch_values(spec, args.repeat, args.metric)
    mean = statistics.fmean(values) if values else None
    std = statistics.pstdev(values) if values else None
    if args.out:
        rows = [(k, v) for k, v in enumerate(values)]
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(_csv_text(["sample", "value"], rows))
    return RunReport(
        "batch-stats",
        {"culture": spec.kind, "m": spec.m, "n": spec.n, "seed": spec.seed, "repeat": args.repeat, "metric": args.metric},
        {"values": values, "mean": mean, "std": std},
    )


# -- parser --------------------------------------------------------------------------


def _add_file(p):
    p.add_argument("file")
    p.add_argument("--format", choices=("profile", "preflib-soc"), default="profile")


def _add_search(p):
    p.add_argument("--strategy", choices=identity.STRATEGIES, default="auto")
    p.add_argument("--budget", type=int, default=identity.DEFAULT_BUDGET, help="max enumerated subsets")
    p.add_argument("--backend", choices=("internal", "none"), default="internal")
    p.add_argument("--node-budget", type=int, default=ilp.DEFAULT_NODE_BUDGET)
    p.add_argument("--signature", action="store_true")
    p.add_argument("--lp-out", metavar="PATH")
    p.add_argument("--solve", action="store_true", help="solve the 0-1 model with the internal solver")


def _add_spec(p, seed_required=True):
    p.add_argument("--culture", required=True, choices=CULTURES)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=seed_required)
    p.add_argument("--param", action="append", metavar="K=V")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subelect", description="Find hidden consistent subelections.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("clones", help="clone sets shared by many voters")
    _add_file(p)
    p.add_argument("m_prime", type=int)
    p.add_argument("n_prime", type=int, nargs="?")
    p.add_argument("--count", action="store_true")
    p.add_argument("--swap-set", metavar="LABELS")
    p.set_defaults(func=cmd_clones)

    p = sub.add_parser("identity", help="identity subelections")
    _add_file(p)
    p.add_argument("m_prime", type=int, nargs="?")
    p.add_argument("n_prime", type=int, nargs="?")
    p.add_argument("--voters", metavar="LIST")
    p.add_argument("--candidates", metavar="LABELS")
    p.add_argument("--count", action="store_true")
    _add_search(p)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("antagonism", help="antagonism subelections")
    _add_file(p)
    p.add_argument("m_prime", type=int, nargs="?")
    p.add_argument("n_prime", type=int, nargs="?")
    p.add_argument("--voters", metavar="LIST")
    p.add_argument("--variant", choices=antagonism.VARIANTS, default="rigid")
    _add_search(p)
    p.set_defaults(func=cmd_antagonism)

    p = sub.add_parser("curve", help="Max* value for every number of candidates")
    _add_file(p)
    p.add_argument("--kind", choices=("clone", "id", "an"), required=True)
    p.add_argument("--out", metavar="CSV")
    p.add_argument("--budget", type=int, default=identity.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("generate", help="sample an election from a statistical culture")
    _add_spec(p)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("batch-stats", help="per-sample metric values with mean and std")
    _add_spec(p)
    p.add_argument("--repeat", type=int, default=20)
    p.add_argument("--metric", choices=tuple(METRICS), required=True)
    p.add_argument("--out", metavar="CSV")
    p.set_defaults(func=cmd_batch_stats)
    return parser


def _place_sizes(parser, args, extra) -> None:
    """Accept size positionals given after options, e.g. ``--voters v1,v2 4``."""
    for tok in extra:
        slot = next((k for k in ("m_prime", "n_prime") if hasattr(args, k) and getattr(args, k) is None), None)
        try:
            value = int(tok)
        except ValueError:
            slot = None
        if slot is None:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        setattr(args, slot, value)


def main(argv=None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    _place_sizes(parser, args, extra)
    start = time.perf_counter()
    code = EXIT_OK
    try:
        report = args.func(args)
    except _Failure as exc:
        print(f"subelect: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"subelect: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SizeError, InvalidSpec) as exc:
        print(f"subelect: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except BudgetExceeded as exc:
        report = RunReport(args.command, {}, None, status="budget_exceeded")
        print(f"subelect: {exc}", file=sys.stderr)
        code = EXIT_BUDGET
    if report is not None:
        report.wall_time_ms = round((time.perf_counter() - start) * 1000, 3)
        print(report.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())

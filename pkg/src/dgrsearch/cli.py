"""Command-line front end: configure experiments, run them in parallel with
deterministic per-run seeding, and emit records and sweep tables.

Subcommands: simulate, sweep, landscape, catalog, null-model. Flags beat
config-file keys, which beat defaults; the config file is a flat
``key = value`` text file whose keys mirror the long flag names.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from types import SimpleNamespace
from typing import IO

from .engines import FACT10, SearchParams, run_many
from .hints import catalog
from .landscape import enumerate_minima
from .records import make_record, write_csv, write_json
from .rng import RNG_NAME
from .stats import null_model_phi, phi_from_records, summary_from_records

SWEEP_ROW_FIELDS = ("axis", "value", "strategy", "M", "p", "B", "runs",
                    "mean_C", "stderr_C", "phi", "censored")
NULL_ROW_FIELDS = ("B", "runs", "selections", "correct", "phi", "phi_pooled",
                   "phi_null", "censored")
CATALOG_ROW_FIELDS = ("index", "column", "epsilon", "hint", "correct")


def _parse_number_list(text: str, conv) -> list:
    """Comma-separated values; ``a..b`` expands to the inclusive int range."""
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            values.extend(conv(v) for v in range(int(lo), int(hi) + 1))
        else:
            values.append(conv(part))
    if not values:
        raise ValueError(f"empty value list: {text!r}")
    return values


def _load_config(path: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            entries[key.strip().replace("-", "_")] = value.strip()
    return entries


def _resolve(args: argparse.Namespace, options: dict) -> SimpleNamespace:
    """Merge CLI flags over config-file keys over defaults."""
    config = _load_config(args.config) if getattr(args, "config", None) else {}
    values = {}
    for name, (conv, default) in options.items():
        cli_value = getattr(args, name, None)
        if cli_value is not None:
            values[name] = cli_value
        elif name in config:
            values[name] = conv(config[name])
        else:
            values[name] = default
    return SimpleNamespace(**values)


_RUN_OPTIONS = {
    "strategy": (str, None),
    "agents": (int, 1),
    "imitation_prob": (float, 0.0),
    "board_size": (int, None),
    "runs": (int, 1000),
    "seed": (int, 0),
    "threads": (int, None),
    "max_cost": (float, None),
    "output": (str, None),
    "format": (str, "csv"),
}


def _build_params(ns: SimpleNamespace) -> SearchParams:
    if ns.strategy is None:
        raise ValueError("--strategy is required (independent, imitative or blackboard)")
    if ns.strategy == "blackboard":
        board = ns.board_size if ns.board_size is not None else 351
    else:
        board = 0
    max_time = None
    if ns.max_cost is not None:
        if ns.max_cost <= 0:
            raise ValueError("--max-cost must be positive")
        max_time = ns.max_cost * FACT10 / ns.agents
    params = SearchParams(
        strategy=ns.strategy,
        M=ns.agents,
        p=ns.imitation_prob if ns.strategy == "imitative" else 0.0,
        B=board,
        max_time=max_time,
        seed=ns.seed,
    )
    params.validate()
    return params


def _threads(ns: SimpleNamespace) -> int:
    return ns.threads if ns.threads is not None else (os.cpu_count() or 1)


def _emit(rows: list[dict], fmt: str, fields: tuple[str, ...], path: str | None) -> None:
    def write(stream: IO[str]) -> None:
        if fmt == "json":
            write_json(stream, rows)
        else:
            write_csv(stream, rows, fields)

    if path is None:
        write(sys.stdout)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            write(fh)


def cmd_simulate(args: argparse.Namespace) -> int:
    ns = _resolve(args, _RUN_OPTIONS)
    params = _build_params(ns)
    outcomes = run_many(params, ns.runs, threads=_threads(ns))
    records = [make_record(i, params, o) for i, o in enumerate(outcomes)]
    summary = summary_from_records(records)
    summary["seed"] = params.seed
    summary["rng"] = RNG_NAME
    from .records import RECORD_FIELDS

    _emit(records, ns.format, RECORD_FIELDS, ns.output)
    summary_text = json.dumps(summary, indent=2)
    print(summary_text, file=sys.stdout if ns.output else sys.stderr)
    return 0


_SWEEP_OPTIONS = dict(_RUN_OPTIONS)
_SWEEP_OPTIONS.update({
    "sweep_p": (lambda s: _parse_number_list(s, float), None),
    "sweep_agents": (lambda s: _parse_number_list(s, int), None),
    "sweep_board_size": (lambda s: _parse_number_list(s, int), None),
})


def cmd_sweep(args: argparse.Namespace) -> int:
    ns = _resolve(args, _SWEEP_OPTIONS)
    axes = [(name, values) for name, values in (
        ("p", ns.sweep_p), ("M", ns.sweep_agents), ("B", ns.sweep_board_size),
    ) if values is not None]
    if len(axes) != 1:
        raise ValueError("sweep needs exactly one of --sweep-p, --sweep-agents, --sweep-board-size")
    axis, values = axes[0]
    if ns.strategy is None:
        ns.strategy = {"p": "imitative", "B": "blackboard"}.get(axis)
        if ns.strategy is None:
            raise ValueError("--strategy is required when sweeping over M")
    rows = []
    for i, value in enumerate(values):
        point = SimpleNamespace(**vars(ns))
        if axis == "p":
            point.imitation_prob = value
        elif axis == "M":
            point.agents = value
        else:
            point.board_size = value
        params = _build_params(point)
        outcomes = run_many(params, ns.runs, threads=_threads(ns),
                            run_index_base=i * ns.runs)
        records = [make_record(i * ns.runs + r, params, o) for r, o in enumerate(outcomes)]
        summary = summary_from_records(records)
        rows.append({
            "axis": axis,
            "value": value,
            "strategy": params.strategy,
            "M": params.M,
            "p": params.p,
            "B": params.B,
            "runs": ns.runs,
            "mean_C": summary["mean_C"],
            "stderr_C": summary["stderr_C"],
            "phi": summary["phi"],
            "censored": summary["censored"],
        })
    _emit(rows, ns.format, SWEEP_ROW_FIELDS, ns.output)
    return 0


_NULL_OPTIONS = {
    "board_sizes": (lambda s: _parse_number_list(s, int), None),
    "agents": (int, 1),
    "runs": (int, 100),
    "seed": (int, 0),
    "threads": (int, None),
    "max_cost": (float, None),
    "output": (str, None),
    "format": (str, "csv"),
}


def cmd_null_model(args: argparse.Namespace) -> int:
    ns = _resolve(args, _NULL_OPTIONS)
    if ns.board_sizes is None:
        raise ValueError("--board-sizes is required")
    rows = []
    for i, board in enumerate(ns.board_sizes):
        sub = SimpleNamespace(strategy="blackboard", agents=ns.agents,
                              imitation_prob=0.0, board_size=board, seed=ns.seed,
                              max_cost=ns.max_cost)
        params = _build_params(sub)
        outcomes = run_many(params, ns.runs, threads=_threads(ns),
                            run_index_base=i * ns.runs, null_model=True)
        try:
            phi = phi_from_records(
                [{"hint_selections": o.hint_selections,
                  "correct_hint_selections": o.correct_hint_selections}
                 for o in outcomes])
            phi_mean, phi_pooled = phi.phi, phi.pooled_phi
            selections, correct = phi.selections, phi.correct
        except ValueError:
            phi_mean = phi_pooled = None
            selections = correct = 0
        rows.append({
            "B": board,
            "runs": ns.runs,
            "selections": selections,
            "correct": correct,
            "phi": phi_mean,
            "phi_pooled": phi_pooled,
            "phi_null": null_model_phi(board),
            "censored": sum(1 for o in outcomes if not o.solved),
        })
    _emit(rows, ns.format, NULL_ROW_FIELDS, ns.output)
    return 0


_LANDSCAPE_OPTIONS = {
    "threads": (int, None),
    "output": (str, None),
}


def cmd_landscape(args: argparse.Namespace) -> int:
    ns = _resolve(args, _LANDSCAPE_OPTIONS)
    report = enumerate_minima(threads=_threads(ns))
    text = json.dumps(report.to_json_dict(), indent=2) + "\n"
    if ns.output is None:
        sys.stdout.write(text)
    else:
        with open(ns.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return 0


_CATALOG_OPTIONS = {
    "output": (str, None),
    "format": (str, "csv"),
}


def cmd_catalog(args: argparse.Namespace) -> int:
    ns = _resolve(args, _CATALOG_OPTIONS)
    cat = catalog()
    rows = [{
        "index": i,
        "column": h.column,
        "epsilon": h.epsilon,
        "hint": h.serialize(),
        "correct": bool(flag),
    } for i, (h, flag) in enumerate(zip(cat.hints, cat.correct_flags))]
    _emit(rows, ns.format, CATALOG_ROW_FIELDS, ns.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dgr",
        description="Collective search experiments on DONALD + GERALD = ROBERT",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, *, runs: bool = True) -> None:
        if runs:
            p.add_argument("--runs", type=int, help="independent runs to execute")
            p.add_argument("--seed", type=int, help="master seed (64-bit)")
            p.add_argument("--max-cost", dest="max_cost", type=float,
                           help="censor runs once C reaches this value")
        p.add_argument("--threads", type=int, help="worker threads")
        p.add_argument("--output", help="output file (default: stdout)")
        p.add_argument("--config", help="flat key = value config file")

    sim = sub.add_parser("simulate", help="run one configuration many times")
    sim.add_argument("--strategy", choices=("independent", "imitative", "blackboard"))
    sim.add_argument("--agents", type=int, help="group size M")
    sim.add_argument("--imitation-prob", dest="imitation_prob", type=float,
                     help="imitation probability p (imitative only)")
    sim.add_argument("--board-size", dest="board_size", type=int,
                     help="board capacity B (blackboard only; default 351)")
    add_common(sim)
    sim.add_argument("--format", choices=("csv", "json"), help="record format")
    sim.set_defaults(func=cmd_simulate)

    swp = sub.add_parser("sweep", help="run a one-axis parameter sweep")
    swp.add_argument("--strategy", choices=("independent", "imitative", "blackboard"))
    swp.add_argument("--agents", type=int)
    swp.add_argument("--imitation-prob", dest="imitation_prob", type=float)
    swp.add_argument("--board-size", dest="board_size", type=int)
    swp.add_argument("--sweep-p", dest="sweep_p",
                     type=lambda s: _parse_number_list(s, float),
                     help="comma list of p values")
    swp.add_argument("--sweep-agents", dest="sweep_agents",
                     type=lambda s: _parse_number_list(s, int),
                     help="comma list of group sizes (a..b ranges allowed)")
    swp.add_argument("--sweep-board-size", dest="sweep_board_size",
                     type=lambda s: _parse_number_list(s, int),
                     help="comma list of board sizes (a..b ranges allowed)")
    add_common(swp)
    swp.add_argument("--format", choices=("csv", "json"))
    swp.set_defaults(func=cmd_sweep)

    nul = sub.add_parser("null-model", help="frozen random board, simulated vs analytic phi")
    nul.add_argument("--board-sizes", dest="board_sizes",
                     type=lambda s: _parse_number_list(s, int),
                     help="comma list of board sizes (a..b ranges allowed)")
    nul.add_argument("--agents", type=int)
    add_common(nul)
    nul.add_argument("--format", choices=("csv", "json"))
    nul.set_defaults(func=cmd_null_model)

    lnd = sub.add_parser("landscape", help="exhaustive minima census (JSON report)")
    add_common(lnd, runs=False)
    lnd.set_defaults(func=cmd_landscape)

    cat = sub.add_parser("catalog", help="emit the full hint catalog")
    cat.add_argument("--output")
    cat.add_argument("--config")
    cat.add_argument("--format", choices=("csv", "json"))
    cat.set_defaults(func=cmd_catalog)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

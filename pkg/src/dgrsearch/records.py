"""Per-run record schema and its CSV/JSON serialization.

One record per run, fixed field order; every CSV row round-trips through
the JSON form losslessly (booleans are written as lowercase true/false,
floats with full repr precision).
"""

from __future__ import annotations

import csv
import json
from typing import IO, Iterable, Mapping

from .engines import SearchOutcome, SearchParams

RECORD_FIELDS = (
    "run_id",
    "strategy",
    "M",
    "p",
    "B",
    "seed",
    "t_star",
    "C",
    "solved",
    "updates",
    "hint_selections",
    "correct_hint_selections",
)

_PARSERS = {
    "run_id": int,
    "strategy": str,
    "M": int,
    "p": float,
    "B": int,
    "seed": int,
    "t_star": float,
    "C": float,
    "solved": lambda s: {"true": True, "false": False}[s],
    "updates": int,
    "hint_selections": int,
    "correct_hint_selections": int,
}


def make_record(run_id: int, params: SearchParams, outcome: SearchOutcome) -> dict:
    return {
        "run_id": run_id,
        "strategy": params.strategy,
        "M": params.M,
        "p": params.p,
        "B": params.B,
        "seed": params.seed,
        "t_star": outcome.t_star,
        "C": outcome.C,
        "solved": outcome.solved,
        "updates": outcome.updates,
        "hint_selections": outcome.hint_selections,
        "correct_hint_selections": outcome.correct_hint_selections,
    }


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def write_csv(stream: IO[str], records: Iterable[Mapping], fields: tuple[str, ...] = RECORD_FIELDS) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(fields)
    for rec in records:
        writer.writerow([_cell(rec[f]) for f in fields])


def write_json(stream: IO[str], records: Iterable[Mapping]) -> None:
    json.dump(list(records), stream, indent=2)
    stream.write("\n")


def read_csv(stream: IO[str], parsers: Mapping | None = None) -> list[dict]:
    parsers = parsers if parsers is not None else _PARSERS
    reader = csv.DictReader(stream)
    out = []
    for row in reader:
        out.append({k: parsers[k](v) if k in parsers else v for k, v in row.items()})
    return out


def read_json(stream: IO[str]) -> list[dict]:
    return json.load(stream)

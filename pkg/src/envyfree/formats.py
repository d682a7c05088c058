"""JSON/CSV file formats for instances and outcomes.

Field order is fixed and floats use Python's shortest round-trip repr, so
the same outcome always serializes to the same bytes.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .market_core import Assignment, Instance, MarketError, Outcome, validate_instance


class FormatError(MarketError):
    pass


def instance_to_dict(inst: Instance) -> dict:
    return {"budgets": list(inst.budgets), "qualities": list(inst.qualities)}


def instance_from_dict(d) -> Instance:
    if not isinstance(d, dict) or "budgets" not in d or "qualities" not in d:
        raise FormatError('instance JSON needs "budgets" and "qualities"')
    budgets, qualities = d["budgets"], d["qualities"]
    for name, values in (("budgets", budgets), ("qualities", qualities)):
        if not isinstance(values, list) or not all(
                isinstance(x, (int, float)) and not isinstance(x, bool) for x in values):
            raise FormatError(f'"{name}" must be a list of numbers')
    return validate_instance(budgets, qualities)


def instance_from_csv(text: str) -> Instance:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [c.strip() for c in rows[0]] != ["budget", "quality"]:
        raise FormatError("CSV instance needs the header row 'budget,quality'")
    budgets, qualities = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 2:
            raise FormatError(f"line {lineno}: expected 2 columns, got {len(row)}")
        try:
            budgets.append(float(row[0]))
            qualities.append(float(row[1]))
        except ValueError as e:
            raise FormatError(f"line {lineno}: {e}") from None
    return validate_instance(budgets, qualities)


def instance_to_csv(inst: Instance) -> str:
    lines = ["budget,quality"]
    lines += [f"{b!r},{q!r}" for b, q in zip(inst.budgets, inst.qualities)]
    return "\n".join(lines) + "\n"


def read_instance(path) -> Instance:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        return instance_from_csv(text)
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: {e}") from None
    return instance_from_dict(d)


def outcome_to_dict(out: Outcome) -> dict:
    return {
        "assignment": list(out.assignment.item_of),
        "prices": list(out.prices),
        "revenue": out.revenue,
        "surpluses": list(out.surpluses),
    }


def outcome_from_dict(d) -> Outcome:
    try:
        assignment = [int(j) for j in d["assignment"]]
        prices = tuple(float(p) for p in d["prices"])
        revenue = float(d["revenue"])
        surpluses = tuple(float(s) for s in d.get("surpluses", []))
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"malformed outcome: {e!r}") from None
    return Outcome(Assignment(tuple(assignment)), prices, revenue, surpluses)


def read_outcome(path) -> Outcome:
    try:
        d = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: {e}") from None
    return outcome_from_dict(d)


def dumps(d: dict) -> str:
    return json.dumps(d) + "\n"

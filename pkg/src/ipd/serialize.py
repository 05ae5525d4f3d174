"""JSON documents for priors, structures, and mechanisms.

Numbers are written as JSON numbers for floats and as "numerator/denominator"
strings for exact rationals, so a closed-form solution survives a write/read
round trip without precision loss. Readers accept numbers, rational strings,
and decimal strings (decimal strings parse exactly).

Grid rows are stored in an explicit secret_order list rather than relying on
the embedded prior's ordering, so documents stay readable after manual edits
that reorder secrets.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ValidationError
from .model import (
    InfoStructure,
    Mechanism,
    Prior,
    load_prior,
    load_prior_joint,
)
from .numeric import Scalar


def encode_number(x: Scalar):
    if isinstance(x, bool):
        raise ValidationError("booleans are not probabilities")
    if isinstance(x, (int, float)):
        return x
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return f"{x.numerator}/{x.denominator}"
    raise ValidationError(f"cannot encode a {type(x).__name__} as a number")


def decode_number(value) -> Scalar:
    if isinstance(value, bool):
        raise ValidationError("booleans are not probabilities")
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"cannot parse number {value!r}") from None
    raise ValidationError(f"expected a number, got {type(value).__name__}")


def _rows(obj, key: str) -> list:
    rows = obj.get(key)
    if not isinstance(rows, list) or not rows:
        raise ValidationError(f"{key!r} must be a non-empty list")
    for row in rows:
        if not isinstance(row, dict):
            raise ValidationError(f"each {key!r} entry must be an object")
    return rows


def encode_prior(prior: Prior) -> dict:
    return {
        "secrets": [
            {
                "name": prior.secrets[c],
                "p": encode_number(prior.p[c]),
                "q_y1": encode_number(prior.q[c]),
            }
            for c in prior.user_order()
        ]
    }


def decode_prior(obj) -> Prior:
    if not isinstance(obj, dict):
        raise ValidationError("prior document must be a JSON object")
    if "joint" in obj:
        rows = _rows(obj, "joint")
        try:
            table = [
                (decode_number(row["p_y1"]), decode_number(row["p_y0"]))
                for row in rows
            ]
            labels = [row["name"] for row in rows]
        except KeyError as exc:
            raise ValidationError(f"joint entry missing key {exc}") from None
        return load_prior_joint(table, labels)
    if "secrets" in obj:
        rows = _rows(obj, "secrets")
        try:
            pairs = [
                (decode_number(row["p"]), decode_number(row["q_y1"]))
                for row in rows
            ]
            labels = [row["name"] for row in rows]
        except KeyError as exc:
            raise ValidationError(f"secret entry missing key {exc}") from None
        return load_prior(pairs, labels)
    raise ValidationError("prior document needs a 'secrets' or 'joint' list")


def _canonical_positions(prior: Prior, order) -> list[int]:
    if not isinstance(order, list) or sorted(order) != sorted(prior.secrets):
        raise ValidationError(
            "secret_order must list exactly the prior's secret names"
        )
    return [order.index(name) for name in prior.secrets]


def _grid(obj, key: str, rows: int) -> list[list]:
    grid = obj.get(key)
    if not isinstance(grid, list) or len(grid) != rows:
        raise ValidationError(f"{key!r} must have one row per secret")
    return grid


def encode_structure(st: InfoStructure) -> dict:
    return {
        "prior": encode_prior(st.prior),
        "secret_order": list(st.prior.secrets),
        "signals": list(st.signals),
        "widths": [[encode_number(x) for x in row] for row in st.widths],
        "cells": [[encode_number(x) for x in row] for row in st.cells],
    }


def decode_structure(obj) -> InfoStructure:
    if not isinstance(obj, dict):
        raise ValidationError("structure document must be a JSON object")
    prior = decode_prior(obj.get("prior"))
    positions = _canonical_positions(prior, obj.get("secret_order"))
    signals = obj.get("signals")
    if not isinstance(signals, list):
        raise ValidationError("'signals' must be a list of labels")
    widths = _grid(obj, "widths", prior.n)
    cells = _grid(obj, "cells", prior.n)
    return InfoStructure(
        prior=prior,
        signals=tuple(signals),
        widths=tuple(
            tuple(decode_number(x) for x in widths[pos]) for pos in positions
        ),
        cells=tuple(
            tuple(decode_number(x) for x in cells[pos]) for pos in positions
        ),
    )


def encode_mechanism(m: Mechanism) -> dict:
    return {
        "prior": encode_prior(m.prior),
        "secret_order": list(m.prior.secrets),
        "signals": list(m.signals),
        "kernel": [
            [[encode_number(x) for x in row] for row in block]
            for block in m.kernel
        ],
    }


def decode_mechanism(obj) -> Mechanism:
    if not isinstance(obj, dict):
        raise ValidationError("mechanism document must be a JSON object")
    prior = decode_prior(obj.get("prior"))
    positions = _canonical_positions(prior, obj.get("secret_order"))
    signals = obj.get("signals")
    if not isinstance(signals, list):
        raise ValidationError("'signals' must be a list of labels")
    kernel = _grid(obj, "kernel", prior.n)
    decoded = []
    for pos in positions:
        block = kernel[pos]
        if not isinstance(block, list) or len(block) != 2:
            raise ValidationError("each kernel entry needs rows for y=0 and y=1")
        decoded.append(
            tuple(tuple(decode_number(x) for x in row) for row in block)
        )
    return Mechanism(prior=prior, signals=tuple(signals), kernel=tuple(decoded))


def decode_rewards(obj) -> tuple[tuple[Scalar, ...], ...]:
    """Parse a reward matrix document: two rows (y=0, y=1) of numbers."""
    if isinstance(obj, dict):
        obj = obj.get("rewards")
    if not isinstance(obj, list) or len(obj) != 2:
        raise ValidationError(
            "rewards document must be two rows of numbers (y=0, then y=1)"
        )
    rows = []
    for row in obj:
        if not isinstance(row, list):
            raise ValidationError("each rewards row must be a list of numbers")
        rows.append(tuple(decode_number(x) for x in row))
    return tuple(rows)


def read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON in {path}: {exc}") from None


def write_json(path: str, payload) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")

"""JSON encoding with canonical rational strings.

Every rational is written as a lowest-terms ``"p/q"`` string (``"1/1"``,
never ``"1"``) and documents are dumped with sorted keys, so identical
inputs give byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ValidationError


def frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"not a rational: {text!r}") from None


def interval_pair(iv) -> list:
    return [frac(iv.lo), frac(iv.hi)]


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path):
    import sys
    try:
        if path in (None, "-"):
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON in {path}: {exc}") from None
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def family_to_dict(family) -> dict:
    space = family.space
    return {
        "A": space.ordered(family.a),
        "B": space.ordered(family.b),
        "levels": [[frac(q), space.ordered(u)] for q, u in family.items()],
        "depth_achieved": family.depth,
        "depth_requested": family.requested_depth,
        "stabilized": family.stabilized,
        "notes": list(family.notes),
    }


def table_to_dict(table) -> dict:
    return {
        "points": list(table.points),
        "d": [[frac(x) for x in row] for row in table.d],
        "verdict": table.verdict,
        "classes": [list(c) for c in table.classes],
        "notes": list(table.notes),
    }


def urysohn_to_dict(family, f, table) -> dict:
    doc = table_to_dict(table)
    doc["f"] = {p: frac(v) for p, v in f.values.items()}
    doc["family"] = family_to_dict(family)
    return doc


def case1_to_dict(result) -> dict:
    doc = table_to_dict(result.table)
    doc.update({
        "embedding": {e: frac(v) for e, v in result.embedding.items()},
        "canonical": {e: list(a) for e, a in result.canonical.items()},
        "shared_leaves": [{"address": list(a), "elements": list(es)}
                          for a, es in result.shared_leaves],
        "singleton_leaves": result.singleton_leaves,
        "base": interval_pair(result.base),
        "strategy": result.strategy,
    })
    return doc


def case2_to_dict(table) -> dict:
    return {
        "points": list(table.points),
        "d_min": [[frac(x.d_min) for x in row] for row in table.entries],
        "d_max": [[frac(x.d_max) for x in row] for row in table.entries],
        "d_mid_approx": [[float(x.midpoint) for x in row] for row in table.entries],
        "intervals": {e: interval_pair(iv) for e, iv in table.intervals.items()},
        "addresses": {e: list(a) for e, a in table.addresses.items()},
        "m": table.m,
        "R": table.lower_bound,
        "base": interval_pair(table.base),
        "strategy": table.strategy,
    }

"""Canonical JSON encoding, digests, and file loaders.

All reports are serialized with sorted keys and compact separators so that a
fixed seed yields byte-identical output.  Rationals are encoded as "p/q"
strings (plain "p" for integers), +infinity as "inf", field elements as
coordinate arrays over the fixed quadratic basis.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any

from .characters import Character
from .errors import ValidationError
from .groupring import RingElement
from .novikov import NovikovElement, NovikovMatrix
from .presentation import GroupPresentation
from .valuefield import PLUS_INFINITY, DEFAULT_FIELD, FieldElement, Infinity, ValueField
from .words import Word

SCHEMA_VERSION = 1


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj: Any) -> str:
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def frac_to_str(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def frac_from_str(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rational literal {s!r}") from exc


def value_to_json(v: FieldElement | Infinity) -> Any:
    if v is PLUS_INFINITY:
        return "inf"
    return [frac_to_str(c) for c in v.coords]


def value_from_json(data: Any, field: ValueField = DEFAULT_FIELD) -> FieldElement | Infinity:
    if data == "inf":
        return PLUS_INFINITY
    return field.element(tuple(frac_from_str(c) for c in data))


def word_to_json(w: Word) -> list[int]:
    return list(w)


def word_from_json(data: Any) -> Word:
    return tuple(int(x) for x in data)


def character_to_json(c: Character) -> dict:
    coeffs = []
    for i in range(c.field.dimension):
        for col in c.columns:
            coeffs.append(frac_to_str(col[i]))
    return {
        "rank": c.rank,
        "coeffs": coeffs,  # row-major (field dimension) x rank
        "basis_primes": list(c.field.primes),
    }


def character_from_json(data: Any, field: ValueField = DEFAULT_FIELD) -> Character:
    if tuple(data.get("basis_primes", field.primes)) != field.primes:
        raise ValidationError("character uses a different value-field basis")
    rank = int(data["rank"])
    coeffs = [frac_from_str(s) for s in data["coeffs"]]
    if len(coeffs) != rank * field.dimension:
        raise ValidationError("character coefficient block has the wrong size")
    columns = tuple(
        tuple(coeffs[i * rank + j] for i in range(field.dimension)) for j in range(rank)
    )
    return Character(field, columns, data.get("label"))


def ring_to_json(x: RingElement) -> list[dict]:
    return [
        {"word": word_to_json(w), "coeff": frac_to_str(x.terms[w])}
        for w in x.support()
    ]


def ring_from_json(data: Any, group: GroupPresentation) -> RingElement:
    out = RingElement.zero(group)
    for item in data:
        out = out + RingElement.monomial(
            group, word_from_json(item["word"]), frac_from_str(item["coeff"])
        )
    return out


def novikov_to_json(x: NovikovElement) -> dict:
    return {"terms": ring_to_json(x.body), "cutoff": value_to_json(x.cutoff)}


def matrix_to_json(m: NovikovMatrix) -> dict:
    rows, cols = m.shape
    return {
        "rows": rows,
        "cols": cols,
        "cutoff": value_to_json(m.cutoff),
        "entries": [[ring_to_json(m.entry(i, j).body) for j in range(cols)] for i in range(rows)],
    }


def quotient_to_json(table, images, section=None) -> dict:
    out = {"table": [list(row) for row in table], "images": list(images)}
    if section is not None:
        out["section"] = [word_to_json(w) for w in section]
    return out


def load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def load_character(path: str, field: ValueField = DEFAULT_FIELD) -> Character:
    return character_from_json(load_json(path), field)


def parse_inline_character(text: str, field: ValueField = DEFAULT_FIELD) -> Character:
    """Comma-separated rational values, one per abelianization coordinate."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValidationError("empty character specification")
    from .characters import character_from_values

    return character_from_values([frac_from_str(p) for p in parts], field)


def load_quotient_data(path: str) -> tuple[list[list[int]], list[int], list[Word] | None]:
    data = load_json(path)
    table = [[int(e) for e in row] for row in data["table"]]
    images = [int(i) for i in data["images"]]
    section = None
    if "section" in data:
        section = [word_from_json(w) for w in data["section"]]
    return table, images, section


def report_envelope(kind: str, seed: int | None = None, **fields: Any) -> dict:
    from . import __version__

    out = {"schema": SCHEMA_VERSION, "tool": f"fibcert {__version__}", "kind": kind}
    if seed is not None:
        out["seed"] = seed
    out.update(fields)
    return out

"""JSON encoding.

Integers are written as decimal strings so consumers with 64-bit number
types do not truncate them; rationals are ``"p/q"`` strings. Decoders accept
both strings and native JSON integers.
"""
from __future__ import annotations

import json
import re
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from typing import Any

from .errors import InputError
from .lattice import Lattice, LatticeVector, _as_int

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def encode(obj: Any) -> Any:
    """Recursively convert to JSON-ready values with integers as strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, float):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, str):
        return obj
    if isinstance(obj, LatticeVector):
        return [str(c) for c in obj.coords]
    if isinstance(obj, Lattice):
        return encode_lattice(obj)
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    if is_dataclass(obj):
        return encode(asdict(obj))
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(encode(obj), indent=2, sort_keys=False)


def decode_int(x) -> int:
    return _as_int(x)


def decode_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"not a rational number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RATIONAL.match(x):
        try:
            return Fraction(x.replace(" ", ""))
        except ZeroDivisionError:
            raise InputError(f"zero denominator in {x!r}") from None
    raise InputError(f"not a rational number: {x!r}")


def decode_int_list(xs) -> list:
    if not isinstance(xs, list):
        raise InputError("expected a JSON array of integers")
    return [decode_int(x) for x in xs]


def decode_rational_list(xs) -> list:
    if not isinstance(xs, list):
        raise InputError("expected a JSON array of rationals")
    return [decode_rational(x) for x in xs]


def decode_matrix(doc) -> list:
    """Accept ``[[...], ...]`` or an object with a ``matrix``, ``gram`` or ``entries`` key."""
    if isinstance(doc, dict):
        for key in ("matrix", "entries", "gram"):
            if key in doc:
                doc = doc[key]
                break
        else:
            raise InputError("matrix object needs a 'matrix', 'entries' or 'gram' key")
    if not isinstance(doc, list) or not doc or not all(isinstance(r, list) for r in doc):
        raise InputError("matrix must be a nonempty array of arrays")
    rows = [decode_int_list(r) for r in doc]
    if any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
        raise InputError("matrix rows must be nonempty and of equal length")
    return rows


def encode_lattice(lat: Lattice) -> dict:
    out = {"rank": str(lat.rank), "gram": [[str(x) for x in row] for row in lat.gram]}
    if lat.labels is not None:
        out["labels"] = list(lat.labels)
    return out


def decode_lattice(doc) -> Lattice:
    if not isinstance(doc, dict) or "gram" not in doc:
        raise InputError("lattice must be an object with a 'gram' key")
    gram = decode_matrix(doc["gram"])
    if "rank" in doc and decode_int(doc["rank"]) != len(gram):
        raise InputError("'rank' does not match the Gram matrix")
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or not all(isinstance(s, str) for s in labels)):
        raise InputError("'labels' must be an array of strings")
    return Lattice(gram, labels)


def decode_vector(lat: Lattice, doc) -> LatticeVector:
    """A coordinate array, or an object mapping basis labels to coefficients."""
    if isinstance(doc, dict):
        return lat.from_labels(doc)
    return lat.vector(decode_int_list(doc))

"""JSON certificates for every checkable outcome the library produces.

Each certificate is a flat JSON object with a "kind" discriminator; rationals
travel as exact "p/q" strings so nothing is lost to floating point.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .core import Color
from .embed import Embedding, SparsePair
from .errors import ParseError
from .pipeline import Exhausted, MonoCopy, SparseSet
from .skeleton import Skeleton

KINDS = ("embedding", "sparse_pair", "skeleton", "sparse_set", "exhausted", "ramsey_exact")


def rational_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if not isinstance(s, str) or s.count("/") != 1:
        raise ParseError(f"expected a p/q rational string, got {s!r}")
    p, q = s.split("/")
    try:
        return Fraction(int(p), int(q))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}: {exc}") from None


def _color_str(color) -> str | None:
    return None if color is None else ("red" if color is Color.RED else "blue")


def _color_of(value, where: str):
    if value is None:
        return None
    if value == "red":
        return Color.RED
    if value == "blue":
        return Color.BLUE
    raise ParseError(f"{where}: color must be red, blue, or null, got {value!r}")


def certificate_dict(obj, color=None) -> dict:
    """Serializable dict for an Embedding, MonoCopy, SparsePair, Skeleton,
    SparseSet, Exhausted, or (n_star, okc_text) exact-ramsey tuple."""
    if isinstance(obj, MonoCopy):
        return {
            "kind": "embedding",
            "color": _color_str(obj.color),
            "map": list(obj.mapping),
        }
    if isinstance(obj, Embedding):
        d = {"kind": "embedding", "map": list(obj.mapping)}
        if color is not None:
            d["color"] = _color_str(color)
        return d
    if isinstance(obj, SparsePair):
        return {
            "kind": "sparse_pair",
            "A": list(obj.lower),
            "B": list(obj.upper),
            "c": rational_str(obj.c),
            "density": rational_str(obj.density),
        }
    if isinstance(obj, Skeleton):
        return {
            "kind": "skeleton",
            "color": _color_str(color),
            "a": obj.a,
            "b": obj.b,
            "spine": list(obj.spine),
            "blocks": [list(b) for b in obj.blocks],
        }
    if isinstance(obj, SparseSet):
        return {
            "kind": "sparse_set",
            "color": _color_str(obj.color),
            "members": list(obj.members),
            "density": rational_str(obj.density),
            "bound": rational_str(obj.bound),
            "size_target": obj.size_target,
            "met_size_target": obj.met_size_target,
            "alpha": obj.alpha,
            "h1": obj.h1,
            "h2": obj.h2,
        }
    if isinstance(obj, Exhausted):
        return {"kind": "exhausted", "trace": list(obj.trace)}
    if isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[0], int):
        n_star, witness_text = obj
        return {"kind": "ramsey_exact", "n_star": n_star, "witness": witness_text}
    raise TypeError(f"no certificate form for {type(obj).__name__}")


def encode_certificate(obj, color=None) -> str:
    """Deterministic one-line JSON, sorted keys, newline terminated."""
    return json.dumps(certificate_dict(obj, color), sort_keys=True, separators=(",", ":")) + "\n"


def _require(d: dict, key: str, kind: str):
    if key not in d:
        raise ParseError(f"{kind} certificate is missing {key!r}")
    return d[key]


def _int_list(value, where: str) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(isinstance(v, int) for v in value):
        raise ParseError(f"{where} must be a list of integers")
    return tuple(value)


def decode_certificate(text: str):
    """Parse certificate JSON back into library objects.

    Returns (kind, payload) where payload is the matching object: embedding
    gives (Embedding, color or None), skeleton gives (Skeleton, color or
    None), ramsey_exact gives (n_star, witness text), the rest map directly.
    """
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"certificate is not valid JSON: {exc}") from None
    if not isinstance(d, dict):
        raise ParseError("certificate must be a JSON object")
    kind = d.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown certificate kind {kind!r}")

    if kind == "embedding":
        emb = Embedding(_int_list(_require(d, "map", kind), "map"))
        return kind, (emb, _color_of(d.get("color"), kind))
    if kind == "sparse_pair":
        return kind, SparsePair(
            lower=_int_list(_require(d, "A", kind), "A"),
            upper=_int_list(_require(d, "B", kind), "B"),
            c=parse_rational(_require(d, "c", kind)),
            density=parse_rational(_require(d, "density", kind)),
        )
    if kind == "skeleton":
        blocks = _require(d, "blocks", kind)
        if not isinstance(blocks, list):
            raise ParseError("blocks must be a list of lists")
        if not isinstance(d.get("a"), int) or not isinstance(d.get("b"), int):
            raise ParseError("skeleton a and b must be integers")
        skel = Skeleton(
            spine=_int_list(_require(d, "spine", kind), "spine"),
            blocks=tuple(_int_list(b, "block") for b in blocks),
            a=_require(d, "a", kind),
            b=_require(d, "b", kind),
        )
        return kind, (skel, _color_of(d.get("color"), kind))
    if kind == "sparse_set":
        color = _color_of(_require(d, "color", kind), kind)
        if color is None:
            raise ParseError("sparse_set color must be red or blue")
        return kind, SparseSet(
            color=color,
            members=_int_list(_require(d, "members", kind), "members"),
            density=parse_rational(_require(d, "density", kind)),
            bound=parse_rational(_require(d, "bound", kind)),
            size_target=int(d.get("size_target", 1)),
            met_size_target=bool(d.get("met_size_target", True)),
            alpha=float(d.get("alpha", 1.0)),
            h1=int(d.get("h1", 0)),
            h2=int(d.get("h2", 0)),
        )
    if kind == "exhausted":
        trace = _require(d, "trace", kind)
        if not isinstance(trace, list) or not all(isinstance(t, str) for t in trace):
            raise ParseError("trace must be a list of strings")
        return kind, Exhausted(tuple(trace))
    n_star = _require(d, "n_star", kind)
    witness = d.get("witness")
    if n_star is None:
        # the exceeds-maxN form carries no value and no witness
        return kind, (None, None)
    if not isinstance(n_star, int) or n_star < 1:
        raise ParseError("n_star must be a positive integer or null")
    if not isinstance(witness, str):
        raise ParseError("witness must be the coloring text")
    return kind, (n_star, witness)

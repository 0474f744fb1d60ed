"""JSON file formats for simplex families, triangulations, and
extendability certificates.

Three document shapes, all human-auditable and diffable:

* instance files        ``{"d": d, "n": n, "simplices": [[…], …]}``
* triangulation files   ``{"d": d, "n": n, "facets": [[…], …]}``
* certificate files     ``{"verdict": …, "method": …, "witness": …,
                           "stats": {…}}``

Vertex indices are 1-based and every vertex list is strictly
increasing, mirroring the in-memory convention.  Exact rationals are
encoded as ``{"fraction": [numerator, denominator]}`` so nothing is
rounded; decoding turns every JSON array back into a tuple, which makes
``load(save(x)) == x`` hold exactly for instances, triangulations, and
certificates.

Malformed JSON raises :class:`InvalidInputError` carrying the parser's
line and column; structurally valid JSON with bad content (wrong types,
out-of-range vertices, overlapping members) raises the same validation
errors as the in-memory constructors.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

from .core import as_simplex, check_simplex_dim
from .errors import InvalidInputError
from .extension import Complex
from .obstructions import Certificate
from .triangulations import Triangulation

PathLike = Union[str, Path]

__all__ = [
    "decode_value",
    "encode_value",
    "instance_from_dict",
    "instance_to_dict",
    "triangulation_from_dict",
    "triangulation_to_dict",
    "certificate_from_dict",
    "certificate_to_dict",
    "load_instance",
    "load_raw_family",
    "save_instance",
    "load_triangulation",
    "save_triangulation",
    "load_certificate",
    "save_certificate",
    "dumps",
    "read_json",
    "write_json",
]


# ------------------------------------------------------------ value codec


def encode_value(value: Any) -> Any:
    """Translate a value into JSON-representable form.

    Fractions become ``{"fraction": [num, den]}``; tuples become
    arrays; dict values are encoded recursively (keys must already be
    strings); ints, bools, strings, floats, and None pass through.
    """
    if isinstance(value, Fraction):
        return {"fraction": [value.numerator, value.denominator]}
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, float, str)):
        return value
    if isinstance(value, (tuple, list)):
        return [encode_value(v) for v in value]
    if isinstance(value, dict):
        out = {}
        for k, v in value.items():
            if not isinstance(k, str):
                raise InvalidInputError(
                    f"only string keys can be serialized, got {k!r}"
                )
            out[k] = encode_value(v)
        return out
    raise InvalidInputError(f"cannot serialize value of type {type(value).__name__}")


def decode_value(value: Any) -> Any:
    """Inverse of :func:`encode_value`: fraction markers become
    Fractions, arrays become tuples, everything else passes through."""
    if isinstance(value, dict):
        if set(value) == {"fraction"}:
            parts = value["fraction"]
            if (
                not isinstance(parts, list)
                or len(parts) != 2
                or not all(isinstance(p, int) for p in parts)
            ):
                raise InvalidInputError(f"malformed fraction {value!r}")
            return Fraction(parts[0], parts[1])
        return {k: decode_value(v) for k, v in value.items()}
    if isinstance(value, list):
        return tuple(decode_value(v) for v in value)
    return value


# ----------------------------------------------------------- file helpers


def read_json(path: PathLike) -> Any:
    """Read a JSON document, turning parse failures into
    :class:`InvalidInputError` with the offending line and column."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(
            f"{path}: parse error at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}"
        ) from exc


def dumps(obj: Any) -> str:
    """Pretty-print JSON with number-only arrays kept on one line, so a
    simplex reads as ``[1, 3, 5]`` rather than one vertex per line."""
    text = json.dumps(obj, indent=2, sort_keys=False)
    return re.sub(
        r"\[\s+((?:-?\d+,\s+)*-?\d+)\s+\]",
        lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]",
        text,
    )


def write_json(path: PathLike, obj: Any) -> None:
    Path(path).write_text(dumps(obj) + "\n", encoding="utf-8")


def _require_keys(obj: Any, keys: set[str], kind: str) -> None:
    if not isinstance(obj, dict):
        raise InvalidInputError(f"{kind} document must be a JSON object")
    missing = keys - set(obj)
    if missing:
        raise InvalidInputError(
            f"{kind} document is missing fields: {sorted(missing)}"
        )
    extra = set(obj) - keys
    if extra:
        raise InvalidInputError(
            f"{kind} document has unknown fields: {sorted(extra)}"
        )


def _vertex_lists(raw: Any, field: str) -> list[list[int]]:
    if not isinstance(raw, list):
        raise InvalidInputError(f'"{field}" must be an array of vertex arrays')
    out = []
    for item in raw:
        if not isinstance(item, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in item
        ):
            raise InvalidInputError(
                f'"{field}" entries must be arrays of integers, got {item!r}'
            )
        out.append(item)
    return out


def _dims(obj: dict, kind: str) -> tuple[int, int]:
    d, n = obj["d"], obj["n"]
    for name, value in (("d", d), ("n", n)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise InvalidInputError(
                f'{kind} field "{name}" must be an integer, got {value!r}'
            )
    return d, n


# -------------------------------------------------------------- instances


def instance_to_dict(f: Complex) -> dict:
    return {
        "d": f.d,
        "n": f.n,
        "simplices": [list(s) for s in f.simplices],
    }


def instance_from_dict(obj: Any) -> Complex:
    _require_keys(obj, {"d", "n", "simplices"}, "instance")
    d, n = _dims(obj, "instance")
    return Complex.make(_vertex_lists(obj["simplices"], "simplices"), d, n)


def load_instance(path: PathLike) -> Complex:
    return instance_from_dict(read_json(path))


def load_raw_family(
    path: PathLike, d_override: Optional[int] = None
) -> tuple[int, int, list[tuple[int, ...]]]:
    """Read an instance file without requiring pairwise non-overlap or
    dropping non-maximal members — the loader for pair classification,
    where overlapping inputs are exactly the interesting case.

    Returns ``(d, n, simplices)`` with every simplex checked to be
    strictly increasing, within ``[1, n]``, and on at most d+1 vertices.
    """
    obj = read_json(path)
    _require_keys(obj, {"d", "n", "simplices"}, "instance")
    d, n = _dims(obj, "instance")
    if d_override is not None:
        d = d_override
    if d < 1:
        raise InvalidInputError(f"dimension must be >= 1, got {d}")
    if n < 1:
        raise InvalidInputError(f"vertex count must be >= 1, got {n}")
    simplices = []
    for raw in _vertex_lists(obj["simplices"], "simplices"):
        s = as_simplex(raw)
        check_simplex_dim(s, d)
        if s[-1] > n:
            raise InvalidInputError(
                f"simplex {s} uses vertices beyond n={n}"
            )
        simplices.append(s)
    return d, n, simplices


def save_instance(path: PathLike, f: Complex) -> None:
    write_json(path, instance_to_dict(f))


# ---------------------------------------------------------- triangulations


def triangulation_to_dict(t: Triangulation) -> dict:
    if t.vertices != tuple(range(1, t.n + 1)):
        raise InvalidInputError(
            "triangulation files represent the full vertex range 1..n; "
            f"got vertex set {t.vertices}"
        )
    return {
        "d": t.d,
        "n": t.n,
        "facets": [list(f) for f in t.facets],
    }


def triangulation_from_dict(obj: Any) -> Triangulation:
    _require_keys(obj, {"d", "n", "facets"}, "triangulation")
    d, n = _dims(obj, "triangulation")
    if n < 1:
        raise InvalidInputError(f"vertex count must be >= 1, got {n}")
    return Triangulation.make(
        _vertex_lists(obj["facets"], "facets"), d, range(1, n + 1)
    )


def load_triangulation(path: PathLike) -> Triangulation:
    return triangulation_from_dict(read_json(path))


def save_triangulation(path: PathLike, t: Triangulation) -> None:
    write_json(path, triangulation_to_dict(t))


# ------------------------------------------------------------ certificates


def certificate_to_dict(cert: Certificate) -> dict:
    witness: Optional[dict] = None
    if cert.witness is not None:
        witness = triangulation_to_dict(cert.witness)
    return {
        "verdict": cert.verdict,
        "method": cert.method,
        "witness": witness,
        "stats": encode_value(cert.stats),
    }


def certificate_from_dict(obj: Any) -> Certificate:
    _require_keys(obj, {"verdict", "method", "witness", "stats"}, "certificate")
    verdict, method = obj["verdict"], obj["method"]
    if verdict not in ("extendable", "non-extendable"):
        raise InvalidInputError(f"unknown verdict {verdict!r}")
    if not isinstance(method, str):
        raise InvalidInputError(f"method must be a string, got {method!r}")
    witness = None
    if obj["witness"] is not None:
        witness = triangulation_from_dict(obj["witness"])
    stats = decode_value(obj["stats"])
    if not isinstance(stats, dict):
        raise InvalidInputError("certificate stats must be a JSON object")
    return Certificate(verdict, method, witness=witness, stats=stats)


def load_certificate(path: PathLike) -> Certificate:
    return certificate_from_dict(read_json(path))


def save_certificate(path: PathLike, cert: Certificate) -> None:
    write_json(path, certificate_to_dict(cert))

"""JSON instance documents with every number stored as an exact rational string.

A document looks like::

    {"m": 2, "M": [["1", "0"], ["0", "1"]], "q": ["-1", "-1"],
     "d": ["1", "1/2"], "beta": "3"}

``d`` and ``beta`` are optional.  Integer JSON literals are accepted as
well; floating literals are rejected so that parsing stays exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import exact as ex
from .errors import DocumentError
from .exact import Matrix, Vector
from .lcp import ExtendedInstance
from .nash import SymmetricGame

INSTANCE_KEYS = {"m", "M", "q", "d", "beta", "name"}


@dataclass(frozen=True)
class InstanceDocument:
    m: int
    M: Matrix
    q: Vector
    d: Vector | None = None
    beta: Fraction | None = None
    name: str | None = None

    def extended(self, d: Vector | None = None) -> ExtendedInstance:
        """The instance with covering vector ``d`` (argument, then document, then ``e``)."""
        return ExtendedInstance.build(self.M, self.q, d if d is not None else self.d)

    @classmethod
    def from_extended(cls, ext: ExtendedInstance, beta: object | None = None, name: str | None = None):
        d = None if all(v == 1 for v in ext.d) else ext.d
        return cls(ext.m, ext.M, ext.q, d, None if beta is None else ex.frac(beta), name)


class _Float:
    """Marker for a floating literal, kept so the error can point at it."""

    def __init__(self, text: str) -> None:
        self.text = text


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


class _Reader:
    def __init__(self, text: str) -> None:
        self.text = text

    def fail(self, message: str, token: str | None = None) -> DocumentError:
        offset = self.text.find(token) if token else -1
        line, col = _position(self.text, offset) if offset >= 0 else (1, 1)
        return DocumentError(message, line, col)

    def load(self) -> object:
        try:
            return json.loads(self.text, parse_float=_Float)
        except json.JSONDecodeError as err:
            raise DocumentError(err.msg, err.lineno, err.colno) from None

    def scalar(self, value: object, what: str) -> Fraction:
        if isinstance(value, _Float):
            raise self.fail(f"floating literal {value.text} in {what}; write it as a rational string", value.text)
        if isinstance(value, bool) or not isinstance(value, (int, str)):
            raise self.fail(f"{what} must be a rational string, got {type(value).__name__}", json.dumps(value))
        try:
            return ex.frac(value)
        except (ValueError, ZeroDivisionError, TypeError) as err:
            raise self.fail(f"bad rational {value!r} in {what}: {err}", json.dumps(value)) from None

    def vector(self, value: object, what: str) -> Vector:
        if not isinstance(value, list):
            raise self.fail(f"{what} must be a list", f'"{what}"')
        return tuple(self.scalar(v, what) for v in value)

    def matrix(self, value: object, what: str) -> Matrix:
        if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
            raise self.fail(f"{what} must be a list of rows", f'"{what}"')
        rows = tuple(self.vector(r, what) for r in value)
        if len({len(r) for r in rows}) > 1:
            raise self.fail(f"{what} rows have different lengths", f'"{what}"')
        return rows

    def object(self) -> dict:
        data = self.load()
        if not isinstance(data, dict):
            raise DocumentError("document must be a JSON object", 1, 1)
        return data


def parse_document(text: str) -> InstanceDocument:
    r = _Reader(text)
    data = r.object()
    unknown = set(data) - INSTANCE_KEYS
    if unknown:
        key = sorted(unknown)[0]
        raise r.fail(f"unknown key {key!r}", f'"{key}"')
    for key in ("M", "q"):
        if key not in data:
            raise DocumentError(f"missing key {key!r}", 1, 1)
    M = r.matrix(data["M"], "M")
    q = r.vector(data["q"], "q")
    m = data.get("m", len(q))
    if isinstance(m, bool) or not isinstance(m, int):
        raise r.fail("m must be an integer", '"m"')
    if len(q) != m or len(M) != m or any(len(row) != m for row in M):
        where = '"m"' if "m" in data else '"q"'
        raise r.fail(f"dimensions disagree: m = {m}, q has {len(q)} entries, M has {len(M)} rows", where)
    d = None
    if "d" in data and data["d"] is not None:
        d = r.vector(data["d"], "d")
        if len(d) != m:
            raise r.fail(f"d has {len(d)} entries, expected {m}", '"d"')
        if any(v <= 0 for v in d):
            raise r.fail("covering vector d must be strictly positive", '"d"')
    beta = None
    if "beta" in data and data["beta"] is not None:
        beta = r.scalar(data["beta"], "beta")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise r.fail("name must be a string", '"name"')
    return InstanceDocument(m, M, q, d, beta, name)


def parse_game_document(text: str) -> SymmetricGame:
    """``{"C": [[...]]}`` with rational strings."""
    r = _Reader(text)
    data = r.object()
    if "C" not in data:
        raise DocumentError("missing key 'C'", 1, 1)
    C = r.matrix(data["C"], "C")
    if not C or len(C) != len(C[0]):
        raise r.fail("C must be a nonempty square matrix", '"C"')
    return SymmetricGame(C)


def document_kind(text: str) -> str:
    """``"game"`` for a ``{"C": ...}`` document, ``"instance"`` otherwise."""
    data = _Reader(text).load()
    return "game" if isinstance(data, dict) and "C" in data else "instance"


def parse_vector_document(text: str, key: str = "d") -> Vector:
    """A bare list or ``{key: [...]}``."""
    r = _Reader(text)
    data = r.load()
    if isinstance(data, dict):
        if key not in data:
            raise DocumentError(f"missing key {key!r}", 1, 1)
        data = data[key]
    return r.vector(data, key)


def _strings(v: Vector) -> list[str]:
    return [str(x) for x in v]


def serialize(doc: InstanceDocument) -> str:
    data: dict[str, object] = {}
    if doc.name is not None:
        data["name"] = doc.name
    data["m"] = doc.m
    data["M"] = [_strings(row) for row in doc.M]
    data["q"] = _strings(doc.q)
    if doc.d is not None:
        data["d"] = _strings(doc.d)
    if doc.beta is not None:
        data["beta"] = str(doc.beta)
    return json.dumps(data, indent=2) + "\n"


def serialize_game(game: SymmetricGame) -> str:
    return json.dumps({"C": [_strings(row) for row in game.C]}, indent=2) + "\n"


def load_document(path: str | Path) -> InstanceDocument:
    return parse_document(Path(path).read_text())

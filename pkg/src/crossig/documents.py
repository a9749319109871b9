from __future__ import annotations

import json

from .biorder import BiorderedSet, _parse_table
from .crossconn import CrossConnection
from .errors import InvalidInput, MalformedTable
from .groupoid import OrderedGroupoid
from .inductive import InductiveGroupoid
from .normcat import SubobjectCategory
from .semigroup import FiniteSemigroup, load_cayley

KINDS = ("semigroup", "biorder", "inductive_groupoid", "category", "cross_connection")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _hashable(value):
    if isinstance(value, list):
        return tuple(_hashable(v) for v in value)
    return value


def kind_of(doc: dict) -> str:
    if not isinstance(doc, dict):
        raise InvalidInput("a structure document must be a JSON object")
    kind = doc.get("kind")
    if kind is None:
        if "table" in doc:
            kind = "semigroup"
        elif "product" in doc:
            kind = "biorder"
    if kind not in KINDS:
        raise InvalidInput(f"cannot tell the structure kind; expected one of {list(KINDS)}", kind=kind)
    return kind


# dumping ---------------------------------------------------------------------------


def dump(obj) -> dict:
    if isinstance(obj, FiniteSemigroup):
        return dict(obj.to_dict(), kind="semigroup")
    if isinstance(obj, BiorderedSet):
        return dict(obj.to_dict(), kind="biorder")
    if isinstance(obj, InductiveGroupoid):
        return dict(obj.to_dict(), kind="inductive_groupoid")
    if isinstance(obj, SubobjectCategory):
        return dict(obj.to_dict(), kind="category")
    if isinstance(obj, CrossConnection):
        return dict(obj.to_dict(), kind="cross_connection")
    raise InvalidInput(f"no serializer for {type(obj).__name__}")


# loading ----------------------------------------------------------------------------


def biorder_from_dict(doc) -> BiorderedSet:
    """Unvalidated: callers run check_axioms themselves."""
    rows, labels, name = _parse_table(doc)
    return BiorderedSet(rows, labels, name)


def groupoid_from_dict(doc) -> OrderedGroupoid:
    try:
        objects = doc["objects"]
        morphisms = doc["morphisms"]
        below = [{m["id"]} for m in morphisms]
        for y, x in doc.get("order", []):
            below[x].add(y)
        return OrderedGroupoid(
            len(objects),
            [m["dom"] for m in morphisms],
            [m["cod"] for m in morphisms],
            [m["inv"] for m in morphisms],
            doc["identities"],
            {(x, y): z for x, y, z in doc["compose"]},
            below,
            labels=[_hashable(m.get("label", m["id"])) for m in morphisms],
            object_labels=objects,
            partial=doc.get("partial", False),
            name=doc.get("name", ""),
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise MalformedTable(f"groupoid block is malformed: {exc!r}") from exc


def inductive_from_dict(doc) -> InductiveGroupoid:
    E = biorder_from_dict(doc["biorder"])
    g = groupoid_from_dict(doc["groupoid"])
    eval_gen = {(e, f): x for e, f, x in doc["eval"]}
    return InductiveGroupoid(g, E, eval_gen, doc.get("name", ""))


def category_from_dict(doc) -> SubobjectCategory:
    try:
        morphisms = doc["morphisms"]
        return SubobjectCategory(
            doc["objects"],
            [m["dom"] for m in morphisms],
            [m["cod"] for m in morphisms],
            {(f, g): h for f, g, h in doc["compose"]},
            doc["identities"],
            {(a, b): m for a, b, m in doc["inclusions"]},
            labels=[_hashable(m.get("label", m["id"])) for m in morphisms],
            name=doc.get("name", ""),
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise MalformedTable(f"category block is malformed: {exc!r}") from exc


def crossconnection_from_dict(doc) -> CrossConnection:
    C = category_from_dict(doc["C"])
    D = category_from_dict(doc["D"])
    return CrossConnection(C, D, doc["gamma"], doc["gamma_map"], doc["delta"], doc["delta_map"], doc.get("name", ""))


def load_document(doc):
    kind = kind_of(doc)
    try:
        if kind == "semigroup":
            return load_cayley(doc)
        if kind == "biorder":
            return biorder_from_dict(doc)
        if kind == "inductive_groupoid":
            return inductive_from_dict(doc)
        if kind == "category":
            return category_from_dict(doc)
        return crossconnection_from_dict(doc)
    except KeyError as exc:
        raise InvalidInput(f"{kind} document is missing field {exc}", kind=kind) from exc


def read_document(path):
    with open(path, encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from exc
    return load_document(doc)


__all__ = [
    "KINDS", "canonical_json", "dump", "kind_of", "load_document", "read_document", "biorder_from_dict",
    "groupoid_from_dict", "inductive_from_dict", "category_from_dict", "crossconnection_from_dict",
]

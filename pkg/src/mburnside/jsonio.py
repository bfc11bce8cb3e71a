"""JSON encodings of monoids and M-sets."""

from __future__ import annotations

import json

from .action import PartialMSet, make_mset, validate
from .errors import InputParse, MalformedTable
from .monoid import (
    DEFAULT_ELEMENT_CAP,
    FiniteMonoid,
    build_from_cayley,
    generate_from_matrices,
    generate_from_transformations,
)


def monoid_to_json(M: FiniteMonoid) -> dict:
    return {
        "size": M.size,
        "identity": M.identity,
        "cayley": [list(row) for row in M.cayley],
        "labels": [M.label(a) for a in range(M.size)],
    }


def monoid_from_json(obj: dict, element_cap: int = DEFAULT_ELEMENT_CAP) -> FiniteMonoid:
    """Accepts a Cayley table document or a generator document."""
    if not isinstance(obj, dict):
        raise InputParse("monoid document must be a JSON object")
    kind = obj.get("type", "cayley")
    try:
        if kind == "transformations":
            return generate_from_transformations(int(obj["degree"]), obj["generators"], cap=element_cap)
        if kind == "matrices":
            q = obj["field"]
            q = q if q == "Z" else int(q)
            return generate_from_matrices(q, int(obj["dim"]), obj["generators"], cap=element_cap)
        if kind != "cayley":
            raise InputParse(f"unknown monoid document type {kind!r}")
        cayley = obj["cayley"]
    except KeyError as exc:
        raise InputParse(f"missing field {exc.args[0]!r}") from None
    M = build_from_cayley(cayley, obj.get("labels"))
    if "size" in obj and obj["size"] != M.size:
        raise MalformedTable(f"declared size {obj['size']} but table has {M.size} rows")
    if "identity" in obj and obj["identity"] != M.identity:
        raise MalformedTable(f"declared identity {obj['identity']} is not the identity ({M.identity})")
    return M


def mset_to_json(X: PartialMSet, monoid_ref=None) -> dict:
    return {
        "monoid": monoid_ref if monoid_ref is not None else monoid_to_json(X.monoid),
        "points": X.size,
        "action": [list(row) for row in X.table],
    }


def mset_from_json(obj: dict, resolve=None, element_cap: int = DEFAULT_ELEMENT_CAP) -> PartialMSet:
    """``resolve`` maps a string monoid reference (a catalog name) to a monoid."""
    if not isinstance(obj, dict) or "action" not in obj:
        raise InputParse("M-set document needs an 'action' table")
    ref = obj.get("monoid")
    if isinstance(ref, str):
        if resolve is None:
            raise InputParse(f"cannot resolve monoid reference {ref!r}")
        M = resolve(ref)
    elif isinstance(ref, dict):
        M = monoid_from_json(ref, element_cap)
    else:
        raise InputParse("M-set document needs a 'monoid' reference or inline monoid")
    action = obj["action"]
    if "points" in obj and obj["points"] != len(action):
        raise MalformedTable(f"declared {obj['points']} points but action has {len(action)} rows")
    X = make_mset(M, action)
    report = validate(X)
    if not report:
        raise MalformedTable(f"action violates {report.axiom} axiom at {report.witness}")
    return X


def dumps(obj) -> str:
    """Byte-stable JSON."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputParse(f"{path}: {exc}") from None
    except OSError as exc:
        raise InputParse(f"{path}: {exc.strerror}") from None

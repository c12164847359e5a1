"""Reading and writing structure files.

Files are UTF-8 JSON: "elements" names the universe, "order" lists pairs
[a, b] meaning a below b (reflexive-transitive closure applied), "bracket"
and "c" describe the two operators either by constructor kind or by an
explicit table keyed and valued with lowercase hex masks (bit i = element
index i).  An optional "maps" object names self-maps for the map checkers,
and {"fixture": NAME} refers to a builtin structure.
"""

import json

from . import fixtures
from .constructors import (SpaceMap, alexandrov, assemble, compact_set,
                           dedekind_macneille, directed_sup,
                           generated_operator, inflationary, novak,
                           qoset_from_pairs, selfmap_family, upper_topology)
from .core import SetOperator, Universe, resolve_max_n
from .waybelow import spec_qoset


class ParseError(Exception):
    """A structure file violates the schema."""


def _require(cond, msg):
    if not cond:
        raise ParseError(msg)


def _hex_table(entries, n, field):
    _require(isinstance(entries, dict), f"{field}.entries must be an object")
    size = 1 << n
    table = [None] * size
    for key, value in entries.items():
        try:
            mask = int(key, 16)
            out = int(value, 16)
        except (TypeError, ValueError):
            raise ParseError(
                f"{field}.entries keys/values must be hex masks, got "
                f"{key!r}: {value!r}") from None
        _require(0 <= mask < size, f"{field}.entries key {key!r} out of range")
        _require(0 <= out < size,
                 f"{field}.entries value {value!r} out of range")
        table[mask] = out
    for m in range(size):
        if table[m] is None:
            raise ParseError(f"{field}.entries missing mask {m:x}")
    return table


def _named_map(universe, mapping, field, target=None):
    _require(isinstance(mapping, dict), f"{field} must be an object")
    target = target or universe
    image = {}
    for src, dst in mapping.items():
        _require(src in universe.elements, f"{field}: unknown element {src!r}")
        _require(dst in target.elements, f"{field}: unknown element {dst!r}")
        image[src] = dst
    for name in universe.elements:
        _require(name in image, f"{field}: no image for element {name!r}")
    return SpaceMap(universe, target,
                    [target.index(image[e]) for e in universe.elements])


def _build_bracket(spec, q, universe):
    _require(isinstance(spec, dict) and "kind" in spec,
             "bracket must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "alexandrov":
        return alexandrov(q)
    if kind == "table":
        table = _hex_table(spec.get("entries", {}), universe.n, "bracket")
        return SetOperator.from_table(universe, table, kind="table")
    raise ParseError(f"unknown bracket kind {kind!r}")


def _build_c(spec, q, universe, bracket):
    _require(isinstance(spec, dict) and "kind" in spec,
             "c must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "alexandrov":
        return alexandrov(q)
    if kind == "dedekind_macneille":
        return dedekind_macneille(q)
    if kind == "directed_sup":
        return directed_sup(q)
    if kind == "upper_topology":
        return upper_topology(q)
    if kind == "inflationary":
        _require("map" in spec, "inflationary c needs a 'map'")
        return inflationary(q, _named_map(universe, spec["map"], "c.map"))
    if kind == "novak":
        for field in ("q_elements", "q_order", "l", "r"):
            _require(field in spec, f"novak c needs {field!r}")
        q_universe = Universe(spec["q_elements"])
        qq = qoset_from_pairs(q_universe, spec["q_order"])
        # left maps the auxiliary qoset back into the universe, right goes
        # the other way; the file schema stores each by its own direction
        left = _named_map(q_universe, spec["l"], "c.l", target=universe)
        right = _named_map(universe, spec["r"], "c.r", target=q_universe)
        return novak(q, qq, left, right, strict=bool(spec.get("strict")))
    if kind == "selfmap_family":
        _require(isinstance(spec.get("maps"), list) and spec["maps"],
                 "selfmap_family c needs a nonempty 'maps' array")
        maps = [_named_map(universe, m, f"c.maps[{i}]")
                for i, m in enumerate(spec["maps"])]
        return selfmap_family(q, maps)
    if kind == "compact_set":
        _require(isinstance(spec.get("K"), list) and spec["K"],
                 "compact_set c needs a nonempty 'K' array")
        for e in spec["K"]:
            _require(e in universe.elements, f"c.K: unknown element {e!r}")
        return compact_set(q, spec["K"])
    if kind == "generated":
        _require("base" in spec and "family" in spec,
                 "generated c needs 'base' and 'family'")
        base = _build_c(spec["base"], q, universe, bracket)
        base_ec = assemble(bracket, base)
        family = []
        for i, member in enumerate(spec["family"]):
            _require(isinstance(member, list),
                     f"c.family[{i}] must be an array of elements")
            for e in member:
                _require(e in universe.elements,
                         f"c.family[{i}]: unknown element {e!r}")
            family.append(universe.subset(member).mask)
        return generated_operator(base_ec, family)
    if kind == "table":
        table = _hex_table(spec.get("entries", {}), universe.n, "c")
        return SetOperator.from_table(universe, table, kind="table")
    raise ParseError(f"unknown c kind {kind!r}")


def build_space(doc, max_n=None):
    """Build (structure, named maps) from a parsed JSON document."""
    _require(isinstance(doc, dict), "top level must be an object")
    if "fixture" in doc:
        name = doc["fixture"]
        try:
            return fixtures.closet(name), {}
        except KeyError:
            raise ParseError(f"unknown fixture {name!r}") from None
    for field in ("elements", "bracket", "c"):
        _require(field in doc, f"missing field {field!r}")
    elements = doc["elements"]
    _require(isinstance(elements, list) and elements
             and all(isinstance(e, str) for e in elements),
             "'elements' must be a nonempty array of strings")
    _require(len(set(elements)) == len(elements),
             "'elements' must not repeat")
    limit = resolve_max_n(max_n)
    _require(len(elements) <= limit,
             f"{len(elements)} elements exceed the size cap {limit}")
    universe = Universe(elements)
    order = doc.get("order", [])
    _require(isinstance(order, list), "'order' must be an array of pairs")
    pairs = []
    for entry in order:
        _require(isinstance(entry, list) and len(entry) == 2,
                 f"order entry {entry!r} is not a pair")
        a, b = entry
        _require(a in universe.elements, f"order: unknown element {a!r}")
        _require(b in universe.elements, f"order: unknown element {b!r}")
        pairs.append((a, b))
    q = qoset_from_pairs(universe, pairs)
    bracket = _build_bracket(doc["bracket"], q, universe)
    c = _build_c(doc["c"], q, universe, bracket)
    ec = assemble(bracket, c, name=doc.get("name"))
    maps = {}
    raw_maps = doc.get("maps", {})
    _require(isinstance(raw_maps, dict), "'maps' must be an object")
    for name, mapping in raw_maps.items():
        maps[name] = _named_map(universe, mapping, f"maps.{name}")
    return ec, maps


def parse_space(path, max_n=None):
    """Read a structure file; returns (structure, named maps)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from None
    return build_space(doc, max_n=max_n)


def _table_spec(op):
    entries = {format(m, "x"): format(v, "x")
               for m, v in enumerate(op.table)}
    return {"kind": "table", "entries": entries}


def serialize_space(ec, maps=None):
    """Explicit-table JSON document for a structure.

    Constructor provenance is deliberately dropped: tables reproduce the
    operators exactly, which is what reproduction of a finding needs.
    """
    q = spec_qoset(ec)
    doc = {
        "elements": list(ec.universe.elements),
        "order": [[a, b] for a, b in q.order_pairs()],
        "bracket": _table_spec(ec.bracket),
        "c": _table_spec(ec.c),
    }
    if ec.name:
        doc["name"] = ec.name
    if maps:
        doc["maps"] = {
            name: {ec.universe.elements[i]: f.target.elements[f.image[i]]
                   for i in range(ec.universe.n)}
            for name, f in maps.items()}
    return doc


def dumps_space(ec, maps=None):
    return json.dumps(serialize_space(ec, maps), indent=2, sort_keys=True)

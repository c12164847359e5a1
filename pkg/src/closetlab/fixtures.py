"""Builtin qosets and enriched structures used by tests and the CLI."""

from .constructors import (EnrichedCloset, SpaceMap, alexandrov, assemble,
                           compact_set, dedekind_macneille, identity_map,
                           inflationary, qoset_from_pairs, selfmap_family)
from .core import Universe


def _chain(k):
    names = [str(i) for i in range(k)]
    u = Universe(names)
    return qoset_from_pairs(u, [(names[i], names[i + 1]) for i in range(k - 1)])


def _antichain2():
    return qoset_from_pairs(Universe(["p", "q"]), [])


def _b2():
    u = Universe(["bot", "a", "b", "top"])
    return qoset_from_pairs(
        u, [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")])


def _m3():
    # top is listed right after bot so that sweeps over elements visit it
    # before the atoms; the diamond's continuity failures are reported at top.
    u = Universe(["bot", "top", "a", "b", "c"])
    return qoset_from_pairs(
        u, [("bot", "a"), ("bot", "b"), ("bot", "c"),
            ("a", "top"), ("b", "top"), ("c", "top")])


def _n5():
    u = Universe(["bot", "a", "b", "c", "top"])
    return qoset_from_pairs(
        u, [("bot", "a"), ("a", "top"),
            ("bot", "b"), ("b", "c"), ("c", "top")])


_QOSET_BUILDERS = {
    "CHAIN3": lambda: _chain(3),
    "CHAIN4": lambda: _chain(4),
    "ANTICHAIN2": _antichain2,
    "B2": _b2,
    "M3": _m3,
    "N5": _n5,
}

_qoset_cache = {}


def qoset(name):
    if name not in _QOSET_BUILDERS:
        raise KeyError(f"unknown qoset fixture {name!r}")
    if name not in _qoset_cache:
        _qoset_cache[name] = _QOSET_BUILDERS[name]()
    return _qoset_cache[name]


def qoset_names():
    return tuple(_QOSET_BUILDERS)


def _shift_closet():
    q = qoset("CHAIN3")
    m = SpaceMap.from_names(q.universe, q.universe,
                            {"0": "1", "1": "2", "2": "2"})
    return assemble(alexandrov(q), inflationary(q, m), name="CHAIN3_SHIFT")


def _raney_closet(qname, name):
    q = qoset(qname)
    return assemble(alexandrov(q), dedekind_macneille(q), name=name)


def _phi_id_closet():
    q = qoset("CHAIN3")
    return assemble(alexandrov(q),
                    selfmap_family(q, [identity_map(q.universe)]),
                    name="CHAIN3_PHI_ID")


def _antichain_k_closet():
    q = qoset("ANTICHAIN2")
    return assemble(alexandrov(q), compact_set(q, ["p"]),
                    name="ANTICHAIN2_K")


_CLOSET_BUILDERS = {
    "CHAIN3_SHIFT": _shift_closet,
    "CHAIN3_RANEY": lambda: _raney_closet("CHAIN3", "CHAIN3_RANEY"),
    "M3_RANEY": lambda: _raney_closet("M3", "M3_RANEY"),
    "B2_RANEY": lambda: _raney_closet("B2", "B2_RANEY"),
    "N5_RANEY": lambda: _raney_closet("N5", "N5_RANEY"),
    "CHAIN3_PHI_ID": _phi_id_closet,
    "ANTICHAIN2_K": _antichain_k_closet,
}

_closet_cache = {}


def closet(name) -> EnrichedCloset:
    if name not in _CLOSET_BUILDERS:
        raise KeyError(f"unknown fixture {name!r}")
    if name not in _closet_cache:
        _closet_cache[name] = _CLOSET_BUILDERS[name]()
    return _closet_cache[name]


def closet_names():
    return tuple(_CLOSET_BUILDERS)

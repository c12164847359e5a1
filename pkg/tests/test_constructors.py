"""Constructor families vs. naive set-by-set recomputation, plus their
precondition errors and the specialization round-trip."""

import random

import pytest

import oracles as O
from closetlab.constructors import (Qoset, SpaceMap, alexandrov, assemble,
                                    compact_set, dedekind_macneille,
                                    directed_sup, generated_operator,
                                    identity_map, inflationary, novak,
                                    qoset_from_pairs, selfmap_family,
                                    specialization, upper_topology)
from closetlab.core import ClosetError, OperatorError, Subset
from closetlab.search import enumerate_qosets, random_qoset, random_monotone_selfmap
from conftest import fresh_universe


def small_qosets():
    """All qosets on 1..3 elements plus seeded random 4-element ones."""
    out = []
    for n in (1, 2, 3):
        out.extend(enumerate_qosets(n))
    rng = random.Random(23)
    for _ in range(15):
        out.append(random_qoset(rng, fresh_universe(4)))
    return out


QS = small_qosets()


def same_op(op, naive_map):
    u = op.universe
    for a in O.powerset(u.elements):
        got = frozenset(u.names_of_mask(op.apply_mask(u.subset(a).mask)))
        if got != naive_map(a):
            return False, a, got, naive_map(a)
    return True, None, None, None


def test_qoset_from_pairs_closes_transitively():
    u = fresh_universe(3)
    q = qoset_from_pairs(u, [("x0", "x1"), ("x1", "x2")])
    assert q.leq("x0", "x2")
    assert not q.leq("x2", "x0")
    assert q.is_poset


def test_qoset_rejects_broken_relations():
    u = fresh_universe(2)
    with pytest.raises(ValueError):
        Qoset(u, [0b01, 0b01])  # not reflexive at x1
    with pytest.raises(ValueError):
        Qoset(u, [0b111, 0b10])  # mask out of range


def test_alexandrov_matches_oracle():
    for q in QS:
        ok, a, got, want = same_op(alexandrov(q),
                                   lambda s, q=q: O.down_closure(q, s))
        assert ok, (q.up, a, got, want)


def test_dedekind_macneille_matches_oracle():
    for q in QS:
        ok, a, got, want = same_op(dedekind_macneille(q),
                                   lambda s, q=q: O.cut_closure(q, s))
        assert ok, (q.up, a, got, want)


def test_directed_sup_matches_oracle():
    for q in QS:
        if not q.is_poset:
            with pytest.raises(OperatorError):
                directed_sup(q)
            continue
        ok, a, got, want = same_op(
            directed_sup(q), lambda s, q=q: O.directed_sup_closure(q, s))
        assert ok, (q.up, a, got, want)


def test_upper_topology_matches_oracle():
    for q in QS:
        naive = O.upper_topology_closure_map(q)
        ok, a, got, want = same_op(upper_topology(q),
                                   lambda s, naive=naive: naive[s])
        assert ok, (q.up, a, got, want)


def test_inflationary_matches_oracle():
    rng = random.Random(31)
    checked = 0
    for q in QS:
        m = random_monotone_selfmap(rng, q, mode="inflationary")
        op = inflationary(q, m)
        image_map = m.to_names()
        ok, a, got, want = same_op(
            op, lambda s, q=q, im=image_map: O.inflationary_closure(q, im, s))
        assert ok, (q.up, image_map, a, got, want)
        checked += 1
    assert checked == len(QS)


def test_inflationary_rejects_bad_maps():
    u = fresh_universe(2)
    q = qoset_from_pairs(u, [("x0", "x1")])
    decreasing = SpaceMap(u, u, [0, 0])  # not inflationary at x1
    with pytest.raises(OperatorError):
        inflationary(q, decreasing)


def test_novak_matches_oracle():
    rng = random.Random(37)
    for q in QS:
        left = random_monotone_selfmap(rng, q, mode="inflationary")
        right = identity_map(q.universe)
        op = novak(q, q, left, right)
        lm, rm = left.to_names(), right.to_names()
        ok, a, got, want = same_op(
            op, lambda s, q=q, lm=lm, rm=rm: O.novak_closure(q, q, lm, rm, s))
        assert ok, (q.up, lm, a, got, want)


def test_novak_rejects_non_expanding_roundtrip():
    u = fresh_universe(2)
    q = qoset_from_pairs(u, [("x0", "x1")])
    left = SpaceMap(u, u, [0, 0])
    right = identity_map(u)
    # left(right(x1)) = x0 and x1 <= x0 fails
    with pytest.raises(OperatorError):
        novak(q, q, left, right)


def test_novak_strict_mode_precondition():
    u = fresh_universe(2)
    q = qoset_from_pairs(u, [])  # antichain
    q2 = qoset_from_pairs(u, [("x0", "x1"), ("x1", "x0")])
    right = identity_map(u)
    # order-reflection fails: x0 <= x1 in q2-image but not in the antichain
    with pytest.raises(OperatorError):
        novak(q, q2, identity_map(u), right, strict=True)


def test_selfmap_family_matches_oracle():
    rng = random.Random(41)
    for q in QS:
        maps = [random_monotone_selfmap(rng, q, mode="deflationary"),
                random_monotone_selfmap(rng, q)]
        op = selfmap_family(q, maps)
        image_maps = [m.to_names() for m in maps]
        ok, a, got, want = same_op(
            op, lambda s, q=q, ims=image_maps: O.selfmap_closure(q, ims, s))
        assert ok, (q.up, image_maps, a, got, want)


def test_selfmap_family_needs_deflationary_member():
    u = fresh_universe(2)
    q = qoset_from_pairs(u, [("x0", "x1")])
    inflating = SpaceMap(u, u, [1, 1])
    with pytest.raises(OperatorError):
        selfmap_family(q, [inflating])
    with pytest.raises(OperatorError):
        selfmap_family(q, [])


def test_compact_set_matches_oracle():
    rng = random.Random(43)
    for q in QS:
        n = q.universe.n
        kmask = rng.randrange(1, 1 << n)
        k = Subset(q.universe, kmask)
        op = compact_set(q, k)
        knames = frozenset(k.names())
        ok, a, got, want = same_op(
            op, lambda s, q=q, k=knames: O.compact_set_closure(q, k, s))
        assert ok, (q.up, knames, a, got, want)


def test_compact_set_rejects_empty_k():
    u = fresh_universe(2)
    q = qoset_from_pairs(u, [])
    with pytest.raises(OperatorError):
        compact_set(q, Subset(u, 0))


def test_generated_operator_matches_oracle():
    rng = random.Random(47)
    built = 0
    for q in QS:
        base = assemble(alexandrov(q), dedekind_macneille(q))
        masks = set()
        # singletons keep the draw extensive; add a few random members
        for i in range(q.universe.n):
            masks.add(1 << i)
        masks.add(rng.randrange(1 << q.universe.n))
        try:
            op = generated_operator(base, masks)
        except ClosetError:
            continue
        built += 1
        bf = O.setfunc(base.bracket)
        cf = O.setfunc(base.c)
        members = [frozenset(q.universe.names_of_mask(m)) for m in masks]
        ok, a, got, want = same_op(
            op, lambda s, bf=bf, cf=cf, mem=members:
                O.generated_closure(bf, cf, mem, s))
        assert ok, (q.up, sorted(masks), a, got, want)
    assert built >= len(QS) // 2


def test_generated_operator_reports_extensivity_gap():
    u = fresh_universe(2)
    q = qoset_from_pairs(u, [])
    base = assemble(alexandrov(q), alexandrov(q))
    # no member reaches x1, so {x1} is not covered
    with pytest.raises(OperatorError):
        generated_operator(base, [1 << 0])


def test_specialization_roundtrip():
    for q in QS:
        assert specialization(alexandrov(q)) == q


def test_specialization_requires_closure():
    u = fresh_universe(2)
    from closetlab.core import SetOperator
    not_idem = SetOperator.from_table(u, [1, 3, 3, 3])
    with pytest.raises(OperatorError):
        specialization(not_idem)


def test_constructor_specs_are_replayable():
    rng = random.Random(53)
    q = random_qoset(rng, fresh_universe(3))
    assert alexandrov(q).spec == {"kind": "alexandrov"}
    assert dedekind_macneille(q).spec == {"kind": "dedekind_macneille"}
    assert upper_topology(q).spec == {"kind": "upper_topology"}
    m = random_monotone_selfmap(rng, q, mode="inflationary")
    assert inflationary(q, m).spec["map"] == m.to_names()

"""Universe/subset plumbing, operator classification, Moore families,
associated closure -- each derived quantity checked against the naive
oracle route."""

import random

import pytest

import oracles as O
from closetlab.core import (ClosetError, OperatorError, SetOperator, Subset,
                            SubsetFamily, Universe, UniverseSizeError,
                            associated_closure, closed_family,
                            identity_operator, moore_check, open_family,
                            resolve_max_n)
from conftest import fresh_universe, table_closets


def test_universe_basics():
    u = Universe(["a", "b", "c"])
    assert u.n == 3 and u.full == 0b111
    assert u.index("b") == 1
    assert u.subset(["a", "c"]).mask == 0b101
    assert u.names_of_mask(0b110) == ("b", "c")
    assert len(list(u.all_subsets())) == 8
    with pytest.raises(KeyError):
        u.index("z")


def test_universe_rejects_bad_input():
    with pytest.raises(UniverseSizeError):
        Universe([])
    with pytest.raises(UniverseSizeError):
        Universe(["a", "a"])
    with pytest.raises(UniverseSizeError):
        Universe([str(i) for i in range(25)])
    # explicit cap below the element count
    with pytest.raises(UniverseSizeError):
        Universe(["a", "b", "c"], max_n=2)


def test_resolve_max_n_env(monkeypatch):
    monkeypatch.delenv("CLOSETLAB_MAX_N", raising=False)
    assert resolve_max_n() == 16
    assert resolve_max_n(5) == 5
    monkeypatch.setenv("CLOSETLAB_MAX_N", "7")
    assert resolve_max_n() == 7
    # hard ceiling is enforced at universe construction time
    monkeypatch.setenv("CLOSETLAB_MAX_N", "30")
    with pytest.raises(UniverseSizeError):
        Universe([str(i) for i in range(22)])


def test_subset_algebra():
    u = Universe(["a", "b", "c"])
    s = u.subset(["a", "b"])
    t = u.subset(["b", "c"])
    assert (s & t).names() == ("b",)
    assert (s | t).mask == u.full
    assert (s - t).names() == ("a",)
    assert s.complement().names() == ("c",)
    assert u.subset(["a"]) <= s and not s <= t
    assert "a" in s and "c" not in s
    assert len(s) == 2 and bool(s) and not bool(u.empty_subset())


def test_subset_family_dedupes_and_sorts():
    u = Universe(["a", "b"])
    fam = SubsetFamily(u, [3, 1, 3, 0])
    assert fam.masks == (0, 1, 3)
    assert u.subset(["a"]) in fam
    fam2 = SubsetFamily.from_subsets([u.subset(["a"]), u.subset([])])
    assert fam2.masks == (0, 1)


def test_operator_table_validation():
    u = Universe(["a", "b"])
    with pytest.raises(OperatorError):
        SetOperator.from_table(u, [0, 1, 2])  # wrong length
    with pytest.raises(OperatorError):
        SetOperator.from_table(u, [0, 1, 2, 9])  # out of range


def test_lazy_rule_operator_matches_table():
    u = Universe(["a", "b", "c"])
    fn = lambda m: m | 1
    lazy = SetOperator.from_rule(u, fn, "rule")
    assert lazy.apply_mask(0b100) == 0b101
    eager = SetOperator.from_table(u, [fn(m) for m in range(8)])
    assert bytes(lazy.table) == bytes(eager.table)


def test_classification_matches_oracle():
    rng = random.Random(5)
    u = fresh_universe(3)
    for _ in range(40):
        table = [rng.randrange(8) for _ in range(8)]
        op = SetOperator.from_table(u, table)
        cl = op.classification
        func = O.setfunc(op)
        assert cl.extensive == O.is_extensive(func)
        assert cl.monotone == O.is_monotone(func)
        assert cl.idempotent == O.is_idempotent(func)


def test_classification_witnesses_are_real():
    rng = random.Random(6)
    u = fresh_universe(3)
    seen_ext = seen_mono = False
    for i in range(200):
        if i % 2:
            table = [rng.randrange(8) for _ in range(8)]
        else:
            table = [m | rng.randrange(8) for m in range(8)]  # extensive
        op = SetOperator.from_table(u, table)
        cl = op.classification
        if not cl.extensive:
            w = cl.witnesses["extensive"]
            assert not w <= op(w)
            seen_ext = True
        if cl.extensive and not cl.monotone:
            a, b = cl.witnesses["monotone"]
            assert a <= b and not op(a) <= op(b)
            seen_mono = True
    assert seen_ext and seen_mono


def test_identity_operator_is_closure():
    u = fresh_universe(3)
    cl = identity_operator(u).classification
    assert cl.is_closure


def test_closed_and_open_families_match_oracle():
    for ec in table_closets(seed=7, count=12):
        func = O.setfunc(ec.c)
        want = {frozenset(s) for s in O.closed_sets(func)}
        got = {frozenset(s.names()) for s in closed_family(ec.c)}
        assert got == want
        names = set(ec.universe.elements)
        want_open = {frozenset(names - s) for s in want}
        got_open = {frozenset(s.names()) for s in open_family(ec.c)}
        assert got_open == want_open


def test_closed_family_requires_preclosure():
    u = fresh_universe(2)
    bad = SetOperator.from_table(u, [1, 1, 0, 3])  # not extensive at {b}
    with pytest.raises(ClosetError):
        closed_family(bad)


def test_associated_closure_matches_oracle():
    for ec in table_closets(seed=11, count=12):
        cbar = associated_closure(ec.c)
        func = O.setfunc(ec.c)
        want = O.associated_closure(func)
        got = O.setfunc(cbar)
        assert got == want
        assert cbar.classification.is_closure


def test_moore_check_matches_oracle():
    rng = random.Random(13)
    u = fresh_universe(3)
    names = list(u.elements)
    agree = 0
    for _ in range(120):
        masks = rng.sample(range(8), rng.randrange(1, 8))
        fam = SubsetFamily(u, masks)
        ok, witness = moore_check(fam)
        sets = {frozenset(u.names_of_mask(m)) for m in fam.masks}
        assert ok == O.is_moore(sets, names)
        if not ok and witness != "universe-not-member":
            a, b = witness
            assert (a & b).mask not in fam.masks
        agree += 1
    assert agree == 120


def test_closed_family_is_always_moore():
    for ec in table_closets(seed=17, count=10):
        ok, _ = moore_check(closed_family(ec.c))
        assert ok

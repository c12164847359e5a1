"""Interpolation, union-complete families, relatively-closed subsets, and
the totally-below machinery -- dual-route checks against the naive oracle."""

import random

import pytest

import oracles as O
from closetlab.constructors import alexandrov, qoset_from_pairs
from closetlab.core import SubsetFamily
from closetlab.fixtures import closet, qoset
from closetlab.interpolation import (closed_family_distributivity,
                                     completely_distributive,
                                     continuity_iff_opens_way_upper,
                                     interpolant_lemma_check,
                                     interpolation_characterization,
                                     interpolation_iff_idempotent,
                                     interpolation_iff_wayup_open,
                                     is_interpolating, is_lattice,
                                     is_strongly_continuous,
                                     lattice_join_mask, raney_below,
                                     raney_on_lattice, relatively_closed,
                                     relatively_closed_masks,
                                     strong_continuity_characterization,
                                     strong_continuity_iff_waydown_match,
                                     union_complete,
                                     weakly_closed_union_complete)
from closetlab.reports import HOLDS, HYPOTHESIS_NOT_MET, INCONSISTENT
from closetlab.search import enumerate_qosets, random_qoset
from closetlab.waybelow import closed_masks
from conftest import fresh_universe, sampled, table_closets

# frozen oracle-derived constants (independent route: tests/oracles.py)
FROZEN_INTERPOLATING = {
    "CHAIN3_SHIFT": (False, ("1", "2")),
    "CHAIN3_RANEY": (True, None),
    "M3_RANEY": (False, ("bot", "top")),
    "B2_RANEY": (True, None),
    "N5_RANEY": (True, None),
}
FROZEN_STRONGLY_CONTINUOUS = {
    "CHAIN3_SHIFT": False,
    "CHAIN3_RANEY": True,
    "M3_RANEY": False,
    "B2_RANEY": True,
    "N5_RANEY": False,
}


@pytest.mark.parametrize("name", sorted(FROZEN_INTERPOLATING))
def test_fixture_interpolation_frozen_and_oracle(name):
    ec = closet(name)
    assert is_interpolating(ec) == FROZEN_INTERPOLATING[name]
    bf, cf = O.setfunc(ec.bracket), O.setfunc(ec.c)
    wb = O.way_below_pairs(bf, cf, ec.universe.elements)
    assert O.is_interpolating(wb, ec.universe.elements) \
        == FROZEN_INTERPOLATING[name][0]
    assert is_strongly_continuous(ec) == FROZEN_STRONGLY_CONTINUOUS[name]


def test_interpolation_matches_oracle_on_samples():
    for ec in table_closets(seed=127, count=20):
        bf, cf = O.setfunc(ec.bracket), O.setfunc(ec.c)
        wb = O.way_below_pairs(bf, cf, ec.universe.elements)
        assert is_interpolating(ec)[0] \
            == O.is_interpolating(wb, ec.universe.elements)


def test_relatively_closed_matches_oracle():
    for ec in table_closets(seed=131, count=15):
        cf = O.setfunc(ec.c)
        want = {frozenset(s) for s in O.relatively_closed_sets(cf)}
        got = {frozenset(ec.universe.names_of_mask(m))
               for m in relatively_closed_masks(ec)}
        assert got == want
        for m in range(1 << ec.universe.n):
            sub = ec.universe.subset_of_mask(m)
            assert relatively_closed(ec, sub) \
                == (frozenset(sub.names()) in want)


def test_union_complete_matches_brute_oracle():
    rng = random.Random(137)
    checked = 0
    for _ in range(60):
        n = rng.choice([2, 3])
        q = random_qoset(rng, fresh_universe(n))
        bracket = alexandrov(q)
        masks = rng.sample(range(1 << n), rng.randrange(1, min(6, 1 << n)))
        fam = SubsetFamily(q.universe, masks)
        res = union_complete(bracket, fam)
        assert res.verdict is not None
        sets = {frozenset(q.universe.names_of_mask(m)) for m in fam.masks}
        bf = O.setfunc(bracket)
        leq = O.specialization_pairs(bf, q.universe.elements)
        assert res.verdict == O.union_complete_brute(sets, leq)
        if res.verdict is False:
            # the witness must describe a genuine violation
            u = res.witness["union"]
            assert u.mask not in fam.masks
        checked += 1
    assert checked == 60


def test_union_complete_analytic_path_for_all_lower_sets():
    for n in (2, 3):
        for q in enumerate_qosets(n)[:40]:
            bracket = alexandrov(q)
            lower = [m for m in range(1 << n) if q.down_mask(m) == m]
            res = union_complete(bracket, SubsetFamily(q.universe, lower))
            assert res.verdict is True and res.analytic
            # brute oracle agrees with the analytic shortcut
            sets = {frozenset(q.universe.names_of_mask(m)) for m in lower}
            bf = O.setfunc(bracket)
            leq = O.specialization_pairs(bf, q.universe.elements)
            assert O.union_complete_brute(sets, leq)


def test_union_complete_cap_returns_undecided():
    u = fresh_universe(3)
    q = qoset_from_pairs(u, [])
    bracket = alexandrov(q)
    fam = SubsetFamily(u, [0b001, 0b010, 0b011, 0b111])  # not all lower sets
    res = union_complete(bracket, fam, cap=2)
    assert res.verdict is None and not bool(res)
    assert res.work > 2


def test_weakly_closed_union_complete_on_fixtures():
    for name in sorted(FROZEN_INTERPOLATING):
        res = weakly_closed_union_complete(closet(name))
        assert res.verdict is True  # Alexandrov brackets: all lower sets
        assert res.analytic


# -- totally-below relation --------------------------------------------------

def _moore_family(u, masks):
    fam = set(masks)
    fam.add(u.full)
    while True:
        extra = {a & b for a in fam for b in fam} - fam
        if not extra:
            break
        fam |= extra
    return SubsetFamily(u, sorted(fam))


def test_raney_below_closed_equals_brute_on_random_families():
    rng = random.Random(139)
    for _ in range(40):
        u = fresh_universe(3)
        fam = _moore_family(u, rng.sample(range(8), rng.randrange(1, 5)))
        if len(fam) > 6:
            continue
        assert raney_below(fam, "closed") == raney_below(fam, "brute")


def test_raney_below_rejects_non_moore_families():
    u = fresh_universe(2)
    with pytest.raises(ValueError):
        raney_below(SubsetFamily(u, [0b01, 0b10]))  # missing intersection top


def test_completely_distributive_matches_family_oracle():
    for name in ("CHAIN3_RANEY", "B2_RANEY", "M3_RANEY", "N5_RANEY"):
        ec = closet(name)
        fam = SubsetFamily(ec.universe, closed_masks(ec))
        got = completely_distributive(fam)
        sets = {frozenset(ec.universe.names_of_mask(m)) for m in fam.masks}
        assert got == O.completely_distributive_family(sets)
        assert completely_distributive(fam, "brute") == got


def test_lattice_join_and_is_lattice_match_oracle():
    for q in enumerate_qosets(3):
        assert is_lattice(q) == O.is_lattice(q)
        if not is_lattice(q):
            continue
        joins = O.lattice_joins(q)
        for a in range(8):
            names = frozenset(q.universe.names_of_mask(a))
            got = lattice_join_mask(q, a)
            assert q.universe.elements[got] == joins[names]


def test_raney_on_lattice_closed_equals_brute_small():
    lattices = [q for q in enumerate_qosets(3) if is_lattice(q)]
    rng = random.Random(149)
    for _ in range(25):
        q = random_qoset(rng, fresh_universe(4))
        if is_lattice(q):
            lattices.append(q)
    assert lattices
    for q in lattices:
        assert raney_on_lattice(q, "closed") == raney_on_lattice(q, "brute")
        # element-level oracle route
        want = O.raney_lattice_brute(q)
        rows = raney_on_lattice(q)
        got = {(q.universe.elements[x], q.universe.elements[y])
               for x in range(q.universe.n) for y in range(q.universe.n)
               if rows[x] >> y & 1}
        assert got == want


def test_fixture_lattices_complete_distributivity():
    # frozen: B2 is completely distributive, M3 and N5 are not
    verdicts = {}
    for qname in ("B2", "M3", "N5"):
        q = qoset(qname)
        assert is_lattice(q)
        rows = raney_on_lattice(q)
        ok = True
        for x in range(q.universe.n):
            approx = 0
            for y in range(q.universe.n):
                if rows[y] >> x & 1:
                    approx |= 1 << y
            if lattice_join_mask(q, approx) != x:
                ok = False
        verdicts[qname] = ok
        assert ok == O.completely_distributive_lattice(q)
    assert verdicts == {"B2": True, "M3": False, "N5": False}


# -- theorem drivers ----------------------------------------------------------

def test_driver_statuses_on_fixtures():
    shift = closet("CHAIN3_SHIFT")
    raney = closet("CHAIN3_RANEY")
    m3 = closet("M3_RANEY")

    rep = interpolation_characterization(shift)
    assert rep.status == HYPOTHESIS_NOT_MET
    assert rep.details["reverse_direction_checked"]
    assert interpolation_characterization(raney).status == HOLDS

    rep = strong_continuity_iff_waydown_match(shift)
    assert rep.status == HOLDS and not rep.details["waydown_match"]
    assert strong_continuity_iff_waydown_match(m3).status \
        == HYPOTHESIS_NOT_MET

    rep = interpolation_iff_wayup_open(shift)
    assert rep.status == HOLDS
    assert not rep.details["all_wayup_open"]
    assert rep.details["element_witness"] == "1"
    rep = interpolation_iff_wayup_open(raney)
    assert rep.status == HOLDS and rep.details["all_wayup_open"]

    rep = interpolation_iff_idempotent(shift)
    assert rep.status == HOLDS
    assert not rep.details["idempotent"]
    assert tuple(rep.details["interpolation_witness"]) == ("1", "2")
    assert interpolation_iff_idempotent(raney).status == HOLDS
    assert interpolation_iff_idempotent(m3).status == HYPOTHESIS_NOT_MET

    rep = strong_continuity_characterization(m3)
    assert rep.status == HOLDS
    assert rep.details["idempotent"] and not rep.details[
        "preserves_intersections"]

    assert continuity_iff_opens_way_upper(shift).status \
        == HYPOTHESIS_NOT_MET  # c not idempotent
    rep = continuity_iff_opens_way_upper(m3)
    assert rep.status == HOLDS
    assert not rep.details["continuous"] and not rep.details[
        "opens_way_upper"]

    assert interpolant_lemma_check(raney).details["pairs_checked"] > 0

    assert closed_family_distributivity(shift).status == HYPOTHESIS_NOT_MET
    rep = closed_family_distributivity(raney)
    assert rep.status == HOLDS and rep.details["completely_distributive"]


def test_drivers_never_inconsistent_on_samples():
    drivers = (interpolation_characterization,
               strong_continuity_iff_waydown_match,
               interpolation_iff_wayup_open, interpolation_iff_idempotent,
               strong_continuity_characterization,
               continuity_iff_opens_way_upper, interpolant_lemma_check,
               closed_family_distributivity)
    structures = [ec for ec, _, _ in sampled(seed=151, count=30)]
    structures += table_closets(seed=157, count=20)
    for ec in structures:
        for drv in drivers:
            assert drv(ec).status != INCONSISTENT, (ec, drv.__name__)

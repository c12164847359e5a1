"""Push-forward continuity for maps between enriched structures.

The frozen examples were derived with tests/oracles.py first; sample-based
tests re-run the oracle on every draw.
"""

import pytest

import oracles as O
from closetlab.constructors import SpaceMap, identity_map
from closetlab.core import SubsetFamily
from closetlab.fixtures import closet, qoset
from closetlab.inner_regular import canonical_waydown_family
from closetlab.interpolation import relatively_closed_masks
from closetlab.maps import (bandelt_erne, closure_continuity_via_family,
                            is_bracket_continuous, is_closure_continuous,
                            is_galois_connection, is_strictly_continuous,
                            jointly_generated, map_continuity_relatively_closed,
                            map_continuity_via_family, preimage_mask,
                            preserves_way_below, strict_vs_closure_continuity)
from closetlab.reports import HOLDS, HYPOTHESIS_NOT_MET, INCONSISTENT
from conftest import sampled

CHAIN_U = qoset("CHAIN3").universe


def _const0():
    return SpaceMap.from_names(CHAIN_U, CHAIN_U,
                               {"0": "0", "1": "0", "2": "0"})


def test_identity_map_is_continuous_every_way():
    raney = closet("CHAIN3_RANEY")
    ident = identity_map(CHAIN_U)
    assert is_bracket_continuous(ident, raney, raney) == (True, None)
    assert is_strictly_continuous(ident, raney, raney) == (True, None)
    assert is_closure_continuous(ident, raney, raney) == (True, None)
    rep = strict_vs_closure_continuity(ident, raney, raney)
    assert rep.status == HOLDS and rep.details["target_idempotent"]


def test_empty_set_is_checked():
    # constant map into a structure whose preclosure fixes the empty set:
    # the push-forward condition holds on every nonempty subset and fails
    # exactly at the empty one
    raney = closet("CHAIN3_RANEY")
    plain = closet("CHAIN3_PHI_ID")
    f = _const0()
    ok, wit = is_strictly_continuous(f, raney, plain)
    assert not ok and wit.mask == 0
    ok, wit = is_closure_continuous(f, raney, plain)
    assert not ok and wit.mask == 0
    assert is_bracket_continuous(f, raney, plain) == (True, None)
    fm = f.to_names()
    cf, cfp = O.setfunc(raney.c), O.setfunc(plain.c)
    for a in cf:
        if a:
            assert O.map_image(fm, cf[a]) <= cfp[O.map_image(fm, a)]
    assert not O.push_forward_ok(fm, cf, cfp)


def test_continuity_checks_match_oracle_on_samples():
    for ec, maps, _ in sampled(seed=311, count=20):
        f = maps["f"]
        fm = f.to_names()
        bf, cf = O.setfunc(ec.bracket), O.setfunc(ec.c)
        cbar = O.associated_closure(cf)
        assert is_bracket_continuous(f, ec, ec)[0] \
            == O.push_forward_ok(fm, bf, bf)
        assert is_strictly_continuous(f, ec, ec)[0] \
            == O.push_forward_ok(fm, cf, cf)
        assert is_closure_continuous(f, ec, ec)[0] \
            == O.push_forward_ok(fm, cbar, cbar)


def test_cross_universe_map_matches_oracle():
    src = closet("CHAIN3_RANEY")
    dst = closet("B2_RANEY")
    f = SpaceMap.from_names(src.universe, dst.universe,
                            {"0": "bot", "1": "a", "2": "top"})
    fm = f.to_names()
    for check, table in ((is_bracket_continuous, "bracket"),
                         (is_strictly_continuous, "c")):
        got, _ = check(f, src, dst)
        want = O.push_forward_ok(fm, O.setfunc(getattr(src, table)),
                                 O.setfunc(getattr(dst, table)))
        assert got == want


def test_failure_witnesses_are_real():
    for ec, maps, _ in sampled(seed=313, count=25):
        f = maps["f"]
        fm = f.to_names()
        cf = O.setfunc(ec.c)
        ok, wit = is_strictly_continuous(f, ec, ec)
        if not ok:
            a = frozenset(wit.names())
            assert not O.map_image(fm, cf[a]) <= cf[O.map_image(fm, a)]


def test_strict_implies_closure_on_samples():
    seen_strict = 0
    for ec, maps, _ in sampled(seed=317, count=30):
        f = maps["f"]
        strict, _ = is_strictly_continuous(f, ec, ec)
        if strict:
            seen_strict += 1
            assert is_closure_continuous(f, ec, ec)[0]
        assert strict_vs_closure_continuity(f, ec, ec).status \
            != INCONSISTENT
    assert seen_strict > 0


def test_closure_continuous_but_not_strict():
    # frozen search result: into a non-idempotent target the two notions
    # can split, and the comparison driver must not flag that
    src = closet("CHAIN3_PHI_ID")
    dst = closet("CHAIN3_SHIFT")
    f = SpaceMap(CHAIN_U, CHAIN_U, (0, 2, 0))
    assert is_closure_continuous(f, src, dst)[0]
    assert not is_strictly_continuous(f, src, dst)[0]
    rep = strict_vs_closure_continuity(f, src, dst)
    assert rep.status == HOLDS
    assert not rep.details["target_idempotent"]


def test_galois_connection_fixture_pairs():
    q = qoset("CHAIN3")
    ident = identity_map(CHAIN_U)
    assert is_galois_connection(q, q, ident, ident) == (True, None)
    const2 = SpaceMap.from_names(CHAIN_U, CHAIN_U,
                                 {"0": "2", "1": "2", "2": "2"})
    ok, wit = is_galois_connection(q, q, const2, ident)
    assert not ok and wit == ("0", "0")
    other = qoset("B2")
    wrong = SpaceMap.from_names(other.universe, other.universe,
                                {n: n for n in other.universe.elements})
    with pytest.raises(ValueError):
        is_galois_connection(q, q, wrong, ident)


def test_sampled_adjoint_pairs_are_galois():
    seen = 0
    for ec, maps, q in sampled(seed=331, count=30):
        if "phi" not in maps:
            continue
        seen += 1
        phi, psi = maps["phi"], maps["psi"]
        assert is_galois_connection(q, q, phi, psi) == (True, None)
        leq = O.leq_pairs(q)
        assert O.galois_ok(leq, leq, phi.to_names(), psi.to_names(),
                           q.universe.elements, q.universe.elements)
    assert seen > 0, "sampler produced no adjoint pairs"


def test_preserves_way_below_vs_oracle():
    raney = closet("CHAIN3_RANEY")
    assert preserves_way_below(identity_map(CHAIN_U), raney, raney) \
        == (True, None)
    for ec, maps, _ in sampled(seed=337, count=20):
        f = maps["f"]
        bf, cf = O.setfunc(ec.bracket), O.setfunc(ec.c)
        wb = O.way_below_pairs(bf, cf, ec.universe.elements)
        ok, wit = preserves_way_below(f, ec, ec)
        assert ok == O.preserves_way_below_pairs(f.to_names(), wb, wb)
        if not ok:
            x, y = wit
            fm = f.to_names()
            assert (x, y) in wb and (fm[x], fm[y]) not in wb


def test_bandelt_erne_identity_and_broken_pair():
    raney = closet("CHAIN3_RANEY")
    ident = identity_map(CHAIN_U)
    rep = bandelt_erne(raney, raney, ident, ident)
    assert rep.status == HOLDS
    assert rep.details["psi_strictly_continuous"]
    assert rep.details["phi_preserves_way_below"]
    assert rep.details["source_continuous"]
    rep = bandelt_erne(raney, raney, _const0(), _const0())
    assert rep.status == HYPOTHESIS_NOT_MET
    assert not rep.details["adjoint_identity"]
    assert rep.details["witness"].names() == ("0",)
    other = closet("B2_RANEY")
    with pytest.raises(ValueError):
        bandelt_erne(raney, other, ident, ident)


def test_bandelt_erne_on_sampled_adjoint_pairs():
    applied = 0
    for ec, maps, _ in sampled(seed=347, count=40):
        if "phi" not in maps:
            continue
        rep = bandelt_erne(ec, ec, maps["phi"], maps["psi"])
        assert rep.status != INCONSISTENT
        if rep.status == HOLDS:
            applied += 1
    assert applied > 0, "hypothesis never met across samples"


def test_map_continuity_via_family_fixtures():
    raney = closet("CHAIN3_RANEY")
    fam = SubsetFamily(raney.universe, relatively_closed_masks(raney))
    assert map_continuity_via_family(
        identity_map(CHAIN_U), raney, raney, fam).status == HOLDS
    assert map_continuity_via_family(
        _const0(), raney, raney, fam).status == HOLDS
    shift = closet("CHAIN3_SHIFT")
    rep = map_continuity_via_family(
        identity_map(CHAIN_U), shift, shift,
        SubsetFamily(shift.universe, relatively_closed_masks(shift)))
    assert rep.status == HYPOTHESIS_NOT_MET
    assert not rep.details["generated"]


def test_map_continuity_relatively_closed_fixtures():
    raney = closet("CHAIN3_RANEY")
    ident = identity_map(CHAIN_U)
    assert map_continuity_relatively_closed(ident, raney, raney).status \
        == HOLDS
    shift = closet("CHAIN3_SHIFT")
    rep = map_continuity_relatively_closed(ident, shift, shift)
    assert rep.status == HYPOTHESIS_NOT_MET
    assert not rep.details["inner_regular"]
    rep = map_continuity_relatively_closed(
        ident, closet("CHAIN3_PHI_ID"), shift)
    assert rep.status == HYPOTHESIS_NOT_MET
    assert not rep.details["preserves_relatively_closed"]
    assert rep.details["witness"].names() == ("0",)


def test_jointly_generated_examples():
    raney = closet("CHAIN3_RANEY")
    fam = SubsetFamily(raney.universe, relatively_closed_masks(raney))
    assert jointly_generated(raney, fam) == (True, None)
    ok, (side, wit) = jointly_generated(
        raney, SubsetFamily(raney.universe, [0]))
    assert not ok and side == "preclosure" and wit.names() == ("1",)
    shift = closet("CHAIN3_SHIFT")
    ok, (side, wit) = jointly_generated(shift,
                                        canonical_waydown_family(shift))
    assert not ok and side == "bracket" and wit.names() == ("1",)


def test_closure_continuity_via_family_fixtures():
    raney = closet("CHAIN3_RANEY")
    fam = SubsetFamily(raney.universe, relatively_closed_masks(raney))
    assert closure_continuity_via_family(
        identity_map(CHAIN_U), raney, raney, fam).status == HOLDS
    plain = closet("CHAIN3_PHI_ID")
    rep = closure_continuity_via_family(
        identity_map(CHAIN_U), plain, closet("CHAIN3_SHIFT"),
        SubsetFamily(plain.universe, relatively_closed_masks(plain)))
    assert rep.status == HYPOTHESIS_NOT_MET
    assert not rep.details["member_image_relatively_closed"]
    assert rep.details["witness"].names() == ("0",)


def test_map_drivers_never_inconsistent_on_samples():
    hold_counts = {"map_continuity_via_family": 0,
                   "map_continuity_relatively_closed": 0,
                   "closure_continuity_via_family": 0}
    for ec, maps, _ in sampled(seed=353, count=30):
        f = maps["f"]
        fam = SubsetFamily(ec.universe, relatively_closed_masks(ec))
        for rep in (map_continuity_via_family(f, ec, ec, fam),
                    map_continuity_relatively_closed(f, ec, ec),
                    closure_continuity_via_family(f, ec, ec, fam)):
            assert rep.status != INCONSISTENT, (ec, rep.name)
            if rep.status == HOLDS:
                hold_counts[rep.name] += 1
    assert all(v > 0 for v in hold_counts.values()), hold_counts


def test_preimage_mask():
    f = _const0()
    assert preimage_mask(f, 0b001) == 0b111
    assert preimage_mask(f, 0b110) == 0
    for ec, maps, _ in sampled(seed=359, count=10):
        g = maps["f"]
        gm = g.to_names()
        u = ec.universe
        for mask in range(1 << u.n):
            names = set(u.names_of_mask(preimage_mask(g, mask)))
            target = set(u.names_of_mask(mask))
            assert names == {x for x in u.elements if gm[x] in target}

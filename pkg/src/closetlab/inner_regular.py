"""Preclosures generated from below by subset families.

A family generates c when every c(A) is the union of the c(D) over members
D lying inside bracket(A); if the relatively-closed subsets do the job the
structure is called inner-regular.  Generation ties back to continuity:
on a continuous structure the way_down sets of elements are exactly the
bracket images the family must reach.
"""

from . import kernels
from .core import Subset, SubsetFamily
from .interpolation import (relatively_closed_masks, union_complete,
                            union_complete_closure, is_interpolating,
                            is_strongly_continuous)
from .reports import HOLDS, HYPOTHESIS_NOT_MET, INCONSISTENT, TheoremReport
from .waybelow import is_continuous, waydown_table


def _family_masks(ec, fam):
    if isinstance(fam, SubsetFamily):
        if fam.universe != ec.universe:
            raise ValueError("family universe mismatch")
        return fam.masks
    out = []
    for d in fam:
        if isinstance(d, Subset):
            if d.universe != ec.universe:
                raise ValueError("family universe mismatch")
            out.append(d.mask)
        else:
            out.append(ec.universe.subset(d).mask)
    return tuple(sorted(set(out)))


def is_generated_by(ec, fam):
    """(ok, witness): does c(A) equal the union of c(D) over members D
    inside bracket(A), for every A?

    The union is always below c(A) (monotonicity plus compatibility), so
    only the forward inclusion can fail; witness is the first subset A in
    mask order where it does.
    """
    masks = _family_masks(ec, fam)
    n = ec.universe.n
    ct = ec.c.table
    bt = ec.bracket.table
    values = kernels.zeros(1 << n)
    for d in masks:
        values[d] |= ct[d]
    h = kernels.zeta_or(values, n)
    for a in range(1 << n):
        if ct[a] != h[bt[a]]:
            return (False, Subset(ec.universe, a))
    return (True, None)


def is_inner_regular(ec):
    """(ok, witness): generated by the relatively-closed subsets."""
    def build():
        fam = SubsetFamily(ec.universe, relatively_closed_masks(ec))
        return is_generated_by(ec, fam)
    return ec.derived("inner_regular", build)


def canonical_waydown_family(ec) -> SubsetFamily:
    """The family of way_down sets of single elements."""
    dda = waydown_table(ec)
    return SubsetFamily(ec.universe,
                        [dda[1 << x] for x in range(ec.universe.n)])


def singleton_ideals_relatively_closed(ec) -> TheoremReport:
    """On an inner-regular structure, singletons and their bracket images
    are relatively-closed."""
    ok, _ = is_inner_regular(ec)
    if not ok:
        return TheoremReport("singleton_ideals_relatively_closed",
                             HYPOTHESIS_NOT_MET, {"inner_regular": False})
    ct = ec.c.table
    bt = ec.bracket.table
    for x in range(ec.universe.n):
        for label, m in (("singleton", 1 << x), ("ideal", bt[1 << x])):
            if ct[ct[m]] != ct[m]:
                return TheoremReport(
                    "singleton_ideals_relatively_closed", INCONSISTENT,
                    {"witness": ec.universe.elements[x], "kind": label})
    return TheoremReport("singleton_ideals_relatively_closed", HOLDS, {})


def generation_characterization(ec, fam=None) -> TheoremReport:
    """On a continuous structure, a family generates c exactly when every
    way_down set of an element is the bracket image of a member.

    With no family supplied, the relatively-closed family is used and the
    specialized form is also asserted: inner-regular iff every way_down
    set of an element is itself relatively-closed.
    """
    continuous, cwit = is_continuous(ec)
    if not continuous:
        return TheoremReport("generation_characterization",
                             HYPOTHESIS_NOT_MET,
                             {"continuous": False,
                              "continuity_witness": cwit})
    specialized = fam is None
    if specialized:
        masks = tuple(relatively_closed_masks(ec))
        generated, gwit = is_inner_regular(ec)
    else:
        masks = _family_masks(ec, fam)
        generated, gwit = is_generated_by(ec, fam)
    bt = ec.bracket.table
    ct = ec.c.table
    images = {bt[d] for d in masks}
    dda = waydown_table(ec)
    reachable, rwit = True, None
    for x in range(ec.universe.n):
        if dda[1 << x] not in images:
            reachable, rwit = False, ec.universe.elements[x]
            break
    details = {"generated": generated, "waydowns_reachable": reachable}
    if gwit is not None:
        details["generation_witness"] = gwit
    if rwit is not None:
        details["reachability_witness"] = rwit
    verdicts = [generated, reachable]
    if specialized:
        rc, rcwit = True, None
        for x in range(ec.universe.n):
            d = dda[1 << x]
            if ct[ct[d]] != ct[d]:
                rc, rcwit = False, ec.universe.elements[x]
                break
        details["waydowns_relatively_closed"] = rc
        if rcwit is not None:
            details["relative_closure_witness"] = rcwit
        verdicts.append(rc)
    agree = all(verdicts) or not any(verdicts)
    return TheoremReport("generation_characterization",
                         HOLDS if agree else INCONSISTENT, details)


def strong_continuity_iff_generating_family(ec, fam=None,
                                            cap=10**6) -> TheoremReport:
    """On a continuous structure, strong continuity holds exactly when some
    union-complete family of relatively-closed weakly-closed subsets
    generates c.

    The forward direction is existential, but it reduces to one canonical
    candidate: any qualifying family contains every element way_down set
    (its weakly-closed members that witness generation pin those down),
    hence it contains the whole union-complete closure of the way_down
    family; members of that closure are then relatively and weakly closed
    because the larger family's are, and the closure generates because
    generation never overshoots and the way_down family inside it already
    generates.  So a qualifying family exists exactly when the closure
    qualifies, and the closure is what gets checked.  The way_down family
    itself is not enough: even under interpolation, reassigning members
    across incomparable index elements can union outside it.

    Backward: any qualifying family forces interpolation.  A supplied
    family is validated and used as-is; if it fails to qualify, nothing
    follows and the report says so.
    """
    name = "strong_continuity_iff_generating_family"
    continuous, cwit = is_continuous(ec)
    if not continuous:
        return TheoremReport(name, HYPOTHESIS_NOT_MET,
                             {"continuous": False,
                              "continuity_witness": cwit})
    supplied = fam is not None
    if supplied:
        candidate = fam
        masks = _family_masks(ec, candidate)
        uc = union_complete(ec.bracket, SubsetFamily(ec.universe, masks),
                            cap=cap)
        if uc.verdict is None:
            return TheoremReport(
                name, HYPOTHESIS_NOT_MET,
                {"union_complete": "cap-exceeded", "work": uc.work})
        uc_verdict = uc.verdict
    else:
        closure, work = ec.derived(
            ("uc_closure_waydown", cap),
            lambda: union_complete_closure(
                ec.bracket, canonical_waydown_family(ec), cap=cap))
        if closure is None:
            return TheoremReport(
                name, HYPOTHESIS_NOT_MET,
                {"union_complete": "cap-exceeded", "work": work})
        candidate = closure
        masks = closure.masks
        uc_verdict = True  # the closure's final quiet pass verified this
    ct = ec.c.table
    bt = ec.bracket.table
    rel_closed = all(ct[ct[d]] == ct[d] for d in masks)
    weakly_closed = all(bt[d] == d for d in masks)
    generated, _ = is_generated_by(ec, candidate)
    qualifies = rel_closed and weakly_closed and generated and uc_verdict
    interp, iwit = is_interpolating(ec)
    details = {"interpolating": interp, "family_supplied": supplied,
               "members_relatively_closed": rel_closed,
               "members_weakly_closed": weakly_closed,
               "generates": generated, "union_complete": uc_verdict}
    if not supplied:
        details["family_size"] = len(masks)
    if iwit is not None:
        details["interpolation_witness"] = iwit
    if qualifies and not interp:
        # backward direction: a qualifying family forces interpolation
        return TheoremReport(name, INCONSISTENT, details)
    if interp and not supplied and not qualifies:
        # forward direction: no family can qualify if the closure fails
        return TheoremReport(name, INCONSISTENT, details)
    if supplied and not qualifies:
        details["note"] = "supplied family does not qualify; nothing to test"
        return TheoremReport(name, HYPOTHESIS_NOT_MET, details)
    return TheoremReport(name, HOLDS, details)


def continuous_waydown_generation(ec) -> TheoremReport:
    """A continuous structure is generated by its element way_down sets;
    a strongly continuous one is additionally inner-regular."""
    continuous, cwit = is_continuous(ec)
    if not continuous:
        return TheoremReport("continuous_waydown_generation",
                             HYPOTHESIS_NOT_MET,
                             {"continuous": False,
                              "continuity_witness": cwit})
    generated, gwit = is_generated_by(ec, canonical_waydown_family(ec))
    if not generated:
        return TheoremReport("continuous_waydown_generation", INCONSISTENT,
                             {"generation_witness": gwit})
    details = {"generated": True}
    if is_strongly_continuous(ec):
        inner, iwit = is_inner_regular(ec)
        details["inner_regular"] = inner
        if not inner:
            details["inner_regular_witness"] = iwit
            return TheoremReport("continuous_waydown_generation",
                                 INCONSISTENT, details)
    return TheoremReport("continuous_waydown_generation", HOLDS, details)

"""Continuity notions for maps between enriched structures.

A map is strictly-continuous when it pushes c forward into c', and
closure-continuous when the same holds for the associated closure
operators.  Bracket-continuity is the analogous condition on the brackets
and appears as a hypothesis in the transfer results.
"""

from . import kernels
from .constructors import SpaceMap
from .core import Subset
from .inner_regular import is_generated_by, is_inner_regular, _family_masks
from .interpolation import relatively_closed_masks
from .reports import HOLDS, HYPOTHESIS_NOT_MET, INCONSISTENT, TheoremReport
from .waybelow import cbar_table, is_continuous, wb_rows


def preimage_mask(f: SpaceMap, mask: int) -> int:
    """Mask of source elements mapped into the target mask."""
    out = 0
    for x, y in enumerate(f.image):
        if mask >> y & 1:
            out |= 1 << x
    return out


def _push_check(f, src_table, dst_table):
    """First A (mask order) with f(src_table[A]) not inside
    dst_table[f(A)], or None."""
    n = f.source.n
    for a in range(1 << n):
        if f.mask_image(src_table[a]) & ~dst_table[f.mask_image(a)]:
            return a
    return None


def is_bracket_continuous(f: SpaceMap, src_ec, dst_ec):
    """(ok, witness): f(bracket(A)) inside bracket'(f(A)) for all A."""
    a = _push_check(f, src_ec.bracket.table, dst_ec.bracket.table)
    if a is None:
        return (True, None)
    return (False, Subset(f.source, a))


def is_strictly_continuous(f: SpaceMap, src_ec, dst_ec):
    """(ok, witness): f(c(A)) inside c'(f(A)) for all A."""
    a = _push_check(f, src_ec.c.table, dst_ec.c.table)
    if a is None:
        return (True, None)
    return (False, Subset(f.source, a))


def is_closure_continuous(f: SpaceMap, src_ec, dst_ec):
    """(ok, witness): the associated closures satisfy the push-forward
    condition; equivalently, preimages of closed sets are closed."""
    a = _push_check(f, cbar_table(src_ec), cbar_table(dst_ec))
    if a is None:
        return (True, None)
    return (False, Subset(f.source, a))


def strict_vs_closure_continuity(f: SpaceMap, src_ec, dst_ec):
    """Strict continuity always implies closure continuity; when c' is
    idempotent the two notions agree."""
    strict, swit = is_strictly_continuous(f, src_ec, dst_ec)
    closure, kwit = is_closure_continuous(f, src_ec, dst_ec)
    idem = dst_ec.c.classification.idempotent
    details = {"strictly_continuous": strict,
               "closure_continuous": closure,
               "target_idempotent": idem}
    if swit is not None:
        details["strict_witness"] = swit
    if kwit is not None:
        details["closure_witness"] = kwit
    if strict and not closure:
        return TheoremReport("strict_vs_closure_continuity", INCONSISTENT,
                             details)
    if idem and closure and not strict:
        return TheoremReport("strict_vs_closure_continuity", INCONSISTENT,
                             details)
    return TheoremReport("strict_vs_closure_continuity", HOLDS, details)


def is_galois_connection(qsrc, qdst, left: SpaceMap, right: SpaceMap):
    """(ok, witness): left(x) below x' exactly when x below right(x')."""
    if left.source != qsrc.universe or left.target != qdst.universe:
        raise ValueError("left map endpoints do not match the qosets")
    if right.source != qdst.universe or right.target != qsrc.universe:
        raise ValueError("right map endpoints do not match the qosets")
    for x in range(qsrc.universe.n):
        for xp in range(qdst.universe.n):
            if qdst.leq_index(left.image[x], xp) != \
                    qsrc.leq_index(x, right.image[xp]):
                return (False, (qsrc.universe.elements[x],
                                qdst.universe.elements[xp]))
    return (True, None)


def preserves_way_below(phi: SpaceMap, src_ec, dst_ec):
    """(ok, witness): x way below y forces phi(x) way below phi(y)."""
    rows = wb_rows(src_ec)
    rows_dst = wb_rows(dst_ec)
    n = src_ec.universe.n
    for x in range(n):
        m = rows[x]
        while m:
            low = m & -m
            y = low.bit_length() - 1
            m ^= low
            if not rows_dst[phi.image[x]] >> phi.image[y] & 1:
                return (False, (src_ec.universe.elements[x],
                                src_ec.universe.elements[y]))
    return (True, None)


def bandelt_erne(src_ec, dst_ec, phi: SpaceMap, psi: SpaceMap):
    """Adjoint-style transfer of way-below along a map pair.

    Hypothesis: preimages under phi of bracket'-images equal bracket
    images under psi, for every target subset.  Then strict continuity of
    psi forces phi to preserve way-below; when the source is additionally
    continuous the two conditions are equivalent.
    """
    if phi.source != src_ec.universe or phi.target != dst_ec.universe:
        raise ValueError("phi endpoints do not match the structures")
    if psi.source != dst_ec.universe or psi.target != src_ec.universe:
        raise ValueError("psi endpoints do not match the structures")
    bt = src_ec.bracket.table
    bt_dst = dst_ec.bracket.table
    for ap in range(1 << dst_ec.universe.n):
        if preimage_mask(phi, bt_dst[ap]) != bt[psi.mask_image(ap)]:
            return TheoremReport(
                "bandelt_erne", HYPOTHESIS_NOT_MET,
                {"adjoint_identity": False,
                 "witness": Subset(dst_ec.universe, ap)})
    strict, swit = is_strictly_continuous(psi, dst_ec, src_ec)
    preserves, pwit = preserves_way_below(phi, src_ec, dst_ec)
    continuous, _ = is_continuous(src_ec)
    details = {"psi_strictly_continuous": strict,
               "phi_preserves_way_below": preserves,
               "source_continuous": continuous}
    if swit is not None:
        details["strict_witness"] = swit
    if pwit is not None:
        details["preservation_witness"] = pwit
    if strict and not preserves:
        return TheoremReport("bandelt_erne", INCONSISTENT, details)
    if continuous and preserves and not strict:
        return TheoremReport("bandelt_erne", INCONSISTENT, details)
    return TheoremReport("bandelt_erne", HOLDS, details)


def _member_push(f, src_ec, dst_ec, masks):
    """First member D (mask order) with f(c(D)) outside c'(f(D))."""
    ct = src_ec.c.table
    ct_dst = dst_ec.c.table
    for d in masks:
        if f.mask_image(ct[d]) & ~ct_dst[f.mask_image(d)]:
            return d
    return None


def map_continuity_via_family(f: SpaceMap, src_ec, dst_ec,
                              fam) -> TheoremReport:
    """When a family generates the source preclosure, a bracket-continuous
    map is strictly-continuous exactly when it pushes c into c' on the
    members alone."""
    masks = _family_masks(src_ec, fam)
    generated, gwit = is_generated_by(src_ec, fam)
    if not generated:
        return TheoremReport("map_continuity_via_family",
                             HYPOTHESIS_NOT_MET,
                             {"generated": False,
                              "generation_witness": gwit})
    bc, bwit = is_bracket_continuous(f, src_ec, dst_ec)
    if not bc:
        return TheoremReport("map_continuity_via_family",
                             HYPOTHESIS_NOT_MET,
                             {"bracket_continuous": False,
                              "bracket_witness": bwit})
    strict, swit = is_strictly_continuous(f, src_ec, dst_ec)
    bad = _member_push(f, src_ec, dst_ec, masks)
    on_members = bad is None
    details = {"strictly_continuous": strict,
               "push_on_members": on_members}
    if swit is not None:
        details["strict_witness"] = swit
    if bad is not None:
        details["member_witness"] = Subset(src_ec.universe, bad)
    return TheoremReport("map_continuity_via_family",
                         HOLDS if strict == on_members else INCONSISTENT,
                         details)


def preserves_relatively_closed(f: SpaceMap, src_ec, dst_ec):
    """(ok, witness): images of relatively-closed sets stay
    relatively-closed."""
    ct_dst = dst_ec.c.table
    for d in relatively_closed_masks(src_ec):
        img = f.mask_image(d)
        if ct_dst[ct_dst[img]] != ct_dst[img]:
            return (False, Subset(src_ec.universe, d))
    return (True, None)


def map_continuity_relatively_closed(f: SpaceMap, src_ec,
                                     dst_ec) -> TheoremReport:
    """On an inner-regular source, a bracket-continuous map preserving
    relatively-closed sets is strictly-continuous iff closure-continuous
    iff it pushes c into c' on every relatively-closed set."""
    inner, iwit = is_inner_regular(src_ec)
    if not inner:
        return TheoremReport("map_continuity_relatively_closed",
                             HYPOTHESIS_NOT_MET,
                             {"inner_regular": False,
                              "witness": iwit})
    bc, bwit = is_bracket_continuous(f, src_ec, dst_ec)
    if not bc:
        return TheoremReport("map_continuity_relatively_closed",
                             HYPOTHESIS_NOT_MET,
                             {"bracket_continuous": False,
                              "bracket_witness": bwit})
    pres, pwit = preserves_relatively_closed(f, src_ec, dst_ec)
    if not pres:
        return TheoremReport("map_continuity_relatively_closed",
                             HYPOTHESIS_NOT_MET,
                             {"preserves_relatively_closed": False,
                              "witness": pwit})
    strict, _ = is_strictly_continuous(f, src_ec, dst_ec)
    closure, _ = is_closure_continuous(f, src_ec, dst_ec)
    bad = _member_push(f, src_ec, dst_ec, relatively_closed_masks(src_ec))
    on_members = bad is None
    details = {"strictly_continuous": strict,
               "closure_continuous": closure,
               "push_on_relatively_closed": on_members}
    if bad is not None:
        details["member_witness"] = Subset(src_ec.universe, bad)
    agree = strict == closure == on_members
    return TheoremReport("map_continuity_relatively_closed",
                         HOLDS if agree else INCONSISTENT, details)


def jointly_generated(ec, fam):
    """(ok, witness): the family generates c, and bracket(A) is the union
    of bracket(D) over members D inside A itself."""
    generated, gwit = is_generated_by(ec, fam)
    if not generated:
        return (False, ("preclosure", gwit))
    masks = _family_masks(ec, fam)
    n = ec.universe.n
    bt = ec.bracket.table
    values = kernels.zeros(1 << n)
    for d in masks:
        values[d] |= bt[d]
    h = kernels.zeta_or(values, n)
    for a in range(1 << n):
        if bt[a] != h[a]:
            return (False, ("bracket", Subset(ec.universe, a)))
    return (True, None)


def closure_continuity_via_family(f: SpaceMap, src_ec, dst_ec,
                                  fam) -> TheoremReport:
    """When a family jointly generates bracket and c on the source and the
    map sends members to relatively-closed images, closure continuity is
    equivalent to pushing c into c' on the members."""
    joint, jwit = jointly_generated(src_ec, fam)
    if not joint:
        return TheoremReport("closure_continuity_via_family",
                             HYPOTHESIS_NOT_MET,
                             {"jointly_generated": False, "witness": jwit})
    masks = _family_masks(src_ec, fam)
    ct_dst = dst_ec.c.table
    for d in masks:
        img = f.mask_image(d)
        if ct_dst[ct_dst[img]] != ct_dst[img]:
            return TheoremReport(
                "closure_continuity_via_family", HYPOTHESIS_NOT_MET,
                {"member_image_relatively_closed": False,
                 "witness": Subset(src_ec.universe, d)})
    closure, kwit = is_closure_continuous(f, src_ec, dst_ec)
    bad = _member_push(f, src_ec, dst_ec, masks)
    on_members = bad is None
    details = {"closure_continuous": closure,
               "push_on_members": on_members}
    if kwit is not None:
        details["closure_witness"] = kwit
    if bad is not None:
        details["member_witness"] = Subset(src_ec.universe, bad)
    return TheoremReport("closure_continuity_via_family",
                         HOLDS if closure == on_members else INCONSISTENT,
                         details)

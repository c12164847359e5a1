"""Topological preclosures and irreducible subsets.

A preclosure is topological when its open sets form a topology; this is
decided both directly on the open family and through the Kuratowski laws
of the associated closure, and the two routes must agree.
"""

from . import kernels
from .constructors import Qoset, alexandrov, assemble
from .core import SetOperator, Subset, SubsetFamily, associated_closure
from .inner_regular import is_generated_by
from .reports import HOLDS, HYPOTHESIS_NOT_MET, INCONSISTENT, TheoremReport
from .waybelow import (cbar_table, closed_masks, is_continuous, spec_qoset,
                       waydown_table)


def _surface(obj):
    """(universe, closed mask list, associated-closure table) for either a
    preclosure operator or an assembled structure (cached on the latter)."""
    if isinstance(obj, SetOperator):
        op = obj
        closed = kernels.fixed_points(op.table, op.universe.n)
        cbar = associated_closure(op).table
        return op.universe, closed, cbar
    return obj.universe, closed_masks(obj), cbar_table(obj)


def topological_direct(obj):
    """(ok, witness): do the open sets form a topology?

    Arbitrary unions of opens are open for free (closed sets are stable
    under intersections), so failure means either the universe is not open
    (the closure of the empty set is nonempty; its value is the reported
    witness) or some pairwise intersection of opens escapes.
    """
    universe, closed, cbar = _surface(obj)
    full = universe.full
    opens = set(full & ~m for m in closed)
    if full not in opens:
        return (False, ("universe-not-open", Subset(universe, cbar[0])))
    ordered = sorted(opens)
    for i, g in enumerate(ordered):
        for h in ordered[:i + 1]:
            if g & h not in opens:
                return (False, ("intersection-not-open",
                                (Subset(universe, g),
                                 Subset(universe, h))))
    return (True, None)


def kuratowski_closure_check(obj):
    """(ok, witness): the associated closure sends empty to empty and
    splits over unions.

    Union splitting is checked on single-element extensions
    (closure(A + i) inside closure(A) + closure(i)); binary unions follow
    by induction on the added elements.
    """
    universe, _, cbar = _surface(obj)
    if cbar[0] != 0:
        return (False, ("universe-not-open", Subset(universe, cbar[0])))
    ok, wa, wi = kernels.kuratowski_single(cbar, universe.n)
    if not ok:
        return (False, ("union-splits", (Subset(universe, wa),
                                         universe.elements[wi])))
    return (True, None)


def is_topological(obj):
    """(ok, witness): decided by both routes, which must agree."""
    def build():
        direct, dwit = topological_direct(obj)
        kura, kwit = kuratowski_closure_check(obj)
        if direct != kura:
            raise AssertionError(
                f"topology routes disagree: direct={direct} "
                f"kuratowski={kura}")
        return (direct, dwit if dwit is not None else kwit)
    if isinstance(obj, SetOperator):
        return build()
    return obj.derived("topological", build)


def irreducible_masks(ec):
    """Nonempty subsets no pair of closed sets can split, ascending."""
    def build():
        return kernels.irreducibles(list(closed_masks(ec)), ec.universe.n)
    return ec.derived("irreducible", build)


def irreducible_subsets(ec) -> SubsetFamily:
    return SubsetFamily(ec.universe, irreducible_masks(ec))


def is_generated_by_irreducibles(ec):
    """(ok, witness): the irreducible subsets generate c."""
    return is_generated_by(ec, irreducible_subsets(ec))


def directed_masks(q: Qoset):
    """Nonempty subsets with internal pairwise upper bounds, ascending.

    On a finite qoset that is exactly the subsets containing an upper
    bound of themselves.
    """
    out = []
    for m in range(1, 1 << q.universe.n):
        mm = m
        while mm:
            low = mm & -mm
            i = low.bit_length() - 1
            mm ^= low
            if m & ~q.down[i] == 0:
                out.append(m)
                break
    return out


def alexandrov_irreducibles_are_directed(ec_or_q) -> TheoremReport:
    """For a down-set closure on a qoset, irreducible = directed."""
    if isinstance(ec_or_q, Qoset):
        q = ec_or_q
        op = alexandrov(q)
        ec = assemble(op, op, name="alexandrov")
    else:
        ec = ec_or_q
        q = spec_qoset(ec)
        if bytes(ec.c.table) != bytes(alexandrov(q).table):
            return TheoremReport(
                "alexandrov_irreducibles_are_directed",
                HYPOTHESIS_NOT_MET, {"c_is_downset_closure": False})
    irr = set(irreducible_masks(ec))
    directed = set(directed_masks(q))
    if irr != directed:
        diff = sorted(irr ^ directed)[0]
        return TheoremReport(
            "alexandrov_irreducibles_are_directed", INCONSISTENT,
            {"witness": Subset(q.universe, diff),
             "irreducible": diff in irr})
    return TheoremReport("alexandrov_irreducibles_are_directed", HOLDS,
                         {"count": len(irr)})


def topological_transfer(ec) -> TheoremReport:
    """Topology passes between the bracket and c along generation.

    Forward: a topological bracket with c generated by irreducibles makes
    c topological.  Backward: on a continuous structure a topological c is
    generated by irreducibles, with every way_down set of an element
    irreducible along the way.  Each implication is asserted whenever its
    hypotheses hold; if neither applies there is nothing to test.
    """
    bracket_topological, _ = is_topological(ec.bracket)
    gen_irr, gwit = is_generated_by_irreducibles(ec)
    c_topological, cwit = is_topological(ec)
    continuous, _ = is_continuous(ec)
    details = {"bracket_topological": bracket_topological,
               "generated_by_irreducibles": gen_irr,
               "c_topological": c_topological,
               "continuous": continuous}
    if gwit is not None:
        details["generation_witness"] = gwit
    if cwit is not None:
        details["topology_witness"] = cwit
    forward_applies = bracket_topological and gen_irr
    backward_applies = continuous and c_topological
    if forward_applies and not c_topological:
        return TheoremReport("topological_transfer", INCONSISTENT, details)
    if backward_applies:
        dda = waydown_table(ec)
        irr = set(irreducible_masks(ec))
        for x in range(ec.universe.n):
            if dda[1 << x] not in irr:
                details["waydown_not_irreducible"] = \
                    ec.universe.elements[x]
                return TheoremReport("topological_transfer", INCONSISTENT,
                                     details)
        if not gen_irr:
            return TheoremReport("topological_transfer", INCONSISTENT,
                                 details)
    if not forward_applies and not backward_applies:
        return TheoremReport("topological_transfer", HYPOTHESIS_NOT_MET,
                             details)
    return TheoremReport("topological_transfer", HOLDS, details)

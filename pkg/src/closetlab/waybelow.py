"""The way-below relation and continuity checks.

x is way below y when membership of y in c(A) forces x into bracket(A),
for every subset A.  way_down(x) collects everything way below x and
way_up(x) everything x is way below; both extend to subsets by union.
"""

from . import kernels
from .constructors import Qoset, alexandrov, specialization
from .core import Subset, SubsetFamily, associated_closure
from .reports import (HOLDS, HYPOTHESIS_NOT_MET, INCONSISTENT, TheoremReport)


class Relation:
    """Binary relation on a universe; rows[x] = mask of {y : x R y}."""

    __slots__ = ("universe", "rows")

    def __init__(self, universe, rows):
        rows = tuple(int(r) for r in rows)
        if len(rows) != universe.n:
            raise ValueError("need one row mask per element")
        for r in rows:
            if r < 0 or r > universe.full:
                raise ValueError("row mask out of range")
        self.universe = universe
        self.rows = rows

    @classmethod
    def from_columns(cls, universe, cols):
        rows = [0] * universe.n
        for y, col in enumerate(cols):
            for x in range(universe.n):
                if col >> x & 1:
                    rows[x] |= 1 << y
        return cls(universe, rows)

    @classmethod
    def from_qoset(cls, q):
        return cls(q.universe, q.up)

    def column(self, y):
        mask = 0
        for x in range(self.universe.n):
            if self.rows[x] >> y & 1:
                mask |= 1 << x
        return mask

    def columns(self):
        return [self.column(y) for y in range(self.universe.n)]

    def holds(self, x, y):
        """By element name."""
        u = self.universe
        return self.rows[u.index(x)] >> u.index(y) & 1 == 1

    def holds_index(self, i, j):
        return self.rows[i] >> j & 1 == 1

    def pairs(self):
        u = self.universe
        out = []
        for i in range(u.n):
            for j in range(u.n):
                if self.holds_index(i, j):
                    out.append((u.elements[i], u.elements[j]))
        return out

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return self.universe == other.universe and self.rows == other.rows

    __hash__ = None

    def __le__(self, other):
        """Subrelation test."""
        if self.universe != other.universe:
            raise ValueError("relations on different universes")
        return all(r & ~s == 0 for r, s in zip(self.rows, other.rows))

    def __repr__(self):
        return f"Relation({self.pairs()!r})"


# -- derived data cached on the structure ----------------------------------

def spec_qoset(ec) -> Qoset:
    return ec.derived("spec_qoset", lambda: specialization(ec.bracket))


def wb_columns(ec):
    """way_down masks per element: columns[y] = {x : x way below y}."""
    return ec.derived(
        "wb_columns",
        lambda: kernels.way_below_columns(ec.bracket.table, ec.c.table,
                                          ec.universe.n))


def wb_rows(ec):
    def build():
        cols = wb_columns(ec)
        n = ec.universe.n
        rows = [0] * n
        for y in range(n):
            col = cols[y]
            for x in range(n):
                if col >> x & 1:
                    rows[x] |= 1 << y
        return rows
    return ec.derived("wb_rows", build)


def waydown_table(ec):
    """Table A -> union of way_down(a) over a in A."""
    return ec.derived(
        "waydown_table",
        lambda: kernels.union_extend(wb_columns(ec), ec.universe.n))


def wayup_table(ec):
    """Table A -> union of way_up(a) over a in A."""
    return ec.derived(
        "wayup_table",
        lambda: kernels.union_extend(wb_rows(ec), ec.universe.n))


def weakly_closed_masks(ec):
    """Fixed points of the bracket, ascending."""
    return ec.derived(
        "weakly_closed",
        lambda: kernels.fixed_points(ec.bracket.table, ec.universe.n))


def closed_masks(ec):
    """Fixed points of c, ascending."""
    return ec.derived(
        "closed", lambda: kernels.fixed_points(ec.c.table, ec.universe.n))


def open_masks(ec):
    """Complements of the c-closed sets, ascending."""
    full = ec.universe.full
    return ec.derived(
        "open", lambda: sorted(full & ~m for m in closed_masks(ec)))


def cbar_table(ec):
    """Table of the closure operator associated with c (least closed
    superset)."""
    return ec.derived("cbar", lambda: associated_closure(ec.c).table)


# -- public operations ------------------------------------------------------

def way_below(ec) -> Relation:
    """The way-below relation, by exhaustive sweep over all subsets."""
    return ec.derived(
        "way_below",
        lambda: Relation.from_columns(ec.universe, wb_columns(ec)))


def way_below_fast(ec) -> Relation:
    """Way-below via the down-set shortcut.

    Only valid when the bracket is the down-closure of its own
    specialization qoset; that is verified, not assumed.  For such brackets
    the largest A whose bracket avoids x is the complement of up(x), so a
    single c lookup decides each row.
    """
    q = spec_qoset(ec)
    if bytes(alexandrov(q).table) != bytes(ec.bracket.table):
        from .core import OperatorError
        raise OperatorError(
            "bracket is not the down-closure of its specialization")
    rows = kernels.way_below_fast_rows(ec.c.table, list(q.up), ec.universe.n)
    return Relation(ec.universe, rows)


def way_down(ec, subset) -> Subset:
    """Everything way below some element of the subset."""
    return Subset(ec.universe, waydown_table(ec)[subset.mask])


def way_up(ec, subset) -> Subset:
    """Everything some element of the subset is way below."""
    return Subset(ec.universe, wayup_table(ec)[subset.mask])


def is_continuous(ec):
    """(ok, witness): every x must lie in c(way_down(x)).

    The witness is the first failing element in universe order.
    """
    cols = wb_columns(ec)
    ct = ec.c.table
    for x in range(ec.universe.n):
        if not ct[cols[x]] >> x & 1:
            return (False, ec.universe.elements[x])
    return (True, None)


def continuity_equivalences(ec, galois_cap=10) -> TheoremReport:
    """Four equivalent continuity conditions, swept and compared.

    1. every x lies in c(way_down(x));
    2. every A is contained in c(way_down(A));
    3. for weakly-closed A, B: way_down(A) <= B iff A <= c(B);
    4. c preserves intersections of weakly-closed pairs and fixes the
       full universe (which extensivity gives for free).
    Condition 3 is quadratic in the number of weakly-closed sets and is
    skipped above the cap.  Any disagreement among the computed conditions
    is INCONSISTENT.
    """
    n = ec.universe.n
    ct = ec.c.table
    details = {}

    cond1, wit1 = is_continuous(ec)
    details["cond1_pointwise"] = cond1
    if wit1 is not None:
        details["cond1_witness"] = wit1

    dda = waydown_table(ec)
    cond2, wit2 = True, None
    for a in range(1 << n):
        if a & ~ct[dda[a]]:
            cond2, wit2 = False, Subset(ec.universe, a)
            break
    details["cond2_subsets"] = cond2
    if wit2 is not None:
        details["cond2_witness"] = wit2

    wclosed = weakly_closed_masks(ec)
    if n <= galois_cap:
        cond3, wa, wb = kernels.galois_cond3(dda, ct, wclosed, n)
        details["cond3_galois"] = cond3
        if not cond3:
            details["cond3_witness"] = (Subset(ec.universe, wa),
                                        Subset(ec.universe, wb))
    else:
        cond3 = None
        details["cond3_galois"] = "skipped"

    cond4, wf, wg = kernels.cond4_pairs(ct, wclosed, n)
    if ct[ec.universe.full] != ec.universe.full:
        # unreachable for extensive c; kept so the condition reads complete
        cond4 = False
        wf = wg = ec.universe.full
    details["cond4_intersections"] = cond4
    if not cond4:
        details["cond4_witness"] = (Subset(ec.universe, wf),
                                    Subset(ec.universe, wg))

    computed = [cond1, cond2, cond4] + ([cond3] if cond3 is not None else [])
    agree = all(computed) or not any(computed)
    details["all_agree"] = agree
    return TheoremReport("continuity_equivalences",
                         HOLDS if agree else INCONSISTENT, details)


def open_characterization(ec) -> TheoremReport:
    """Open sets versus weakly-open way-upper sets.

    Always asserts: weakly-open and way-upper implies open.  When the
    structure is continuous, also asserts the converse for every subset.
    """
    n = ec.universe.n
    full = ec.universe.full
    bt = ec.bracket.table
    ct = ec.c.table
    uua = wayup_table(ec)
    continuous, _ = is_continuous(ec)
    details = {"continuous": continuous}
    for g in range(1 << n):
        comp = full & ~g
        weakly_open = bt[comp] == comp
        way_upper = uua[g] == g
        is_open = ct[comp] == comp
        if weakly_open and way_upper and not is_open:
            details["forward_witness"] = Subset(ec.universe, g)
            return TheoremReport("open_characterization", INCONSISTENT,
                                 details)
        if continuous and is_open and not (weakly_open and way_upper):
            details["converse_witness"] = Subset(ec.universe, g)
            return TheoremReport("open_characterization", INCONSISTENT,
                                 details)
    details["converse_checked"] = continuous
    return TheoremReport("open_characterization", HOLDS, details)


def waydown_connectedness(ec) -> TheoremReport:
    """On a continuous structure every way_down(x) is connected: no pair of
    disjoint open sets covering it splits it."""
    continuous, _ = is_continuous(ec)
    if not continuous:
        return TheoremReport("waydown_connectedness", HYPOTHESIS_NOT_MET,
                             {"continuous": False})
    opens = open_masks(ec)
    cols = wb_columns(ec)
    m = len(opens)
    for x in range(ec.universe.n):
        t = cols[x]
        for i in range(m):
            g = opens[i]
            for j in range(i + 1, m):
                h = opens[j]
                if g & h:
                    continue
                if t & ~(g | h):
                    continue
                if (t & ~g) and (t & ~h):
                    return TheoremReport(
                        "waydown_connectedness", INCONSISTENT,
                        {"element": ec.universe.elements[x],
                         "split": (Subset(ec.universe, g),
                                   Subset(ec.universe, h))})
    return TheoremReport("waydown_connectedness", HOLDS,
                         {"continuous": True})


def is_basis(ec, b) -> bool:
    """Every x must lie in c(way_down(x) restricted to the candidate)."""
    bm = b.mask if isinstance(b, Subset) else ec.universe.subset(b).mask
    cols = wb_columns(ec)
    ct = ec.c.table
    return all(ct[cols[x] & bm] >> x & 1 for x in range(ec.universe.n))


def compact_elements(ec) -> Subset:
    """Elements way below themselves."""
    cols = wb_columns(ec)
    mask = 0
    for x in range(ec.universe.n):
        if cols[x] >> x & 1:
            mask |= 1 << x
    return Subset(ec.universe, mask)


def is_algebraic(ec) -> bool:
    """The compact elements form a basis."""
    return is_basis(ec, compact_elements(ec))


def basis_characterization(ec, b) -> TheoremReport:
    """B is a basis iff the structure is continuous and way-below factors
    through B: x way below y forces x into bracket(way_down(y) meet B)."""
    bm = b.mask if isinstance(b, Subset) else ec.universe.subset(b).mask
    n = ec.universe.n
    cols = wb_columns(ec)
    bt = ec.bracket.table
    lhs = is_basis(ec, Subset(ec.universe, bm))
    continuous, _ = is_continuous(ec)
    factored = True
    witness = None
    for y in range(n):
        restricted = bt[cols[y] & bm]
        leftover = cols[y] & ~restricted
        if leftover:
            factored = False
            x = (leftover & -leftover).bit_length() - 1
            witness = (ec.universe.elements[x], ec.universe.elements[y])
            break
    rhs = continuous and factored
    details = {"basis": lhs, "continuous": continuous,
               "factors_through": factored}
    if witness is not None:
        details["factor_witness"] = witness
    status = HOLDS if lhs == rhs else INCONSISTENT
    return TheoremReport("basis_characterization", status, details)


def basic_law_violations(ec):
    """Order/way-below interplay laws, all checked exhaustively.

    Returns a list of (law, witness) pairs; empty means every law holds.
    Laws: way-below implies the specialization order; lowering the left or
    raising the right side of way-below preserves it; way-below is
    transitive; way_down(x) sits inside down(x) inside c({x}).
    """
    n = ec.universe.n
    q = spec_qoset(ec)
    rows = wb_rows(ec)
    cols = wb_columns(ec)
    ct = ec.c.table
    bad = []
    el = ec.universe.elements
    for x in range(n):
        if rows[x] & ~q.up[x]:
            y = (rows[x] & ~q.up[x]).bit_length() - 1
            bad.append(("way_below_implies_leq", (el[x], el[y])))
            break
    # x' <= x way-below y  =>  x' way-below y
    for y in range(n):
        lowered = q.down_mask(cols[y])
        if lowered & ~cols[y]:
            bad.append(("lower_left", el[y]))
            break
    # x way-below y <= y'  =>  x way-below y'
    for x in range(n):
        raised = q.up_mask(rows[x])
        if raised & ~rows[x]:
            bad.append(("raise_right", el[x]))
            break
    broken = False
    for x in range(n):
        m = rows[x]
        while m:
            low = m & -m
            y = low.bit_length() - 1
            if rows[y] & ~rows[x]:
                bad.append(("transitive", (el[x], el[y])))
                broken = True
                break
            m ^= low
        if broken:
            break
    for x in range(n):
        if cols[x] & ~q.down[x]:
            bad.append(("waydown_inside_down", el[x]))
            break
        if q.down[x] & ~ct[1 << x]:
            bad.append(("down_inside_c_singleton", el[x]))
            break
    return bad


def leq_relation(ec) -> Relation:
    """The specialization order of the bracket, as a relation."""
    return Relation.from_qoset(spec_qoset(ec))


def way_upper_masks(ec):
    """Subsets equal to their own way_up image, ascending."""
    uua = wayup_table(ec)
    return [g for g in range(1 << ec.universe.n) if uua[g] == g]

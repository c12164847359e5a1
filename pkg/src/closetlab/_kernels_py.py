"""Pure-Python bitmask kernels.

Fallback implementations used when the compiled extension is unavailable.
Every function here has a mirror of identical behaviour (including witness
scan order) in ``_kernels_cy``; tests assert the two backends agree.

Conventions: a subset of an n-element universe is an int bitmask with bit i
standing for element i.  An operator table is an ``array('Q')`` of length
2**n mapping each subset mask to its image mask.
"""

from array import array

BACKEND = "python"


def zeros(size):
    return array("Q", bytes(8 * size))


def union_extend(point_masks, n):
    """Table T with T[A] = union of point_masks[i] over i in A (T[0] = 0)."""
    size = 1 << n
    t = zeros(size)
    for a in range(1, size):
        low = a & -a
        t[a] = t[a ^ low] | point_masks[low.bit_length() - 1]
    return t


def intersect_extend(point_masks, n, empty_value):
    """Table T with T[A] = intersection of point_masks[i] over i in A.

    The empty intersection T[0] is ``empty_value`` (typically the full mask).
    """
    size = 1 << n
    t = zeros(size)
    t[0] = empty_value
    for a in range(1, size):
        low = a & -a
        t[a] = t[a ^ low] & point_masks[low.bit_length() - 1]
    return t


def zeta_or(values, n):
    """Subset-union transform: H[A] = union of values[D] over all D <= A."""
    h = array("Q", values)
    size = 1 << n
    for i in range(n):
        bit = 1 << i
        for a in range(size):
            if a & bit:
                h[a] |= h[a ^ bit]
    return h


def classify(table, n):
    """Classify an operator table.

    Returns (extensive, ext_wit, monotone, mono_wit_a, mono_wit_b,
    idempotent, idem_wit).  Witness fields are -1 when the flag is true,
    otherwise the first counterexample in ascending mask order (for
    monotonicity: first (A, A|{i}) pair with A ascending, then i ascending;
    a single added element suffices because any inclusion is a chain of
    single-element steps).
    """
    size = 1 << n
    extensive, ext_wit = True, -1
    for a in range(size):
        if a & ~table[a]:
            extensive, ext_wit = False, a
            break
    monotone, mono_a, mono_b = True, -1, -1
    for a in range(size):
        ta = table[a]
        for i in range(n):
            b = a | (1 << i)
            if b != a and ta & ~table[b]:
                monotone, mono_a, mono_b = False, a, b
                break
        if not monotone:
            break
    idempotent, idem_wit = True, -1
    for a in range(size):
        ta = table[a]
        if table[ta] != ta:
            idempotent, idem_wit = False, a
            break
    return (extensive, ext_wit, monotone, mono_a, mono_b, idempotent, idem_wit)


def fixed_points(table, n):
    """Masks F with table[F] == F, ascending."""
    return [a for a in range(1 << n) if table[a] == a]


def way_below_columns(bracket_table, c_table, n):
    """Per-element masks dd with dd[y] = {x : x is way below y}.

    x is way below y when every subset A with y in c(A) already has
    x in bracket(A); hence dd[y] is the intersection of bracket(A) over
    all A whose c-image contains y.
    """
    full = (1 << n) - 1
    dd = [full] * n
    for a in range(1 << n):
        cm = c_table[a]
        bm = bracket_table[a]
        while cm:
            low = cm & -cm
            dd[low.bit_length() - 1] &= bm
            cm ^= low
    return dd


def way_below_fast_rows(c_table, up_masks, n):
    """Rows of the way-below relation for a down-set bracket.

    When the bracket is the down-closure of a qoset, the largest A avoiding
    x in its down-closure is the complement of the up-set of x, so
    x is way below y  iff  y is not in c(complement of up(x)).
    Returns rows[x] = {y : x way below y}.
    """
    full = (1 << n) - 1
    return [full & ~c_table[full & ~up_masks[x]] for x in range(n)]


def galois_cond3(dda_table, c_table, wclosed, n):
    """Check (ddA <= B) iff (A <= c(B)) over all weakly-closed pairs.

    Returns (ok, wit_a, wit_b); witnesses are the first failing pair in the
    scan order of the supplied (sorted) list.
    """
    m = len(wclosed)
    for i in range(m):
        a = wclosed[i]
        da = dda_table[a]
        for j in range(m):
            b = wclosed[j]
            if (da & ~b == 0) != (a & ~c_table[b] == 0):
                return (False, a, b)
    return (True, 0, 0)


def cond4_pairs(c_table, wclosed, n):
    """Check c(F & G) == c(F) & c(G) over all weakly-closed pairs."""
    m = len(wclosed)
    for i in range(m):
        f = wclosed[i]
        cf = c_table[f]
        for j in range(i, m):
            g = wclosed[j]
            if c_table[f & g] != cf & c_table[g]:
                return (False, f, g)
    return (True, 0, 0)


def irreducibles(closed_list, n):
    """Nonempty masks R that no pair of closed sets splits.

    R is reducible when R <= F | G for closed F, G with neither F nor G
    containing R alone.  Exhaustive over all nonempty R and all pairs.
    """
    m = len(closed_list)
    out = []
    for r in range(1, 1 << n):
        good = True
        for i in range(m):
            f = closed_list[i]
            rf = r & ~f
            for j in range(i, m):
                g = closed_list[j]
                if rf and (r & ~g) and not (r & ~(f | g)):
                    good = False
                    break
            if not good:
                break
        if good:
            out.append(r)
    return out


def moore_pairwise(fam_list, full, n):
    """Moore-family check: pairwise intersections and the full universe.

    Finite sub-collections reduce to pairs by induction and the empty
    sub-collection contributes the full universe.  Returns
    (ok, code, wit_a, wit_b): code 0 ok, 1 missing pairwise intersection
    (witness pair), 2 full universe missing.
    """
    member = bytearray(1 << n)
    for f in fam_list:
        member[f] = 1
    m = len(fam_list)
    for i in range(m):
        f = fam_list[i]
        for j in range(i + 1, m):
            g = fam_list[j]
            if not member[f & g]:
                return (False, 1, f, g)
    if not member[full]:
        return (False, 2, 0, 0)
    return (True, 0, 0, 0)


def kuratowski_single(cbar_table, n):
    """Check cbar(A | {i}) <= cbar(A) | cbar({i}) for all A and i.

    Single-element unions suffice: a general union builds up one element at
    a time and cbar({b}) <= cbar(B) for b in B by monotonicity.
    Returns (ok, wit_a, wit_i).
    """
    size = 1 << n
    for a in range(size):
        ca = cbar_table[a]
        for i in range(n):
            bit = 1 << i
            if a & bit:
                continue
            if cbar_table[a | bit] & ~(ca | cbar_table[bit]):
                return (False, a, i)
    return (True, 0, 0)

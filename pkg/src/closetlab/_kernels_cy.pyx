# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitmask kernels.

Mirrors ``_kernels_py`` exactly, including witness scan order; see that
module for the documented contracts.  Tables are accepted as any sequence
of ints but ``array('Q')`` avoids a copy.
"""

from array import array as _pyarray

from cpython cimport array

BACKEND = "cython"

ctypedef unsigned long long u64

cdef array.array _Q_TEMPLATE = _pyarray("Q", [])


cdef inline array.array _qarr(object obj):
    if isinstance(obj, _pyarray) and obj.typecode == "Q":
        return <array.array> obj
    return _pyarray("Q", obj)


cdef inline array.array _qzeros(Py_ssize_t size):
    return array.clone(_Q_TEMPLATE, size, True)


cdef inline int _ctz(u64 v) nogil:
    cdef int i = 0
    while not (v & 1):
        v >>= 1
        i += 1
    return i


def zeros(size):
    return _qzeros(size)


def union_extend(point_masks, int n):
    """Table T with T[A] = union of point_masks[i] over i in A (T[0] = 0)."""
    cdef array.array pm_arr = _qarr(point_masks)
    cdef u64[::1] pm = pm_arr
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef array.array out = _qzeros(size)
    cdef u64[::1] t = out
    cdef Py_ssize_t a
    cdef u64 low
    for a in range(1, size):
        low = (<u64>a) & (<u64>(-a))
        t[a] = t[a ^ <Py_ssize_t>low] | pm[_ctz(low)]
    return out


def intersect_extend(point_masks, int n, empty_value):
    """Table T with T[A] = intersection over i in A; T[0] = empty_value."""
    cdef array.array pm_arr = _qarr(point_masks)
    cdef u64[::1] pm = pm_arr
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef array.array out = _qzeros(size)
    cdef u64[::1] t = out
    cdef Py_ssize_t a
    cdef u64 low
    t[0] = <u64> empty_value
    for a in range(1, size):
        low = (<u64>a) & (<u64>(-a))
        t[a] = t[a ^ <Py_ssize_t>low] & pm[_ctz(low)]
    return out


def zeta_or(values, int n):
    """Subset-union transform: H[A] = union of values[D] over all D <= A."""
    cdef array.array src = _qarr(values)
    cdef array.array out = array.copy(src)
    cdef u64[::1] h = out
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t a, bit
    cdef int i
    for i in range(n):
        bit = (<Py_ssize_t>1) << i
        for a in range(size):
            if a & bit:
                h[a] |= h[a ^ bit]
    return out


def classify(table, int n):
    """See _kernels_py.classify; identical scan order and witnesses."""
    cdef array.array tarr = _qarr(table)
    cdef u64[::1] t = tarr
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t a, b
    cdef int i
    cdef u64 ta
    cdef bint extensive = True, monotone = True, idempotent = True
    cdef long long ext_wit = -1, mono_a = -1, mono_b = -1, idem_wit = -1
    for a in range(size):
        if (<u64>a) & ~t[a]:
            extensive = False
            ext_wit = a
            break
    for a in range(size):
        ta = t[a]
        for i in range(n):
            b = a | ((<Py_ssize_t>1) << i)
            if b != a and ta & ~t[b]:
                monotone = False
                mono_a = a
                mono_b = b
                break
        if not monotone:
            break
    for a in range(size):
        ta = t[a]
        if t[<Py_ssize_t>ta] != ta:
            idempotent = False
            idem_wit = a
            break
    return (bool(extensive), ext_wit, bool(monotone), mono_a, mono_b,
            bool(idempotent), idem_wit)


def fixed_points(table, int n):
    """Masks F with table[F] == F, ascending."""
    cdef array.array tarr = _qarr(table)
    cdef u64[::1] t = tarr
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t a
    out = []
    for a in range(size):
        if t[a] == <u64>a:
            out.append(a)
    return out


def way_below_columns(bracket_table, c_table, int n):
    """See _kernels_py.way_below_columns."""
    cdef array.array barr = _qarr(bracket_table)
    cdef array.array carr = _qarr(c_table)
    cdef u64[::1] bt = barr
    cdef u64[::1] ct = carr
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef u64 full = ((<u64>1) << n) - 1
    cdef array.array dd_arr = _qzeros(n)
    cdef u64[::1] dd = dd_arr
    cdef Py_ssize_t a
    cdef u64 cm, bm, low
    cdef int y
    for y in range(n):
        dd[y] = full
    for a in range(size):
        cm = ct[a]
        bm = bt[a]
        while cm:
            low = cm & (~cm + 1)
            dd[_ctz(low)] &= bm
            cm ^= low
    return list(dd_arr)


def way_below_fast_rows(c_table, up_masks, int n):
    """See _kernels_py.way_below_fast_rows."""
    cdef array.array carr = _qarr(c_table)
    cdef array.array uarr = _qarr(up_masks)
    cdef u64[::1] ct = carr
    cdef u64[::1] up = uarr
    cdef u64 full = ((<u64>1) << n) - 1
    cdef int x
    out = []
    for x in range(n):
        out.append(full & ~ct[<Py_ssize_t>(full & ~up[x])])
    return out


def galois_cond3(dda_table, c_table, wclosed, int n):
    """See _kernels_py.galois_cond3."""
    cdef array.array darr = _qarr(dda_table)
    cdef array.array carr = _qarr(c_table)
    cdef array.array warr = _qarr(wclosed)
    cdef u64[::1] dt = darr
    cdef u64[::1] ct = carr
    cdef u64[::1] w = warr
    cdef Py_ssize_t m = len(warr)
    cdef Py_ssize_t i, j
    cdef u64 a, b, da
    for i in range(m):
        a = w[i]
        da = dt[<Py_ssize_t>a]
        for j in range(m):
            b = w[j]
            if ((da & ~b) == 0) != ((a & ~ct[<Py_ssize_t>b]) == 0):
                return (False, int(a), int(b))
    return (True, 0, 0)


def cond4_pairs(c_table, wclosed, int n):
    """See _kernels_py.cond4_pairs."""
    cdef array.array carr = _qarr(c_table)
    cdef array.array warr = _qarr(wclosed)
    cdef u64[::1] ct = carr
    cdef u64[::1] w = warr
    cdef Py_ssize_t m = len(warr)
    cdef Py_ssize_t i, j
    cdef u64 f, g, cf
    for i in range(m):
        f = w[i]
        cf = ct[<Py_ssize_t>f]
        for j in range(i, m):
            g = w[j]
            if ct[<Py_ssize_t>(f & g)] != (cf & ct[<Py_ssize_t>g]):
                return (False, int(f), int(g))
    return (True, 0, 0)


def irreducibles(closed_list, int n):
    """See _kernels_py.irreducibles."""
    cdef array.array carr = _qarr(closed_list)
    cdef u64[::1] cl = carr
    cdef Py_ssize_t m = len(carr)
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t r, i, j
    cdef u64 f, g, rf, rm
    cdef bint good
    out = []
    for r in range(1, size):
        rm = <u64> r
        good = True
        for i in range(m):
            f = cl[i]
            rf = rm & ~f
            for j in range(i, m):
                g = cl[j]
                if rf and (rm & ~g) and not (rm & ~(f | g)):
                    good = False
                    break
            if not good:
                break
        if good:
            out.append(r)
    return out


def moore_pairwise(fam_list, full, int n):
    """See _kernels_py.moore_pairwise."""
    cdef array.array farr = _qarr(fam_list)
    cdef u64[::1] fam = farr
    cdef Py_ssize_t m = len(farr)
    cdef u64 fullm = <u64> full
    cdef bytearray member_ba = bytearray((<Py_ssize_t>1) << n)
    cdef unsigned char[::1] member = member_ba
    cdef Py_ssize_t i, j
    cdef u64 f, g
    for i in range(m):
        member[<Py_ssize_t>fam[i]] = 1
    for i in range(m):
        f = fam[i]
        for j in range(i + 1, m):
            g = fam[j]
            if not member[<Py_ssize_t>(f & g)]:
                return (False, 1, int(f), int(g))
    if not member[<Py_ssize_t>fullm]:
        return (False, 2, 0, 0)
    return (True, 0, 0, 0)


def kuratowski_single(cbar_table, int n):
    """See _kernels_py.kuratowski_single."""
    cdef array.array carr = _qarr(cbar_table)
    cdef u64[::1] ct = carr
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t a, bit
    cdef int i
    cdef u64 ca
    for a in range(size):
        ca = ct[a]
        for i in range(n):
            bit = (<Py_ssize_t>1) << i
            if a & bit:
                continue
            if ct[a | bit] & ~(ca | ct[bit]):
                return (False, a, i)
    return (True, 0, 0)

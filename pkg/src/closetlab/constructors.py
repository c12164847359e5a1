"""Qosets, maps between universes, named operator constructors, assembly.

An enriched structure pairs a closure operator (the bracket) with a
compatible preclosure: applying the bracket before or after the preclosure
changes nothing.  All constructors here produce operators compatible with
the down-closure of the qoset they are built from; ``assemble`` re-verifies
instead of assuming.
"""

from array import array

from . import kernels
from .core import (OperatorError, CompatibilityError, SetOperator, Subset,
                   SubsetFamily, Universe)


class Qoset:
    """Reflexive transitive relation on a universe.

    ``up[i]`` is the mask of elements j with i <= j.  Derived tables are
    cached: ``down_table[A]`` is the down-closure of A, ``ub_table[A]`` the
    set of upper bounds of A, ``lb_table[A]`` the set of lower bounds.
    """

    __slots__ = ("universe", "up", "_cache")

    def __init__(self, universe, up):
        up = tuple(int(m) for m in up)
        if len(up) != universe.n:
            raise ValueError("need one up-set mask per element")
        for i, m in enumerate(up):
            if m < 0 or m > universe.full:
                raise ValueError(f"up-set mask {m:#x} out of range")
            if not m >> i & 1:
                raise ValueError(
                    f"relation is not reflexive at {universe.elements[i]}")
        for i in range(universe.n):
            m = up[i]
            j = 0
            mm = m
            while mm:
                low = mm & -mm
                j = low.bit_length() - 1
                if up[j] & ~m:
                    raise ValueError(
                        "relation is not transitive at "
                        f"{universe.elements[i]} <= {universe.elements[j]}")
                mm ^= low
        self.universe = universe
        self.up = up
        self._cache = {}

    def _derived(self, key, build):
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = build()
            return value

    @property
    def down(self):
        def build():
            n = self.universe.n
            down = [0] * n
            for i in range(n):
                m = self.up[i]
                while m:
                    low = m & -m
                    down[low.bit_length() - 1] |= 1 << i
                    m ^= low
            return tuple(down)
        return self._derived("down", build)

    @property
    def down_table(self):
        return self._derived(
            "down_table",
            lambda: kernels.union_extend(list(self.down), self.universe.n))

    @property
    def up_table(self):
        return self._derived(
            "up_table",
            lambda: kernels.union_extend(list(self.up), self.universe.n))

    @property
    def ub_table(self):
        return self._derived(
            "ub_table",
            lambda: kernels.intersect_extend(
                list(self.up), self.universe.n, self.universe.full))

    @property
    def lb_table(self):
        return self._derived(
            "lb_table",
            lambda: kernels.intersect_extend(
                list(self.down), self.universe.n, self.universe.full))

    def leq(self, a, b):
        """a <= b by element name."""
        return self.up[self.universe.index(a)] >> self.universe.index(b) & 1 == 1

    def leq_index(self, i, j):
        return self.up[i] >> j & 1 == 1

    def down_mask(self, mask):
        out = 0
        down = self.down
        while mask:
            low = mask & -mask
            out |= down[low.bit_length() - 1]
            mask ^= low
        return out

    def up_mask(self, mask):
        out = 0
        while mask:
            low = mask & -mask
            out |= self.up[low.bit_length() - 1]
            mask ^= low
        return out

    @property
    def is_poset(self):
        def build():
            for i in range(self.universe.n):
                if self.up[i] & self.down[i] != 1 << i:
                    return False
            return True
        return self._derived("is_poset", build)

    def topo_order(self):
        """Element indices sorted so smaller elements come first."""
        return self._derived(
            "topo",
            lambda: tuple(sorted(range(self.universe.n),
                                 key=lambda i: (self.down[i].bit_count(), i))))

    def order_pairs(self):
        """All (a, b) name pairs with a <= b, reflexive pairs included."""
        out = []
        for i in range(self.universe.n):
            for j in range(self.universe.n):
                if self.leq_index(i, j):
                    out.append((self.universe.elements[i],
                                self.universe.elements[j]))
        return out

    def __eq__(self, other):
        if not isinstance(other, Qoset):
            return NotImplemented
        return self.universe == other.universe and self.up == other.up

    __hash__ = None

    def __repr__(self):
        return f"Qoset(n={self.universe.n}, poset={self.is_poset})"


def qoset_from_pairs(universe, pairs):
    """Reflexive-transitive closure of the given (a, b) name pairs."""
    n = universe.n
    up = [1 << i for i in range(n)]
    for a, b in pairs:
        up[universe.index(a)] |= 1 << universe.index(b)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            m = up[i]
            acc = m
            mm = m
            while mm:
                low = mm & -mm
                acc |= up[low.bit_length() - 1]
                mm ^= low
            if acc != m:
                up[i] = acc
                changed = True
    return Qoset(universe, up)


class SpaceMap:
    """Element map between two universes (possibly the same one)."""

    __slots__ = ("source", "target", "image")

    def __init__(self, source, target, image):
        image = tuple(int(i) for i in image)
        if len(image) != source.n:
            raise ValueError("need one image per source element")
        for i in image:
            if i < 0 or i >= target.n:
                raise ValueError("image index out of range")
        self.source = source
        self.target = target
        self.image = image

    @classmethod
    def from_names(cls, source, target, mapping):
        image = [target.index(mapping[name]) for name in source.elements]
        return cls(source, target, image)

    def to_names(self):
        return {self.source.elements[i]: self.target.elements[self.image[i]]
                for i in range(self.source.n)}

    def apply_index(self, i):
        return self.image[i]

    def apply(self, name):
        return self.target.elements[self.image[self.source.index(name)]]

    def mask_image(self, mask):
        out = 0
        while mask:
            low = mask & -mask
            out |= 1 << self.image[low.bit_length() - 1]
            mask ^= low
        return out

    def point_masks(self):
        return [1 << self.image[i] for i in range(self.source.n)]

    def is_monotone(self, qs, qt):
        """(ok, witness_pair) against the given source/target qosets."""
        for i in range(self.source.n):
            m = qs.up[i]
            while m:
                low = m & -m
                j = low.bit_length() - 1
                if not qt.leq_index(self.image[i], self.image[j]):
                    return (False, (self.source.elements[i],
                                    self.source.elements[j]))
                m ^= low
        return (True, None)

    def is_inflationary(self, q):
        """x <= f(x) for all x (source and target must coincide)."""
        for i in range(self.source.n):
            if not q.leq_index(i, self.image[i]):
                return (False, self.source.elements[i])
        return (True, None)

    def is_deflationary(self, q):
        for i in range(self.source.n):
            if not q.leq_index(self.image[i], i):
                return (False, self.source.elements[i])
        return (True, None)

    def is_surjective(self):
        return len(set(self.image)) == self.target.n

    def compose(self, other):
        """self after other."""
        if other.target != self.source:
            raise ValueError("maps do not compose")
        return SpaceMap(other.source, self.target,
                        [self.image[other.image[i]] for i in range(other.source.n)])

    def __eq__(self, other):
        if not isinstance(other, SpaceMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.image == other.image)

    __hash__ = None

    def __repr__(self):
        return f"SpaceMap({self.to_names()!r})"


def identity_map(universe):
    return SpaceMap(universe, universe, list(range(universe.n)))


class EnrichedCloset:
    """A closure operator (bracket) plus a compatible preclosure (c)."""

    __slots__ = ("universe", "bracket", "c", "name", "_cache")

    def __init__(self, universe, bracket, c, name=None, validate=True):
        self.universe = universe
        self.bracket = bracket
        self.c = c
        self.name = name
        self._cache = {}
        if validate:
            _validate_closet(self)

    def derived(self, key, build):
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = build()
            return value

    def __repr__(self):
        label = self.name or f"{self.bracket.kind}/{self.c.kind}"
        return f"EnrichedCloset({label}, n={self.universe.n})"


def _validate_closet(ec):
    if ec.bracket.universe != ec.universe or ec.c.universe != ec.universe:
        raise CompatibilityError("operators live on different universes")
    bcl = ec.bracket.classification
    if not bcl.is_closure:
        missing = [k for k, ok in (("extensive", bcl.extensive),
                                   ("monotone", bcl.monotone),
                                   ("idempotent", bcl.idempotent)) if not ok]
        raise OperatorError(
            f"bracket is not a closure operator (fails: {', '.join(missing)})",
            witness=bcl.witnesses.get(missing[0]))
    ccl = ec.c.classification
    if not ccl.is_preclosure:
        missing = [k for k, ok in (("extensive", ccl.extensive),
                                   ("monotone", ccl.monotone)) if not ok]
        raise OperatorError(
            f"c is not a preclosure (fails: {', '.join(missing)})",
            witness=ccl.witnesses.get(missing[0]))
    bt = ec.bracket.table
    ct = ec.c.table
    for a in range(1 << ec.universe.n):
        ca = ct[a]
        if bt[ca] != ca:
            raise CompatibilityError(
                "bracket(c(A)) != c(A)", witness=Subset(ec.universe, a))
        if ct[bt[a]] != ca:
            raise CompatibilityError(
                "c(bracket(A)) != c(A)", witness=Subset(ec.universe, a))


def assemble(bracket, c, name=None):
    """Validate and build an enriched structure from its two operators."""
    return EnrichedCloset(bracket.universe, bracket, c, name=name)


def specialization(bracket):
    """Qoset with x <= y iff x lands in the bracket of {y}."""
    if not bracket.classification.is_closure:
        raise OperatorError("specialization needs a closure operator")
    universe = bracket.universe
    n = universe.n
    up = [0] * n
    for y in range(n):
        col = bracket.apply_mask(1 << y)
        for x in range(n):
            if col >> x & 1:
                up[x] |= 1 << y
    return Qoset(universe, up)


def alexandrov(q):
    """Down-closure operator of a qoset."""
    down = q.down

    def fn(mask):
        out = 0
        while mask:
            low = mask & -mask
            out |= down[low.bit_length() - 1]
            mask ^= low
        return out

    return SetOperator.from_rule(
        q.universe, fn, "alexandrov",
        bulk=lambda: q.down_table, spec={"kind": "alexandrov"})


def dedekind_macneille(q):
    """Cut closure: lower bounds of the upper bounds of the argument."""
    up, down = q.up, q.down
    full = q.universe.full

    def fn(mask):
        ubs = full
        m = mask
        while m:
            low = m & -m
            ubs &= up[low.bit_length() - 1]
            m ^= low
        out = full
        while ubs:
            low = ubs & -ubs
            out &= down[low.bit_length() - 1]
            ubs ^= low
        return out

    def bulk():
        ub = q.ub_table
        lb = q.lb_table
        return array("Q", [lb[ub[a]] for a in range(1 << q.universe.n)])

    return SetOperator.from_rule(q.universe, fn, "dedekind_macneille",
                                 bulk=bulk, spec={"kind": "dedekind_macneille"})


def directed_sup(q):
    """Union of cut closures of directed subsets of the down-closure.

    Directed means nonempty with an internal upper bound for every pair; in
    a finite poset that is equivalent to having a maximum, so every directed
    subset has a supremum.  Requires a poset.
    """
    if not q.is_poset:
        raise OperatorError("directed_sup requires a poset")
    n = q.universe.n
    size = 1 << n
    down = q.down
    ub = q.ub_table
    lb = q.lb_table
    g = kernels.zeros(size)
    for d in range(1, size):
        m = d
        directed = False
        while m:
            low = m & -m
            if d & ~down[low.bit_length() - 1] == 0:
                directed = True
                break
            m ^= low
        if directed:
            g[d] = lb[ub[d]]
    h = kernels.zeta_or(g, n)
    dt = q.down_table
    table = array("Q", [h[dt[a]] for a in range(size)])
    return SetOperator.from_table(q.universe, table, kind="directed_sup",
                                  spec={"kind": "directed_sup"})


def inflationary(q, m):
    """Down-closure of the image of the down-closure under an inflationary map.

    The map must be monotone and inflationary; the result is idempotent
    exactly when the map is (checked by classification, not assumed).
    """
    if m.source != q.universe or m.target != q.universe:
        raise OperatorError("map must be a self-map of the qoset universe")
    ok, wit = m.is_monotone(q, q)
    if not ok:
        raise OperatorError(f"map is not monotone at {wit}", witness=wit)
    ok, wit = m.is_inflationary(q)
    if not ok:
        raise OperatorError(f"map is not inflationary at {wit}", witness=wit)
    down = q.down
    pm = [down[m.image[i]] for i in range(q.universe.n)]

    def fn(mask):
        d = q.down_mask(mask)
        out = 0
        while d:
            low = d & -d
            out |= pm[low.bit_length() - 1]
            d ^= low
        return out

    def bulk():
        u = kernels.union_extend(pm, q.universe.n)
        dt = q.down_table
        return array("Q", [u[dt[a]] for a in range(1 << q.universe.n)])

    return SetOperator.from_rule(
        q.universe, fn, "inflationary", bulk=bulk,
        spec={"kind": "inflationary", "map": m.to_names()})


def novak(qp, qq, left, right, strict=False):
    """Round-trip closure through a second qoset.

    ``right`` maps P to Q, ``left`` maps Q back to P; the image of A is the
    down-closure (in P) of left applied to the Q-down-closure of right(A).
    Preconditions: both maps monotone and x <= left(right(x)).  Strict mode
    additionally demands that right reflects the order and that either
    right(left(y)) <= y everywhere or right is surjective; the closed-form
    way-below description only applies then.
    """
    if right.source != qp.universe or right.target != qq.universe:
        raise OperatorError("right must map P to Q")
    if left.source != qq.universe or left.target != qp.universe:
        raise OperatorError("left must map Q to P")
    ok, wit = right.is_monotone(qp, qq)
    if not ok:
        raise OperatorError(f"right is not monotone at {wit}", witness=wit)
    ok, wit = left.is_monotone(qq, qp)
    if not ok:
        raise OperatorError(f"left is not monotone at {wit}", witness=wit)
    for i in range(qp.universe.n):
        if not qp.leq_index(i, left.image[right.image[i]]):
            name = qp.universe.elements[i]
            raise OperatorError(
                f"x <= left(right(x)) fails at {name}", witness=name)
    if strict:
        for i in range(qp.universe.n):
            for j in range(qp.universe.n):
                if (qq.leq_index(right.image[i], right.image[j])
                        and not qp.leq_index(i, j)):
                    raise OperatorError(
                        "strict mode: right does not reflect the order at "
                        f"({qp.universe.elements[i]}, {qp.universe.elements[j]})")
        reflects_back = all(
            qq.leq_index(right.image[left.image[y]], y)
            for y in range(qq.universe.n))
        if not (reflects_back or right.is_surjective()):
            raise OperatorError(
                "strict mode: need right(left(y)) <= y or right surjective")
    downp = qp.down
    pm = [downp[left.image[y]] for y in range(qq.universe.n)]

    def fn(mask):
        rimg = right.mask_image(mask)
        dq = qq.down_mask(rimg)
        out = 0
        while dq:
            low = dq & -dq
            out |= pm[low.bit_length() - 1]
            dq ^= low
        return out

    spec = {"kind": "novak",
            "q_elements": list(qq.universe.elements),
            "q_order": [[a, b] for a, b in qq.order_pairs()],
            "l": left.to_names(), "r": right.to_names(),
            "strict": bool(strict)}
    return SetOperator.from_rule(qp.universe, fn, "novak", spec=spec)


def selfmap_family(q, maps):
    """Preimage-style operator from a family of monotone self-maps.

    x lands in the image of A when some map sends x into the down-closure
    of A.  At least one map must be deflationary (that forces extensivity).
    """
    maps = list(maps)
    if not maps:
        raise OperatorError("need at least one self-map")
    for m in maps:
        if m.source != q.universe or m.target != q.universe:
            raise OperatorError("family members must be self-maps")
        ok, wit = m.is_monotone(q, q)
        if not ok:
            raise OperatorError(f"map is not monotone at {wit}", witness=wit)
    if not any(m.is_deflationary(q)[0] for m in maps):
        raise OperatorError("need at least one deflationary map")
    n = q.universe.n
    targets = [0] * n
    for m in maps:
        for i in range(n):
            targets[i] |= 1 << m.image[i]

    def fn(mask):
        d = q.down_mask(mask)
        out = 0
        for i in range(n):
            if targets[i] & d:
                out |= 1 << i
        return out

    spec = {"kind": "selfmap_family", "maps": [m.to_names() for m in maps]}
    return SetOperator.from_rule(q.universe, fn, "selfmap_family", spec=spec)


def compact_set(q, k):
    """Operator admitting exactly the members of K as compact elements.

    x lands in the image of A when the down-set of x is covered by the
    down-closure of A together with the complement of K.
    """
    if isinstance(k, Subset):
        if k.universe != q.universe:
            raise OperatorError("K lives on a different universe")
        kmask = k.mask
    else:
        kmask = q.universe.subset(k).mask
    if kmask == 0:
        raise OperatorError("K must be nonempty")
    n = q.universe.n
    down = q.down
    rest = q.universe.full & ~kmask

    def fn(mask):
        cover = q.down_mask(mask) | rest
        out = 0
        for i in range(n):
            if down[i] & ~cover == 0:
                out |= 1 << i
        return out

    spec = {"kind": "compact_set",
            "K": list(q.universe.names_of_mask(kmask))}
    return SetOperator.from_rule(q.universe, fn, "compact_set", spec=spec)


def upper_topology(q):
    """Topological closure for the topology whose closed sets are generated
    by the principal down-sets as a subbase.

    A basic closed set is a union of principal down-sets, so the closure of
    A picks the elements a whose every enclosing principal down-set choice
    is unavoidable: the intersection over all basic closed supersets of A
    collapses to the union over a in A of the intersection of down(y) over
    y >= a (choices are independent per element).
    """
    n = q.universe.n
    down = q.down
    full = q.universe.full
    core = [0] * n
    for a in range(n):
        acc = full
        m = q.up[a]
        while m:
            low = m & -m
            acc &= down[low.bit_length() - 1]
            m ^= low
        core[a] = acc

    def fn(mask):
        out = 0
        while mask:
            low = mask & -mask
            out |= core[low.bit_length() - 1]
            mask ^= low
        return out

    return SetOperator.from_rule(
        q.universe, fn, "upper_topology",
        bulk=lambda: kernels.union_extend(core, n),
        spec={"kind": "upper_topology"})


def generated_operator(ec, fam):
    """Operator generated by a family: union of c(D) over family members D
    inside the bracket of the argument.

    Monotone by construction; extensivity is verified and its failure
    reported with the smallest failing subset.  The empty set is admitted
    as a family member (it contributes c of the empty set everywhere).
    """
    if isinstance(fam, SubsetFamily):
        if fam.universe != ec.universe:
            raise OperatorError("family lives on a different universe")
        masks = fam.masks
    else:
        items = list(fam)
        if items and isinstance(items[0], Subset):
            for s in items:
                if s.universe != ec.universe:
                    raise OperatorError("family lives on a different universe")
            masks = SubsetFamily(ec.universe, [s.mask for s in items]).masks
        else:
            masks = SubsetFamily(ec.universe, items).masks
    n = ec.universe.n
    size = 1 << n
    ct = ec.c.table
    g = kernels.zeros(size)
    for d in masks:
        g[d] = ct[d]
    h = kernels.zeta_or(g, n)
    bt = ec.bracket.table
    table = array("Q", [h[bt[a]] for a in range(size)])
    for a in range(size):
        if a & ~table[a]:
            raise OperatorError(
                "generated operator is not extensive: no family member "
                "covers part of the argument",
                witness=Subset(ec.universe, a))
    spec = {"kind": "generated",
            "base": ec.c.spec or {"kind": "table"},
            "family": [list(ec.universe.names_of_mask(d)) for d in masks]}
    return SetOperator.from_table(ec.universe, table, kind="generated",
                                  spec=spec)

"""Finite universes, subsets-as-bitmasks, and set operators.

The whole library works over an explicit finite universe whose subsets are
int bitmasks (bit i = element index i).  A ``SetOperator`` is a total map
from subsets to subsets; the interesting ones are preclosures (extensive and
monotone) and closures (idempotent preclosures).
"""

import os
from array import array
from dataclasses import dataclass

from . import kernels

DEFAULT_MAX_N = 16
HARD_MAX_N = 20
MAX_N_ENV = "CLOSETLAB_MAX_N"

_LAZY_SENTINEL = 0xFFFFFFFFFFFFFFFF


class ClosetError(Exception):
    """Base class for structure construction and validation failures."""


class UniverseSizeError(ClosetError):
    pass


class OperatorError(ClosetError):
    """Operator precondition failure; carries an optional witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CompatibilityError(ClosetError):
    """The two operators of a candidate structure disagree; carries witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def resolve_max_n(explicit=None):
    """Effective universe size cap: explicit value, else env, else default."""
    if explicit is not None:
        cap = int(explicit)
    else:
        env = os.environ.get(MAX_N_ENV, "").strip()
        cap = int(env) if env else DEFAULT_MAX_N
    return cap


class Universe:
    """Ordered tuple of distinct element names."""

    __slots__ = ("elements", "n", "full", "_index")

    def __init__(self, elements, max_n=None):
        elements = tuple(str(e) for e in elements)
        if not elements:
            raise UniverseSizeError("universe must have at least one element")
        if len(set(elements)) != len(elements):
            raise UniverseSizeError("universe elements must be distinct")
        cap = min(resolve_max_n(max_n), HARD_MAX_N)
        if len(elements) > cap:
            raise UniverseSizeError(
                f"universe has {len(elements)} elements, cap is {cap}")
        self.elements = elements
        self.n = len(elements)
        self.full = (1 << self.n) - 1
        self._index = {name: i for i, name in enumerate(elements)}

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown element {name!r}") from None

    def subset(self, names=()):
        mask = 0
        for name in names:
            mask |= 1 << self.index(name)
        return Subset(self, mask)

    def subset_of_mask(self, mask):
        if mask < 0 or mask > self.full:
            raise ValueError(f"mask {mask:#x} out of range for n={self.n}")
        return Subset(self, mask)

    def singleton(self, name):
        return Subset(self, 1 << self.index(name))

    def empty_subset(self):
        return Subset(self, 0)

    def full_subset(self):
        return Subset(self, self.full)

    def names_of_mask(self, mask):
        return tuple(self.elements[i] for i in range(self.n) if mask >> i & 1)

    def all_subsets(self):
        for mask in range(1 << self.n):
            yield Subset(self, mask)

    def __eq__(self, other):
        return isinstance(other, Universe) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"Universe({list(self.elements)!r})"


def _require_same_universe(a, b):
    if a.universe != b.universe:
        raise ValueError("subsets belong to different universes")


class Subset:
    """Immutable subset of a universe, backed by a bitmask."""

    __slots__ = ("universe", "mask")

    def __init__(self, universe, mask):
        if mask < 0 or mask > universe.full:
            raise ValueError(f"mask {mask:#x} out of range")
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("Subset is immutable")

    def names(self):
        return self.universe.names_of_mask(self.mask)

    def __iter__(self):
        return iter(self.names())

    def __len__(self):
        return self.mask.bit_count()

    def __bool__(self):
        return self.mask != 0

    def __contains__(self, name):
        return self.mask >> self.universe.index(name) & 1 == 1

    def __eq__(self, other):
        if not isinstance(other, Subset):
            return NotImplemented
        return self.universe == other.universe and self.mask == other.mask

    def __hash__(self):
        return hash((self.universe.elements, self.mask))

    def __le__(self, other):
        _require_same_universe(self, other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other):
        return self <= other and self.mask != other.mask

    def __or__(self, other):
        _require_same_universe(self, other)
        return Subset(self.universe, self.mask | other.mask)

    def __and__(self, other):
        _require_same_universe(self, other)
        return Subset(self.universe, self.mask & other.mask)

    def __sub__(self, other):
        _require_same_universe(self, other)
        return Subset(self.universe, self.mask & ~other.mask)

    def complement(self):
        return Subset(self.universe, self.universe.full & ~self.mask)

    def __repr__(self):
        return "{" + ", ".join(self.names()) + "}"


class SubsetFamily:
    """Deduplicated collection of subsets of one universe."""

    __slots__ = ("universe", "masks")

    def __init__(self, universe, masks):
        self.universe = universe
        self.masks = tuple(sorted(set(masks)))
        for m in self.masks:
            if m < 0 or m > universe.full:
                raise ValueError(f"mask {m:#x} out of range")

    @classmethod
    def from_subsets(cls, subsets):
        subsets = list(subsets)
        if not subsets:
            raise ValueError("cannot infer universe from an empty family")
        universe = subsets[0].universe
        for s in subsets:
            _require_same_universe(subsets[0], s)
        return cls(universe, [s.mask for s in subsets])

    def subsets(self):
        return tuple(Subset(self.universe, m) for m in self.masks)

    def __iter__(self):
        return iter(self.subsets())

    def __len__(self):
        return len(self.masks)

    def __contains__(self, item):
        mask = item.mask if isinstance(item, Subset) else int(item)
        return mask in set(self.masks)

    def __eq__(self, other):
        if not isinstance(other, SubsetFamily):
            return NotImplemented
        return self.universe == other.universe and self.masks == other.masks

    def __hash__(self):
        return hash((self.universe.elements, self.masks))

    def __repr__(self):
        return "SubsetFamily([" + ", ".join(
            repr(s) for s in self.subsets()) + "])"


@dataclass(frozen=True)
class Classification:
    """Extensive/monotone/idempotent flags with counterexample witnesses."""

    extensive: bool
    monotone: bool
    idempotent: bool
    witnesses: dict

    @property
    def is_preclosure(self):
        return self.extensive and self.monotone

    @property
    def is_closure(self):
        return self.is_preclosure and self.idempotent


class SetOperator:
    """Total map from subsets of a universe to subsets.

    Rule-based operators evaluate lazily with memoization; explicit-table
    operators are eager.  ``spec`` is the JSON-able constructor descriptor
    used for serialization (None for raw tables and derived operators).
    """

    __slots__ = ("universe", "kind", "spec", "_fn", "_bulk", "_table",
                 "_complete", "_classification")

    def __init__(self, universe, kind, fn=None, table=None, bulk=None,
                 spec=None):
        self.universe = universe
        self.kind = kind
        self.spec = spec
        self._fn = fn
        self._bulk = bulk
        self._classification = None
        if table is not None:
            table = array("Q", table)
            if len(table) != 1 << universe.n:
                raise OperatorError(
                    f"table has {len(table)} entries, expected {1 << universe.n}")
            for a, v in enumerate(table):
                if v > universe.full:
                    raise OperatorError(
                        f"table entry for mask {a:#x} is out of range",
                        witness=Subset(universe, a))
            self._table = table
            self._complete = True
        else:
            if fn is None:
                raise ValueError("need a table or a rule function")
            self._table = array(
                "Q", [_LAZY_SENTINEL]) * (1 << universe.n)
            self._complete = False

    @classmethod
    def from_table(cls, universe, table, kind="table", spec=None):
        return cls(universe, kind, table=table, spec=spec)

    @classmethod
    def from_rule(cls, universe, fn, kind, bulk=None, spec=None):
        return cls(universe, kind, fn=fn, bulk=bulk, spec=spec)

    def apply_mask(self, mask):
        if self._complete:
            return self._table[mask]
        v = self._table[mask]
        if v == _LAZY_SENTINEL:
            v = self._fn(mask)
            if v < 0 or v > self.universe.full:
                raise OperatorError(
                    f"rule output {v:#x} out of range",
                    witness=Subset(self.universe, mask))
            self._table[mask] = v
        return v

    @property
    def table(self):
        if not self._complete:
            if self._bulk is not None:
                table = array("Q", self._bulk())
            else:
                fn = self._fn
                table = array("Q", [fn(a) for a in range(1 << self.universe.n)])
            for a, v in enumerate(table):
                if v > self.universe.full:
                    raise OperatorError(
                        f"rule output for mask {a:#x} out of range",
                        witness=Subset(self.universe, a))
            self._table = table
            self._complete = True
        return self._table

    def __call__(self, subset):
        if subset.universe != self.universe:
            raise ValueError("subset belongs to a different universe")
        return Subset(self.universe, self.apply_mask(subset.mask))

    @property
    def classification(self):
        if self._classification is None:
            (ext, ext_w, mono, mono_a, mono_b, idem, idem_w) = kernels.classify(
                self.table, self.universe.n)
            witnesses = {}
            if not ext:
                witnesses["extensive"] = Subset(self.universe, ext_w)
            if not mono:
                witnesses["monotone"] = (Subset(self.universe, mono_a),
                                         Subset(self.universe, mono_b))
            if not idem:
                witnesses["idempotent"] = Subset(self.universe, idem_w)
            self._classification = Classification(ext, mono, idem, witnesses)
        return self._classification

    def __eq__(self, other):
        if not isinstance(other, SetOperator):
            return NotImplemented
        return (self.universe == other.universe
                and bytes(self.table) == bytes(other.table))

    __hash__ = None

    def __repr__(self):
        return f"SetOperator({self.kind}, n={self.universe.n})"


def identity_operator(universe):
    return SetOperator.from_rule(universe, lambda a: a, "identity")


def classify_operator(op):
    """Cached {extensive, monotone, idempotent} flags with witnesses."""
    return op.classification


def _require_preclosure(op, role="operator"):
    cl = op.classification
    if not cl.is_preclosure:
        missing = [k for k, ok in (("extensive", cl.extensive),
                                   ("monotone", cl.monotone)) if not ok]
        raise OperatorError(
            f"{role} is not a preclosure (not {' or '.join(missing)})",
            witness=cl.witnesses.get(missing[0]))


def closed_family(op):
    """Fixed points of a preclosure operator, as a family."""
    _require_preclosure(op)
    return SubsetFamily(op.universe,
                        kernels.fixed_points(op.table, op.universe.n))


def open_family(op):
    """Complements of the closed sets."""
    full = op.universe.full
    return SubsetFamily(op.universe,
                        [full & ~m for m in closed_family(op).masks])


def associated_closure(op):
    """Least closed superset map of a preclosure.

    Computed as the stationary limit of iterating the operator; that limit
    is closed, contains the argument, and is below every closed superset,
    so it equals the intersection of all closed supersets (with the full
    universe covering the no-superset case, which cannot occur because
    extensivity traps the full universe as a fixed point).
    """
    _require_preclosure(op)
    t = op.table
    size = 1 << op.universe.n
    out = kernels.zeros(size)
    for a in range(size):
        m = a
        nxt = t[m]
        while nxt != m:
            m = nxt
            nxt = t[m]
        out[a] = m
    return SetOperator.from_table(op.universe, out, kind="associated_closure")


def moore_check(family):
    """Is the family closed under intersections of sub-collections?

    Pairwise intersections plus the full universe (empty sub-collection)
    suffice by finiteness.  Returns (ok, witness); the witness is a pair of
    members whose intersection is missing, or the string
    ``"universe-not-member"``.
    """
    ok, code, wa, wb = kernels.moore_pairwise(
        list(family.masks), family.universe.full, family.universe.n)
    if ok:
        return (True, None)
    if code == 1:
        return (False, (Subset(family.universe, wa),
                        Subset(family.universe, wb)))
    return (False, "universe-not-member")

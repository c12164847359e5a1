"""Randomized and exhaustive search for theorem counterexamples.

Samples qosets (random DAGs closed reflexively-transitively, with optional
extra loops to exercise genuine quasiorders) and operators drawn from the
constructor families, then runs theorem drivers looking for INCONSISTENT
verdicts.  Any hit is minimized by greedily dropping elements (operator
restriction to a subset preserves all structure laws) and serialized so it
can be replayed.  Fixed seeds give byte-identical machine reports.
"""

import json
import random
from dataclasses import dataclass, field

from .analysis import (ALL_DRIVERS, MAP_DRIVERS, PAIR_DRIVERS,
                       STRUCTURE_DRIVERS, run_driver)
from .constructors import (SpaceMap, alexandrov, assemble, compact_set,
                           dedekind_macneille, directed_sup,
                           generated_operator, identity_map, inflationary,
                           novak, qoset_from_pairs, selfmap_family,
                           specialization, upper_topology, Qoset)
from .core import (ClosetError, SetOperator, Subset, Universe,
                   resolve_max_n)
from .interpolation import is_strongly_continuous, relatively_closed_masks
from .io import serialize_space
from .reports import HOLDS, INCONSISTENT, TheoremReport
from .topology import alexandrov_irreducibles_are_directed
from .waybelow import (basic_law_violations, is_algebraic, way_below,
                       way_below_fast)

SCHEMA = "closetlab-search@1"

C_KINDS = ("alexandrov", "dedekind_macneille", "directed_sup",
           "upper_topology", "inflationary", "novak", "selfmap_family",
           "compact_set", "generated")

# pseudo-targets run alongside theorem drivers on every sample
INVARIANT_TARGETS = ("basic_way_below_laws", "finite_collapses")


@dataclass
class SearchConfig:
    size: int = 4
    samples: int = 100
    exhaustive: bool = False
    seed: int = 0
    kinds: tuple = C_KINDS
    target: str = None
    galois_cap: int = 10
    uc_cap: int = 10**6
    max_n: int = None

    def to_json_dict(self):
        return {"size": self.size, "samples": self.samples,
                "exhaustive": self.exhaustive, "seed": self.seed,
                "kinds": list(self.kinds), "target": self.target,
                "galois_cap": self.galois_cap, "uc_cap": self.uc_cap}


def _universe(n):
    return Universe([f"x{i}" for i in range(n)])


def random_qoset(rng, universe):
    """Random DAG closed to a partial order; sometimes extra loops make it
    a genuine quasiorder."""
    n = universe.n
    perm = list(range(n))
    rng.shuffle(perm)
    p = rng.uniform(0.15, 0.7)
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                pairs.append((universe.elements[perm[i]],
                              universe.elements[perm[j]]))
    if n >= 2 and rng.random() < 0.2:
        a, b = rng.sample(range(n), 2)
        pairs.append((universe.elements[a], universe.elements[b]))
        pairs.append((universe.elements[b], universe.elements[a]))
    return qoset_from_pairs(universe, pairs)


def enumerate_qosets(n, max_n=None):
    """All reflexive-transitive relations on n labeled elements."""
    limit = resolve_max_n(max_n)
    if n > limit:
        raise ClosetError(f"size {n} exceeds the cap {limit}")
    universe = _universe(n)
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    bits = len(offdiag)
    out = []
    for code in range(1 << bits):
        up = [1 << i for i in range(n)]
        for b, (i, j) in enumerate(offdiag):
            if code >> b & 1:
                up[i] |= 1 << j
        ok = True
        for i in range(n):
            m = up[i]
            acc = m
            mm = m
            while mm:
                low = mm & -mm
                acc |= up[low.bit_length() - 1]
                mm ^= low
            if acc != m:
                ok = False
                break
        if ok:
            out.append(Qoset(universe, up))
    return out


def random_monotone_selfmap(rng, q, mode=None, tries=12):
    """Random monotone self-map; mode 'inflationary' or 'deflationary'
    constrains it pointwise.  Falls back to the identity."""
    n = q.universe.n
    order = list(q.topo_order())
    for _ in range(tries):
        image = [None] * n
        ok = True
        for x in order:
            allowed = q.universe.full
            if mode == "inflationary":
                allowed &= q.up[x]
            elif mode == "deflationary":
                allowed &= q.down[x]
            for y in range(n):
                if image[y] is None:
                    continue
                if q.leq_index(y, x):
                    allowed &= q.up[image[y]]
                if q.leq_index(x, y):
                    allowed &= q.down[image[y]]
            if not allowed:
                ok = False
                break
            choices = [i for i in range(n) if allowed >> i & 1]
            image[x] = rng.choice(choices)
        if ok:
            return SpaceMap(q.universe, q.universe, image)
    return identity_map(q.universe)


def _random_generated(rng, q, base_kind_pool, universe):
    """Generated operator over a random base; returns None when the draw
    is not extensive or not compatible."""
    base = build_operator(rng, q, rng.choice(base_kind_pool))
    if base is None:
        return None
    try:
        base_ec = assemble(alexandrov(q), base)
    except ClosetError:
        return None
    pool = list(relatively_closed_masks(base_ec))
    singletons = [1 << x for x in range(universe.n)]
    members = set(rng.sample(pool, min(len(pool),
                                       rng.randrange(1, len(pool) + 1))))
    members.update(rng.sample(singletons,
                              rng.randrange(0, universe.n + 1)))
    try:
        return generated_operator(base_ec, members)
    except ClosetError:
        return None


def build_operator(rng, q, kind):
    """One preclosure from a constructor family with random parameters;
    None when the random draw violates the family's preconditions."""
    universe = q.universe
    try:
        if kind == "alexandrov":
            return alexandrov(q)
        if kind == "dedekind_macneille":
            return dedekind_macneille(q)
        if kind == "directed_sup":
            if not q.is_poset:
                return None
            return directed_sup(q)
        if kind == "upper_topology":
            return upper_topology(q)
        if kind == "inflationary":
            m = random_monotone_selfmap(rng, q, mode="inflationary")
            return inflationary(q, m)
        if kind == "novak":
            right = identity_map(universe)
            left = random_monotone_selfmap(rng, q, mode="inflationary")
            return novak(q, q, left, right, strict=rng.random() < 0.5)
        if kind == "selfmap_family":
            maps = [random_monotone_selfmap(rng, q, mode="deflationary")]
            for _ in range(rng.randrange(0, 2)):
                maps.append(random_monotone_selfmap(rng, q))
            return selfmap_family(q, maps)
        if kind == "compact_set":
            k = rng.randrange(1, 1 << universe.n)
            return compact_set(q, Subset(universe, k))
        if kind == "generated":
            return _random_generated(
                rng, q, ("alexandrov", "dedekind_macneille", "inflationary"),
                universe)
    except ClosetError:
        return None
    raise KeyError(f"unknown operator kind {kind!r}")


def build_sample(rng, n, kinds, max_n=None):
    """(structure, maps) or None when the draw fails validation."""
    universe = _universe(n)
    q = random_qoset(rng, universe)
    kind = rng.choice(list(kinds))
    c = build_operator(rng, q, kind)
    if c is None:
        return None
    try:
        ec = assemble(alexandrov(q), c, name=f"sample-{kind}")
    except ClosetError:
        return None
    maps = {"f": random_monotone_selfmap(rng, q)}
    pair = _galois_pair(rng, q)
    if pair is not None:
        maps["phi"], maps["psi"] = pair
    return ec, maps, q


def _galois_pair(rng, q, tries=8):
    """Random adjoint pair on q: pick psi monotone, recover phi as the
    least preimage bound when it exists everywhere."""
    n = q.universe.n
    for _ in range(tries):
        psi = random_monotone_selfmap(rng, q)
        phi_image = []
        ok = True
        for x in range(n):
            candidates = [xp for xp in range(n)
                          if q.leq_index(x, psi.image[xp])]
            least = None
            for cand in candidates:
                if all(q.leq_index(cand, other) for other in candidates):
                    least = cand
                    break
            if least is None:
                ok = False
                break
            phi_image.append(least)
        if ok:
            return (SpaceMap(q.universe, q.universe, phi_image), psi)
    return None


def _finite_collapses(ec, q) -> TheoremReport:
    """Always-true facts for down-closure structures on finite qosets."""
    details = {}
    alex = alexandrov(q)
    if q.is_poset:
        ds = directed_sup(q)
        if bytes(ds.table) != bytes(alex.table):
            details["directed_sup_differs"] = True
            return TheoremReport("finite_collapses", INCONSISTENT, details)
    ut = upper_topology(q)
    if bytes(ut.table) != bytes(alex.table):
        details["upper_topology_differs"] = True
        return TheoremReport("finite_collapses", INCONSISTENT, details)
    if specialization(alex) != q:
        details["specialization_roundtrip"] = False
        return TheoremReport("finite_collapses", INCONSISTENT, details)
    alex_ec = assemble(alex, alex, name="alexandrov-pair")
    if not is_strongly_continuous(alex_ec) or not is_algebraic(alex_ec):
        details["alexandrov_strongly_continuous"] = \
            is_strongly_continuous(alex_ec)
        details["alexandrov_algebraic"] = is_algebraic(alex_ec)
        return TheoremReport("finite_collapses", INCONSISTENT, details)
    rep = alexandrov_irreducibles_are_directed(q)
    if rep.status == INCONSISTENT:
        return TheoremReport("finite_collapses", INCONSISTENT,
                             {"irreducibles_vs_directed": rep.details})
    if bytes(ec.bracket.table) == bytes(alex.table):
        if way_below_fast(ec) != way_below(ec):
            details["fast_way_below_differs"] = True
            return TheoremReport("finite_collapses", INCONSISTENT, details)
    return TheoremReport("finite_collapses", HOLDS, details)


def _basic_laws(ec) -> TheoremReport:
    bad = basic_law_violations(ec)
    if bad:
        return TheoremReport("basic_way_below_laws", INCONSISTENT,
                             {"violations": bad})
    return TheoremReport("basic_way_below_laws", HOLDS, {})


def run_target(name, ec, maps, q, galois_cap, uc_cap):
    """Run a driver or invariant pseudo-target; always returns a list."""
    if name == "basic_way_below_laws":
        return [_basic_laws(ec)]
    if name == "finite_collapses":
        return [_finite_collapses(ec, q)]
    result = run_driver(name, ec, maps=maps, galois_cap=galois_cap,
                        uc_cap=uc_cap)
    return result if isinstance(result, list) else [result]


def _restrict_operator(op, keep_mask, sub_universe):
    """Restriction to a subset: apply, then cut back down to the subset."""
    n_old = op.universe.n
    positions = [i for i in range(n_old) if keep_mask >> i & 1]
    table = []
    for sub in range(1 << len(positions)):
        mask = 0
        for b, pos in enumerate(positions):
            if sub >> b & 1:
                mask |= 1 << pos
        out = op.apply_mask(mask) & keep_mask
        packed = 0
        for b, pos in enumerate(positions):
            if out >> pos & 1:
                packed |= 1 << b
        table.append(packed)
    return SetOperator.from_table(sub_universe, table, kind="restriction")


def restrict_structure(ec, keep_mask):
    """Structure induced on a subset of the universe.

    Restricting both operators (apply, then intersect with the subset)
    preserves closedness, preclosure laws, and compatibility, so the result
    is again a valid structure.
    """
    names = ec.universe.names_of_mask(keep_mask)
    sub_universe = Universe(names)
    bracket = _restrict_operator(ec.bracket, keep_mask, sub_universe)
    c = _restrict_operator(ec.c, keep_mask, sub_universe)
    return assemble(bracket, c, name=ec.name)


def minimize_finding(ec, q, target, status, galois_cap, uc_cap):
    """Greedily drop elements while the target keeps the same bad status.

    Only structure-level targets are minimized; map-based findings are
    returned as-is (restriction does not commute with arbitrary maps).
    """
    if target in MAP_DRIVERS or target in PAIR_DRIVERS:
        return ec
    current = ec
    shrunk = True
    while shrunk and current.universe.n > 1:
        shrunk = False
        full = current.universe.full
        for i in range(current.universe.n):
            keep = full & ~(1 << i)
            try:
                candidate = restrict_structure(current, keep)
                sub_q = specialization(candidate.bracket)
                reports = run_target(target, candidate, {}, sub_q,
                                     galois_cap, uc_cap)
            except (ClosetError, AssertionError):
                continue
            if any(r.status == status for r in reports):
                current = candidate
                shrunk = True
                break
    return current


@dataclass
class SearchReport:
    config: SearchConfig
    samples_run: int = 0
    skipped: int = 0
    status_counts: dict = field(default_factory=dict)
    findings: list = field(default_factory=list)

    @property
    def any_inconsistent(self):
        return bool(self.findings)

    def to_json_dict(self):
        return {
            "schema": SCHEMA,
            "config": self.config.to_json_dict(),
            "samples_run": self.samples_run,
            "skipped": self.skipped,
            "status_counts": dict(sorted(self.status_counts.items())),
            "findings": self.findings,
        }

    def to_text(self):
        lines = [
            f"search: size={self.config.size} "
            + ("exhaustive" if self.config.exhaustive
               else f"samples={self.config.samples}")
            + f" seed={self.config.seed} target="
            + (self.config.target or "all"),
            f"samples run: {self.samples_run} (skipped draws: "
            f"{self.skipped})",
            "status counts: " + ", ".join(
                f"{k}={v}" for k, v in sorted(self.status_counts.items())),
        ]
        if not self.findings:
            lines.append("no inconsistencies found")
        for f in self.findings:
            lines.append(f"INCONSISTENT {f['driver']} "
                         f"(sample {f['sample']}): {json.dumps(f['details'])}")
            lines.append("  structure: " + json.dumps(f["structure"],
                                                      sort_keys=True))
        return "\n".join(lines) + "\n"


def run_search(config: SearchConfig) -> SearchReport:
    limit = resolve_max_n(config.max_n)
    if config.size < 1 or config.size > limit:
        raise ClosetError(
            f"size {config.size} outside the allowed range 1..{limit}")
    if config.target is not None and \
            config.target not in ALL_DRIVERS + INVARIANT_TARGETS:
        raise ClosetError(f"unknown target {config.target!r}")
    rng = random.Random(config.seed)
    targets = ([config.target] if config.target
               else list(STRUCTURE_DRIVERS + MAP_DRIVERS + PAIR_DRIVERS
                         + INVARIANT_TARGETS))
    report = SearchReport(config=config)
    counts = report.status_counts

    def consume(ec, maps, q, index):
        for target in targets:
            try:
                results = run_target(target, ec, maps, q,
                                     config.galois_cap, config.uc_cap)
            except AssertionError as exc:
                results = [TheoremReport(target, INCONSISTENT,
                                         {"internal": str(exc)})]
            for rep in results:
                counts[rep.status] = counts.get(rep.status, 0) + 1
                if rep.status == INCONSISTENT:
                    small = minimize_finding(ec, q, target, rep.status,
                                             config.galois_cap,
                                             config.uc_cap)
                    doc = serialize_space(
                        small, maps if target in MAP_DRIVERS
                        + PAIR_DRIVERS else None)
                    report.findings.append({
                        "driver": target,
                        "sample": index,
                        "status": rep.status,
                        "details": rep.to_json_dict()["details"],
                        "structure": doc,
                    })
        report.samples_run += 1

    if config.exhaustive:
        if config.size > 5:
            raise ClosetError("exhaustive mode is limited to size <= 5")
        for index, q in enumerate(enumerate_qosets(config.size,
                                                   config.max_n)):
            for kind in config.kinds:
                c = build_operator(rng, q, kind)
                if c is None:
                    report.skipped += 1
                    continue
                try:
                    ec = assemble(alexandrov(q), c,
                                  name=f"exhaustive-{kind}")
                except ClosetError:
                    report.skipped += 1
                    continue
                maps = {"f": random_monotone_selfmap(rng, q)}
                pair = _galois_pair(rng, q)
                if pair is not None:
                    maps["phi"], maps["psi"] = pair
                consume(ec, maps, q, index)
    else:
        index = 0
        attempts = 0
        max_attempts = config.samples * 20
        while report.samples_run < config.samples and \
                attempts < max_attempts:
            attempts += 1
            drawn = build_sample(rng, config.size, config.kinds,
                                 config.max_n)
            if drawn is None:
                report.skipped += 1
                continue
            ec, maps, q = drawn
            consume(ec, maps, q, index)
            index += 1

    report.findings.sort(key=lambda f: (f["driver"],
                                        json.dumps(f["structure"],
                                                   sort_keys=True),
                                        f["sample"]))
    return report


def dumps_report(report: SearchReport) -> str:
    return json.dumps(report.to_json_dict(), indent=2, sort_keys=True)

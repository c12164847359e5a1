"""Analysis battery: run every checker on one structure and report.

The machine-readable report is a pure function of the structure and the
caps (timing and kernel backend appear in the text rendering only, so that
repeated runs stay byte-identical).
"""

import time
from dataclasses import dataclass

from . import kernels
from .core import SubsetFamily
from .inner_regular import (canonical_waydown_family,
                            continuous_waydown_generation,
                            generation_characterization, is_inner_regular,
                            singleton_ideals_relatively_closed,
                            strong_continuity_iff_generating_family)
from .interpolation import (closed_family_distributivity,
                            continuity_iff_opens_way_upper,
                            interpolant_lemma_check,
                            interpolation_characterization,
                            interpolation_iff_idempotent,
                            interpolation_iff_wayup_open, is_interpolating,
                            is_strongly_continuous, relatively_closed_masks,
                            strong_continuity_characterization,
                            strong_continuity_iff_waydown_match,
                            weakly_closed_union_complete)
from .maps import (bandelt_erne, closure_continuity_via_family,
                   map_continuity_relatively_closed,
                   map_continuity_via_family, strict_vs_closure_continuity)
from .reports import INCONSISTENT, TheoremReport, _jsonable
from .topology import (irreducible_masks, is_generated_by_irreducibles,
                       is_topological, topological_transfer)
from .waybelow import (closed_masks, compact_elements,
                       continuity_equivalences, is_algebraic, is_continuous,
                       open_masks, spec_qoset, way_below,
                       weakly_closed_masks)

SCHEMA = "closetlab-analysis@1"

# drivers taking a structure alone, in presentation order
STRUCTURE_DRIVERS = (
    "continuity_equivalences",
    "interpolation_characterization",
    "strong_continuity_iff_waydown_match",
    "interpolation_iff_wayup_open",
    "interpolation_iff_idempotent",
    "strong_continuity_characterization",
    "continuity_iff_opens_way_upper",
    "interpolant_lemma_check",
    "closed_family_distributivity",
    "singleton_ideals_relatively_closed",
    "generation_characterization",
    "strong_continuity_iff_generating_family",
    "continuous_waydown_generation",
    "topological_transfer",
)

# drivers additionally taking one named self-map
MAP_DRIVERS = (
    "strict_vs_closure_continuity",
    "map_continuity_via_family",
    "map_continuity_relatively_closed",
    "closure_continuity_via_family",
)

# drivers taking a (phi, psi) pair of self-maps
PAIR_DRIVERS = ("bandelt_erne",)

ALL_DRIVERS = STRUCTURE_DRIVERS + MAP_DRIVERS + PAIR_DRIVERS


def run_driver(name, ec, maps=None, galois_cap=10, uc_cap=10**6):
    """Run one theorem driver by name; map drivers run once per supplied
    map (pair drivers need maps named phi and psi) and yield a list."""
    maps = maps or {}
    if name == "continuity_equivalences":
        return continuity_equivalences(ec, galois_cap=galois_cap)
    if name == "interpolation_characterization":
        return interpolation_characterization(ec)
    if name == "strong_continuity_iff_waydown_match":
        return strong_continuity_iff_waydown_match(ec)
    if name == "interpolation_iff_wayup_open":
        return interpolation_iff_wayup_open(ec)
    if name == "interpolation_iff_idempotent":
        return interpolation_iff_idempotent(ec, cap=uc_cap)
    if name == "strong_continuity_characterization":
        return strong_continuity_characterization(ec, cap=uc_cap)
    if name == "continuity_iff_opens_way_upper":
        return continuity_iff_opens_way_upper(ec, cap=uc_cap)
    if name == "interpolant_lemma_check":
        return interpolant_lemma_check(ec)
    if name == "closed_family_distributivity":
        return closed_family_distributivity(ec, cap=uc_cap)
    if name == "singleton_ideals_relatively_closed":
        return singleton_ideals_relatively_closed(ec)
    if name == "generation_characterization":
        return generation_characterization(ec)
    if name == "strong_continuity_iff_generating_family":
        return strong_continuity_iff_generating_family(ec, cap=uc_cap)
    if name == "continuous_waydown_generation":
        return continuous_waydown_generation(ec)
    if name == "topological_transfer":
        return topological_transfer(ec)
    if name in MAP_DRIVERS:
        out = []
        for map_name in sorted(maps):
            f = maps[map_name]
            if name == "strict_vs_closure_continuity":
                rep = strict_vs_closure_continuity(f, ec, ec)
            elif name == "map_continuity_via_family":
                rep = map_continuity_via_family(
                    f, ec, ec, canonical_waydown_family(ec))
            elif name == "map_continuity_relatively_closed":
                rep = map_continuity_relatively_closed(f, ec, ec)
            else:
                rep = closure_continuity_via_family(
                    f, ec, ec,
                    SubsetFamily(ec.universe, relatively_closed_masks(ec)))
            rep.details["map"] = map_name
            out.append(rep)
        return out
    if name == "bandelt_erne":
        if "phi" in maps and "psi" in maps:
            return [bandelt_erne(ec, ec, maps["phi"], maps["psi"])]
        return []
    raise KeyError(f"unknown driver {name!r}")


@dataclass
class AnalysisReport:
    name: str
    n: int
    elements: tuple
    bracket_kind: str
    c_kind: str
    checks: dict
    drivers: list
    seconds: float = 0.0
    backend: str = kernels.BACKEND

    @property
    def any_inconsistent(self):
        return any(r.status == INCONSISTENT for r in self.drivers)

    def to_json_dict(self):
        return {
            "schema": SCHEMA,
            "name": self.name,
            "n": self.n,
            "elements": list(self.elements),
            "bracket_kind": self.bracket_kind,
            "c_kind": self.c_kind,
            "checks": _jsonable(self.checks),
            "drivers": [r.to_json_dict() for r in self.drivers],
            "inconsistent": self.any_inconsistent,
        }

    def to_text(self):
        lines = []
        emit = lines.append
        emit(f"structure {self.name}: n={self.n} "
             f"elements=({', '.join(self.elements)})")
        emit(f"operators: bracket={self.bracket_kind} c={self.c_kind} "
             f"[kernels: {self.backend}]")
        emit("-- core --")
        for key in ("c_idempotent", "weakly_closed_count", "closed_count",
                    "open_count", "specialization_poset"):
            emit(f"  {key} = {self.checks[key]}")
        if "closed_family" in self.checks:
            emit(f"  closed_family = {self.checks['closed_family']}")
        emit("-- way-below --")
        for key in ("continuous", "interpolating", "strongly_continuous",
                    "compact_elements", "algebraic"):
            emit(f"  {key} = {self.checks[key]}")
        if "way_below_pairs" in self.checks:
            emit(f"  way_below_pairs = {self.checks['way_below_pairs']}")
        emit("-- families --")
        for key in ("relatively_closed_count", "weakly_closed_union_complete",
                    "inner_regular"):
            emit(f"  {key} = {self.checks[key]}")
        emit("-- topology --")
        for key in ("topological", "irreducible_count",
                    "generated_by_irreducibles"):
            emit(f"  {key} = {self.checks[key]}")
        emit("-- theorem drivers --")
        for rep in self.drivers:
            mark = {"holds": "ok", "hypothesis-not-met": "--"}.get(
                rep.status, "!!")
            label = rep.name
            if "map" in rep.details:
                label += f"[{rep.details['map']}]"
            emit(f"  {mark} {label}: {rep.status}")
            if rep.status == INCONSISTENT:
                emit(f"       details: {_jsonable(rep.details)}")
        emit(f"inconsistent: {self.any_inconsistent}")
        emit(f"elapsed: {self.seconds:.3f}s")
        return "\n".join(lines) + "\n"


def run_battery(ec, maps=None, galois_cap=10, uc_cap=10**6):
    """Run every checker and theorem driver against one structure."""
    started = time.perf_counter()
    q = spec_qoset(ec)
    checks = {}
    cls = ec.c.classification
    checks["c_idempotent"] = cls.idempotent
    if not cls.idempotent:
        checks["c_idempotent_witness"] = cls.witnesses["idempotent"]
    checks["weakly_closed_count"] = len(weakly_closed_masks(ec))
    checks["closed_count"] = len(closed_masks(ec))
    checks["open_count"] = len(open_masks(ec))
    checks["specialization_poset"] = q.is_poset
    continuous, cwit = is_continuous(ec)
    checks["continuous"] = continuous
    if cwit is not None:
        checks["continuity_witness"] = cwit
    interp, iwit = is_interpolating(ec)
    checks["interpolating"] = interp
    if iwit is not None:
        checks["interpolation_witness"] = list(iwit)
    checks["strongly_continuous"] = is_strongly_continuous(ec)
    compacts = compact_elements(ec)
    checks["compact_elements"] = list(compacts.names())
    checks["algebraic"] = is_algebraic(ec)
    checks["relatively_closed_count"] = len(relatively_closed_masks(ec))
    uc = weakly_closed_union_complete(ec, cap=uc_cap)
    checks["weakly_closed_union_complete"] = (
        "cap-exceeded" if uc.verdict is None else uc.verdict)
    inner, _ = is_inner_regular(ec)
    checks["inner_regular"] = inner
    topo, twit = is_topological(ec)
    checks["topological"] = topo
    if twit is not None:
        checks["topology_witness"] = twit
    checks["irreducible_count"] = len(irreducible_masks(ec))
    gen_irr, _ = is_generated_by_irreducibles(ec)
    checks["generated_by_irreducibles"] = gen_irr
    if ec.universe.n <= 6:
        checks["closed_family"] = [
            list(ec.universe.names_of_mask(m)) for m in closed_masks(ec)]
        checks["way_below_pairs"] = [
            list(p) for p in way_below(ec).pairs()]
    drivers = []
    for name in STRUCTURE_DRIVERS:
        drivers.append(run_driver(name, ec, galois_cap=galois_cap,
                                  uc_cap=uc_cap))
    if maps:
        for name in MAP_DRIVERS + PAIR_DRIVERS:
            drivers.extend(run_driver(name, ec, maps=maps,
                                      galois_cap=galois_cap, uc_cap=uc_cap))
    return AnalysisReport(
        name=ec.name or "structure",
        n=ec.universe.n,
        elements=ec.universe.elements,
        bracket_kind=ec.bracket.kind,
        c_kind=ec.c.kind,
        checks=checks,
        drivers=drivers,
        seconds=time.perf_counter() - started,
    )

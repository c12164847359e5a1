"""closetlab: a laboratory for finite closure spaces carrying a second,
compatible preclosure.

The core objects are a closure operator (the bracket) and a preclosure c
on the same finite universe, agreeing in the sense that applying the
bracket before or after c changes nothing.  On top of that the package
computes way-below relations, continuity and interpolation verdicts,
generation by subset families, topologicality, and the transfer results
tying those notions together — each backed by an exhaustive checker suited
to universes of up to twenty elements.
"""

from .analysis import ALL_DRIVERS, AnalysisReport, run_battery, run_driver
from .constructors import (EnrichedCloset, Qoset, SpaceMap, alexandrov,
                           assemble, compact_set, dedekind_macneille,
                           directed_sup, generated_operator, identity_map,
                           inflationary, novak, qoset_from_pairs,
                           selfmap_family, specialization, upper_topology)
from .core import (Classification, ClosetError, CompatibilityError,
                   OperatorError, SetOperator, Subset, SubsetFamily,
                   Universe, UniverseSizeError, associated_closure,
                   classify_operator, closed_family, identity_operator,
                   moore_check, open_family, resolve_max_n)
from .fixtures import closet, closet_names, qoset, qoset_names
from .inner_regular import (canonical_waydown_family,
                            continuous_waydown_generation,
                            generation_characterization, is_generated_by,
                            is_inner_regular,
                            singleton_ideals_relatively_closed,
                            strong_continuity_iff_generating_family)
from .interpolation import (UnionCompleteResult, closed_family_distributivity,
                            completely_distributive,
                            continuity_iff_opens_way_upper,
                            interpolant_lemma_check,
                            interpolation_characterization,
                            interpolation_iff_idempotent,
                            interpolation_iff_wayup_open, is_interpolating,
                            is_lattice, is_strongly_continuous,
                            raney_below, raney_on_lattice,
                            relatively_closed, relatively_closed_family,
                            strong_continuity_characterization,
                            strong_continuity_iff_waydown_match,
                            union_complete, union_complete_closure,
                            weakly_closed_union_complete)
from .io import ParseError, build_space, dumps_space, parse_space, \
    serialize_space
from .kernels import BACKEND
from .maps import (bandelt_erne, closure_continuity_via_family,
                   is_bracket_continuous, is_closure_continuous,
                   is_galois_connection, is_strictly_continuous,
                   jointly_generated, map_continuity_relatively_closed,
                   map_continuity_via_family, preimage_mask,
                   preserves_relatively_closed, preserves_way_below,
                   strict_vs_closure_continuity)
from .reports import HOLDS, HYPOTHESIS_NOT_MET, INCONSISTENT, TheoremReport
from .search import SearchConfig, SearchReport, enumerate_qosets, run_search
from .topology import (alexandrov_irreducibles_are_directed, directed_masks,
                       irreducible_subsets, is_generated_by_irreducibles,
                       is_topological, kuratowski_closure_check,
                       topological_direct, topological_transfer)
from .waybelow import (Relation, basic_law_violations,
                       basis_characterization, compact_elements,
                       continuity_equivalences, is_algebraic, is_basis,
                       is_continuous, open_characterization, way_below,
                       way_below_fast, way_down, way_up,
                       waydown_connectedness)

__version__ = "0.1.0"

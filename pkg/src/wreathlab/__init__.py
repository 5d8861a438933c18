"""Wreath products of finite permutation groups and the invariants dg, dl and wl."""

from .abelian import AbelianInvariants, abelian_invariants, abelianization, dg, dg_brute, dg_p
from .catalog import catalog, parse_group
from .config import Limits, deadline, use_limits
from .errors import (BudgetExceeded, Cancelled, CapExceeded, ConstructionDefect, GroupExpressionError,
                     NotAbelian, NotNilpotent, NotNormal, NotSolvable, PerfectGroupError, WreathLabError)
from .functorial import (GMap, abelianization_projection, canonical_gmap_to_product, cyclic_refinement,
                         descending_to_ascending, induced_from_gmap, induction_step_epis, map_first_argument,
                         map_second_argument, semidirect_quotient)
from .group import (CosetQuotient, FiniteGroup, closure, commutator_subgroup, cyclic_group, derived_length,
                    derived_series, direct_product, is_nilpotent, normal_closure, quotient_group, sylow_subgroup,
                    trivial_group)
from .homomorphism import Homomorphism, compose_homs, identity_hom, is_isomorphic, verify_homomorphism
from .invariants import (SemiabelianCertificate, SurveyRow, TowerEpimorphism, WlCertificate,
                         check_wl_eq_dg_characterization, cyclic_conductor, dl_tower_check, epi_exists,
                         is_semiabelian, nilpotent_tower, survey, wl_bounds)
from .perm import Perm, compose, identity, invert
from .wreath import (GroupAction, TowerSpec, WreathElement, WreathGroup, build_tower, natural_action,
                     permutational_wreath, regular_action, regular_wreath, wreath_multiply)

__version__ = "0.1.0"

"""Triple counts with a prescribed pair of dot products over F_q and Z_{p^l}."""

from .rings import (PRIME_FIELD, EXTENSION_FIELD, RESIDUE_RING, MAX_Q,
                    Ring, Scalar, Vector, CharacterValue, CharacterSum,
                    RingError, RingMismatchError, NotAUnitError,
                    character, lambda_factor, dot, invert, is_unit, make_ring)
from .counting import (PointSet, IncidenceProfile, TripleDecomposition, DirectDecomposition,
                       brute_force_count, fast_count, incidence_profile, dot_histogram,
                       character_decomposition, character_decomposition_direct)
from .geometry import (Line, DirectionClass, PairClassification, EMPTY_DIRECTION,
                       solve_linear, line_points, line_size, intersection_size,
                       direction_class, same_direction, classify_pairs, direction_census)
from .constructions import (sharp_construction, sharp_lower_bound,
                            zero_construction, zero_triple_count, random_set)
from .bounds import (TOLERANCE, BoundReport, BoundFamilyError, ExperimentRecord,
                     verify_ell1, verify_ell2, verify_remainder_field,
                     verify_zq_l1, verify_zq_l2, verify_remainder_ring,
                     density_scan, remainder_bound_value, density_threshold)

__version__ = "0.1.0"

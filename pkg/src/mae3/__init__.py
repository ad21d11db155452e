"""Exact geometry of third-order Monge-Ampere equations in two variables.

The package works in a fixed 12-coordinate jet chart with rational
arithmetic throughout: symbol cones, characteristic spans and their
orthogonal complements, equation reconstruction from spans or
decomposable 2-forms, and intermediate integrals.
"""

__version__ = "0.1.0"

from .algebra import (COORDS, FIBER_COORDS, LEVEL1_COORDS, MultiPoly,
                      ParseError, UnknownVariable, parse_expr)
from .jet import (DEFAULT_SEED, D1, D2, DP11, DP12, DP22, XI1, XI2,
                  Distribution, JetPoint, NonConstantRank, VectorField,
                  derived_flag, lagrangian_plane, sample_points,
                  vertical_part)
from .metasympl import (DegenerateHorizontal, LDualElement, NotDecomposable,
                        VerticalCovector, covector_roots,
                        is_threefold_orthogonal, omega_bilinear,
                        omega_trilinear, orthogonal_complement_pair)
from .symbol_cone import (BinaryCubic, CharLine, ConeSample,
                          InsufficientSamples, LineNotInPlane, NotOnEquation,
                          ZeroSymbol, all_roots, char_poly,
                          characteristic_lines, cone_sample, discriminant,
                          discriminant_classify, factor_cubic,
                          is_strong_characteristic, symbol)
from .mae import (BoillatForm, DiscriminantVanishes, GoursatDetection,
                  GoursatForm, NotFullyDecomposable, NotGoursat, NotMAE,
                  OrthogonalTriple, RankError, RecoverabilityReport,
                  RecoveredDistribution, ThirdOrderPDE, TrivialEquation,
                  TwoForm, boillat_decompose, build_ED, build_E_omega,
                  check_recoverable, decompose_orthogonal_triple,
                  detect_goursat, fully_parabolic_distribution,
                  fully_parabolic_pde, kernel_in_c1, probe_schedule,
                  proportional_over_base, quasilinear_coefficients,
                  recover_distribution)
from .integrals import (CandidateIntegral, IntegralVerdict,
                        NeverReachesTangent, Reaches, derived_flag_criterion,
                        distributions_of, intermediate_integrals_via_distributions,
                        is_first_integral, is_intermediate_integral,
                        search_first_integrals)

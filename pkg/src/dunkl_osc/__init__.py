"""Dunkl/Hankel transform calculus with oscillation and variation
seminorms, Carleson-type maximal operators, and Muckenhoupt weight
checkers, verified by dense-quadrature identities."""

from .errors import (ArgumentError, DomainError, DunklOscError, GateError,
                     ResolutionError)
from .special import bessel_j, bessel_j_normalized, gamma
from .funcspace import (FULL_LINE, HALF_LINE, CorpusMember, Grid, SampledFn,
                        away_from_zero_corpus, bump, default_corpus,
                        even_odd_split, gaussian, half_line_corpus, integrate,
                        make_breakpoint_grid, make_graded_grid,
                        moment_cancelled_corpus, multiply_power,
                        random_band_modes, read_sampled_fn, sample,
                        smooth_corpus, write_sampled_fn)
from .transforms import (check_resolution, dunkl, dunkl_inverse,
                         dunkl_modified, dunkl_modified_inverse, fourier,
                         fourier_inverse, frequency_grid, hankel,
                         hankel_modified, resolvable_frequency,
                         transplant_dunkl, transplant_hankel)
from .projections import (PartialSumFamily, ThresholdSeq, build_family,
                          dunkl_partial_sum, dunkl_partial_sum_iterated,
                          family_to_csv, fourier_partial_sum,
                          hankel_partial_sum, radial_partial_sum,
                          snap_threshold)
from .classical_ops import (SupGrid, carleson_hunt, conjugate_hardy,
                            default_sup_grid, hardy_littlewood_max,
                            maximal_hilbert, prestini_majorant)
from .seminorms import (CutSequence, carleson_dunkl_max, carleson_hankel_max,
                        max_oscillation_over_sampled_sequences, oscillation,
                        variation)
from .weights import (NormSpec, Weight, ap_alpha_check, ap_check, beta_star,
                      conjectured_measure_ap_check, power_weight,
                      range_dyadic_oscillation, range_full_oscillation,
                      transplant_range, w_ab_weight, weighted_lp_norm)
from .harness import (ExperimentReport, MultiplierFamily, Resolution,
                      bcv_lattice_weights, default_resolution, default_t_grid,
                      dyadic_indicator_family, gate_identity_suite,
                      interval_indicator_family, oscillation_ratio_sweep,
                      prestini_constant_sweep, resolution_n1024,
                      resolution_n512, run_identity_suite, transference_demo,
                      transplant_roundtrip_report, weighted_carleson_sweep,
                      write_reports_jsonl, write_summary_csv)

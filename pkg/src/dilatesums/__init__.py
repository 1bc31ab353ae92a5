"""Exact finite-set arithmetic over Z^d and verified dilate-sum inequalities
under small doubling: sumsets, popular differences, greedy covering, graph
decompositions, the structured/uniform dichotomy, and a partition engine,
with a corpus-driven verification CLI."""

from .sets import (BITMAP_WINDOW, DimensionMismatch, DoublingStats,
                   EmptySetError, GroupSet, base_embed, difference_set,
                   difference_set_size, dilate, dilate_sum, dilate_sum_size,
                   doubling, dump_set, fiber, fiber_size, format_set, kfold,
                   load_set, parse_set, sumset, sumset_size, tensor_power)
from .lemmas import (BipartiteEdgeSet, CoverDecomposition, PipelineError,
                     PopularDifferenceSet, bsg_decompose, combination,
                     graph_sumset, greedy_cover, plunnecke_check,
                     plunnecke_minimizer, popular_differences)
from .structure import (MainReport, PartitionTrace, RefinedResult,
                        TechnicalReport, basic_bound, main_lemma,
                        rational_root, refined_greedy, technical,
                        theorem1_partition)
from .bounds import (CorpusItem, FPConstants, c_lambda, default_corpus,
                     exponent_emp, exponent_bracket, fp_equality_check,
                     fp_formula, fp_lower_bound_check, gen_gap, gen_geometric,
                     gen_hypercube, gen_interval, gen_random, gen_simplex,
                     large_plunnecke_witness, random_corpus, ruzsa_triangle_check,
                     simplex_doubling, structured_corpus, verify_dilate_lemma,
                     verify_largeK, verify_large_dilates, verify_thm1,
                     verify_thm2)
from .reports import (BoundReport, BoundViolation, Constants,
                      DEFAULT_CONSTANTS, VERSION)

__version__ = VERSION

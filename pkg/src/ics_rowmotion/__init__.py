"""Interval-closed sets of finite posets, rowmotion on them, and homomesy experiments."""
from .closed_forms import (chain_orbit_averages, chain_orbit_structure, count_full_support,
                           ics_count_2xn, ics_count_chain, ics_count_ordinal_sum, narayana,
                           ordinal_sum_orbit_structure, psi, psi_inverse, table1_check)
from .ics import (count_ics, enumerate_ics, from_antichain_pair, is_interval_closed, regions,
                  to_antichain_pair)
from .poset import (Poset, PosetError, antichain, chain, divisor_poset, dual, is_isomorphic,
                    ordinal_sum_of_antichains, product, product_of_chains, stacked_diamond)
from .rowmotion import (inverse_rowmotion, orbit_decomposition, rowmotion, rowmotion_global,
                        rowmotion_ordinal_sum, rowmotion_toggles, toggle)
from .stats import Statistic, csp_check, homomesy_report, parse_statistic

__version__ = "0.1.0"

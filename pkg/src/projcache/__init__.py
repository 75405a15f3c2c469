"""Coded caching schemes built from subspaces of finite vector spaces."""
from .bounds import (bound_cheng, bound_corollary2, bound_theorem6, bound_wtp, exhaustive_ordering,
                     greedy_ordering, mais_bound)
from .counting import count_independent_sets, count_independent_subspace_sets, gaussian_binomial, gb_bounds, theta
from .delivery import FileLibrary, decode_all, deliver, make_demands, simulate
from .errors import *  # noqa: F401,F403
from .field import GF
from .graph import CachingGraph, MatchingCover, SchemeReport, verify_biregular, verify_cover
from .pda import Pda, cover_to_pda, validate_pda
from .scheme_a import build_scheme_a, scheme_a_params
from .scheme_b import build_scheme_b, plan, scheme_b_params, scheme_c_params
from .subspace import Subspace, enumerate_subspaces

__version__ = "0.1.0"

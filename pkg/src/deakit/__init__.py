"""Data envelopment analysis: radial, slack-based, super-efficiency, cross-efficiency,
fuzzy, Malmquist, bootstrap and metafrontier models built on linear programming."""
from .additive import model_additive, model_addmin
from .bootstrap import BootstrapResult, bandwidth, bootstrap_basic
from .cross import CrossEffResult, cross_efficiency
from .data import (DataWarning, DeaData, FuzzyDeaData, MalmquistSeries, Trapezoid,
                   deadata_from_arrays, fuzzy_from_arrays, make_deadata, make_deadata_fuzzy,
                   make_malmquist, undesirable_transform)
from .export import (eff_dmus, extract, read_json, reference_graph, reference_graph_dot,
                     references, summary_export, to_document, to_json)
from .frontier import efficient_dmus, extreme_efficient, maximal_friends
from .fuzzy import AlphaCutData, FuzzyDeaResult, alpha_cut, alpha_levels, modelfuzzy_kaoliu
from .lp import LinearProgram, dump, solve
from .malmquist import MalmquistResult, malmquist_index
from .metafrontier import MetafrontierResult, metafrontier
from .multiplier import model_multiplier
from .nonradial import model_deaps, model_nonradial
from .profit import model_profit
from .radial import model_basic, model_fdh, model_rdm
from .results import DeaResult
from .sbm import model_sbmeff
from .supereff import model_addsupereff, model_sbmsupereff, model_supereff

__all__ = [
    "AlphaCutData", "BootstrapResult", "CrossEffResult", "DataWarning", "DeaData", "DeaResult", "FuzzyDeaData",
    "FuzzyDeaResult", "LinearProgram", "MalmquistResult", "MalmquistSeries",
    "MetafrontierResult", "Trapezoid", "alpha_cut", "alpha_levels", "bandwidth", "bootstrap_basic", "cross_efficiency",
    "deadata_from_arrays", "dump", "eff_dmus", "efficient_dmus", "extract", "extreme_efficient",
    "fuzzy_from_arrays", "make_deadata", "make_deadata_fuzzy", "make_malmquist",
    "malmquist_index", "maximal_friends", "metafrontier", "model_additive", "model_addmin",
    "model_addsupereff", "model_basic", "model_deaps", "model_fdh", "model_multiplier",
    "model_nonradial", "model_profit", "model_rdm", "model_sbmeff", "model_sbmsupereff",
    "model_supereff", "modelfuzzy_kaoliu", "read_json", "reference_graph",
    "reference_graph_dot", "references", "solve", "summary_export", "to_document", "to_json",
    "undesirable_transform",
]

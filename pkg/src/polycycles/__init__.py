"""Exact computations with decorated trees, polygons, cubical cycles and iterated integrals."""

from .algebra import LinComb, Wedge, shuffle, wedge_normalize
from .bar import BarWord, EnhancedLetter, bar_differential, bar_element, coproduct_admissible, coproduct_deconcat
from .cycles import Cycle, Degenerate, cycle_differential, forest_cycling, is_admissible, totaro_cycle
from .iterint import ISymbol, i_cobracket, i_coproduct, i_normalize
from .polygons import Arrow, Dissection, Polygon, polygon_differential, sign_dissection, triangulations_psi
from .realization import NumericConfig, SingularPath, double_log_cycle_check, iterint_numeric, li_series
from .syntax import ParseError, parse_cycle, parse_forest, parse_isymbol, parse_polygon, parse_tree
from .trees import Forest, Node, Tree, leaf, node, tree_differential

__all__ = [
    "Arrow", "BarWord", "Cycle", "Degenerate", "Dissection", "EnhancedLetter", "Forest", "ISymbol", "LinComb",
    "Node", "NumericConfig", "ParseError", "Polygon", "SingularPath", "Tree", "Wedge", "bar_differential",
    "bar_element", "coproduct_admissible", "coproduct_deconcat", "cycle_differential", "double_log_cycle_check",
    "forest_cycling", "i_cobracket", "i_coproduct", "i_normalize", "is_admissible", "iterint_numeric", "leaf",
    "li_series", "node", "parse_cycle", "parse_forest", "parse_isymbol", "parse_polygon", "parse_tree",
    "polygon_differential", "shuffle", "sign_dissection", "totaro_cycle", "tree_differential",
    "triangulations_psi", "wedge_normalize",
]

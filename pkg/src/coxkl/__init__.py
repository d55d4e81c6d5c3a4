"""Coxeter groups, heaps, star operations and Kazhdan-Lusztig data.

>>> from coxkl import CoxeterSystem, CoxeterGroup, a_value_certified
>>> W = CoxeterGroup(CoxeterSystem("ab", [("a", "b", 3)]))
>>> a_value_certified(W.element("a b a"))
(3, 'FiniteBruteForce')
"""

from .config import Budgets
from .diagram import (
    INF,
    CoxeterSystem,
    classify_a1_finite,
    classify_a2_finite,
    find_forbidden_subgraph,
    load_diagram,
    parse_diagram,
    recognize_shape,
)
from .errors import (
    BudgetExceeded,
    CoxklError,
    DiagramError,
    NotFullyCommutativeError,
    NotReducedError,
    PreconditionError,
    WordError,
)
from .heaps import build_heap, enumerate_fc, is_fully_commutative, n_value
from .kl import (
    HeckeElement,
    a_value_certified,
    a_value_finite,
    c_product_left,
    c_product_right,
    cells,
    kl_polynomial,
    mu,
    t_multiply,
    verify_star_mu_transport,
    verify_star_recurrence,
)
from .laurent import LaurentPoly
from .star import ReductionPath, StarMove, star_op, star_reduce
from .witnesses import certify, family, step_mu_table, witness_word
from .words import CoxeterGroup, Element

__version__ = "0.1.0"

__all__ = [
    "Budgets",
    "INF",
    "CoxeterSystem",
    "classify_a1_finite",
    "classify_a2_finite",
    "find_forbidden_subgraph",
    "load_diagram",
    "parse_diagram",
    "recognize_shape",
    "BudgetExceeded",
    "CoxklError",
    "DiagramError",
    "NotFullyCommutativeError",
    "NotReducedError",
    "PreconditionError",
    "WordError",
    "build_heap",
    "enumerate_fc",
    "is_fully_commutative",
    "n_value",
    "HeckeElement",
    "a_value_certified",
    "a_value_finite",
    "c_product_left",
    "c_product_right",
    "cells",
    "kl_polynomial",
    "mu",
    "t_multiply",
    "verify_star_mu_transport",
    "verify_star_recurrence",
    "LaurentPoly",
    "ReductionPath",
    "StarMove",
    "star_op",
    "star_reduce",
    "certify",
    "family",
    "step_mu_table",
    "witness_word",
    "CoxeterGroup",
    "Element",
]

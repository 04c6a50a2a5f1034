"""Typed string diagrams for dagger compact categories.

Terms over a signature are built in :mod:`procat.signature` (or parsed with
:mod:`procat.dsl`), turned into port graphs and normalized by
:mod:`procat.graph`, evaluated as matrices by :mod:`procat.backends`, and
checked against the categorical laws by :mod:`procat.laws`.
"""

from .backends import Binding, evaluate, evaluate_graph, load_bindings, parse_bindings
from .dsl import parse, parse_file
from .graph import equal, normalize, to_graph
from .laws import LawResult, check_iso, check_naturality, run_suite

__all__ = [
    "Binding", "evaluate", "evaluate_graph", "load_bindings", "parse_bindings",
    "parse", "parse_file", "equal", "normalize", "to_graph",
    "LawResult", "check_iso", "check_naturality", "run_suite",
]
__version__ = "0.1.0"

"""High-girth algebraic graphs and triple systems over finite fields."""

from .field import FieldElem, FieldSpec, gf, make_field, parse_field
from .graphcore import Graph, TripleSystem, component_of, deserialize, link_of, serialize
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "FieldElem", "FieldSpec", "Graph", "TripleSystem", "component_of",
           "deserialize", "gf", "link_of", "make_field", "parse_field", "serialize", "__version__"]

"""Milnor link invariants from planar diagrams, with Whitehead doubling."""

from .linkdiag import Crossing, DiagramError, LinkDiagram, PDSyntaxError, linking_number, mirror, parse, parse_gauss, parse_pd, self_writhe, validate
from .magnus import GroupWord, MagnusSeries, evaluate_word, expand_word, series_invert, series_unit
from .milnor import MilnorValue, MultiIndex, ResourceLimitError, indeterminacy, invariant_table, longitude_series, mu, mu_bar, reduce_to_meridians, wirtinger
from .whitehead import DoubleSpec, double_twice, parallel_pair, whitehead_double, whitehead_odd_double

__version__ = "0.1.0"

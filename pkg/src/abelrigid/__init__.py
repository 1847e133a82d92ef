"""Abelian rigidity of lattice patterns: decision, certificates, witnesses and brute-force checks."""

__version__ = "0.1.0"

from .errors import (AbelRigidError, ConsistencyError, DegenerateHullError, DimensionError, FormatError,
                     RepresentationError, WindowError, WitnessError)
from .geometry import (WeightedFigure, canonicalize, check_convex, complete_basis, direction_gcd,
                       line_partition, parse_figure, primitive_directions, read_figure, uv_representation)
from .polynomial import (Poly, cyclotomic, detect_cyclotomic_factors, divide_by_strongly_linear,
                         figure_of_poly, find_strongly_linear_divisors, format_poly, parse_poly,
                         poly_of_pattern, strongly_linear)
from .window import ConfigurationWindow, PeriodicSequence, parse_window
from .oracle import (abelian_combination, abelian_pattern_complexity, constant_sum_check,
                     minimal_period_1d, period_vectors, search_windows_2d, search_words_1d)
from .witness import StronglyLinearRule, build_witness_1d, build_witness_2d, render_window
from .rigidity import decide_rigidity, extension_bound

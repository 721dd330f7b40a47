"""Rational lines and r-planes on hypersurfaces over finite fields.

Core surface: field arithmetic (gf), homogeneous forms (formring), projective
enumeration (projgeom), line counting and plane lifting (fano), the Groebner
smoothness test (smoothness), exact existence guarantees (bounds), and the
seeded census (census).  Hot counting kernels come from a compiled extension
when available, with an equivalent pure implementation selected at import
(set FANOLINES_PURE=1 to force the fallback).
"""

from ._kernels import HAVE_SPEED
from .bounds import (BoundReport, bound_report, effective_guarantee,
                     expected_line_count, gl_contains, gl_interval,
                     min_admissible_q)
from .census import CensusConfig, CensusReport, run_census, summarize
from .errors import FanolinesError
from .fano import (LineCountResult, count_lines, count_lines_pointpair,
                   find_point, lift_plane, plane_contained, point_count)
from .formring import Form, decompose, parse_form, random_form, render_form
from .gf import FieldSpec, field_make
from .projgeom import (Plane, enumerate_planes, enumerate_points,
                       gaussian_binomial, line_through, num_planes,
                       num_points, plane_from_rows, rref)
from .rng import SplitMix64, substream_seed
from .smoothness import buchberger, is_smooth, jacobian_ideal, normal_form

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "CensusConfig", "CensusReport", "FanolinesError",
    "FieldSpec", "Form", "HAVE_SPEED", "LineCountResult", "Plane",
    "SplitMix64", "bound_report", "buchberger", "count_lines",
    "count_lines_pointpair", "decompose", "effective_guarantee",
    "enumerate_planes", "enumerate_points", "expected_line_count",
    "field_make", "find_point", "gaussian_binomial", "gl_contains",
    "gl_interval", "is_smooth", "jacobian_ideal", "lift_plane",
    "line_through", "min_admissible_q", "normal_form", "num_planes",
    "num_points", "parse_form", "plane_contained", "plane_from_rows",
    "point_count", "random_form", "render_form", "rref", "run_census",
    "substream_seed", "summarize",
]

"""Cheeger constants, extremal shapes and sharp bounds for planar convex bodies."""

from .bounds import (BoundResult, arcsinc, chi, d0, dstar, evaluate_all, implicit_g,
                     phi, psi, registry_csv, subeq_area_from_perimeter, subeq_inverse)
from .cheeger import CheegerResult, ImplicitRootProblem, cheeger_constant, implicit_bound_value, smallest_crossing
from .diagrams import DiagramPoint, DiagramSpec, boundary, membership, render
from .errors import (CheegerAtlasError, DegenerateInput, DomainError, InvalidParam,
                     NoRoot, NonMonotone, OutOfRange, PolygonJsonError, UnboundedRegion,
                     Unreachable, Unsupported)
from .functionals import (Functionals, area, circumradius, diameter, inradius,
                          measure, min_width, perimeter)
from .geom import (ConvexPolygon, HalfPlane, convex_hull, dilate, form_body,
                   halfplane_intersection, inner_parallel, interpolate, minkowski_sum,
                   polygon_from_json, polygon_to_json, support)
from .sampler import SampleRecord, cloud_csv, mix, normalize, sample_cloud, valtr
from .shapes import (Ball, ConstantWidthNonagon, Polygon, Resolution, ShapeSpec, Slice,
                     SmoothedNonagon, Stadium, SubequilateralTriangle, TwoCup, Yamanouti,
                     build, closed_form, solve_param, spec_from_json, spec_to_json,
                     triangle_functionals)
from .verify import verify_suite

__version__ = "0.1.0"

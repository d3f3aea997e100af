"""Inflection lower bounds for generic plane curves.

Combinatorial side: signed Gauss codes, planar embeddings, admissible
polygons and the invariant ``mu``.  Geometric side: sampled curves,
crossings, inflections, double tangents and winding data.
"""

from .census import CensusEntry, CensusReport, census_report, planar_types, spherical_types
from .curve import (
    CombinatorialCurve,
    PlanarEmbedding,
    build_embedding,
    canonical_form,
    curve_from_key,
    embedding_from_key,
    parse_curve,
)
from .errors import (
    AmbiguousBitangent,
    BadOuterFace,
    ConventionFailure,
    Degenerate,
    IdentityViolation,
    InflectaError,
    MalformedCode,
    NotSpherical,
)
from .geometry import SampledCurve, extract_code, full_report, read_curve, validate_genericity
from .mu import MuResult, compute_mu, compute_mu_bruteforce
from .polygons import AdmissiblePolygon, admissible_polygons, enumerate_cycles

__version__ = "0.1.0"

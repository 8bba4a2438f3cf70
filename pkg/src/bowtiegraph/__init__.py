"""Bow-tie graphs of linear hypergraphs and sparse (s, k)-configurations."""

__version__ = "0.1.0"

from .hypergraph import (
    HLGParseError,
    HypergraphError,
    InvalidInstanceError,
    LinearHypergraph,
    PreconditionError,
    UnderlyingGraph,
    UnsupportedError,
    count_triangles_U,
    linear_density,
    link_reduce,
    parse_hlg,
    read_hlg,
    underlying_graph,
    validate,
    write_hlg,
)
from .bowtie import BowtieGraph, build_bowtie, component_report
from .search import Configuration, NotFound, find_configuration, grow_configuration
from .oracle import has_configuration, min_span
from .gen import generate, parse_spec

"""Induced subdivisions of cliques in graphs of large girth and minimum degree."""

from .graph import Graph, load_graph, dump_graph
from .certify import (SubdivisionCertificate, parse_certificate, verify_subdivision,
                      verify_induced_subdivision, brute_force_induced)
from .profile import ConstantsProfile
from .probabilistic import RandomSource

__all__ = ["Graph", "load_graph", "dump_graph", "SubdivisionCertificate", "parse_certificate",
           "verify_subdivision", "verify_induced_subdivision", "brute_force_induced",
           "ConstantsProfile", "RandomSource"]

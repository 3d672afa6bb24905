"""Periodic covers of cubic cells: bands, gaps, quotients, search."""

from .periodic import (BandStructure, GapReport, PeriodicGraph, bands,
                       cyclic_quotient, gap_report, restrict_subtorus,
                       torus_quotient, twisted_adjacency)
from .quotients import (folded_ring, group_closure, is_automorphism,
                        quotient_by_automorphism, ring_reflection,
                        shifted_ring_reflection)
from .reference import (doubled_cycle_cover, doubled_cycle_ring,
                        folded_doubled_cycle_ring, folded_prism_ring,
                        prism_band_cover, prism_ring)
from .search import (PLANAR_QUOTIENT_RANGE, SUBTORUS_DIRECTIONS, CatalogEntry,
                     catalog_hash, coverage_report, entry_cover, load_catalog,
                     save_catalog, search_covers, search_planar_covers)

__all__ = [
    "BandStructure",
    "GapReport",
    "PeriodicGraph",
    "bands",
    "cyclic_quotient",
    "gap_report",
    "restrict_subtorus",
    "torus_quotient",
    "twisted_adjacency",
    "folded_ring",
    "group_closure",
    "is_automorphism",
    "quotient_by_automorphism",
    "ring_reflection",
    "shifted_ring_reflection",
    "CatalogEntry",
    "catalog_hash",
    "coverage_report",
    "entry_cover",
    "load_catalog",
    "save_catalog",
    "search_covers",
    "search_planar_covers",
    "SUBTORUS_DIRECTIONS",
    "PLANAR_QUOTIENT_RANGE",
    "prism_band_cover",
    "doubled_cycle_cover",
    "prism_ring",
    "doubled_cycle_ring",
    "folded_prism_ring",
    "folded_doubled_cycle_ring",
]

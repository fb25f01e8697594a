"""Exact enumeration for the generalized factor order on positive integers.

Embedding counts, minimal clusters and the cluster-method generating
functions, rigid shifts of skyline diagrams, and exact decisions of strong
Wilf equivalence.
"""

from .clusters import (
    Certificate,
    ClusterAutomaton,
    MarkedCluster,
    brute_force_A,
    build_automaton,
    m_level_dp,
    m_level_enum,
    minimal_cluster,
    series_A,
    series_C,
    series_M,
    strong_wilf_equivalent,
)
from .equivalence import EquivalenceReport, Relation, class_count_sequence, find_swe_not_shift, partition
from .polyring import TriPoly
from .skyline import RigidShift, ShiftClass, apply_shift, enumerate_shifts, is_valid_shift, render, reverse, shift_class
from .words import EmbeddingSet, Word, embeddings, eta, generate_by_sum, generate_permutations, is_rearrangement, parse_word

__version__ = "0.1.0"

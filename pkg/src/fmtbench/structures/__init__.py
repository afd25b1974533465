"""Finite structures, substructures, isomorphism, enumeration and graph search."""

from .core import (
    H0,
    H1,
    FinStructure,
    StructureError,
    complete_graph,
    complete_ordering,
    cycle_graph,
    figure_one_graph,
    graph,
    induced_substructure,
    is_graph,
    is_lt_substructure,
    validate_graph,
)
from .enum import count_structures, enumerate_structures, relation_contents, structures_of_size, tuple_space
from .fileio import (
    StructureFormatError,
    dump_structure,
    parse_structure,
    parse_structures,
    read_structure,
    write_structure,
)
from .iso import canonical_key, find_isomorphism, is_isomorphism, isomorphic
from .search import DistanceCache, bfs_distances, chordless_cycles, find_cycle_through, find_path_with_ear

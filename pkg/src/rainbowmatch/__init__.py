"""Full rainbow matchings in families of bipartite matchings."""

from .core import (Edge, MatchingFamily, RainbowMatching, edges_between, family_from_json,
                   family_to_json, free_vertices, is_rainbow_matching, validate_family)
from .exact import has_full_rainbow_matching, max_rainbow_matching
from .generators import (LatinSquare, cycle_family, cycle_family_extended, cyclic_latin_square,
                         latin_square_family, latin_squares, planted_near_full, random_family,
                         random_latin_square)
from .solver import (augment, augment_step, extend_to_near_full, find_full_rainbow_matching,
                     greedy_rainbow_matching, required_size, solve_constructive)

__all__ = [
    'Edge', 'MatchingFamily', 'RainbowMatching', 'edges_between', 'free_vertices',
    'is_rainbow_matching', 'validate_family', 'family_from_json', 'family_to_json',
    'has_full_rainbow_matching', 'max_rainbow_matching',
    'LatinSquare', 'cycle_family', 'cycle_family_extended', 'cyclic_latin_square',
    'latin_square_family', 'latin_squares', 'planted_near_full', 'random_family',
    'random_latin_square',
    'augment', 'augment_step', 'extend_to_near_full', 'find_full_rainbow_matching',
    'greedy_rainbow_matching', 'required_size', 'solve_constructive',
]

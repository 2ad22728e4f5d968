"""Independent brute-force references used by the tests."""

import itertools


def naive_max_rainbow(family):
    """Enumerate all prod(|F_i| + 1) partial choices; no pruning, no bit tricks."""
    options = [[None] + list(family[c]) for c in family.colors]
    best = 0
    for choice in itertools.product(*options):
        picked = [e for e in choice if e is not None]
        us = [e[0] for e in picked]
        ws = [e[1] for e in picked]
        if len(set(us)) == len(us) and len(set(ws)) == len(ws):
            best = max(best, len(picked))
    return best


def naive_has_transversal(cells):
    """Transversal of a Latin square by trying every column permutation."""
    n = len(cells)
    for perm in itertools.permutations(range(n)):
        if len({cells[r][perm[r]] for r in range(n)}) == n:
            return True
    return False

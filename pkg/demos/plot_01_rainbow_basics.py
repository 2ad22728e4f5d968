"""
Families, rainbow matchings and the exact oracle
================================================

A family is a list of matchings in one bipartite host graph.  Picking at
most one edge from each matching so that the picks are vertex disjoint
gives a rainbow matching.
"""

from rainbowmatch import (Edge, family_to_json, is_rainbow_matching, max_rainbow_matching,
                          validate_family)

family = validate_family({
    'u_size': 3, 'w_size': 3,
    'matchings': [
        [[0, 0], [1, 1], [2, 2]],
        [[0, 1], [1, 2], [2, 0]],
        [[0, 0], [1, 2]],
    ],
})
print(family.n, 'colors, sizes', family.sizes())

# one edge per color, no shared endpoints
r = {1: Edge(1, 1), 2: Edge(2, 0), 3: Edge(0, 0)}
print(is_rainbow_matching(family, r))

# reuse a vertex and the verdict says why
print(is_rainbow_matching(family, {1: Edge(0, 0), 3: Edge(0, 0)}))

best = max_rainbow_matching(family)
print('maximum rainbow matching:', dict(best), 'of size', best.size)

###############################################################################
# Instances travel as JSON

print(family_to_json(family))

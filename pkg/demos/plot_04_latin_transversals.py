"""
Latin squares and transversals
==============================

The cells holding each symbol of a Latin square form a perfect matching
of K_{n,n}, so a transversal is a full rainbow matching.  Even-order
cyclic squares have none, but a partial one of size n - 1 always turns up
in these checks.
"""

import time

from rainbowmatch import (cyclic_latin_square, has_full_rainbow_matching, latin_square_family,
                          latin_squares, max_rainbow_matching, random_latin_square)

counts = {}
for L in latin_squares(4):
    size = max_rainbow_matching(latin_square_family(L)).size
    counts[size] = counts.get(size, 0) + 1
print('order 4, best size -> number of squares:', counts)

for order in (6, 8, 10):
    for name, L in [('cyclic', cyclic_latin_square(order)), ('random', random_latin_square(order, 1))]:
        t = time.perf_counter()
        has = has_full_rainbow_matching(latin_square_family(L))
        print(f'order {order} {name}: transversal={has} ({time.perf_counter() - t:.2f}s)')

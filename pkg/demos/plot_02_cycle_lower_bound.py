"""
Why n edges per color are not enough
====================================

Split the cycle C_{2n} into its two perfect matchings and hand the first
to k colors and the second to the rest.  Every color has n edges, yet no
rainbow matching uses all colors.
"""

from rainbowmatch import cycle_family, max_rainbow_matching
from rainbowmatch.harness import pin_f2

for n in range(2, 7):
    sizes = [max_rainbow_matching(cycle_family(n, k)).size for k in range(1, n)]
    print(f'n={n}: best rainbow matching per k = {sizes}')

###############################################################################
# For two colors the threshold is exactly three: every pair of 3-edge
# matchings (up to relabeling) has a full rainbow matching.

print(pin_f2())

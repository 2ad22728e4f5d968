"""
Growing a near-full rainbow matching by one edge
================================================

With ceil(3n/2) + 1 edges per color a rainbow matching missing one color
can always be completed.  Usually the missing color has an edge between
two free vertices.  The planted instances below rule that out, so the
solver builds the scaffold around the free vertices, grows a chain of
exchanges and closes it.
"""

from rainbowmatch import augment, planted_near_full, solve_constructive
from rainbowmatch.solver import build_chain, compute_scaffold, verify_claims

family, R = planted_near_full(8, seed=4)
print('missing color:', set(family.colors) - set(R))

s = compute_scaffold(family, R)
print(s.summary())

report = verify_claims(s, family)
print(len(report.checks), 'counting checks, smallest margin', report.min_margin())

chain = build_chain(s, family)
print('chain colors', chain.colors, 'case', chain.case)

a = augment(family, R)
print('closed by', a.case, '->', dict(a.matching))

###############################################################################
# From scratch: greedy first, then the exact oracle for n - 1 edges,
# then one augmentation.

sol = solve_constructive(family)
print(sol.route, sol.matching.size)

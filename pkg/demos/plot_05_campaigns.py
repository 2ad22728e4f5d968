"""
Seeded campaigns
================

The harness runs many small instances and returns a JSON report.  Same
parameters and seed give the same bytes, whatever the worker count.
"""

from rainbowmatch.harness import check_near_full, check_upper_bound, search_lower_bound

report = check_upper_bound(6, 10, trials=200, seed=7, host=14)
print(report.to_json())

# more workers, same report
assert report.to_json() == check_upper_bound(6, 10, trials=200, seed=7, host=14, jobs=2).to_json()

print(check_near_full(5, 'random', trials=300, seed=1).to_dict()['counts'])

###############################################################################
# Local search for families with no full rainbow matching.  At n edges
# per color it starts from the cycle construction.

hit = search_lower_bound(4, 4, iterations=50, seed=0)
print(hit.details)

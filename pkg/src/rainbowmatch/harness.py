"""
Seeded campaigns that probe the bounds and conjectures at small scale.

Every campaign returns a :class:`CampaignReport`.  Trials are independent
and trial ``t`` draws its instance from ``mix_seed(seed, t)``, so running
with several worker processes gives exactly the same report as running
serially.  ``report.to_json()`` leaves out the wall-clock time unless asked,
which keeps reports byte-identical across runs.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from collections import Counter
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from .core import (Edge, MatchingFamily, family_to_dict, is_rainbow_matching,
                   rainbow_to_dict, validate_family)
from .exact import max_rainbow_matching
from .generators import (InvalidParameter, cycle_family, latin_square_family,
                         latin_squares, mix_seed, random_family, random_latin_square)
from .solver import (SolverFault, greedy_rainbow_matching, near_full_size,
                     required_size, solve_constructive)

__all__ = [
    'CampaignReport', 'check_upper_bound', 'search_lower_bound', 'check_near_full',
    'two_color_families', 'pin_f2', 'METHODS', 'NEAR_FULL_MODES',
]

METHODS = ('constructive', 'greedy', 'exact')
NEAR_FULL_MODES = ('latin-exhaustive', 'latin-random', 'random', 'cycle')


@dataclass
class CampaignReport:
    kind: str
    params: dict[str, Any]
    tested: int = 0
    full: int = 0
    near_full: int = 0
    violations: int = 0
    witnesses: list[dict] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    duration: float = 0.0

    @property
    def successes(self) -> int:
        return self.tested - self.violations

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            'kind': self.kind,
            'params': self.params,
            'counts': {'tested': self.tested, 'full': self.full,
                       'near_full': self.near_full, 'violations': self.violations},
            'details': self.details,
            'witnesses': self.witnesses,
        }
        if timing:
            out['duration_s'] = round(self.duration, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)


def _run(fn: Callable, items: Iterable, jobs: int) -> list:
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _tally(report: CampaignReport, outcomes: list[dict]) -> None:
    """Fold per-instance outcomes (in trial order) into ``report``."""
    n = report.params['n']
    routes: Counter = Counter()
    for o in outcomes:
        report.tested += 1
        report.full += o['size'] == n
        report.near_full += o['size'] >= n - 1
        if o.get('route'):
            routes[o['route']] += 1
        if o['violation']:
            report.violations += 1
            report.witnesses.append(o['witness'])
    if routes:
        report.details['routes'] = dict(sorted(routes.items()))


# -- upper bound -----------------------------------------------------------------

def _upper_trial(args) -> dict:
    family, method, label = args
    n = family.n
    route = None
    error = None
    try:
        if method == 'constructive':
            sol = solve_constructive(family)
            r, route = sol.matching, sol.route.split('+')[-1]
        elif method == 'greedy':
            r = greedy_rainbow_matching(family)
        else:
            r = max_rainbow_matching(family, target=n)
    except SolverFault as exc:
        r, error = None, f'{type(exc).__name__}: {exc}'
    good = r is not None and bool(is_rainbow_matching(family, r)) and r.size == n
    out = {'size': r.size if r is not None else 0, 'route': route, 'violation': not good}
    if not good:
        best = max_rainbow_matching(family)
        out['witness'] = {
            **label, 'instance': family_to_dict(family), 'method': method,
            'returned': None if r is None else rainbow_to_dict(r),
            'max_rainbow': best.size, 'error': error,
        }
    return out


def two_color_families(size: int) -> Iterable[MatchingFamily]:
    """
    Every pair of ``size``-edge matchings up to relabeling rows and columns.

    ``F_1`` is fixed to the diagonal ``{(i, i) : i < size}``; ``F_2`` runs over
    all ``size``-edge matchings of K_{2size, 2size}.  Two such matchings touch
    at most ``2 * size`` vertices per side, so nothing is lost.
    """
    h = 2 * size
    first = [[i, i] for i in range(size)]
    for us in itertools.combinations(range(h), size):
        for ws in itertools.combinations(range(h), size):
            for perm in itertools.permutations(ws):
                yield validate_family({'u_size': h, 'w_size': h, 'matchings': [
                    first, [[u, w] for u, w in zip(us, perm)]]})


def check_upper_bound(n: int, size: int, trials: int = 100, seed: int = 0,
                      method: str = 'constructive', host: int | None = None,
                      exhaustive: bool = False, jobs: int = 1) -> CampaignReport:
    """
    Confirm that families of ``n`` matchings of ``size`` edges have a full
    rainbow matching found by ``method``.

    Random mode draws ``trials`` families in K_{host, host} (default
    ``host = size``).  Exhaustive mode (``n = 2`` only) replaces them with
    :func:`two_color_families`.  Any instance where the method comes back
    short is a violation; its witness records the exact maximum as well.
    """
    if method not in METHODS:
        raise InvalidParameter(f'method must be one of {METHODS}')
    if n < 1 or size < 0 or trials < 0:
        raise InvalidParameter('need n >= 1, size >= 0, trials >= 0')
    if method == 'constructive' and size < required_size(n):
        raise InvalidParameter(f'constructive method needs size >= {required_size(n)} for n = {n}')
    start = time.perf_counter()
    if exhaustive:
        if n != 2:
            raise InvalidParameter('exhaustive mode is implemented for n = 2 only')
        params = {'n': n, 'size': size, 'method': method, 'mode': 'exhaustive'}
        items = ((f, method, {'index': i}) for i, f in enumerate(two_color_families(size)))
    else:
        host = size if host is None else host
        if host < size:
            raise InvalidParameter('host must be at least size')
        params = {'n': n, 'size': size, 'method': method, 'mode': 'random',
                  'trials': trials, 'seed': seed, 'host': host}
        items = ((random_family(n, size, host, host, mix_seed(seed, t)), method,
                  {'trial': t, 'seed': mix_seed(seed, t)}) for t in range(trials))
    report = CampaignReport('check-bound', params)
    _tally(report, _run(_upper_trial, items, jobs))
    report.duration = time.perf_counter() - start
    return report


def pin_f2() -> dict:
    """
    Both halves of ``f(2) = 3``.

    The upper half: an edge of ``F_1`` meets at most two edges of a
    3-edge ``F_2``, so some edge of ``F_2`` misses it.  This is checked
    exhaustively over :func:`two_color_families`.  The lower half is the
    two-color cycle family, whose 2-edge matchings have no full rainbow
    matching.
    """
    upper = check_upper_bound(2, 3, method='exact', exhaustive=True)
    lower = max_rainbow_matching(cycle_family(2, 1)).size
    return {'families_checked': upper.tested, 'all_full': upper.ok and upper.full == upper.tested,
            'cycle_max_rainbow': lower, 'f2': 3 if upper.ok and lower < 2 else None}


# -- lower bound search -------------------------------------------------------------

def _seed_families(n: int, size: int, host: int) -> list[MatchingFamily]:
    """Cycle families, truncated to ``size`` edges and padded to the host, when ``size <= n``."""
    if size > n or n < 2:
        return []
    out = []
    for k in range(1, n):
        f = cycle_family(n, k)
        out.append(validate_family({'u_size': host, 'w_size': host,
                                    'matchings': [[list(e) for e in m[:size]] for m in f.matchings]}))
    return out


def _mutate(rng: random.Random, family: MatchingFamily) -> MatchingFamily:
    """Replace one edge of one color by a random edge that keeps it a matching."""
    ms = [list(m) for m in family.matchings]
    c = rng.randrange(family.n)
    m = ms[c]
    if m:
        m.pop(rng.randrange(len(m)))
    used_u = {e.u for e in m}
    used_w = {e.w for e in m}
    free_u = [u for u in range(family.u_size) if u not in used_u]
    free_w = [w for w in range(family.w_size) if w not in used_w]
    m.append(Edge(rng.choice(free_u), rng.choice(free_w)))
    return validate_family({'u_size': family.u_size, 'w_size': family.w_size,
                            'matchings': [[list(e) for e in mm] for mm in ms]})


def search_lower_bound(n: int, size: int, iterations: int = 1000, seed: int = 0,
                       host: int | None = None, restart_every: int = 200) -> CampaignReport:
    """
    Local search for ``n`` matchings of ``size`` edges with no full rainbow matching.

    Starts from truncated cycle families when ``size <= n`` (these already
    qualify), then from seeded random families.  The search minimises the
    maximum rainbow matching size by single-edge mutations, accepting ties,
    and restarts every ``restart_every`` steps.  The best family found is
    reported as a witness.  A witness with ``size >= n + 1`` would
    contradict the conjectured value of ``f(n)`` and is counted as a
    violation.
    """
    if n < 1 or size < 1 or iterations < 0:
        raise InvalidParameter('need n >= 1, size >= 1, iterations >= 0')
    host = host if host is not None else max(2 * size, n)
    if host < size:
        raise InvalidParameter('host must be at least size')
    start = time.perf_counter()
    params = {'n': n, 'size': size, 'iterations': iterations, 'seed': seed, 'host': host}
    report = CampaignReport('search-lower', params)
    rng = random.Random(mix_seed(seed, 0))

    def score(f: MatchingFamily) -> int:
        report.tested += 1
        s = max_rainbow_matching(f, target=n).size
        report.full += s == n
        report.near_full += s >= n - 1
        return s

    best = best_score = None
    current = cur_score = None
    seeds = _seed_families(n, size, host)
    for step in range(iterations):
        k = step - len(seeds)
        if k < 0:
            cand = seeds[step]
        elif current is None or k % restart_every == 0:
            cand = random_family(n, size, host, host, mix_seed(seed, step + 1))
            current = None
        else:
            cand = _mutate(rng, current)
        s = score(cand)
        if k >= 0 and (current is None or s <= cur_score):
            current, cur_score = cand, s
        if best_score is None or s < best_score:
            best, best_score = cand, s
        if best_score < n:
            break

    if best is not None and best_score < n:
        report.witnesses.append({'instance': family_to_dict(best), 'max_rainbow': best_score})
        if size >= n + 1:
            report.violations += 1
    report.details = {'found': best_score is not None and best_score < n,
                      'best_max_rainbow': best_score}
    report.duration = time.perf_counter() - start
    return report


# -- near-full probes --------------------------------------------------------------

def _near_trial(args) -> dict:
    family, label = args
    n = family.n
    r = max_rainbow_matching(family, target=n)
    bad = r.size < n - 1
    out = {'size': r.size, 'violation': bad}
    if bad:
        exact = max_rainbow_matching(family).size
        out['witness'] = {**label, 'instance': family_to_dict(family), 'max_rainbow': exact}
    return out


def _cycle_trial(args) -> dict:
    family, label = args
    n = family.n
    size = max_rainbow_matching(family).size
    bad = size < n - 1
    out = {'size': size, 'violation': bad, 'route': f'max={size}'}
    if bad:
        out['witness'] = {**label, 'instance': family_to_dict(family), 'max_rainbow': size}
    return out


def check_near_full(n: int, mode: str, trials: int = 100, seed: int = 0,
                    host: int | None = None, jobs: int = 1) -> CampaignReport:
    """
    Check that every instance of the chosen kind has a rainbow matching of size ``n - 1``.

    Modes: ``latin-exhaustive`` (every Latin square of order ``n <= 4``),
    ``latin-random`` (hill-climbed squares), ``random`` (families with
    ``floor(3n/2)`` edges per color in K_{host, host}) and ``cycle`` (the cycle
    families for every ``1 <= k <= n - 1``; their exact maxima are listed in
    ``details``).  An instance falling short is a violation.
    """
    if mode not in NEAR_FULL_MODES:
        raise InvalidParameter(f'mode must be one of {NEAR_FULL_MODES}')
    if n < 1 or trials < 0:
        raise InvalidParameter('need n >= 1 and trials >= 0')
    start = time.perf_counter()
    params: dict[str, Any] = {'n': n, 'mode': mode}
    fn = _near_trial
    if mode == 'latin-exhaustive':
        if n > 4:
            raise InvalidParameter('latin-exhaustive is limited to n <= 4')
        items = ((latin_square_family(L), {'index': i, 'cells': [list(r) for r in L.cells]})
                 for i, L in enumerate(latin_squares(n)))
    elif mode == 'latin-random':
        params.update(trials=trials, seed=seed)
        items = []
        for t in range(trials):
            L = random_latin_square(n, mix_seed(seed, t))
            items.append((latin_square_family(L), {'trial': t, 'cells': [list(r) for r in L.cells]}))
    elif mode == 'random':
        size = near_full_size(n)
        host = size if host is None else host
        if host < size:
            raise InvalidParameter('host must be at least floor(3n/2)')
        params.update(trials=trials, seed=seed, size=size, host=host)
        items = ((random_family(n, size, host, host, mix_seed(seed, t)),
                  {'trial': t, 'seed': mix_seed(seed, t)}) for t in range(trials))
    else:
        if n < 2:
            raise InvalidParameter('cycle mode needs n >= 2')
        fn = _cycle_trial
        items = ((cycle_family(n, k), {'k': k}) for k in range(1, n))
    report = CampaignReport('check-near-full', params)
    _tally(report, _run(fn, items, jobs))
    report.duration = time.perf_counter() - start
    return report

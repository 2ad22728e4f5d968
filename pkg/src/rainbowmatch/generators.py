"""
Instance factories: the cycle construction, Latin squares, random families.

All randomness goes through :func:`mix_seed` and :class:`random.Random`, so
the same arguments give the same family on every platform and Python
version that keeps the Mersenne Twister seeding of integers (all CPython 3).
"""

from __future__ import annotations

import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .core import Edge, MatchingFamily, RainbowMatching, validate_family

__all__ = [
    'InvalidParameter', 'NotLatin', 'LatinSquare', 'mix_seed',
    'cycle_family', 'cycle_family_extended', 'odd_matching', 'even_matching',
    'latin_square_family', 'cyclic_latin_square', 'latin_squares',
    'latin_square_by_index', 'random_latin_square', 'random_family',
    'planted_near_full',
]

MASK64 = (1 << 64) - 1


class InvalidParameter(ValueError):
    pass


class NotLatin(ValueError):
    pass


def mix_seed(seed: int, index: int) -> int:
    """
    Derive a 64-bit sub-seed from ``(seed, index)``.

    SplitMix64 finalizer applied to ``seed * 2**32 + index`` (mod 2**64).
    Used for per-color seeds in :func:`random_family` and per-trial seeds in
    the harness.
    """
    z = ((seed << 32) + index + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


# -- the cycle construction ---------------------------------------------------

def odd_matching(n: int) -> list[Edge]:
    """``{(i, i)}``: every other edge of the cycle u0 w0 u1 w1 ... u_{n-1} w_{n-1} u0."""
    return [Edge(i, i) for i in range(n)]


def even_matching(n: int) -> list[Edge]:
    """``{(i, i-1 mod n)}``: the complementary perfect matching of the same cycle."""
    return [Edge(i, (i - 1) % n) for i in range(n)]


def _family(u_size: int, w_size: int, matchings: Sequence[Sequence[Edge]]) -> MatchingFamily:
    return validate_family({'u_size': u_size, 'w_size': w_size,
                            'matchings': [[list(e) for e in m] for m in matchings]})


def cycle_family(n: int, k: int) -> MatchingFamily:
    """
    ``k`` copies of the odd matching of C_{2n} followed by ``n - k`` copies
    of the even one.  No full rainbow matching exists when ``1 <= k <= n-1``;
    ``k = n`` is accepted but gives n equal perfect matchings, which do have one.
    """
    if n < 2 or not 1 <= k <= n:
        raise InvalidParameter(f'need n >= 2 and 1 <= k <= n, got n={n}, k={k}')
    mo, me = odd_matching(n), even_matching(n)
    return _family(n, n, [mo] * k + [me] * (n - k))


def cycle_family_extended(n: int) -> MatchingFamily:
    """``n-1`` copies of each cycle matching: 2n-2 matchings of size n, no rainbow matching of size n."""
    if n < 2:
        raise InvalidParameter(f'need n >= 2, got {n}')
    return _family(n, n, [odd_matching(n)] * (n - 1) + [even_matching(n)] * (n - 1))


# -- Latin squares ---------------------------------------------------------------

@dataclass(frozen=True)
class LatinSquare:
    order: int
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.order
        cells = tuple(tuple(int(x) for x in row) for row in self.cells)
        object.__setattr__(self, 'cells', cells)
        if n < 1 or len(cells) != n or any(len(row) != n for row in cells):
            raise NotLatin(f'expected an {n}x{n} array')
        symbols = set(range(n))
        for r, row in enumerate(cells):
            if set(row) != symbols:
                raise NotLatin(f'row {r} is not a permutation of 0..{n - 1}')
        for c in range(n):
            if {cells[r][c] for r in range(n)} != symbols:
                raise NotLatin(f'column {c} is not a permutation of 0..{n - 1}')

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> LatinSquare:
        return cls(len(rows), tuple(tuple(r) for r in rows))


def latin_square_family(L: LatinSquare) -> MatchingFamily:
    """Color ``s + 1`` is the set of cells ``(row, col)`` holding symbol ``s``."""
    n = L.order
    classes: list[list[Edge]] = [[] for _ in range(n)]
    for r in range(n):
        for c in range(n):
            classes[L.cells[r][c]].append(Edge(r, c))
    return _family(n, n, classes)


def cyclic_latin_square(n: int) -> LatinSquare:
    return LatinSquare(n, tuple(tuple((r + c) % n for c in range(n)) for r in range(n)))


def latin_squares(order: int) -> Iterator[LatinSquare]:
    """
    Every Latin square of the given order, in lexicographic order of the
    row-major cell sequence (1, 2, 12, 576 squares for orders 1 to 4).
    """
    if order < 1:
        raise InvalidParameter('order must be >= 1')
    n = order
    grid = [[-1] * n for _ in range(n)]
    row_used = [0] * n
    col_used = [0] * n

    def fill(pos: int) -> Iterator[LatinSquare]:
        if pos == n * n:
            yield LatinSquare(n, tuple(tuple(row) for row in grid))
            return
        r, c = divmod(pos, n)
        for s in range(n):
            bit = 1 << s
            if row_used[r] & bit or col_used[c] & bit:
                continue
            grid[r][c] = s
            row_used[r] |= bit
            col_used[c] |= bit
            yield from fill(pos + 1)
            row_used[r] ^= bit
            col_used[c] ^= bit
        grid[r][c] = -1

    return fill(0)


def latin_square_by_index(order: int, index: int) -> LatinSquare:
    if index < 0:
        raise InvalidParameter('index must be >= 0')
    for i, L in enumerate(latin_squares(order)):
        if i == index:
            return L
    raise InvalidParameter(f'order {order} has only {i + 1} Latin squares')


def random_latin_square(order: int, seed: int, max_steps: int | None = None) -> LatinSquare:
    """
    A Latin square found by hill-climbing; not uniformly distributed.

    Every row starts as a random permutation; moves swap two cells inside a
    row and are accepted when they do not increase the number of repeated
    symbols over all columns.  Restarts from a fresh random start after
    ``max_steps`` moves.
    """
    if order < 1:
        raise InvalidParameter('order must be >= 1')
    n = order
    rng = random.Random(mix_seed(seed, 0x1A7))
    max_steps = max_steps or 2000 * n * n
    while True:
        rows = [rng.sample(range(n), n) for _ in range(n)]
        # counts[c][s] = occurrences of symbol s in column c
        counts = [[0] * n for _ in range(n)]
        for row in rows:
            for c, s in enumerate(row):
                counts[c][s] += 1
        conflicts = sum(max(0, k - 1) for col in counts for k in col)
        for _ in range(max_steps):
            if conflicts == 0:
                return LatinSquare.from_rows(rows)
            r = rng.randrange(n)
            i, j = rng.sample(range(n), 2)
            a, b = rows[r][i], rows[r][j]
            # moving a from column i to j, b from j to i
            delta = ((counts[j][a] >= 1) + (counts[i][b] >= 1)
                     - (counts[i][a] >= 2) - (counts[j][b] >= 2))
            if delta <= 0:
                counts[i][a] -= 1
                counts[j][b] -= 1
                counts[j][a] += 1
                counts[i][b] += 1
                rows[r][i], rows[r][j] = b, a
                conflicts += delta


# -- random families ------------------------------------------------------------

def random_family(n: int, size: int, u_size: int, w_size: int, seed: int) -> MatchingFamily:
    """
    ``n`` independent uniform matchings with exactly ``size`` edges in K_{u_size, w_size}.

    Color ``i`` draws from ``random.Random(mix_seed(seed, i))``: a sample of
    ``size`` left vertices, a sample of ``size`` right vertices, then a
    shuffle of the right sample as the bijection.
    """
    if n < 1 or size < 0 or u_size < 0 or w_size < 0:
        raise InvalidParameter('n must be >= 1 and sizes non-negative')
    if size > min(u_size, w_size):
        raise InvalidParameter(f'size {size} exceeds min(u_size, w_size) = {min(u_size, w_size)}')
    matchings = []
    for color in range(1, n + 1):
        rng = random.Random(mix_seed(seed, color))
        us = rng.sample(range(u_size), size)
        ws = rng.sample(range(w_size), size)
        rng.shuffle(ws)
        matchings.append([Edge(u, w) for u, w in zip(us, ws)])
    return _family(u_size, w_size, matchings)


def _random_matching(rng: random.Random, start: list[tuple[int, int]], size: int,
                     allowed: list[tuple[int, int]], tries: int) -> list[tuple[int, int]] | None:
    for _ in range(tries):
        m = list(start)
        uu = {e[0] for e in m}
        ww = {e[1] for e in m}
        for u, w in rng.sample(allowed, len(allowed)):
            if len(m) == size:
                break
            if u not in uu and w not in ww:
                m.append((u, w))
                uu.add(u)
                ww.add(w)
        if len(m) == size:
            return m
    return None


def planted_near_full(n: int, seed: int, host: int | None = None,
                      xy_prob: float = 1.0) -> tuple[MatchingFamily, RainbowMatching]:
    """
    A family with ``ceil(3n/2) + 1`` edges per color together with a planted
    rainbow matching ``R = {c: (c-1, c-1)}`` of size ``n - 1`` that misses color ``n``.

    Colors avoid edges between the vertices ``R`` leaves free, except that a
    color whose ``R`` edge meets the first ``ceil(n/2) + 2`` free-side edges
    of color ``n`` may have one such edge (with probability ``xy_prob``),
    placed where no two-edge swap can use it.  Augmenting ``R`` therefore
    never succeeds by the short exchanges and has to go through the chain.
    Needs ``n >= 6``.  Regenerates until every color reaches its size.
    """
    if n < 6:
        raise InvalidParameter('planted instances need n >= 6')
    size = (3 * n + 1) // 2 + 1
    h = host or 2 * n
    if h < size:
        raise InvalidParameter(f'host {h} smaller than color size {size}')
    X = range(n - 1, h)
    allowed = [(u, w) for u in range(h) for w in range(h) if u < n - 1 or w < n - 1]
    ell = (n + 1) // 2 + 2
    attempt = 0
    while True:
        rng = random.Random(mix_seed(seed, attempt))
        attempt += 1
        last = _random_matching(rng, [], size, allowed, 50)
        if last is None:
            continue
        toward_y = sorted((e for e in last if e[1] >= n - 1), key=lambda e: (e[1], e[0]))[:ell]
        y_of = {u + 1: y for u, y in toward_y}
        ms = []
        for c in range(1, n):
            start = [(c - 1, c - 1)]
            if c in y_of and rng.random() < xy_prob:
                start.append((rng.choice(X), y_of[c]))
            m = _random_matching(rng, start, size, allowed, 50)
            if m is None:
                break
            ms.append(m)
        else:
            ms.append(last)
            R = RainbowMatching({c: Edge(c - 1, c - 1) for c in range(1, n)})
            return _family(h, h, ms), R

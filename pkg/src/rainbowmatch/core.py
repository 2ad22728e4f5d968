"""
Instance types for families of bipartite matchings.

Vertices are plain integer indices: left vertices ``0 .. u_size-1`` and right
vertices ``0 .. w_size-1``.  Colors (the matchings of a family) are numbered
from 1, so a family ``F_1, ..., F_n`` stores ``F_i`` at ``family[i]``.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any, NamedTuple

__all__ = [
    'Edge', 'MatchingFamily', 'RainbowMatching', 'Verdict',
    'InvalidFamily', 'InvalidVertex', 'NotAMatching', 'DuplicateEdge',
    'InvalidAssignment',
    'validate_family', 'is_rainbow_matching', 'free_vertices', 'edges_between',
    'family_to_dict', 'family_to_json', 'family_from_json',
    'rainbow_to_dict', 'rainbow_from_dict', 'rainbow_to_json', 'rainbow_from_json',
]


class Edge(NamedTuple):
    u: int
    w: int


class InvalidFamily(ValueError):
    pass


class InvalidVertex(InvalidFamily):
    pass


class NotAMatching(InvalidFamily):
    def __init__(self, color: int, side: str, vertex: int):
        super().__init__(f'color {color} is not a matching: {side}={vertex} is covered twice')
        self.color = color
        self.side = side
        self.vertex = vertex


class DuplicateEdge(InvalidFamily):
    def __init__(self, color: int, edge: Edge):
        super().__init__(f'color {color} lists edge {tuple(edge)} more than once')
        self.color = color
        self.edge = edge


class InvalidAssignment(ValueError):
    pass


@dataclass(frozen=True)
class MatchingFamily:
    """
    An ordered family of matchings in the bipartite host K_{u_size, w_size}.

    Construct through :func:`validate_family`; the dataclass constructor does
    not check anything.  Each matching is kept as a lexicographically sorted
    tuple of edges.  Different colors may share edges.
    """
    u_size: int
    w_size: int
    matchings: tuple[tuple[Edge, ...], ...]
    _sets: tuple[frozenset[Edge], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, '_sets', tuple(frozenset(m) for m in self.matchings))

    @property
    def n(self) -> int:
        return len(self.matchings)

    @property
    def colors(self) -> range:
        return range(1, self.n + 1)

    def __getitem__(self, color: int) -> tuple[Edge, ...]:
        if not 1 <= color <= self.n:
            raise IndexError(f'color {color} outside 1..{self.n}')
        return self.matchings[color - 1]

    def contains(self, color: int, edge: Edge) -> bool:
        return 1 <= color <= self.n and edge in self._sets[color - 1]

    def sizes(self) -> list[int]:
        return [len(m) for m in self.matchings]

    def with_edge(self, color: int, edge: Edge) -> MatchingFamily:
        """Return a copy with ``edge`` added to ``F_color`` (revalidated)."""
        ms = [list(m) for m in self.matchings]
        ms[color - 1].append(Edge(*edge))
        return validate_family({'u_size': self.u_size, 'w_size': self.w_size, 'matchings': ms})


class RainbowMatching(Mapping):
    """
    Partial choice function ``color -> Edge`` whose image is a matching.

    Immutable.  Iteration yields colors in increasing order.  Nothing is
    checked on construction; use :func:`is_rainbow_matching`.
    """
    __slots__ = ('_a',)

    def __init__(self, assignment: Mapping[int, Edge] | Iterable[tuple[int, Edge]] = ()):
        items = assignment.items() if isinstance(assignment, Mapping) else assignment
        self._a = {int(c): Edge(*e) for c, e in sorted(items)}

    def __getitem__(self, color):
        return self._a[color]

    def __iter__(self):
        return iter(self._a)

    def __len__(self):
        return len(self._a)

    def __eq__(self, other):
        if isinstance(other, RainbowMatching):
            return self._a == other._a
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._a.items()))

    def __repr__(self):
        inner = ', '.join(f'{c}: ({e.u}, {e.w})' for c, e in self._a.items())
        return f'RainbowMatching({{{inner}}})'

    @property
    def size(self) -> int:
        return len(self._a)

    def edges(self) -> list[Edge]:
        return list(self._a.values())

    def color_of_u(self) -> dict[int, int]:
        return {e.u: c for c, e in self._a.items()}

    def color_of_w(self) -> dict[int, int]:
        return {e.w: c for c, e in self._a.items()}

    def is_full(self, family: MatchingFamily) -> bool:
        return len(self._a) == family.n

    def replace(self, remove: Iterable[int] = (), add: Mapping[int, Edge] | None = None) -> RainbowMatching:
        """Drop the colors in ``remove`` then set the entries in ``add``."""
        a = dict(self._a)
        for c in remove:
            del a[c]
        if add:
            a.update(add)
        return RainbowMatching(a)


class Verdict(NamedTuple):
    ok: bool
    reason: str | None = None

    def __bool__(self):
        return self.ok


def _as_int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InvalidFamily(f'{what} must be an integer, got {x!r}')
    return x


def validate_family(candidate: Mapping[str, Any]) -> MatchingFamily:
    """
    Validate raw instance data and build a :class:`MatchingFamily`.

    ``candidate`` is a mapping with keys ``u_size``, ``w_size`` and
    ``matchings`` (a list of lists of ``[u, w]`` pairs), i.e. the decoded
    JSON instance format.  Raises on the first violated invariant, scanning
    colors in order and edges in listed order.
    """
    if not isinstance(candidate, Mapping):
        raise InvalidFamily('instance must be a JSON object')
    for key in ('u_size', 'w_size', 'matchings'):
        if key not in candidate:
            raise InvalidFamily(f'missing key {key!r}')
    u_size = _as_int(candidate['u_size'], 'u_size')
    w_size = _as_int(candidate['w_size'], 'w_size')
    if u_size < 0 or w_size < 0:
        raise InvalidFamily('u_size and w_size must be non-negative')
    raw = candidate['matchings']
    if not isinstance(raw, (list, tuple)) or len(raw) == 0:
        raise InvalidFamily('matchings must be a non-empty list')

    matchings = []
    for color, raw_m in enumerate(raw, start=1):
        if not isinstance(raw_m, (list, tuple, set, frozenset)):
            raise InvalidFamily(f'color {color}: matching must be a list of edges')
        seen_u: set[int] = set()
        seen_w: set[int] = set()
        edges: set[Edge] = set()
        for pair in raw_m:
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise InvalidFamily(f'color {color}: edge must be a [u, w] pair, got {pair!r}')
            e = Edge(_as_int(pair[0], 'u'), _as_int(pair[1], 'w'))
            if not 0 <= e.u < u_size:
                raise InvalidVertex(f'color {color}: u={e.u} outside 0..{u_size - 1}')
            if not 0 <= e.w < w_size:
                raise InvalidVertex(f'color {color}: w={e.w} outside 0..{w_size - 1}')
            if e in edges:
                raise DuplicateEdge(color, e)
            if e.u in seen_u:
                raise NotAMatching(color, 'u', e.u)
            if e.w in seen_w:
                raise NotAMatching(color, 'w', e.w)
            edges.add(e)
            seen_u.add(e.u)
            seen_w.add(e.w)
        matchings.append(tuple(sorted(edges)))
    return MatchingFamily(u_size, w_size, tuple(matchings))


def is_rainbow_matching(family: MatchingFamily, r: Mapping[int, Edge]) -> Verdict:
    """Check that every chosen edge lies in its color and the chosen edges are disjoint."""
    used_u: dict[int, int] = {}
    used_w: dict[int, int] = {}
    for color in sorted(r):
        e = Edge(*r[color])
        if not 1 <= color <= family.n:
            return Verdict(False, f'color {color} outside 1..{family.n}')
        if not family.contains(color, e):
            return Verdict(False, f'edge {tuple(e)} is not in F_{color}')
        if e.u in used_u:
            return Verdict(False, f'colors {used_u[e.u]} and {color} share u={e.u}')
        if e.w in used_w:
            return Verdict(False, f'colors {used_w[e.w]} and {color} share w={e.w}')
        used_u[e.u] = color
        used_w[e.w] = color
    return Verdict(True)


def free_vertices(family: MatchingFamily, r: Mapping[int, Edge]) -> tuple[frozenset[int], frozenset[int]]:
    """Left and right vertices not covered by ``r``."""
    cov_u = {e[0] for e in r.values()}
    cov_w = {e[1] for e in r.values()}
    return (frozenset(u for u in range(family.u_size) if u not in cov_u),
            frozenset(w for w in range(family.w_size) if w not in cov_w))


def edges_between(edges: Iterable[Edge], A: Iterable[int], B: Iterable[int]) -> frozenset[Edge]:
    """The edges of ``edges`` with left end in ``A`` and right end in ``B``."""
    A = A if isinstance(A, (set, frozenset)) else set(A)
    B = B if isinstance(B, (set, frozenset)) else set(B)
    return frozenset(Edge(*e) for e in edges if e[0] in A and e[1] in B)


# -- JSON ------------------------------------------------------------------

def family_to_dict(family: MatchingFamily) -> dict:
    return {
        'u_size': family.u_size,
        'w_size': family.w_size,
        'matchings': [[[e.u, e.w] for e in m] for m in family.matchings],
    }


def family_to_json(family: MatchingFamily, **kwargs) -> str:
    return json.dumps(family_to_dict(family), **kwargs)


def family_from_json(text: str) -> MatchingFamily:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidFamily(f'not valid JSON: {exc}') from exc
    return validate_family(data)


def rainbow_to_dict(r: Mapping[int, Edge]) -> dict:
    return {'assignment': [[c, [r[c][0], r[c][1]]] for c in sorted(r)]}


def rainbow_to_json(r: Mapping[int, Edge], **kwargs) -> str:
    return json.dumps(rainbow_to_dict(r), **kwargs)


def rainbow_from_dict(data: Mapping[str, Any]) -> RainbowMatching:
    """Parse ``{"assignment": [[color, [u, w]], ...]}``; structure only, no membership check."""
    if not isinstance(data, Mapping) or 'assignment' not in data:
        raise InvalidAssignment('expected an object with key "assignment"')
    out: dict[int, Edge] = {}
    for item in data['assignment']:
        try:
            color, (u, w) = item
        except (TypeError, ValueError):
            raise InvalidAssignment(f'malformed assignment entry {item!r}') from None
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (color, u, w)):
            raise InvalidAssignment(f'non-integer assignment entry {item!r}')
        if color in out:
            raise InvalidAssignment(f'color {color} assigned twice')
        out[color] = Edge(u, w)
    return RainbowMatching(out)


def rainbow_from_json(text: str) -> RainbowMatching:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidAssignment(f'not valid JSON: {exc}') from exc
    return rainbow_from_dict(data)

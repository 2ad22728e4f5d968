"""
Constructive rainbow matching algorithms.

The centrepiece is :func:`augment_step`, which turns any rainbow matching of
size ``n - 1`` into a full one, provided every color has at least
``ceil(3n/2) + 1`` edges.  It works in three stages.

1. Short exchanges.  An edge of the missing color between two free vertices
   is added directly.  Otherwise one or two matching edges are swapped out
   for edges that reach free right vertices (see ``_short_exchanges``).
2. The scaffold.  If no short exchange applies, the counting inequalities
   checked by :func:`verify_claims` hold, and a chain of alternating edges
   ``r_1, f_1, r_2, f_2, ...`` is grown (:func:`build_chain`).  Each ``f_i``
   runs from a free left vertex into the right ends of the scaffold.
3. Closing the chain.  The chain either closes on itself, freeing left
   vertices for an edge of the missing color, or reaches length ``d + 3``.
   At that length two edges from the starred region re-enter.

Colors keep their original indices throughout.  ``Scaffold.relabeling``
records the order in which the missing color is treated as the last one.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field

from .core import (Edge, MatchingFamily, RainbowMatching, family_to_dict,
                   free_vertices, is_rainbow_matching, rainbow_to_dict)
from .exact import has_full_rainbow_matching, max_rainbow_matching

__all__ = [
    'SolverFault', 'ScaffoldImpossible', 'ClaimViolation', 'ChainStuck',
    'AugmentationImpossible', 'NearFullNotFound', 'PreconditionViolated',
    'Scaffold', 'Chain', 'ClaimCheck', 'ClaimReport', 'Augmentation', 'Solution',
    'required_size', 'near_full_size', 'greedy_rainbow_matching',
    'extend_to_near_full', 'compute_scaffold', 'verify_claims', 'build_chain',
    'augment', 'augment_step', 'solve_constructive', 'find_full_rainbow_matching',
]

log = logging.getLogger(__name__)


def required_size(n: int) -> int:
    """``ceil(3n/2) + 1``, the color size under which augmentation always succeeds."""
    return (3 * n + 1) // 2 + 1


def near_full_size(n: int) -> int:
    """``floor(3n/2)``, enough for a rainbow matching of size ``n - 1``."""
    return 3 * n // 2


def _ceil_half(n: int) -> int:
    return (n + 1) // 2


# -- errors -------------------------------------------------------------------

class PreconditionViolated(ValueError):
    def __init__(self, message: str, color: int | None = None,
                 size: int | None = None, required: int | None = None):
        super().__init__(message)
        self.color = color
        self.size = size
        self.required = required


class SolverFault(RuntimeError):
    """Something the size hypothesis rules out; always an implementation bug or a bad input."""


class ScaffoldImpossible(SolverFault):
    pass


class ClaimViolation(SolverFault):
    def __init__(self, check: ClaimCheck):
        super().__init__(f'{check.claim} violated for color {check.color}: '
                         f'{check.quantity} = {check.value} < {check.bound}')
        self.check = check


class ChainStuck(SolverFault):
    def __init__(self, message: str, state: dict):
        super().__init__(f'{message}; state={state}')
        self.state = state


class AugmentationImpossible(SolverFault):
    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


class NearFullNotFound(SolverFault):
    def __init__(self, message: str, family: MatchingFamily, precondition_held: bool):
        super().__init__(message)
        self.instance = family_to_dict(family)
        self.precondition_held = precondition_held


def _check_sizes(family: MatchingFamily, required: int) -> None:
    for c in family.colors:
        if len(family[c]) < required:
            raise PreconditionViolated(
                f'|F_{c}| = {len(family[c])} < {required} required for n = {family.n}',
                color=c, size=len(family[c]), required=required)


# -- simple procedures ----------------------------------------------------------

def greedy_rainbow_matching(family: MatchingFamily) -> RainbowMatching:
    """
    Take colors in order, each with its first edge (lexicographic) missing
    every vertex already used.  Full whenever all colors have ``2n - 1`` edges.
    """
    used_u: set[int] = set()
    used_w: set[int] = set()
    chosen = {}
    for c in family.colors:
        for e in family[c]:
            if e.u not in used_u and e.w not in used_w:
                chosen[c] = e
                used_u.add(e.u)
                used_w.add(e.w)
                break
    return RainbowMatching(chosen)


def extend_to_near_full(family: MatchingFamily) -> RainbowMatching:
    """
    A rainbow matching with at least ``n - 1`` edges, via the exact search
    stopped at that size.

    Such a matching exists when every color has ``floor(3n/2)`` edges.  With
    smaller colors the search still runs, and :class:`NearFullNotFound` is
    raised if it comes up short.
    """
    n = family.n
    held = all(len(family[c]) >= near_full_size(n) for c in family.colors)
    if not held:
        log.info('some color has fewer than %d edges; near-full search is best effort',
                 near_full_size(n))
    r = max_rainbow_matching(family, target=n - 1)
    if r.size < n - 1:
        raise NearFullNotFound(
            f'maximum rainbow matching has size {r.size} < {n - 1}'
            + ('' if not held else ' although every color is large enough; this is a bug'),
            family, held)
    return r


# -- scaffold -------------------------------------------------------------------

@dataclass
class Scaffold:
    """
    The vertex and edge sets derived from a rainbow matching ``R`` of size
    ``n - 1``.  ``missing`` is the color ``R`` does not represent.

    ``FnY`` holds the ``ell`` edges of the missing color that join a free right
    vertex (``Y``) to a matched left vertex, keeping the ones with smallest
    ``(w, u)``.  Their left ends are ``Uprime``, and ``Fprime`` lists the colors
    of the ``R`` edges there.  For ``i`` in ``Fprime``, ``e_of[i]`` is the
    ``FnY`` edge at ``u_i`` and ``FY[i]`` holds the edges of ``F_i`` from
    ``Y - {y_i}`` to matched left vertices.  The starred sets grow ``Uprime``
    by the left ends of all ``FY`` edges.
    """
    n: int
    R: RainbowMatching
    missing: int
    relabeling: tuple[int, ...]
    X: frozenset[int]
    Y: frozenset[int]
    ell: int
    FnY: tuple[Edge, ...]
    Uprime: frozenset[int]
    Wprime: frozenset[int]
    Rprime: dict[int, Edge]
    Fprime: frozenset[int]
    e_of: dict[int, Edge]
    y_of: dict[int, int]
    FY: dict[int, tuple[Edge, ...]]
    Ustar: frozenset[int]
    Wstar: frozenset[int]
    Rstar: dict[int, Edge]
    Fstar: frozenset[int]
    Fdoubleprime: frozenset[int]
    d: int
    r_endpoints: dict[int, tuple[int, int]]
    color_at_u: dict[int, int] = field(repr=False)
    color_at_w: dict[int, int] = field(repr=False)
    # j in Fdoubleprime -> [(i, f)] with i in Fprime, f in FY[i], f.u == u_j
    witnesses: dict[int, list[tuple[int, Edge]]] = field(repr=False)

    def to_internal(self, color: int) -> int:
        return self.relabeling.index(color) + 1

    def to_original(self, internal: int) -> int:
        return self.relabeling[internal - 1]

    def summary(self) -> dict:
        return {
            'n': self.n, 'missing': self.missing, 'ell': self.ell, 'd': self.d,
            'X': sorted(self.X), 'Y': sorted(self.Y),
            'FnY': [list(e) for e in self.FnY],
            'Fprime': sorted(self.Fprime), 'Fdoubleprime': sorted(self.Fdoubleprime),
            'Ustar': sorted(self.Ustar), 'Wstar': sorted(self.Wstar),
        }


def compute_scaffold(family: MatchingFamily, R: Mapping[int, Edge]) -> Scaffold:
    n = family.n
    R = RainbowMatching(R)
    if n < 2:
        raise PreconditionViolated('a scaffold needs n >= 2')
    if R.size != n - 1:
        raise PreconditionViolated(f'R has size {R.size}, expected {n - 1}')
    ok, why = is_rainbow_matching(family, R)
    if not ok:
        raise PreconditionViolated(f'R is not a rainbow matching: {why}')

    (missing,) = set(family.colors) - set(R)
    relabeling = tuple(c for c in family.colors if c != missing) + (missing,)
    X, Y = free_vertices(family, R)
    color_at_u = R.color_of_u()
    color_at_w = R.color_of_w()
    ell = _ceil_half(n) + 2

    meets_y = [e for e in family[missing] if e.w in Y]
    candidates = sorted((e for e in meets_y if e.u not in X), key=lambda e: (e.w, e.u))
    if len(candidates) < ell:
        direct = [e for e in meets_y if e.u in X]
        raise ScaffoldImpossible(
            f'only {len(candidates)} edges of F_{missing} join Y to matched left vertices, '
            f'need {ell}'
            + (f'; R is not maximum ({tuple(direct[0])} extends it)' if direct
               else '; the color sizes are too small'))
    FnY = tuple(candidates[:ell])

    Uprime = frozenset(e.u for e in FnY)
    Rprime = {color_at_u[u]: R[color_at_u[u]] for u in sorted(Uprime)}
    Wprime = frozenset(e.w for e in Rprime.values())
    Fprime = frozenset(Rprime)
    e_of = {color_at_u[e.u]: e for e in FnY}
    y_of = {i: e.w for i, e in e_of.items()}

    FY = {
        i: tuple(e for e in family[i] if e.w in Y and e.w != y_of[i] and e.u not in X)
        for i in sorted(Fprime)
    }
    Ustar = set(Uprime)
    witnesses: dict[int, list[tuple[int, Edge]]] = {}
    for i in sorted(Fprime):
        for f in FY[i]:
            Ustar.add(f.u)
            j = color_at_u[f.u]
            if j not in Fprime:
                witnesses.setdefault(j, []).append((i, f))
    Ustar = frozenset(Ustar)
    Rstar = {color_at_u[u]: R[color_at_u[u]] for u in sorted(Ustar)}
    Wstar = frozenset(e.w for e in Rstar.values())
    Fstar = frozenset(Rstar)
    Fdoubleprime = Fstar - Fprime

    return Scaffold(
        n=n, R=R, missing=missing, relabeling=relabeling, X=X, Y=Y, ell=ell,
        FnY=FnY, Uprime=Uprime, Wprime=Wprime, Rprime=Rprime, Fprime=Fprime,
        e_of=e_of, y_of=y_of, FY=FY, Ustar=Ustar, Wstar=Wstar, Rstar=Rstar,
        Fstar=Fstar, Fdoubleprime=Fdoubleprime, d=len(Fdoubleprime),
        r_endpoints={c: (e.u, e.w) for c, e in R.items()},
        color_at_u=color_at_u, color_at_w=color_at_w, witnesses=witnesses,
    )


# -- counting claims ---------------------------------------------------------------

@dataclass(frozen=True)
class ClaimCheck:
    claim: str
    color: int
    quantity: str
    value: int
    bound: int

    @property
    def margin(self) -> int:
        return self.value - self.bound

    @property
    def ok(self) -> bool:
        return self.value >= self.bound


@dataclass
class ClaimReport:
    checks: list[ClaimCheck]

    @property
    def violations(self) -> list[ClaimCheck]:
        return [c for c in self.checks if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.violations

    def min_margin(self) -> int | None:
        return min((c.margin for c in self.checks), default=None)


# Claim identifiers, in the order the proof of augmentation uses them.
PRIME_DEGREE = 'prime-degree'      # colors of Fprime reach far into both free sides
SECOND_DEGREE = 'second-degree'    # the same, one weaker, for Fdoubleprime
STAR_SUPPLY = 'star-supply'        # every starred color has d+3 edges from X into Wstar
REENTRY = 'reentry'                # after a long chain, FY[i] hits the chain twice


def verify_claims(s: Scaffold, family: MatchingFamily, chain: Chain | None = None,
                  strict: bool = False) -> ClaimReport:
    """
    Evaluate every counting inequality that the chain construction relies on.

    ``REENTRY`` is only evaluated for a case-2 ``chain``.  With ``strict`` the
    first violation is raised as :class:`ClaimViolation`.
    """
    n = s.n
    h = _ceil_half(n)
    matched_u = frozenset(range(family.u_size)) - s.X
    matched_w = frozenset(range(family.w_size)) - s.Y
    checks = []

    def degrees(c):
        m = family[c]
        to_x = sum(1 for e in m if e.u in s.X and e.w in matched_w)
        to_y = sum(1 for e in m if e.w in s.Y and e.u in matched_u)
        return to_x, to_y

    for i in sorted(s.Fprime):
        to_x, to_y = degrees(i)
        checks.append(ClaimCheck(PRIME_DEGREE, i, '|F_i ∩ E(X, W-Y)|', to_x, h + 1))
        checks.append(ClaimCheck(PRIME_DEGREE, i, '|F_i ∩ E(Y, U-X)|', to_y, h + 1))
    for j in sorted(s.Fdoubleprime):
        to_x, to_y = degrees(j)
        checks.append(ClaimCheck(SECOND_DEGREE, j, '|F_j ∩ E(X, W-Y)|', to_x, h))
        checks.append(ClaimCheck(SECOND_DEGREE, j, '|F_j ∩ E(Y, U-X)|', to_y, h))
    for i in sorted(s.Fstar):
        v = sum(1 for e in family[i] if e.u in s.X and e.w in s.Wstar)
        checks.append(ClaimCheck(STAR_SUPPLY, i, '|F_i ∩ E(X, W*)|', v, s.d + 3))
    if chain is not None and chain.case == 2:
        chain_u = {s.R[c].u for c in chain.colors[:chain.m]}
        for i in sorted(s.Fprime):
            v = sum(1 for e in s.FY[i] if e.u in chain_u)
            checks.append(ClaimCheck(REENTRY, i, '|{e in F_i^Y : e meets r_1..r_m}|', v, 2))

    report = ClaimReport(checks)
    if strict and report.violations:
        raise ClaimViolation(report.violations[0])
    return report


# -- the chain --------------------------------------------------------------------

@dataclass
class Chain:
    """
    ``colors[k]`` is the color of ``r_{k+1}``.  ``f_edges[k]`` has the same
    color, starts in ``X`` and ends at the right vertex of ``r_{k+2}``.
    Case 1 closes through ``closing`` (color ``colors[m]``), which ends at the
    right vertex of ``r_t``.
    """
    colors: list[int]
    f_edges: list[Edge]
    case: int
    t: int | None = None
    closing: Edge | None = None

    @property
    def m(self) -> int:
        return len(self.f_edges)

    def P(self, R: Mapping[int, Edge]) -> list[Edge]:
        return [R[c] for c in self.colors]


def build_chain(s: Scaffold, family: MatchingFamily) -> Chain:
    """
    Grow ``r_1, f_1, r_2, ...`` from the smallest color in ``Fprime``.

    At each step the admissible edges are those of the current color from an
    unused vertex of ``X`` into ``Wstar``.  An admissible edge returning to an
    earlier ``r_t`` closes the chain (case 1).  Otherwise the smallest one
    extends it.  The chain stops at length ``d + 3`` (case 2).
    """
    if not s.Fprime:
        raise ChainStuck('Fprime is empty', s.summary())
    colors = [min(s.Fprime)]
    f_edges: list[Edge] = []
    used_x: set[int] = set()
    limit = s.d + 3
    while True:
        m = len(f_edges)
        if m == limit:
            return Chain(colors, f_edges, case=2)
        c = colors[-1]
        admissible = [e for e in family[c]
                      if e.u in s.X and e.u not in used_x and e.w in s.Wstar]
        if not admissible:
            raise ChainStuck(f'no admissible edge for color {c} at step {m + 1}',
                             {**s.summary(), 'colors': colors,
                              'f_edges': [list(e) for e in f_edges]})
        position = {col: k for k, col in enumerate(colors)}
        for e in admissible:
            k = position.get(s.color_at_w[e.w])
            if k is not None and k < m:
                return Chain(colors, f_edges, case=1, t=k + 1, closing=e)
        e = admissible[0]
        f_edges.append(e)
        used_x.add(e.u)
        colors.append(s.color_at_w[e.w])


# -- augmentation -------------------------------------------------------------------

@dataclass
class Augmentation:
    matching: RainbowMatching
    case: str
    scaffold: Scaffold | None = None
    chain: Chain | None = None


def _short_exchanges(family: MatchingFamily, s: Scaffold) -> Augmentation | None:
    R, n_color = s.R, s.missing
    # F_i (i in Fprime) with an X-Y edge avoiding y_i: trade r_i for e_i and it
    for i in sorted(s.Fprime):
        for e in family[i]:
            if e.u in s.X and e.w in s.Y and e.w != s.y_of[i]:
                out = R.replace(add={i: e, n_color: s.e_of[i]})
                return Augmentation(out, 'swap-one', s)
    # F_j (j in Fdoubleprime) with an X-Y edge avoiding y_i and the end of a witness f
    for j in sorted(s.Fdoubleprime):
        for i, f in s.witnesses[j]:
            for e in family[j]:
                if e.u in s.X and e.w in s.Y and e.w not in (s.y_of[i], f.w):
                    out = R.replace(add={i: f, j: e, n_color: s.e_of[i]})
                    return Augmentation(out, 'swap-two', s)
    return None


def _close_case1(s: Scaffold, ch: Chain) -> Augmentation:
    R, m, t = s.R, ch.m, ch.t
    rotated = ch.colors[t - 1:m + 1]
    new_edges = ch.f_edges[t - 1:m] + [ch.closing]
    add = dict(zip(rotated, new_edges))
    prime = [c for c in rotated if c in s.Fprime]
    if prime:
        i = min(prime)
        add[s.missing] = s.e_of[i]
        return Augmentation(R.replace(add=add), 'cycle', s, ch)
    # every rotated color lies in Fdoubleprime; reach u_t through some FY[j]
    u_t = R[ch.colors[t - 1]].u
    for j in sorted(s.Fprime):
        for e in s.FY[j]:
            if e.u == u_t:
                add[j] = e
                add[s.missing] = s.e_of[j]
                return Augmentation(R.replace(add=add), 'cycle-via-FY', s, ch)
    raise _impossible(s, ch, 'case 1: no FY edge reaches u_t')


def _close_case2(s: Scaffold, ch: Chain, family: MatchingFamily) -> Augmentation:
    R, m = s.R, ch.m
    last = ch.colors[m]
    Q = R.replace(remove=[last], add=dict(zip(ch.colors[:m], ch.f_edges)))
    chain_u = {R[c].u for c in ch.colors[:m]}
    # r_i in P with i in Fprime; e_i then has a freed left end
    in_prime = sorted(c for c in ch.colors if c in s.Fprime)

    def pick_e_i(avoid_u: set[int], avoid_w: set[int]) -> Edge | None:
        for i in in_prime:
            ei = s.e_of[i]
            if ei.u not in avoid_u and ei.w not in avoid_w:
                return ei
        return None

    if last in s.Fprime:
        for e in s.FY[last]:
            if e.u in chain_u:
                ei = pick_e_i({e.u}, {e.w})
                if ei is not None:
                    return Augmentation(Q.replace(add={last: e, s.missing: ei}), 'long-prime', s, ch)
        raise _impossible(s, ch, 'case 2a: no compatible e, e_i')

    for e in family[last]:
        if not (e.w in s.Y and e.u in s.Uprime):
            continue
        rs = s.color_at_u[e.u]
        if e.u in chain_u:
            ei = pick_e_i({e.u}, {e.w})
            if ei is not None:
                return Augmentation(Q.replace(add={last: e, s.missing: ei}), 'long-second', s, ch)
            continue
        for e2 in s.FY[rs]:
            if e2.u in chain_u and e2.w != e.w:
                ei = pick_e_i({e2.u}, {e2.w, e.w})
                if ei is not None:
                    out = Q.replace(remove=[rs], add={last: e, rs: e2, s.missing: ei})
                    return Augmentation(out, 'long-second-relay', s, ch)
    raise _impossible(s, ch, 'case 2b: no compatible e, e\', e_i')


class _Impossible(Exception):
    def __init__(self, message, s, ch):
        self.message, self.s, self.ch = message, s, ch


def _impossible(s, ch, message):
    return _Impossible(message, s, ch)


def augment(family: MatchingFamily, R: Mapping[int, Edge]) -> Augmentation:
    """
    Extend a rainbow matching of size ``n - 1`` to a full one.

    Requires ``|F_i| >= ceil(3n/2) + 1`` for every color.  ``R`` need not be
    maximum: wherever maximality would be used, the corresponding exchange is
    tried and returned if it applies.  The returned ``case`` names the
    exchange used.
    """
    n = family.n
    R = RainbowMatching(R)
    if R.size != n - 1:
        raise PreconditionViolated(f'augmentation needs a rainbow matching of size {n - 1}, got {R.size}')
    ok, why = is_rainbow_matching(family, R)
    if not ok:
        raise PreconditionViolated(f'R is not a rainbow matching: {why}')
    _check_sizes(family, required_size(n))

    (missing,) = set(family.colors) - set(R)
    X, Y = free_vertices(family, R)
    result = None
    for e in family[missing]:
        if e.u in X and e.w in Y:
            result = Augmentation(R.replace(add={missing: e}), 'direct')
            break
    s = ch = None
    try:
        if result is None:
            s = compute_scaffold(family, R)
            result = _short_exchanges(family, s)
        if result is None:
            verify_claims(s, family, strict=True)
            ch = build_chain(s, family)
            if ch.case == 1:
                result = _close_case1(s, ch)
            else:
                verify_claims(s, family, ch, strict=True)
                result = _close_case2(s, ch, family)
    except _Impossible as exc:
        raise _fault(family, R, exc.s, exc.ch, exc.message) from None
    except SolverFault as exc:
        raise _fault(family, R, s, ch, f'{type(exc).__name__}: {exc}') from exc

    ok, why = is_rainbow_matching(family, result.matching)
    if not ok or result.matching.size != n:
        raise _fault(family, R, s, ch, f'{result.case} produced an invalid matching: {why}')
    return result


def _fault(family, R, s, ch, message) -> AugmentationImpossible:
    witness = {
        'instance': family_to_dict(family),
        'R': rainbow_to_dict(R),
        'scaffold': s.summary() if s is not None else None,
        'chain': None if ch is None else {
            'colors': ch.colors, 'f_edges': [list(e) for e in ch.f_edges],
            'case': ch.case, 't': ch.t,
            'closing': None if ch.closing is None else list(ch.closing)},
    }
    full = has_full_rainbow_matching(family)
    witness['oracle_has_full'] = full
    return AugmentationImpossible(
        f'{message} (exact oracle: full rainbow matching '
        f'{"exists" if full else "does not exist"})', witness)


def augment_step(family: MatchingFamily, R: Mapping[int, Edge]) -> RainbowMatching:
    return augment(family, R).matching


@dataclass
class Solution:
    matching: RainbowMatching
    route: str
    augmentation: Augmentation | None = None


def solve_constructive(family: MatchingFamily) -> Solution:
    """Greedy seed, then the near-full search if needed, then one augmentation."""
    n = family.n
    _check_sizes(family, required_size(n))
    if n == 1:
        return Solution(RainbowMatching({1: family[1][0]}), 'single')
    r = greedy_rainbow_matching(family)
    if r.size == n:
        return Solution(r, 'greedy')
    route = 'greedy'
    if r.size < n - 1:
        r = extend_to_near_full(family)
        route = 'near-full'
        if r.size == n:
            return Solution(r, route)
    aug = augment(family, r)
    return Solution(aug.matching, f'{route}+{aug.case}', aug)


def find_full_rainbow_matching(family: MatchingFamily) -> RainbowMatching:
    """A full rainbow matching, for families whose colors all have ``ceil(3n/2) + 1`` edges."""
    return solve_constructive(family).matching

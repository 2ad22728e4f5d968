"""
Exact maximum rainbow matching by pruned backtracking.

This is the ground truth for everything else in the package, so it is kept
deliberately plain: colors are visited in index order, edges in
lexicographic order, and "skip this color" is always the last branch.  Two
prunings only:

* the optimistic bound ``chosen + remaining colors`` must beat the best
  matching found so far;
* an edge is admissible iff its left and right vertex bits are both free.

With that ordering the returned matching is the lexicographically first
maximum one, which tests rely on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Edge, MatchingFamily, RainbowMatching

__all__ = ['SearchState', 'max_rainbow_matching', 'has_full_rainbow_matching']


@dataclass
class SearchState:
    chosen: list[tuple[int, Edge]] = field(default_factory=list)
    used_u: int = 0
    used_w: int = 0
    best: list[tuple[int, Edge]] = field(default_factory=list)
    nodes: int = 0


class _Done(Exception):
    pass


def max_rainbow_matching(family: MatchingFamily, target: int | None = None,
                         state: SearchState | None = None) -> RainbowMatching:
    """
    Maximum rainbow matching of ``family``.

    If ``target`` is given the search stops as soon as a rainbow matching of
    size ``>= target`` is found, which is then returned (it need not be
    maximum).  Pass a fresh :class:`SearchState` to inspect node counts.
    """
    st = state if state is not None else SearchState()
    n = family.n
    options = [
        [(1 << e.u, 1 << e.w, e) for e in family[c]]
        for c in family.colors
    ]
    goal = n if target is None else min(target, n)

    def visit(k: int) -> None:
        st.nodes += 1
        size = len(st.chosen)
        if size > len(st.best):
            st.best = list(st.chosen)
            if size >= goal:
                raise _Done
        if k == n or size + (n - k) <= len(st.best):
            return
        for bu, bw, e in options[k]:
            if st.used_u & bu or st.used_w & bw:
                continue
            st.chosen.append((k + 1, e))
            st.used_u |= bu
            st.used_w |= bw
            visit(k + 1)
            st.used_u ^= bu
            st.used_w ^= bw
            st.chosen.pop()
        # skip color k+1
        if size + (n - k - 1) > len(st.best):
            visit(k + 1)

    if goal > 0:
        try:
            visit(0)
        except _Done:
            pass
    return RainbowMatching(st.best)


def has_full_rainbow_matching(family: MatchingFamily) -> bool:
    return max_rainbow_matching(family, target=family.n).size == family.n

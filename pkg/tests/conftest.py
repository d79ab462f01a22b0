"""Shared fixtures: figure trees used across the suite, plus independent
oracles (breadth-first union search, no disjointness shortcut) that the
production code is checked against."""

from __future__ import annotations

from tnexp.trees import Tree, doad_family

# six-leaf tree whose leaf heights are (0, 1, 0, 1, 2, 0)
EX_LABEL = "((.(..))(.(..)))"

# six-leaf pair whose cover exponent is 1 while the general plane bound is 4
NOT_SHARP_A = "((.((..).))(..))"
NOT_SHARP_B = "(((.((..).)).).)"

# eight-leaf tree whose poset bound against the comb tree is 3
EIGHT_LEAVES = "((.(.((..).)))((..).))"


def brute_cover_table(t: Tree) -> list[int]:
    """Minimum number of doad sets whose union is each subset, by plain
    breadth-first search over unions (overlaps allowed)."""
    fam = doad_family(t).masks
    full = t.full_mask
    inf = 10 ** 6
    dist = [inf] * (full + 1)
    dist[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for m in frontier:
            for d in fam:
                u = m | d
                if dist[u] > dist[m] + 1:
                    dist[u] = dist[m] + 1
                    nxt.append(u)
        frontier = nxt
    return dist


def wedderburn_etherington(n: int) -> int:
    """Number of unordered full binary trees with n leaves, by the
    classic split recurrence."""
    memo = {1: 1}

    def rec(k: int) -> int:
        if k in memo:
            return memo[k]
        total = 0
        for a in range(1, k // 2 + 1):
            b = k - a
            if a < b:
                total += rec(a) * rec(b)
            else:
                half = rec(a)
                total += half * (half + 1) // 2
        memo[k] = total
        return total

    return rec(n)

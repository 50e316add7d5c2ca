"""Brute-force references that share no code with the package."""

from __future__ import annotations

import itertools
from collections import deque


def all_cliques(vertices, edges):
    adj = {v: set() for v in vertices}
    for u, w in edges:
        adj[u].add(w)
        adj[w].add(u)
    found = []
    for k in range(1, len(vertices) + 1):
        for combo in itertools.combinations(sorted(vertices), k):
            if all(b in adj[a] for a, b in itertools.combinations(combo, 2)):
                found.append(frozenset(combo))
    return found


def _meet_is(target, family):
    containing = [k for k in family if target <= k]
    if not containing:
        return False
    common = set(containing[0])
    for k in containing[1:]:
        common &= k
    return common == set(target)


def brute_flags(vertices, edges):
    """{v: (branching, bc, sbc)} straight from the definitions."""
    cliques = all_cliques(vertices, edges)
    n = max(len(c) for c in cliques)
    top = [c for c in cliques if len(c) == n]
    branching = {v: _meet_is(frozenset([v]), top) for v in vertices}
    bc = {}
    for v in vertices:
        ok = False
        if branching[v]:
            for k in top:
                if v in k and (len(k) == 1 or _meet_is(k - {v}, top)):
                    ok = True
        bc[v] = ok
    dbc_top = [k for k in top if all(bc[x] for x in k)]
    sbc = {v: _meet_is(frozenset([v]), dbc_top) for v in vertices}
    return {v: (branching[v], bc[v], sbc[v]) for v in vertices}


def cayley_equal(vertices, edges, u, w, limit=200_000):
    """Decide u == w in the RAAG by breadth-first search on words.

    Moves are all relator applications that do not lengthen the word:
    swapping adjacent commuting letters and deleting an inverse pair.
    Reduced words of a RAAG are connected by swaps alone, so two words are
    equal iff their searches reach a common shortest word.
    """
    adj = {frozenset(e) for e in edges}

    def reachable(word):
        start = tuple(word)
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for i in range(len(x) - 1):
                (a, s), (b, t) = x[i], x[i + 1]
                if a == b and s == -t:
                    nxt = x[:i] + x[i + 2:]
                elif frozenset((a, b)) in adj:
                    nxt = x[:i] + (x[i + 1], x[i]) + x[i + 2:]
                else:
                    continue
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
                    if len(seen) > limit:
                        raise RuntimeError("oracle search too large")
        shortest = min(len(x) for x in seen)
        return {x for x in seen if len(x) == shortest}

    return bool(reachable(u) & reachable(w))

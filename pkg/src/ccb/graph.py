"""Finite simple graphs: parsing, cliques, colouring, odd cycles, embeddings.

Vertices are strings. Every iteration goes through sorted vertex order so
that results are reproducible byte for byte.
"""

from __future__ import annotations

import json
from collections import deque
from collections.abc import Iterable, Mapping
from pathlib import Path

from .errors import GraphParseError, InvalidInputError, ResourceLimitError

Clique = tuple[str, ...]

DEFAULT_MAX_CHI_VERTICES = 20


class DefiningGraph:
    """An immutable finite simple graph."""

    __slots__ = ("_vertices", "_adj", "_index")

    def __init__(self, vertices: Iterable[str] = (), edges: Iterable[tuple[str, str]] = ()) -> None:
        names = set()
        for v in vertices:
            if not isinstance(v, str) or not v:
                raise InvalidInputError(f"vertex names must be non-empty strings, got {v!r}")
            names.add(v)
        adj: dict[str, set[str]] = {v: set() for v in names}
        for u, w in edges:
            if u == w:
                raise InvalidInputError(f"self-loop at {u!r}")
            for x in (u, w):
                if x not in adj:
                    if not isinstance(x, str) or not x:
                        raise InvalidInputError(f"vertex names must be non-empty strings, got {x!r}")
                    adj[x] = set()
            adj[u].add(w)
            adj[w].add(u)
        self._vertices = tuple(sorted(adj))
        self._adj = {v: frozenset(adj[v]) for v in self._vertices}
        self._index = {v: i for i, v in enumerate(self._vertices)}

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    def neighbors(self, v: str) -> frozenset[str]:
        try:
            return self._adj[v]
        except KeyError:
            raise InvalidInputError(f"unknown vertex {v!r}") from None

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def adjacent(self, u: str, w: str) -> bool:
        return w in self.neighbors(u)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._vertices)

    def __iter__(self):
        return iter(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DefiningGraph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(self.edges())))

    def __repr__(self) -> str:
        return f"DefiningGraph({len(self)} vertices, {self.num_edges()} edges)"

    def edges(self) -> list[tuple[str, str]]:
        """Edges as sorted pairs, in sorted order."""
        return [(u, w) for u in self._vertices for w in sorted(self._adj[u]) if u < w]

    def num_edges(self) -> int:
        return sum(len(n) for n in self._adj.values()) // 2

    def is_clique(self, members: Iterable[str]) -> bool:
        ms = list(members)
        for v in ms:
            if v not in self._adj:
                return False
        return all(ms[j] in self._adj[ms[i]] for i in range(len(ms)) for j in range(i + 1, len(ms)))

    def induced_subgraph(self, keep: Iterable[str]) -> DefiningGraph:
        keep = set(keep)
        for v in keep:
            self.neighbors(v)
        return DefiningGraph(keep, [(u, w) for u, w in self.edges() if u in keep and w in keep])

    def remove_edge(self, u: str, w: str) -> DefiningGraph:
        return DefiningGraph(self._vertices, [e for e in self.edges() if set(e) != {u, w}])

    # serialisation

    def to_dict(self) -> dict:
        return {"vertices": list(self._vertices), "edges": [list(e) for e in self.edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"vertex {v}" for v in self._vertices if not self._adj[v]]
        lines += [f"{u} {w}" for u, w in self.edges()]
        return "\n".join(lines) + "\n"


def _check_text_name(name: str, line: int) -> str:
    if name == "vertex":
        raise GraphParseError("'vertex' is reserved and cannot name a vertex", line)
    return name


def _parse_text(source: str) -> DefiningGraph:
    declared: set[str] = set()
    vertices: list[str] = []
    edges: set[frozenset[str]] = set()
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "vertex":
            if len(tokens) != 2:
                raise GraphParseError(f"expected 'vertex NAME', got {line!r}", lineno)
            name = _check_text_name(tokens[1], lineno)
            if name in declared:
                raise GraphParseError(f"duplicate vertex declaration {name!r}", lineno)
            declared.add(name)
            vertices.append(name)
            continue
        if len(tokens) != 2:
            raise GraphParseError(f"expected an edge 'u v', got {line!r}", lineno)
        u, w = (_check_text_name(t, lineno) for t in tokens)
        if u == w:
            raise GraphParseError(f"self-loop at {u!r}", lineno)
        edges.add(frozenset((u, w)))
    return DefiningGraph(vertices, [tuple(sorted(e)) for e in edges])


def _parse_structured(obj: object) -> DefiningGraph:
    if not isinstance(obj, Mapping):
        raise GraphParseError("structured graph must be an object")
    unknown = set(obj) - {"vertices", "edges"}
    if unknown:
        raise GraphParseError(f"unknown keys {sorted(unknown)}")
    vertices = obj.get("vertices", [])
    edges = obj.get("edges", [])
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise GraphParseError("'vertices' and 'edges' must be arrays")
    seen: set[str] = set()
    for v in vertices:
        if not isinstance(v, str) or not v:
            raise GraphParseError(f"vertex names must be non-empty strings, got {v!r}")
        if v in seen:
            raise GraphParseError(f"duplicate vertex name {v!r}")
        seen.add(v)
    pairs = []
    for i, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise GraphParseError(f"edge #{i} must be a pair of vertex names, got {e!r}")
        u, w = e
        if u == w:
            raise GraphParseError(f"self-loop at {u!r} (edge #{i})")
        for x in e:
            if vertices and x not in seen:
                raise GraphParseError(f"edge #{i} uses undeclared vertex {x!r}")
        pairs.append((u, w))
    return DefiningGraph(vertices, pairs)


def parse_graph(source: str | Mapping) -> DefiningGraph:
    """Parse the edge-list text format or the structured object format.

    Text sources beginning with ``{`` are decoded as JSON.
    """
    if isinstance(source, Mapping):
        return _parse_structured(source)
    if source.lstrip().startswith("{"):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError as exc:
            raise GraphParseError(f"invalid JSON: {exc.msg} (column {exc.colno})", exc.lineno) from None
        return _parse_structured(obj)
    return _parse_text(source)


def load_graph(path: str | Path) -> DefiningGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


# Common families used throughout tests and examples.

def cycle_graph(n: int, prefix: str = "s") -> DefiningGraph:
    names = [f"{prefix}{i}" for i in range(n)]
    return DefiningGraph(names, [(names[i], names[(i + 1) % n]) for i in range(n)])


def path_graph(names: Iterable[str]) -> DefiningGraph:
    names = list(names)
    return DefiningGraph(names, list(zip(names, names[1:])))


def complete_graph(names: Iterable[str]) -> DefiningGraph:
    names = list(names)
    return DefiningGraph(names, [(u, w) for i, u in enumerate(names) for w in names[i + 1:]])


def complete_bipartite(m: int, n: int) -> DefiningGraph:
    left = [f"x{i}" for i in range(m)]
    right = [f"y{j}" for j in range(n)]
    return DefiningGraph(left + right, [(u, w) for u in left for w in right])


# cliques

def maximal_cliques(g: DefiningGraph) -> list[Clique]:
    """All inclusion-maximal cliques, each sorted, in lexicographic order.

    Bron-Kerbosch with Tomita pivoting.
    """
    out: list[Clique] = []

    def expand(r: list[str], p: set[str], x: set[str]) -> None:
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(sorted(p | x), key=lambda u: len(p & g.neighbors(u)))
        for v in sorted(p - g.neighbors(pivot)):
            nv = g.neighbors(v)
            expand(r + [v], p & nv, x & nv)
            p.discard(v)
            x.add(v)

    if len(g):
        expand([], set(g.vertices), set())
    return sorted(out)


def clique_number(g: DefiningGraph) -> int:
    if not len(g):
        raise InvalidInputError("clique number of the empty graph is undefined")
    return max(len(c) for c in maximal_cliques(g))


def top_cliques(g: DefiningGraph) -> list[Clique]:
    """Maximum-size cliques. These are the top-dimensional ones."""
    cliques = maximal_cliques(g)
    n = max(len(c) for c in cliques)
    return [c for c in cliques if len(c) == n]


# colouring

def greedy_coloring(g: DefiningGraph) -> dict[str, int]:
    """DSATUR greedy colouring; an upper bound for the chromatic number."""
    colors: dict[str, int] = {}
    sat: dict[str, set[int]] = {v: set() for v in g}
    while len(colors) < len(g):
        v = min(
            (u for u in g if u not in colors),
            key=lambda u: (-len(sat[u]), -g.degree(u), u),
        )
        c = 0
        while c in sat[v]:
            c += 1
        colors[v] = c
        for w in g.neighbors(v):
            sat[w].add(c)
    return colors


def find_coloring(g: DefiningGraph, k: int) -> dict[str, int] | None:
    """A proper colouring with colours ``0..k-1``, or ``None``.

    Exhaustive backtracking in DSATUR order; colours are introduced in
    increasing order so symmetric branches are not revisited.
    """
    if k <= 0:
        return {} if not len(g) else None
    colors: dict[str, int] = {}

    def pick() -> str:
        best, key = None, None
        for v in g:
            if v in colors:
                continue
            used = {colors[w] for w in g.neighbors(v) if w in colors}
            cand = (-len(used), -g.degree(v), v)
            if key is None or cand < key:
                best, key = v, cand
        return best

    def solve(used_colors: int) -> bool:
        if len(colors) == len(g):
            return True
        v = pick()
        forbidden = {colors[w] for w in g.neighbors(v) if w in colors}
        for c in range(min(used_colors + 1, k)):
            if c in forbidden:
                continue
            colors[v] = c
            if solve(max(used_colors, c + 1)):
                return True
            del colors[v]
        return False

    return dict(colors) if solve(0) else None


def chromatic_number(g: DefiningGraph, max_vertices: int = DEFAULT_MAX_CHI_VERTICES) -> int:
    """Exact chromatic number by branch and bound.

    The clique number is the starting lower bound and DSATUR gives the
    upper bound; each intermediate value is decided exhaustively. When the
    two bounds meet the answer is exact at any size; otherwise graphs above
    ``max_vertices`` are refused.
    """
    lower, upper = chromatic_bounds(g)
    if lower == upper:
        return lower
    if len(g) > max_vertices:
        raise ResourceLimitError(
            f"graph has {len(g)} vertices; too large for exact search (bound {max_vertices}); "
            f"chromatic number is between {lower} and {upper}"
        )
    for k in range(lower, upper):
        if find_coloring(g, k) is not None:
            return k
    return upper


def chromatic_bounds(g: DefiningGraph) -> tuple[int, int]:
    """(clique lower bound, greedy upper bound); cheap at any size."""
    if not len(g):
        return 0, 0
    return clique_number(g), max(greedy_coloring(g).values()) + 1


# cycles and embeddings

def shortest_odd_cycle(g: DefiningGraph) -> list[str] | None:
    """A shortest odd cycle as a vertex list (first vertex not repeated)."""
    best: list[str] | None = None
    for root in g:
        if best is not None and len(best) == 3:
            break
        dist = {root: 0}
        parent: dict[str, str] = {}
        queue = deque([root])
        found = None
        while queue and found is None:
            u = queue.popleft()
            for w in sorted(g.neighbors(u)):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif dist[w] == dist[u] and u < w:
                    found = (u, w)
                    break
        if found is None:
            continue
        u, w = found
        length = 2 * dist[u] + 1
        if best is not None and length >= len(best):
            continue
        left = [u]
        while left[-1] != root:
            left.append(parent[left[-1]])
        right = [w]
        while right[-1] != root:
            right.append(parent[right[-1]])
        cycle = list(reversed(left)) + right[:-1]
        if len(set(cycle)) == len(cycle):
            best = cycle
    return best


def is_cycle(g: DefiningGraph, cycle: list[str]) -> bool:
    """True if ``cycle`` is a closed simple cycle of length >= 3 in ``g``."""
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        return False
    return all(g.adjacent(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))


def injective_embedding(h: DefiningGraph, t: DefiningGraph) -> dict[str, str] | None:
    """An injective, edge-preserving map ``h -> t`` (not necessarily induced).

    Backtracking with degree pruning. Pattern vertices are placed in a
    connectivity-first order; targets are tried in sorted order, so the
    first solution is deterministic.
    """
    if len(h) > len(t) or h.num_edges() > t.num_edges():
        return None
    order: list[str] = []
    placed: set[str] = set()
    for start in sorted(h, key=lambda v: (-h.degree(v), v)):
        if start in placed:
            continue
        frontier = [start]
        while frontier:
            # most already-placed neighbours first, then degree
            frontier.sort(key=lambda v: (-len(h.neighbors(v) & placed), -h.degree(v), v))
            v = frontier.pop(0)
            if v in placed:
                continue
            placed.add(v)
            order.append(v)
            frontier.extend(w for w in h.neighbors(v) if w not in placed and w not in frontier)
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        need = h.degree(v)
        mapped_nbrs = [mapping[w] for w in h.neighbors(v) if w in mapping]
        if mapped_nbrs:
            cands = set(t.neighbors(mapped_nbrs[0]))
            for x in mapped_nbrs[1:]:
                cands &= t.neighbors(x)
        else:
            cands = set(t.vertices)
        for x in sorted(cands - used):
            if t.degree(x) < need:
                continue
            mapping[v] = x
            used.add(x)
            if extend(i + 1):
                return True
            del mapping[v]
            used.discard(x)
        return False

    return dict(mapping) if extend(0) else None


def is_embedding(h: DefiningGraph, t: DefiningGraph, mapping: Mapping[str, str]) -> bool:
    """Direct re-check: total on h, injective, and edges go to edges."""
    if set(mapping) != set(h.vertices):
        return False
    images = list(mapping.values())
    if len(set(images)) != len(images) or any(x not in t for x in images):
        return False
    return all(t.adjacent(mapping[u], mapping[w]) for u, w in h.edges())

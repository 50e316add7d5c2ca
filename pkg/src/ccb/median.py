"""Finite median subgraphs of the Cayley graph of a right-angled Artin group.

A fragment is the median closure of a word-metric ball about the identity.
Closure is computed in the ambient Cayley graph, where every element is
encoded by the set of hyperplanes separating it from the identity and the
median of three elements is the majority vote of their encodings.

All queries after construction (medians, hyperplanes, hulls, cubes) use
only the fragment graph itself, so they double as independent checks on
the construction.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .errors import InvalidInputError, InvariantViolation, ResourceLimitError
from .graph import DefiningGraph
from .words import (
    IDENTITY,
    Letter,
    NormalForm,
    Word,
    _strip_suffix_in,
    ball,
    format_word,
    initial_letters,
    inverse,
    normalize,
    parse_word,
    shortlex_key,
)

DEFAULT_MAX_FRAGMENT = 200_000
DEFAULT_MAX_RADIUS = 6
EXHAUSTIVE_TRIPLES_BOUND = 3000
UNREACHABLE = np.iinfo(np.int32).max // 4


# ambient Cayley graph

def hyperplane_label(g: DefiningGraph, x: Word, s: str) -> tuple[str, NormalForm]:
    """Ambient hyperplane dual to the edge from ``x`` to ``x * s``.

    Two such edges are parallel exactly when their base points differ by an
    element of the subgroup generated by the link of ``s``.
    """
    return (s, _strip_suffix_in(g, x, g.neighbors(s)))


def separating_hyperplanes(g: DefiningGraph, w: Word) -> frozenset[tuple[str, NormalForm]]:
    """Hyperplanes of the Cayley graph separating the identity from ``w``."""
    w = normalize(g, w)
    out = set()
    prefix: list[Letter] = []
    for x in w:
        if x.sign > 0:
            out.add(hyperplane_label(g, prefix, x.generator))
        else:
            out.add(hyperplane_label(g, [*prefix, x], x.generator))
        prefix.append(x)
    return frozenset(out)


def prefix_meet(g: DefiningGraph, x: Word, y: Word) -> NormalForm:
    """Largest common prefix of two elements; equals the median of ``e, x, y``."""
    x, y = list(normalize(g, x)), list(normalize(g, y))
    out: list[Letter] = []
    while True:
        common = {x[i] for i in initial_letters(g, x)} & {y[i] for i in initial_letters(g, y)}
        if not common:
            return normalize(g, out)
        letter = min(common, key=Letter.key)
        out.append(letter)
        x.remove(letter)
        y.remove(letter)


def group_median(g: DefiningGraph, a: Word, b: Word, c: Word) -> NormalForm:
    ai = inverse(a)
    return normalize(g, [*a, *prefix_meet(g, [*ai, *b], [*ai, *c])])


def _pack(rows: list[set[int]], width: int) -> np.ndarray:
    bits = np.zeros((len(rows), max(width, 1)), dtype=bool)
    for i, r in enumerate(rows):
        bits[i, list(r)] = True
    return np.packbits(bits, axis=1, bitorder="little")


def _row_key(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    return arr.view(np.dtype((np.void, arr.shape[-1]))).reshape(arr.shape[:-1])


def _median_closure(g: DefiningGraph, elements: list[NormalForm], max_vertices: int) -> list[NormalForm]:
    labels: dict[tuple[str, NormalForm], int] = {}
    rows = []
    for w in elements:
        rows.append({labels.setdefault(h, len(labels)) for h in separating_hyperplanes(g, w)})
    bits = _pack(rows, len(labels))
    elements = list(elements)
    known = {k.tobytes() for k in _row_key(bits)}
    while True:
        fresh: dict[bytes, tuple[int, int, int]] = {}
        n = len(elements)
        for a in range(n - 2):
            rest = bits[a + 1:]
            both_a = bits[a] & rest
            maj = (both_a[:, None, :] | both_a[None, :, :]
                   | (rest[:, None, :] & rest[None, :, :]))
            iu, ju = np.triu_indices(len(rest), k=1)
            keys = _row_key(maj[iu, ju])
            uniq, first = np.unique(keys, return_index=True)
            for key, idx in zip(uniq, first):
                kb = key.tobytes()
                if kb not in known and kb not in fresh:
                    fresh[kb] = (a, a + 1 + int(iu[idx]), a + 1 + int(ju[idx]))
        if not fresh:
            return elements
        if len(elements) + len(fresh) > max_vertices:
            raise ResourceLimitError(f"median closure exceeds {max_vertices} vertices")
        new_rows = []
        for kb, (a, b, c) in sorted(fresh.items()):
            m = group_median(g, elements[a], elements[b], elements[c])
            code = np.frombuffer(kb, dtype=np.uint8)
            mine = _pack([{labels[h] for h in separating_hyperplanes(g, m)}], len(labels))[0]
            if not np.array_equal(mine, code):
                raise InvariantViolation(f"median of a triple disagrees with majority vote at {format_word(m)}")
            elements.append(m)
            new_rows.append(code)
            known.add(kb)
        bits = np.vstack([bits, np.array(new_rows, dtype=np.uint8)])


# fragments

@dataclass(frozen=True)
class Hyperplane:
    id: int
    dual_edges: frozenset[tuple[int, int]]
    halfspace_plus: frozenset[int]
    halfspace_minus: frozenset[int]

    def separates(self, x: int, y: int) -> bool:
        return (x in self.halfspace_plus) != (y in self.halfspace_plus)


class MedianFragment:
    """A finite vertex set of the Cayley graph with its induced edges.

    Vertices are addressed by their index into :attr:`elements`, which is
    in shortlex order.
    """

    def __init__(self, g: DefiningGraph, elements: Iterable[NormalForm], radius: int | None = None) -> None:
        self.g = g
        self.radius = radius
        self.elements: list[NormalForm] = sorted(set(elements), key=shortlex_key)
        self.index = {w: i for i, w in enumerate(self.elements)}
        letters = [Letter(v, 1) for v in g]
        edges = []
        for i, w in enumerate(self.elements):
            for s in letters:
                j = self.index.get(normalize(g, [*w, s]))
                if j is not None:
                    edges.append((min(i, j), max(i, j), s.generator))
        self.edges: list[tuple[int, int, str]] = sorted(set(edges))
        self.neighbors: list[set[int]] = [set() for _ in self.elements]
        for i, j, _ in self.edges:
            self.neighbors[i].add(j)
            self.neighbors[j].add(i)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, w: object) -> bool:
        return w in self.index

    def idx(self, w: Word | int) -> int:
        if isinstance(w, (int, np.integer)):
            if not 0 <= w < len(self):
                raise InvalidInputError(f"vertex index {w} out of range")
            return int(w)
        try:
            return self.index[tuple(w)]
        except KeyError:
            raise InvalidInputError(f"{format_word(w)} is not in the fragment") from None

    def without(self, w: Word) -> MedianFragment:
        """Copy with one vertex deleted. Used to test the axiom checker."""
        return MedianFragment(self.g, [x for x in self.elements if x != tuple(w)], self.radius)

    @cached_property
    def adjacency(self) -> csr_matrix:
        n = len(self)
        if not self.edges:
            return csr_matrix((n, n), dtype=np.int8)
        i, j, _ = zip(*self.edges)
        data = np.ones(2 * len(i), dtype=np.int8)
        return csr_matrix((data, (list(i) + list(j), list(j) + list(i))), shape=(n, n))

    @cached_property
    def distances(self) -> np.ndarray:
        """All-pairs path distances; unreachable pairs hold ``UNREACHABLE``."""
        d = shortest_path(self.adjacency, method="D", unweighted=True, directed=False)
        d[np.isinf(d)] = UNREACHABLE
        return d.astype(np.int32)

    def distance(self, x: Word | int, y: Word | int) -> int:
        return int(self.distances[self.idx(x), self.idx(y)])

    def is_connected(self) -> bool:
        return connected_components(self.adjacency, directed=False)[0] == 1

    def interval(self, x: Word | int, y: Word | int) -> np.ndarray:
        """Boolean mask of vertices on some geodesic from ``x`` to ``y``."""
        d = self.distances
        x, y = self.idx(x), self.idx(y)
        return d[x] + d[y] == d[x, y]

    # medians and hulls

    def medians(self, a: Word | int, b: Word | int, c: Word | int) -> list[int]:
        mask = self.interval(a, b) & self.interval(b, c) & self.interval(a, c)
        return [int(i) for i in np.flatnonzero(mask)]

    def median(self, a: Word | int, b: Word | int, c: Word | int) -> int:
        found = self.medians(a, b, c)
        if len(found) != 1:
            raise InvariantViolation(f"triple has {len(found)} medians; fragment is not a median graph")
        return found[0]

    def hull(self, seeds: Iterable[Word | int]) -> frozenset[int]:
        """Iterated joins: add every vertex between two current vertices, to a fixpoint."""
        current = {self.idx(s) for s in seeds}
        checked: set[tuple[int, int]] = set()
        while True:
            grown = set(current)
            for x, y in combinations(sorted(current), 2):
                if (x, y) in checked:
                    continue
                checked.add((x, y))
                grown.update(int(i) for i in np.flatnonzero(self.interval(x, y)))
            if grown == current:
                return frozenset(current)
            current = grown

    def hull_by_halfspaces(self, seeds: Iterable[Word | int]) -> frozenset[int]:
        """Intersection of every halfspace that contains the seeds."""
        s = {self.idx(x) for x in seeds}
        out = set(range(len(self)))
        for h in self.hyperplanes:
            for side in (h.halfspace_plus, h.halfspace_minus):
                if s <= side:
                    out &= side
        return frozenset(out)

    def is_convex(self, vertices: Iterable[Word | int]) -> bool:
        s = {self.idx(x) for x in vertices}
        return bool(s) and self.hull(s) == s

    # hyperplanes

    @cached_property
    def hyperplanes(self) -> list[Hyperplane]:
        """Edge classes generated by opposite sides of squares, with their halfspaces."""
        edge_id = {(i, j): k for k, (i, j, _) in enumerate(self.edges)}
        parent = list(range(len(self.edges)))

        def find(k: int) -> int:
            while parent[k] != k:
                parent[k] = parent[parent[k]]
                k = parent[k]
            return k

        def union(e1: tuple[int, int], e2: tuple[int, int]) -> None:
            a, b = find(edge_id[tuple(sorted(e1))]), find(edge_id[tuple(sorted(e2))])
            if a != b:
                parent[max(a, b)] = min(a, b)

        for x in range(len(self)):
            for u, w in combinations(sorted(self.neighbors[x]), 2):
                for z in self.neighbors[u] & self.neighbors[w]:
                    if z != x:
                        union((x, u), (w, z))
                        union((x, w), (u, z))
        classes: dict[int, list[tuple[int, int]]] = {}
        for k, (i, j, _) in enumerate(self.edges):
            classes.setdefault(find(k), []).append((i, j))
        out = []
        n = len(self)
        for hid, root in enumerate(sorted(classes)):
            dual = classes[root]
            cut = set(dual)
            keep = [(i, j) for i, j, _ in self.edges if (i, j) not in cut]
            if keep:
                ii, jj = zip(*keep)
                m = csr_matrix((np.ones(len(keep)), (ii, jj)), shape=(n, n))
            else:
                m = csr_matrix((n, n))
            count, comp = connected_components(m, directed=False)
            i0, j0 = dual[0]
            plus = frozenset(int(v) for v in np.flatnonzero(comp == comp[j0]))
            minus = frozenset(int(v) for v in np.flatnonzero(comp == comp[i0]))
            if count != 2 or plus & minus:
                raise InvariantViolation(
                    f"removing hyperplane {hid} leaves {count} components instead of 2"
                )
            out.append(Hyperplane(hid, frozenset(dual), plus, minus))
        return out

    @cached_property
    def hyperplane_of_edge(self) -> dict[tuple[int, int], int]:
        return {e: h.id for h in self.hyperplanes for e in h.dual_edges}

    def edge_hyperplane(self, x: int, y: int) -> Hyperplane:
        try:
            return self.hyperplanes[self.hyperplane_of_edge[(min(x, y), max(x, y))]]
        except KeyError:
            raise InvalidInputError(f"{x} and {y} are not adjacent") from None

    @cached_property
    def halfspace_matrix(self) -> np.ndarray:
        """``M[v, h]`` is 1 when vertex ``v`` lies in the plus side of hyperplane ``h``."""
        m = np.zeros((len(self), len(self.hyperplanes)), dtype=np.int64)
        for h in self.hyperplanes:
            m[list(h.halfspace_plus), h.id] = 1
        return m

    def separation_counts(self) -> np.ndarray:
        """Number of hyperplanes separating each pair of vertices."""
        m = self.halfspace_matrix
        return m @ (1 - m).T + (1 - m) @ m.T

    def separating(self, x: Word | int, y: Word | int) -> list[Hyperplane]:
        x, y = self.idx(x), self.idx(y)
        return [h for h in self.hyperplanes if h.separates(x, y)]

    def crossing(self, h1: Hyperplane, h2: Hyperplane) -> bool:
        return all(
            p & q
            for p in (h1.halfspace_plus, h1.halfspace_minus)
            for q in (h2.halfspace_plus, h2.halfspace_minus)
        )

    def is_geodesic(self, path: Sequence[int]) -> bool:
        if any(b not in self.neighbors[a] for a, b in zip(path, path[1:])):
            return False
        return self.distances[path[0], path[-1]] == len(path) - 1

    def is_singular_path(self, path: Sequence[Word | int]) -> bool:
        """Whether the hyperplanes crossed by a geodesic path pairwise do not cross."""
        p = [self.idx(x) for x in path]
        if not p or not self.is_geodesic(p):
            raise InvalidInputError("path is not a geodesic of the fragment")
        crossed = [self.edge_hyperplane(a, b) for a, b in zip(p, p[1:])]
        return not any(self.crossing(h1, h2) for h1, h2 in combinations(crossed, 2))

    # cubes

    def cube_at(self, x: int, directions: Sequence[int]) -> bool:
        """Whether the neighbours ``directions`` of ``x`` span a cube inside the fragment."""
        corner: dict[frozenset[int], int] = {frozenset(): x}
        for i, u in enumerate(directions):
            corner[frozenset([i])] = u
        k = len(directions)
        for size in range(2, k + 1):
            for subset in combinations(range(k), size):
                s = frozenset(subset)
                faces = [corner[s - {i}] for i in subset]
                common = set(self.neighbors[faces[0]])
                for f in faces[1:]:
                    common &= self.neighbors[f]
                common -= {corner[s - {i, j}] for i, j in combinations(subset, 2)}
                if len(common) != 1:
                    return False
                corner[s] = common.pop()
        return len(set(corner.values())) == 2 ** k

    def max_cube_dim(self) -> int:
        if self.radius is not None and self.radius < 2:
            raise InvalidInputError("cube dimension needs a fragment of radius at least 2")
        best = 1 if self.edges else 0
        for x in range(len(self)):
            nbrs = sorted(self.neighbors[x])
            # directions pairwise spanning a square at x
            square = {
                (u, w) for u, w in combinations(nbrs, 2)
                if len((self.neighbors[u] & self.neighbors[w]) - {x}) > 0
            }

            def grow(chosen: list[int], cands: list[int]) -> None:
                nonlocal best
                if len(chosen) > best and self.cube_at(x, chosen):
                    best = len(chosen)
                for i, u in enumerate(cands):
                    if len(chosen) + len(cands) - i <= best:
                        return
                    if all((min(u, c), max(u, c)) in square for c in chosen):
                        nxt = chosen + [u]
                        if len(nxt) <= 2 or self.cube_at(x, nxt):
                            grow(nxt, cands[i + 1:])

            grow([], nbrs)
        return best

    # Helly property

    def helly_check(self, family: Sequence[Iterable[Word | int]]) -> tuple[bool, int | None]:
        """Common point of a pairwise-intersecting family of convex sets.

        Returns ``(False, None)`` when some pair is disjoint.
        """
        sets = []
        for s in family:
            s = frozenset(self.idx(x) for x in s)
            if not self.is_convex(s):
                raise InvalidInputError("helly_check needs convex, non-empty sets")
            sets.append(s)
        if not sets:
            raise InvalidInputError("empty family")
        if any(not (p & q) for p, q in combinations(sets, 2)):
            return False, None
        common = frozenset.intersection(*sets)
        if not common:
            raise InvariantViolation("pairwise-intersecting convex sets with empty intersection")
        return True, min(common)

    # verification

    def intervals_packed(self) -> np.ndarray:
        """``I[x, y]`` packs the interval mask between ``x`` and ``y``."""
        d = self.distances
        n = len(self)
        out = np.empty((n, n, (n + 7) // 8), dtype=np.uint8)
        for x in range(n):
            mask = (d[x][None, :] + d) == d[x][:, None]
            out[x] = np.packbits(mask, axis=1, bitorder="little")
        return out

    def verify_median_axioms(self, exhaustive_bound: int = EXHAUSTIVE_TRIPLES_BOUND,
                             samples: int = 20_000, seed: int = 0) -> MedianReport:
        """Count triples whose three intervals meet in exactly one vertex."""
        n = len(self)
        if not self.is_connected():
            return MedianReport(n, 0, 0, False, 0, 0, connected=False)
        if n <= exhaustive_bound:
            intervals = self.intervals_packed()
            none = multi = 0
            for a in range(n):
                rest = slice(a, n)
                ia = intervals[a, rest]
                common = ia[:, None, :] & ia[None, :, :] & intervals[rest, rest]
                counts = np.bitwise_count(common).sum(axis=-1, dtype=np.int64)
                iu, ju = np.triu_indices(n - a)
                c = counts[iu, ju]
                none += int(np.count_nonzero(c == 0))
                multi += int(np.count_nonzero(c > 1))
            total = n * (n + 1) * (n + 2) // 6
            return MedianReport(n, total, total - none - multi, True, none, multi)
        rng = random.Random(seed)
        none = multi = 0
        for _ in range(samples):
            k = len(self.medians(rng.randrange(n), rng.randrange(n), rng.randrange(n)))
            none += k == 0
            multi += k > 1
        return MedianReport(n, samples, samples - none - multi, False, none, multi)


@dataclass(frozen=True)
class MedianReport:
    vertices: int
    triples_checked: int
    unique_medians: int
    exhaustive: bool
    missing: int
    non_unique: int
    connected: bool = True

    @property
    def passed(self) -> bool:
        return self.connected and self.missing == 0 and self.non_unique == 0

    def to_dict(self) -> dict:
        return {
            "vertices": self.vertices,
            "connected": self.connected,
            "triples_checked": self.triples_checked,
            "exhaustive": self.exhaustive,
            "unique_medians": self.unique_medians,
            "missing_medians": self.missing,
            "non_unique_medians": self.non_unique,
            "passed": self.passed,
        }


def build_fragment(
    g: DefiningGraph,
    radius: int,
    max_vertices: int = DEFAULT_MAX_FRAGMENT,
    max_radius: int = DEFAULT_MAX_RADIUS,
    check_pairs: int = 500,
) -> MedianFragment:
    """Median closure of the ball of the given radius about the identity."""
    if radius < 0:
        raise InvalidInputError("radius must be non-negative")
    if radius > max_radius:
        raise ResourceLimitError(f"radius {radius} exceeds bound {max_radius}")
    elements = _median_closure(g, ball(g, radius, max_vertices), max_vertices)
    frag = MedianFragment(g, elements, radius)
    if not frag.is_connected():
        raise InvariantViolation("median closure of a ball is disconnected")
    rng = random.Random(radius)
    n = len(frag)
    pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(check_pairs)]
    for i, j in pairs:
        word = normalize(g, [*inverse(frag.elements[i]), *frag.elements[j]])
        if frag.distances[i, j] != len(word):
            raise InvariantViolation(
                f"fragment distance {frag.distances[i, j]} != word length {len(word)}"
            )
    return frag


def parse_element(g: DefiningGraph, token: str) -> NormalForm:
    """One element written compactly, for paths and seed sets on the command line.

    Accepted forms: ``e`` (identity, unless ``e`` is a generator), a word with
    letters joined by ``.`` such as ``a.b^-1``, or -- when all generator
    names are single characters -- juxtaposed letters such as ``ab^-1``.
    """
    tok = token.strip()
    if tok in ("e", "ε", "1") and tok not in g:
        return IDENTITY
    if "." in tok or "*" in tok:
        return normalize(g, parse_word(tok.replace("*", ".").replace(".", " "), g))
    if tok in g or tok.endswith("^-1") and tok[:-3] in g:
        return normalize(g, parse_word(tok, g))
    if all(len(v) == 1 for v in g):
        letters = []
        i = 0
        while i < len(tok):
            ch = tok[i]
            if tok.startswith("^-1", i + 1):
                letters.append(f"{ch}^-1")
                i += 4
            else:
                letters.append(ch)
                i += 1
        return normalize(g, parse_word(" ".join(letters), g))
    raise InvalidInputError(f"cannot parse element {token!r}; join letters with '.'")

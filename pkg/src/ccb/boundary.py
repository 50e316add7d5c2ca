"""Finite pieces of the strongly branch-complemented boundary graph.

Vertices are conjugates ``g v g^-1`` of strongly branch-complemented
generators, one per conjugate geodesic (the two endpoints of a geodesic are
identified). Two vertices are joined when their bases are adjacent in the
defining graph and the two elements commute. What is built is a subgraph
of the boundary graph, which is all an obstruction needs.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from .branching import Classifier
from .errors import InvalidInputError, InvariantViolation, ResourceLimitError
from .graph import DefiningGraph, clique_number
from .words import (
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_MAX_RADIUS,
    ConjugateGenerator,
    ball,
    closed_star,
    commutes,
    conjugate_canonical,
    conjugate_element,
    enumerate_conjugates,
    shortlex_key,
    terminal_letters,
)


@dataclass(frozen=True)
class BoundaryFragment:
    vertices: tuple[ConjugateGenerator, ...]
    edges: tuple[tuple[ConjugateGenerator, ConjugateGenerator], ...]
    radius: int

    def labels(self) -> list[str]:
        return [v.label() for v in self.vertices]

    def to_graph(self) -> DefiningGraph:
        return DefiningGraph(self.labels(), [(u.label(), w.label()) for u, w in self.edges])

    def to_dict(self) -> dict:
        return self.to_graph().to_dict()


@dataclass(frozen=True)
class CompleteMultipartite:
    """Singular boundary of a product of ``parts`` rank-one factors."""

    parts: int

    def __post_init__(self) -> None:
        if self.parts < 1:
            raise InvalidInputError("a multipartite target needs at least one part")

    def describe(self) -> str:
        return f"complete {self.parts}-partite graph with unbounded parts"


@dataclass(frozen=True)
class FiniteTarget:
    graph: DefiningGraph

    def describe(self) -> str:
        return f"finite graph on {len(self.graph)} vertices"


TargetDescriptor = CompleteMultipartite | FiniteTarget


def multipartite_descriptor(n: int) -> CompleteMultipartite:
    return CompleteMultipartite(n)


def parse_target(text: str, load=None) -> TargetDescriptor:
    """``multipartite:N`` or, via ``load``, a path to a graph file."""
    if text.startswith("multipartite:"):
        try:
            n = int(text.split(":", 1)[1])
        except ValueError:
            raise InvalidInputError(f"bad target {text!r}; expected multipartite:N") from None
        return CompleteMultipartite(n)
    if load is None:
        raise InvalidInputError(f"bad target {text!r}")
    return FiniteTarget(load(text))


def sbc_vertex_bases(g: DefiningGraph) -> list[str]:
    c = Classifier(g)
    return [v for v in g if c.is_strongly_bc(v)]


def build_sbc_fragment(
    g: DefiningGraph,
    radius: int,
    max_radius: int = DEFAULT_MAX_RADIUS,
    max_vertices: int = DEFAULT_MAX_ELEMENTS,
    threads: int = 1,
    method: str = "translate",
) -> BoundaryFragment:
    bases = sbc_vertex_bases(g)
    vertices: list[ConjugateGenerator] = []
    for v in bases:
        vertices.extend(enumerate_conjugates(g, v, radius, max_radius, max_vertices))
        if len(vertices) > max_vertices:
            raise ResourceLimitError(f"boundary fragment exceeds {max_vertices} vertices")
    vertices.sort(key=lambda c: (c.base, shortlex_key(c.conjugator)))
    if method == "translate":
        edges = _edges_by_translation(g, vertices, radius, max_vertices, threads)
    elif method == "pairwise":
        edges = _edges_pairwise(g, vertices, threads)
    else:
        raise InvalidInputError(f"unknown edge method {method!r}")
    return BoundaryFragment(tuple(vertices), edges, radius)


def _edges_pairwise(g: DefiningGraph, vertices: list[ConjugateGenerator], threads: int = 1):
    """Commutator test on every pair with adjacent bases. Quadratic."""
    candidates = [
        (p, q) for p, q in combinations(vertices, 2)
        if p.base != q.base and g.adjacent(p.base, q.base)
    ]

    def test(pair):
        return commutes(g, conjugate_element(pair[0]), conjugate_element(pair[1]))

    if threads > 1 and len(candidates) > 64:
        with ThreadPoolExecutor(threads) as pool:
            flags = list(pool.map(test, candidates, chunksize=64))
    else:
        flags = [test(p) for p in candidates]
    return tuple(pair for pair, ok in zip(candidates, flags) if ok)


def _edges_by_translation(g: DefiningGraph, vertices: list[ConjugateGenerator], radius: int,
                          max_elements: int, threads: int = 1):
    """Neighbours of ``(v, x)`` with base ``w`` are ``(w, canon_w(x a))`` for ``a`` in ``<star v>``.

    Only ``a`` without terminal letters in ``star w`` matter, and such an
    ``a`` is no longer than the conjugator it produces, so a ball of the
    given radius in the star subgroup suffices.
    """
    present = set(vertices)
    order = {c: i for i, c in enumerate(vertices)}
    bases = sorted({c.base for c in vertices})
    shifts: dict[tuple[str, str], list] = {}
    for v in bases:
        star_v = closed_star(g, v)
        sub = g.induced_subgraph(star_v)
        local = ball(sub, radius, max_elements)
        for w in bases:
            if w == v or not g.adjacent(v, w):
                continue
            star_w = closed_star(g, w)
            shifts[(v, w)] = [
                a for a in local
                if not any(a[i].generator in star_w for i in terminal_letters(g, a))
            ]
    def around(p: ConjugateGenerator) -> list[tuple[ConjugateGenerator, ConjugateGenerator]]:
        found = []
        for w in bases:
            for a in shifts.get((p.base, w), ()):
                q = conjugate_canonical(g, w, [*p.conjugator, *a])
                if q in present:
                    found.append((p, q) if order[p] < order[q] else (q, p))
        return found

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            chunks = list(pool.map(around, vertices, chunksize=32))
    else:
        chunks = [around(p) for p in vertices]
    edges = {e for chunk in chunks for e in chunk}
    return tuple(sorted(edges, key=lambda e: (order[e[0]], order[e[1]])))


def verify_fragment(g: DefiningGraph, frag: BoundaryFragment) -> None:
    """Re-check every edge and the clique bound; raise on violation."""
    sbc = set(sbc_vertex_bases(g))
    for c in frag.vertices:
        if c.base not in sbc:
            raise InvariantViolation(f"{c.label()} has a base that is not strongly branch-complemented")
    for p, q in frag.edges:
        if not g.adjacent(p.base, q.base):
            raise InvariantViolation(f"edge {p.label()} -- {q.label()} joins non-adjacent bases")
        if not commutes(g, conjugate_element(p), conjugate_element(q)):
            raise InvariantViolation(f"edge {p.label()} -- {q.label()} joins non-commuting elements")
    if frag.vertices and frag.edges:
        if clique_number(frag.to_graph()) > clique_number(g):
            raise InvariantViolation("boundary fragment has a clique larger than the defining graph's")

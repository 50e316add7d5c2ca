"""Branching taxonomy of standard geodesics and standard flats.

Everything here is read off the defining graph. A vertex stands for a
standard geodesic, a clique for a standard flat, and the top-dimensional
cliques (those of maximum size) for the top-rank flats.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

from .errors import InvalidInputError
from .graph import Clique, DefiningGraph, maximal_cliques


@dataclass(frozen=True)
class VertexFlags:
    branching: bool
    branch_complemented: bool
    strongly_branch_complemented: bool
    in_some_top_clique: bool


@dataclass(frozen=True)
class CliqueFlags:
    top_dimensional: bool
    directionally_bc: bool
    directionally_strongly_bc: bool


@dataclass(frozen=True)
class BranchReport:
    rank: int
    per_vertex: dict[str, VertexFlags]
    per_clique: dict[Clique, CliqueFlags]

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "vertices": {
                v: {
                    "branching": f.branching,
                    "bc": f.branch_complemented,
                    "sbc": f.strongly_branch_complemented,
                }
                for v, f in sorted(self.per_vertex.items())
            },
            "cliques": [
                {"members": list(c), "top": f.top_dimensional, "dbc": f.directionally_bc,
                 "dsbc": f.directionally_strongly_bc}
                for c, f in sorted(self.per_clique.items())
            ],
        }


class Classifier:
    """Caches the clique data one graph needs; all answers are exact."""

    def __init__(self, g: DefiningGraph) -> None:
        if not len(g):
            raise InvalidInputError("cannot classify the empty graph")
        self.g = g

    @cached_property
    def maximal(self) -> list[Clique]:
        return maximal_cliques(self.g)

    @cached_property
    def rank(self) -> int:
        return max(len(c) for c in self.maximal)

    @cached_property
    def top(self) -> list[frozenset[str]]:
        return [frozenset(c) for c in self.maximal if len(c) == self.rank]

    def _vertex(self, v: str) -> None:
        if v not in self.g:
            raise InvalidInputError(f"unknown vertex {v!r}")

    def _clique(self, c: Iterable[str]) -> frozenset[str]:
        members = frozenset(c)
        if not members or not self.g.is_clique(members):
            raise InvalidInputError(f"{sorted(members)} is not a clique")
        return members

    def is_intersection(self, target: frozenset[str], family: list[frozenset[str]]) -> bool:
        """Whether ``target`` is the intersection of the members of ``family`` containing it."""
        containing = [k for k in family if target <= k]
        if not containing:
            return False
        return frozenset.intersection(*containing) == target

    def witnesses(self, target: frozenset[str], family: list[frozenset[str]]) -> list[frozenset[str]]:
        return [k for k in family if target <= k]

    def in_top(self, v: str) -> bool:
        self._vertex(v)
        return any(v in k for k in self.top)

    def is_branching(self, v: str) -> bool:
        self._vertex(v)
        return self.is_intersection(frozenset([v]), self.top)

    def bc_face_witness(self, v: str) -> frozenset[str] | None:
        """A top clique ``K`` whose face ``K - {v}`` is an intersection of top cliques."""
        if not self.is_branching(v):
            return None
        for k in self.top:
            if v not in k:
                continue
            face = k - {v}
            # the empty face (rank one) counts as satisfied
            if not face or self.is_intersection(face, self.top):
                return k
        return None

    def is_branch_complemented(self, v: str) -> bool:
        return self.bc_face_witness(v) is not None

    @cached_property
    def _bc(self) -> dict[str, bool]:
        return {v: self.is_branch_complemented(v) for v in self.g}

    def is_directionally_bc(self, c: Iterable[str]) -> bool:
        return all(self._bc[v] for v in self._clique(c))

    @cached_property
    def dbc_top(self) -> list[frozenset[str]]:
        return [k for k in self.top if all(self._bc[v] for v in k)]

    def is_strongly_bc(self, v: str) -> bool:
        self._vertex(v)
        return self.is_intersection(frozenset([v]), self.dbc_top)

    @cached_property
    def _sbc(self) -> dict[str, bool]:
        return {v: self.is_strongly_bc(v) for v in self.g}

    def is_directionally_strongly_bc(self, c: Iterable[str]) -> bool:
        return all(self._sbc[v] for v in self._clique(c))

    def is_top_dimensional(self, c: Iterable[str]) -> bool:
        return len(self._clique(c)) == self.rank

    def report(self) -> BranchReport:
        per_vertex = {
            v: VertexFlags(
                branching=self.is_branching(v),
                branch_complemented=self._bc[v],
                strongly_branch_complemented=self._sbc[v],
                in_some_top_clique=self.in_top(v),
            )
            for v in self.g
        }
        per_clique = {
            c: CliqueFlags(
                top_dimensional=len(c) == self.rank,
                directionally_bc=self.is_directionally_bc(c),
                directionally_strongly_bc=self.is_directionally_strongly_bc(c),
            )
            for c in self.maximal
        }
        return BranchReport(self.rank, per_vertex, per_clique)


def is_branching(g: DefiningGraph, v: str) -> bool:
    return Classifier(g).is_branching(v)


def is_branch_complemented(g: DefiningGraph, v: str) -> bool:
    return Classifier(g).is_branch_complemented(v)


def is_directionally_bc(g: DefiningGraph, c: Iterable[str]) -> bool:
    return Classifier(g).is_directionally_bc(c)


def is_strongly_bc(g: DefiningGraph, v: str) -> bool:
    return Classifier(g).is_strongly_bc(v)


def is_directionally_strongly_bc(g: DefiningGraph, c: Iterable[str]) -> bool:
    return Classifier(g).is_directionally_strongly_bc(c)


def classify_all(g: DefiningGraph) -> BranchReport:
    return Classifier(g).report()


def is_triangle_free(g: DefiningGraph) -> bool:
    return not any(g.neighbors(u) & g.neighbors(w) for u, w in g.edges())


def triangle_free_oracle(g: DefiningGraph, v: str) -> tuple[bool, bool]:
    """(branching, branch_complemented) from vertex degrees alone.

    Valid for triangle-free graphs with at least one edge: a vertex is
    branching iff it is not a leaf, and branch-complemented iff in addition
    some neighbour is not a leaf.
    """
    if not is_triangle_free(g):
        raise InvalidInputError("graph contains a triangle")
    if not g.num_edges():
        raise InvalidInputError("degree criterion needs a graph of rank 2 (at least one edge)")
    branching = g.degree(v) >= 2
    return branching, branching and any(g.degree(w) >= 2 for w in g.neighbors(v))

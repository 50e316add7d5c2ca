"""Certificates that a RAAG admits no quasiisometric embedding into a product.

The target is a product of ``n`` rank-one factors: bushy trees, or
hyperbolic spaces of finite asymptotic dimension, which are quasiisometric
to rank-one cube complexes. Such an embedding would induce a graph
embedding of the strongly branch-complemented boundary graph of the source
into the singular boundary of the target, a complete ``n``-partite graph.
A finite subgraph that is not ``n``-colourable therefore rules it out.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .boundary import build_sbc_fragment
from .errors import InvalidInputError, InvariantViolation
from .graph import (
    DEFAULT_MAX_CHI_VERTICES,
    DefiningGraph,
    chromatic_number,
    clique_number,
    find_coloring,
    injective_embedding,
    is_cycle,
    is_embedding,
    maximal_cliques,
    parse_graph,
    shortest_odd_cycle,
)
from .words import DEFAULT_MAX_ELEMENTS, DEFAULT_MAX_RADIUS

BOUNDARY_EMBEDDING = (
    "boundary embedding: a quasiisometric embedding between cube complexes of equal "
    "asymptotic rank n induces a graph embedding of the strongly branch-complemented "
    "boundary graph of the source into the singular (semisingular) boundary graph of the target"
)
PRODUCT_TARGET = (
    "the singular boundary graph of a product of n rank-one factors (bushy trees, or "
    "hyperbolic spaces of finite asymptotic dimension via their rank-one cubulations) "
    "is complete n-partite, hence n-colourable"
)
RANK_MONOTONICITY = (
    "rank monotonicity: a standard flat of dimension k is a biLipschitz copy of Z^k, so a "
    "quasiisometric embedding forces target asymptotic rank >= clique number of the defining graph"
)
ODD_CYCLE_TWO_FACTORS = (
    "odd cycle: a bipartite singular boundary graph contains no odd cycle, so no product "
    "of two rank-one factors receives the source"
)

KINDS = ("RankExcess", "ChromaticExcess", "OddCycle", "NoEmbedding")


@dataclass(frozen=True)
class ObstructionCertificate:
    kind: str
    payload: dict
    citation: str
    advisory: bool = False

    def to_dict(self) -> dict:
        return {"kind": self.kind, "payload": self.payload, "citation": self.citation,
                "advisory": self.advisory}


@dataclass(frozen=True)
class Verdict:
    """Outcome of an obstruction search. ``certificate`` is ``None`` when inconclusive."""

    certificate: ObstructionCertificate | None
    reason: str
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "reason": self.reason,
            **self.details,
        }


def _critical_subgraph(g: DefiningGraph, n: int) -> DefiningGraph:
    """A vertex-minimal induced subgraph that is still not ``n``-colourable."""
    keep = list(g.vertices)
    for v in list(keep):
        trial = [u for u in keep if u != v]
        if find_coloring(g.induced_subgraph(trial), n) is None:
            keep = trial
    return g.induced_subgraph(keep)


def obstruct_product(
    g: DefiningGraph,
    n: int,
    radius: int = 0,
    max_radius: int = DEFAULT_MAX_RADIUS,
    max_fragment: int = DEFAULT_MAX_ELEMENTS,
    max_chi_vertices: int = DEFAULT_MAX_CHI_VERTICES,
    threads: int = 1,
) -> Verdict:
    """Search for a certificate against embeddings into a product of ``n`` rank-one factors.

    Never claims that an embedding exists; ``None`` only means nothing was found.
    """
    if n < 1:
        raise InvalidInputError("number of factors must be positive")
    if radius < 0:
        raise InvalidInputError("radius must be non-negative")
    omega = clique_number(g)
    if omega > n:
        clique = next(c for c in maximal_cliques(g) if len(c) == omega)
        cert = ObstructionCertificate(
            "RankExcess",
            {"clique": list(clique), "clique_number": omega, "target_rank": n},
            RANK_MONOTONICITY,
        )
        return Verdict(cert, f"clique number {omega} exceeds target rank {n}")
    if omega < n:
        return Verdict(None, "rank deficit: source rank below target rank, so the boundary criterion does not apply",
                       {"clique_number": omega, "target_rank": n})
    frag = build_sbc_fragment(g, radius, max_radius, max_fragment, threads)
    fg = frag.to_graph()
    info = {"clique_number": omega, "target_rank": n, "radius": radius,
            "fragment_vertices": len(fg), "fragment_edges": fg.num_edges()}
    if n == 2:
        cycle = shortest_odd_cycle(fg)
        if cycle is not None:
            cert = ObstructionCertificate(
                "OddCycle",
                {"cycle": cycle, "length": len(cycle), "radius": radius},
                f"{BOUNDARY_EMBEDDING}; {ODD_CYCLE_TWO_FACTORS}",
            )
            return Verdict(cert, f"odd cycle of length {len(cycle)} in the boundary fragment", info)
        return Verdict(None, "inconclusive: boundary fragment is bipartite", info)
    chi = chromatic_number(fg, max_chi_vertices)
    info["fragment_chromatic_number"] = chi
    if chi > n:
        critical = _critical_subgraph(fg, n)
        cert = ObstructionCertificate(
            "ChromaticExcess",
            {"chromatic_number": chi, "target_rank": n, "radius": radius,
             "fragment": fg.to_dict(), "critical_subgraph": critical.to_dict()},
            f"{BOUNDARY_EMBEDDING}; {PRODUCT_TARGET}",
        )
        return Verdict(cert, f"boundary fragment needs {chi} > {n} colours", info)
    return Verdict(None, f"inconclusive: boundary fragment is {n}-colourable", info)


def obstruct_finite_target(h: DefiningGraph, t: DefiningGraph) -> Verdict:
    """Advisory check that ``h`` has no injective edge-preserving map into ``t``.

    A finite target only understates an infinite boundary graph, so the
    certificate is sound only when ``t`` is known to contain the relevant
    boundary graph entirely.
    """
    mapping = injective_embedding(h, t)
    if mapping is not None:
        return Verdict(None, "an embedding exists", {"mapping": dict(sorted(mapping.items()))})
    cert = ObstructionCertificate(
        "NoEmbedding",
        {"source": h.to_dict(), "target": t.to_dict()},
        f"{BOUNDARY_EMBEDDING}; exhaustive search found no graph embedding into the finite target",
        advisory=True,
    )
    return Verdict(cert, "no injective edge-preserving map exists", {})


# independent re-verification

def _colourable_plain(g: DefiningGraph, k: int) -> bool:
    """Backtracking in fixed sorted order, sharing no code with the solver."""
    order = list(g.vertices)
    colour: dict[str, int] = {}

    def go(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        taken = {colour[w] for w in g.neighbors(v) if w in colour}
        for c in range(k):
            if c not in taken:
                colour[v] = c
                if go(i + 1):
                    return True
                del colour[v]
        return False

    return go(0)


def _embeds_plain(h: DefiningGraph, t: DefiningGraph, limit: int = 2_000_000) -> bool:
    count = 1
    for i in range(len(h)):
        count *= len(t) - i
    if count <= limit:
        hv = list(h.vertices)
        for image in itertools.permutations(t.vertices, len(hv)):
            if is_embedding(h, t, dict(zip(hv, image))):
                return True
        return False
    return injective_embedding(h, t) is not None


def verify_certificate(cert: ObstructionCertificate, g: DefiningGraph | None = None) -> None:
    """Re-derive the certificate's claim from its payload; raise if it does not hold."""
    p = cert.payload
    if cert.kind == "RankExcess":
        clique = p["clique"]
        if g is not None and not g.is_clique(clique):
            raise InvariantViolation("certified clique is not a clique of the defining graph")
        if len(set(clique)) != p["clique_number"] or p["clique_number"] <= p["target_rank"]:
            raise InvariantViolation("rank excess payload is inconsistent")
    elif cert.kind == "OddCycle":
        cycle = p["cycle"]
        if len(cycle) % 2 == 0 or len(cycle) != p["length"]:
            raise InvariantViolation("certified cycle is not odd")
        if g is not None:
            fg = build_sbc_fragment(g, p["radius"]).to_graph()
            if not is_cycle(fg, cycle):
                raise InvariantViolation("certified cycle is not a closed cycle of the fragment")
    elif cert.kind == "ChromaticExcess":
        sub = parse_graph(p["critical_subgraph"])
        frag = parse_graph(p["fragment"])
        if any(v not in frag for v in sub) or any(not frag.adjacent(u, w) for u, w in sub.edges()):
            raise InvariantViolation("critical subgraph is not contained in the fragment")
        if _colourable_plain(sub, p["target_rank"]):
            raise InvariantViolation("certified subgraph is colourable with the target's parts")
    elif cert.kind == "NoEmbedding":
        if _embeds_plain(parse_graph(p["source"]), parse_graph(p["target"])):
            raise InvariantViolation("an embedding exists after all")
    else:
        raise InvariantViolation(f"unknown certificate kind {cert.kind!r}")

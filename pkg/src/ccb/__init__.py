"""Branching taxonomy, boundary graphs and embedding obstructions for right-angled Artin groups."""

from .boundary import BoundaryFragment, build_sbc_fragment, multipartite_descriptor, sbc_vertex_bases
from .branching import (
    BranchReport,
    classify_all,
    is_branch_complemented,
    is_branching,
    is_directionally_bc,
    is_directionally_strongly_bc,
    is_strongly_bc,
    triangle_free_oracle,
)
from .errors import (
    CCBError,
    GraphParseError,
    InvalidInputError,
    InvariantViolation,
    ResourceLimitError,
    WordSyntaxError,
)
from .graph import (
    DefiningGraph,
    chromatic_number,
    clique_number,
    injective_embedding,
    load_graph,
    maximal_cliques,
    parse_graph,
    shortest_odd_cycle,
)
from .median import MedianFragment, build_fragment
from .obstruction import ObstructionCertificate, obstruct_finite_target, obstruct_product
from .words import (
    ConjugateGenerator,
    Letter,
    commutes,
    conjugate_canonical,
    enumerate_conjugates,
    is_identity,
    normalize,
    parse_word,
)

__version__ = "0.1.0"

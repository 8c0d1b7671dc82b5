"""Functional bisimulation, collapse, and maximal sharing.

The collapse computes the coarsest partition compatible with labels and
indexed successors by plain signature refinement to a fixpoint; graphs
here are small and correctness outranks asymptotics (a worklist or
Hopcroft-style refinement is the documented upgrade path).  Block ids
are canonicalized by first-visit order from the root so the quotient's
vertex numbering is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    GraphError,
    Label,
    TermGraph,
    VariantMismatch,
    VertexMap,
    build,
    find_homomorphism,
    isomorphic,
)
from .delimited import DelimitedGraph, is_eager_scope
from .scoped import PrefixedGraph, ScopedGraph
from .transforms import (
    insert_delimiters,
    prefix_to_scope,
    scope_to_prefix,
    strip_delimiters,
)

__all__ = [
    "Partition",
    "NotEagerScope",
    "find_homomorphism",
    "lift_homomorphism",
    "is_label_restricted",
    "are_bisimilar",
    "coarsest_partition",
    "collapse",
    "max_share_ho",
]


class NotEagerScope(GraphError):
    """Maximal sharing requested for a graph outside the eager class."""


@dataclass(frozen=True)
class Partition:
    """Vertex -> block id, with blocks numbered by first DFS visit."""

    block: tuple[int, ...]
    block_count: int
    root_block: int

    def members(self, b: int) -> list[int]:
        return [v for v, bv in enumerate(self.block) if bv == b]

    def as_blocks(self) -> frozenset[frozenset[int]]:
        groups: dict[int, set[int]] = {}
        for v, b in enumerate(self.block):
            groups.setdefault(b, set()).add(v)
        return frozenset(frozenset(g) for g in groups.values())


def coarsest_partition(g: TermGraph) -> Partition:
    """Coarsest partition compatible with labels and indexed successors."""
    block = _renumber(g, {v: g.labels[v] for v in g.vertices()})
    while True:
        sig = {
            v: (block[v], tuple(block[w] for w in g.args[v])) for v in g.vertices()
        }
        refined = _renumber(g, sig)
        if len(set(refined.values())) == len(set(block.values())):
            block = refined
            break
        block = refined
    return Partition(
        block=tuple(block[v] for v in g.vertices()),
        block_count=len(set(block.values())),
        root_block=block[g.root],
    )


def _renumber(g: TermGraph, keys: dict) -> dict[int, int]:
    # Assign dense block ids in first-visit DFS order (lowest index first).
    order: dict = {}
    seen = set()
    stack = [g.root]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        if keys[v] not in order:
            order[keys[v]] = len(order)
        stack.extend(reversed(g.args[v]))
    return {v: order[keys[v]] for v in g.vertices()}


def collapse(g: TermGraph) -> tuple[TermGraph, VertexMap]:
    """The bisimulation collapse and the projection map onto it.

    The projection is a homomorphism, and no nontrivial homomorphism
    leaves the result.  Each block is represented by its minimal vertex
    id; the root's block becomes the new root.
    """
    part = coarsest_partition(g)
    rep: dict[int, int] = {}
    for v in g.vertices():
        b = part.block[v]
        if b not in rep or v < rep[b]:
            rep[b] = v
    # Quotient vertices come out in block-id order, i.e. first DFS visit.
    blocks = range(part.block_count)
    labels = {g.names[rep[b]]: g.labels[rep[b]] for b in blocks}
    succ = {
        g.names[rep[b]]: [g.names[rep[part.block[w]]] for w in g.args[rep[b]]]
        for b in blocks
    }
    quotient = build(g.variant, labels, succ, g.names[rep[part.root_block]])
    mapping = {
        v: quotient.id_of(g.names[rep[part.block[v]]]) for v in g.vertices()
    }
    return quotient, mapping


def are_bisimilar(g1: TermGraph, g2: TermGraph) -> bool:
    """Bisimilarity via collapse-and-compare on one verified engine."""
    if g1.variant != g2.variant:
        raise VariantMismatch(f"{g1.variant} vs {g2.variant}")
    return isomorphic(collapse(g1)[0], collapse(g2)[0]) is not None


def is_label_restricted(h: VertexMap, g1: TermGraph, label: Label) -> bool:
    """True iff h identifies only vertices carrying the given label."""
    classes: dict[int, list[int]] = {}
    for v, w in h.items():
        classes.setdefault(w, []).append(v)
    for members in classes.values():
        if len(members) > 1 and any(g1.labels[v] is not label for v in members):
            return False
    return True


def _check_carrier_homomorphism(h: VertexMap, g1: TermGraph, g2: TermGraph) -> None:
    if set(h) != set(g1.vertices()):
        raise ValueError("map is not total on the source vertex set")
    if h[g1.root] != g2.root:
        raise ValueError("map does not preserve the root")
    for v in g1.vertices():
        if g1.labels[v] is not g2.labels[h[v]]:
            raise ValueError(f"map does not preserve the label at {g1.names[v]}")
        if tuple(h[w] for w in g1.args[v]) != g2.args[h[v]]:
            raise ValueError(f"map does not preserve the arguments at {g1.names[v]}")


def lift_homomorphism(
    h: VertexMap,
    x1: ScopedGraph | PrefixedGraph | DelimitedGraph,
    x2: ScopedGraph | PrefixedGraph | DelimitedGraph,
) -> bool:
    """Does a carrier homomorphism respect the scoping structure on top?

    For scope functions the image of each scope must equal the scope of
    the image; for prefix functions (explicit or inferred) the image of
    each word must equal the image vertex's word.
    """
    if type(x1) is not type(x2):
        raise ValueError("both sides must use the same representation")
    _check_carrier_homomorphism(h, x1.graph, x2.graph)
    if isinstance(x1, ScopedGraph):
        return all(
            frozenset(h[u] for u in x1.scopes[v]) == x2.scopes[h[v]]
            for v in x1.graph.vertices_labeled(Label.ABS)
        )
    return all(
        tuple(h[u] for u in x1.prefixes[v]) == x2.prefixes[h[v]]
        for v in x1.graph.vertices()
    )


def max_share_ho(h: ScopedGraph) -> ScopedGraph:
    """Maximally shared form of a scope-function graph with back-links.

    Route: to prefixes, to the delimited first-order form, first-order
    bisimulation collapse, and back.  The input's delimited image must
    be eager-scope; the eager class is closed under homomorphism, so the
    collapse stays inside it and the way back is well-defined.
    """
    if h.graph.variant.var_arity != 1 or h.graph.variant.del_arity is not None:
        raise VariantMismatch("maximal sharing needs variable back-links and no delimiters")
    delimited = insert_delimiters(scope_to_prefix(h), 2)
    if not is_eager_scope(delimited):
        raise NotEagerScope("the delimited form of the input is not eager-scope")
    collapsed, _ = collapse(delimited.graph)
    return prefix_to_scope(strip_delimiters(DelimitedGraph.from_graph(collapsed)))

"""Finite rooted first-order term graphs with ordered successors.

Vertices carry one of four labels: application (binary), abstraction
(unary), variable occurrence, and scope delimiter.  A signature variant
fixes whether variable and delimiter vertices carry back-link edges to
the abstraction they belong to.  Graphs are immutable; every vertex is
reachable from the root; vertex ids are dense integers assigned in
depth-first preorder (lowest edge index first) at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Iterable, Mapping, Sequence


class GraphError(Exception):
    """Base class for construction and navigation errors."""


class ArityMismatch(GraphError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"wrong number of successors at vertex {vertex!r}")


class DanglingSuccessor(GraphError):
    def __init__(self, vertex, index):
        self.vertex = vertex
        self.index = index
        super().__init__(f"successor {index} of vertex {vertex!r} does not exist")


class UnreachableVertex(GraphError):
    def __init__(self, vertices):
        self.vertices = tuple(vertices)
        super().__init__(f"vertices not reachable from the root: {list(self.vertices)}")


class ForbiddenLabel(GraphError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"delimiter label at vertex {vertex!r} not allowed by this variant")


class IndexOutOfRange(GraphError):
    def __init__(self, vertex, index):
        self.vertex = vertex
        self.index = index
        super().__init__(f"edge index {index} out of range at vertex {vertex!r}")


class VariantMismatch(GraphError):
    """Operation applied to a graph over the wrong signature variant."""


class DomainMismatch(GraphError):
    """A scope or prefix function whose domain does not fit the graph."""


class Label(Enum):
    APP = "@"
    ABS = "lam"
    VAR = "0"
    DEL = "S"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SignatureVariant:
    """Arity choices: var_arity is 0 or 1, del_arity is None, 1 or 2.

    var_arity 1 gives variable vertices a back-link edge to their
    abstraction; del_arity None forbids delimiter vertices entirely,
    otherwise delimiters are unary (1) or carry a back-link too (2).
    """

    var_arity: int
    del_arity: int | None = None

    def __post_init__(self):
        if self.var_arity not in (0, 1):
            raise ValueError(f"var_arity must be 0 or 1, got {self.var_arity}")
        if self.del_arity not in (None, 1, 2):
            raise ValueError(f"del_arity must be None, 1 or 2, got {self.del_arity}")

    def arity(self, label: Label) -> int:
        if label is Label.APP:
            return 2
        if label is Label.ABS:
            return 1
        if label is Label.VAR:
            return self.var_arity
        if self.del_arity is None:
            raise ForbiddenLabel(label)
        return self.del_arity

    def allows(self, label: Label) -> bool:
        return label is not Label.DEL or self.del_arity is not None

    def __str__(self):
        if self.del_arity is None:
            return f"({self.var_arity},none)"
        return f"({self.var_arity},{self.del_arity})"


@dataclass(frozen=True)
class Path:
    """Alternating vertex/edge-index walk v0 -k0-> v1 -k1-> ... -> vn."""

    vertices: tuple[int, ...]
    indices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.indices) + 1 or not self.vertices:
            raise ValueError("path must have one more vertex than edge indices")

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def __len__(self):
        return len(self.indices)

    def holds_in(self, g: "TermGraph") -> bool:
        return all(
            g.args[v][k] == w
            for v, k, w in zip(self.vertices, self.indices, self.vertices[1:])
        )

    def is_access_path(self, g: "TermGraph") -> bool:
        return (
            self.start == g.root
            and len(set(self.vertices)) == len(self.vertices)
            and self.holds_in(g)
        )


# A homomorphism witness: total map from source vertices to target vertices.
VertexMap = dict[int, int]


@dataclass(frozen=True)
class TermGraph:
    """Rooted labeled graph with ordered successors, vertices 0..n-1.

    ``names`` keeps the construction-time vertex names for reporting and
    serialization; identity and equality are positional.
    """

    variant: SignatureVariant
    labels: tuple[Label, ...]
    args: tuple[tuple[int, ...], ...]
    root: int
    names: tuple[str, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    def vertices(self) -> range:
        return range(len(self.labels))

    def edges(self) -> Iterable[tuple[int, int, int]]:
        """All indexed edges as (source, index, target) triples."""
        for v in self.vertices():
            for k, w in enumerate(self.args[v]):
                yield v, k, w

    def vertices_labeled(self, label: Label) -> list[int]:
        return [v for v in self.vertices() if self.labels[v] is label]

    def id_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None

    def name_of(self, v: int) -> str:
        return self.names[v]

    def resolve(self, vertex: int | str) -> int:
        return self.id_of(vertex) if isinstance(vertex, str) else vertex

    def __repr__(self):
        parts = ", ".join(
            f"{self.names[v]}:{self.labels[v]}({','.join(self.names[w] for w in self.args[v])})"
            for v in self.vertices()
        )
        return f"<TermGraph {self.variant} root={self.names[self.root]} {parts}>"


def _reachable_keys(root, succ: Mapping) -> set:
    seen = {root}
    stack = [root]
    while stack:
        v = stack.pop()
        for w in succ[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def build(
    variant: SignatureVariant,
    labels: Mapping[Hashable, Label],
    successors: Mapping[Hashable, Sequence[Hashable]],
    root: Hashable,
) -> TermGraph:
    """Construct a validated term graph, rejecting unreachable vertices.

    The label and successor maps must share one key set containing the
    root.  Vertices are renumbered to depth-first preorder; original
    keys survive as vertex names.
    """
    g, pruned = _build_common(variant, labels, successors, root)
    if pruned:
        raise UnreachableVertex(pruned)
    return g


# Vertex ids are dense integers in map insertion order, so documents and
# programmatic constructions keep their declared numbering; transformed
# graphs are renumbered by whatever order their constructors emit.


def build_pruned(
    variant: SignatureVariant,
    labels: Mapping[Hashable, Label],
    successors: Mapping[Hashable, Sequence[Hashable]],
    root: Hashable,
) -> tuple[TermGraph, tuple]:
    """Lenient constructor: drops unreachable vertices and reports them."""
    return _build_common(variant, labels, successors, root)


def _build_common(variant, labels, successors, root):
    keys = set(labels)
    if keys != set(successors) or root not in keys:
        raise DomainMismatch("label and successor maps must share a key set containing the root")
    for v in labels:
        lab = labels[v]
        if not variant.allows(lab):
            raise ForbiddenLabel(v)
        if len(successors[v]) != variant.arity(lab):
            raise ArityMismatch(v)
        for k, w in enumerate(successors[v]):
            if w not in keys:
                raise DanglingSuccessor(v, k)
    reachable = _reachable_keys(root, successors)
    order = [v for v in labels if v in reachable]
    pruned = tuple(v for v in labels if v not in reachable)
    index = {v: i for i, v in enumerate(order)}
    g = TermGraph(
        variant=variant,
        labels=tuple(labels[v] for v in order),
        args=tuple(tuple(index[w] for w in successors[v]) for v in order),
        root=index[root],
        names=tuple(str(v) for v in order),
    )
    return g, pruned


def successor(g: TermGraph, v: int | str, k: int) -> int:
    """The k-th successor of v; raises IndexOutOfRange past the arity."""
    v = g.resolve(v)
    if not 0 <= k < len(g.args[v]):
        raise IndexOutOfRange(g.names[v], k)
    return g.args[v][k]


def access_path(g: TermGraph, v: int | str) -> Path:
    """The depth-first-first access path from the root to v.

    Deterministic: follows the lowest edge index first; the result never
    repeats a vertex.
    """
    v = g.resolve(v)
    seen = set()
    # Stack entries carry the simple path taken to reach the vertex.
    stack: list[tuple[int, tuple[int, ...], tuple[int, ...]]] = [(g.root, (g.root,), ())]
    while stack:
        u, verts, idxs = stack.pop()
        if u in seen:
            continue
        seen.add(u)
        if u == v:
            return Path(verts, idxs)
        for k, w in reversed(list(enumerate(g.args[u]))):
            if w not in seen:
                stack.append((w, verts + (w,), idxs + (k,)))
    raise KeyError(f"vertex {g.names[v]} not reachable")  # unreachable by construction


def find_homomorphism(g1: TermGraph, g2: TermGraph) -> VertexMap | None:
    """The unique root/label/argument-preserving map g1 -> g2, if any.

    Computed by simultaneous traversal from the roots; any label or
    argument conflict means no homomorphism exists.
    """
    if g1.variant != g2.variant:
        raise VariantMismatch(f"{g1.variant} vs {g2.variant}")
    mapping: VertexMap = {g1.root: g2.root}
    pending = [g1.root]
    while pending:
        v = pending.pop()
        w = mapping[v]
        if g1.labels[v] is not g2.labels[w]:
            return None
        for k, v_succ in enumerate(g1.args[v]):
            w_succ = g2.args[w][k]
            if v_succ in mapping:
                if mapping[v_succ] != w_succ:
                    return None
            else:
                mapping[v_succ] = w_succ
                pending.append(v_succ)
    return mapping


def isomorphic(g1: TermGraph, g2: TermGraph) -> VertexMap | None:
    """Root-preserving isomorphism witness, or None.

    For rooted graphs with ordered successors a bijective homomorphism
    is an isomorphism and the witness is unique.
    """
    if g1.vertex_count != g2.vertex_count:
        return None
    h = find_homomorphism(g1, g2)
    if h is None or len(set(h.values())) != g1.vertex_count:
        return None
    return h


def reachable_from(g: TermGraph, v: int) -> set[int]:
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for w in g.args[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def simple_root_paths(g: TermGraph, v: int) -> list[Path]:
    """Every access path of v, by exhaustive backtracking (small graphs)."""
    v = g.resolve(v)
    out: list[Path] = []

    def walk(u, verts, idxs):
        if u == v:
            out.append(Path(tuple(verts), tuple(idxs)))
            return
        for k, w in enumerate(g.args[u]):
            if w not in verts:
                verts.append(w)
                idxs.append(k)
                walk(w, verts, idxs)
                verts.pop()
                idxs.pop()

    walk(g.root, [g.root], [])
    return out

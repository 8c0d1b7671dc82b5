"""Higher-order term graph representations of cyclic lambda-terms.

Two equivalent ways to attach scope information to a delimiter-free term
graph: a scope function mapping each abstraction vertex to the vertex
set inside its extended scope, and an abstraction-prefix function
mapping every vertex to the word of abstraction vertices whose extended
scopes it sits in, outermost first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .core import (
    DomainMismatch,
    Label,
    TermGraph,
    VariantMismatch,
    simple_root_paths,
)

# Normalized scope / prefix functions over a fixed graph: keyed by vertex id.
ScopeFn = dict[int, frozenset[int]]
PrefixFn = dict[int, tuple[int, ...]]


@dataclass(frozen=True)
class Violation:
    condition: str
    witnesses: tuple[int, ...]

    def describe(self, g: TermGraph) -> str:
        return f"{self.condition} at {', '.join(g.names[v] for v in self.witnesses)}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def describe(self, g: TermGraph) -> str:
        if self.passed:
            return "pass"
        return "fail: " + "; ".join(v.describe(g) for v in self.violations)


def _is_word_prefix(shorter: tuple, longer: tuple) -> bool:
    return len(shorter) <= len(longer) and longer[: len(shorter)] == shorter


def normalize_scope_fn(g: TermGraph, sc: Mapping) -> ScopeFn:
    """Accept ids or names as keys/members, check the domain, freeze."""
    out: ScopeFn = {}
    for key, members in sc.items():
        out[g.resolve(key)] = frozenset(g.resolve(m) for m in members)
    abs_vertices = set(g.vertices_labeled(Label.ABS))
    if set(out) != abs_vertices:
        raise DomainMismatch("scope function domain must be exactly the abstraction vertices")
    for members in out.values():
        for m in members:
            if not 0 <= m < g.vertex_count:
                raise DomainMismatch(f"scope member {m} is not a vertex")
    return out


def normalize_prefix_fn(g: TermGraph, p: Mapping) -> PrefixFn:
    out: PrefixFn = {}
    for key, word in p.items():
        out[g.resolve(key)] = tuple(g.resolve(x) for x in word)
    if set(out) != set(g.vertices()):
        raise DomainMismatch("prefix function must be total on the vertex set")
    for word in out.values():
        for x in word:
            if not 0 <= x < g.vertex_count:
                raise DomainMismatch(f"prefix entry {x} is not a vertex")
    return out


def validate_scope(g: TermGraph, sc: Mapping) -> ValidationReport:
    """Check a scope function on a delimiter-free graph.

    Conditions: the root lies in no scope but its own; every abstraction
    is in its own scope; scopes nest; scopes are closed under incoming
    edges; every variable lies in some scope; with variable back-links,
    a variable and its abstraction share exactly the same scopes.
    """
    if g.variant.del_arity is not None:
        raise VariantMismatch("scope functions live on delimiter-free graphs")
    sc = normalize_scope_fn(g, sc)
    bad: list[Violation] = []
    abs_vertices = g.vertices_labeled(Label.ABS)

    def scope_minus(v):
        return sc[v] - {v}

    for v in abs_vertices:
        if g.root in scope_minus(v):
            bad.append(Violation("root", (v,)))
        if v not in sc[v]:
            bad.append(Violation("self", (v,)))
    for v0 in abs_vertices:
        for v1 in abs_vertices:
            if v1 in scope_minus(v0) and not sc[v1] <= scope_minus(v0):
                bad.append(Violation("nest", (v0, v1)))
    for w, k, wk in g.edges():
        for v in abs_vertices:
            if wk in scope_minus(v) and w not in sc[v]:
                bad.append(Violation("closed", (v, w, wk)))
    for w in g.vertices_labeled(Label.VAR):
        if not any(w in scope_minus(v) for v in abs_vertices):
            bad.append(Violation("scope0", (w,)))
    if g.variant.var_arity == 1:
        for w in g.vertices_labeled(Label.VAR):
            w0 = g.args[w][0]
            if g.labels[w0] is not Label.ABS:
                bad.append(Violation("scope1", (w, w0)))
                continue
            for v in abs_vertices:
                if (w in sc[v]) != (w0 in sc[v]):
                    bad.append(Violation("scope1", (w, w0, v)))
    return ValidationReport(tuple(bad))


def validate_prefix_ho(g: TermGraph, p: Mapping) -> ValidationReport:
    """Check an abstraction-prefix function on a delimiter-free graph.

    Abstraction and application edges may shorten the prefix (word-prefix
    order); variables need a nonempty prefix, and with back-links the
    target must be the last prefix entry.
    """
    if g.variant.del_arity is not None:
        raise VariantMismatch("this validator is for delimiter-free graphs")
    p = normalize_prefix_fn(g, p)
    bad = _prefix_word_sanity(g, p)
    if p[g.root] != ():
        bad.append(Violation("root", (g.root,)))
    for w, k, wk in g.edges():
        lab = g.labels[w]
        if lab is Label.ABS and not _is_word_prefix(p[wk], p[w] + (w,)):
            bad.append(Violation("lambda", (w, wk)))
        elif lab is Label.APP and not _is_word_prefix(p[wk], p[w]):
            bad.append(Violation("apply", (w, wk)))
    for w in g.vertices_labeled(Label.VAR):
        if p[w] == ():
            bad.append(Violation("var0", (w,)))
    if g.variant.var_arity == 1:
        for w in g.vertices_labeled(Label.VAR):
            w0 = g.args[w][0]
            if g.labels[w0] is not Label.ABS or p[w0] + (w0,) != p[w]:
                bad.append(Violation("var1", (w, w0)))
    return ValidationReport(tuple(bad))


def _prefix_word_sanity(g: TermGraph, p: PrefixFn) -> list[Violation]:
    # Derived facts re-checked defensively: prefix entries are abstraction
    # vertices, occur once per word, and a vertex never lists itself.
    bad = []
    for w, word in p.items():
        for x in word:
            if g.labels[x] is not Label.ABS:
                bad.append(Violation("entry-not-abstraction", (w, x)))
        if len(set(word)) != len(word):
            bad.append(Violation("repeated-entry", (w,)))
        if w in word:
            bad.append(Violation("self-in-prefix", (w,)))
    return bad


@dataclass(frozen=True)
class ScopedGraph:
    """A delimiter-free term graph together with a valid scope function."""

    graph: TermGraph
    scopes: dict[int, frozenset[int]] = field(hash=False)

    @classmethod
    def checked(cls, graph: TermGraph, scopes: Mapping) -> "ScopedGraph":
        scopes = normalize_scope_fn(graph, scopes)
        report = validate_scope(graph, scopes)
        if not report.passed:
            raise ValueError(f"invalid scope function: {report.describe(graph)}")
        return cls(graph, scopes)

    def __eq__(self, other):
        if not isinstance(other, ScopedGraph):
            return NotImplemented
        return self.graph == other.graph and self.scopes == other.scopes


@dataclass(frozen=True)
class PrefixedGraph:
    """A delimiter-free term graph with a valid abstraction-prefix function."""

    graph: TermGraph
    prefixes: dict[int, tuple[int, ...]] = field(hash=False)

    @classmethod
    def checked(cls, graph: TermGraph, prefixes: Mapping) -> "PrefixedGraph":
        prefixes = normalize_prefix_fn(graph, prefixes)
        report = validate_prefix_ho(graph, prefixes)
        if not report.passed:
            raise ValueError(f"invalid prefix function: {report.describe(graph)}")
        return cls(graph, prefixes)

    def __eq__(self, other):
        if not isinstance(other, PrefixedGraph):
            return NotImplemented
        return self.graph == other.graph and self.prefixes == other.prefixes


def binders(h: ScopedGraph, w: int | str) -> list[int]:
    """Abstractions whose scope contains w, outermost first.

    The scopes of the binders of any vertex form a strict inclusion
    chain, so sorting by decreasing scope size linearizes them.
    """
    w = h.graph.resolve(w)
    result = [v for v in h.graph.vertices_labeled(Label.ABS) if w in h.scopes[v]]
    result.sort(key=lambda v: len(h.scopes[v]), reverse=True)
    return result


def check_scope_nesting(h: ScopedGraph) -> ValidationReport:
    """Redundant diagnostic over validate_scope.

    Confirms two derived facts: intersecting scopes nest, and every
    access path of a vertex in a scope visits that scope's abstraction.
    Checked by exhaustive simple-path enumeration; graphs are small.
    """
    g = h.graph
    bad = []
    abs_vertices = g.vertices_labeled(Label.ABS)
    for v1 in abs_vertices:
        for v2 in abs_vertices:
            if v1 < v2 and h.scopes[v1] & h.scopes[v2]:
                if not (
                    h.scopes[v1] <= h.scopes[v2] - {v2}
                    or h.scopes[v2] <= h.scopes[v1] - {v1}
                ):
                    bad.append(Violation("overlap-without-nesting", (v1, v2)))
    for v in abs_vertices:
        for w in h.scopes[v]:
            if w == v:
                continue
            for path in simple_root_paths(g, w):
                if v not in path.vertices:
                    bad.append(Violation("access-path-misses-binder", (v, w)))
                    break
    return ValidationReport(tuple(bad))


def admits_scoping(g: TermGraph) -> bool:
    """Does a delimiter-free graph admit any valid scope function?

    Equivalently, a correct abstraction-prefix function under the relaxed
    (word-prefix) edge conditions.  Diagnostic only: decided by pruned
    exhaustive search, meant for small graphs; the delimited classes have
    the efficient membership test.
    """
    return next(iter(all_scope_functions(g)), None) is not None


def all_scope_functions(g: TermGraph) -> Iterable[ScopeFn]:
    """Enumerate every valid scope function of a small graph (oracle use).

    Candidate scopes are prefiltered per abstraction by the conditions
    that mention a single scope (root membership and edge closedness);
    only their combinations go through the full validator.
    """
    from itertools import product

    abs_vertices = g.vertices_labeled(Label.ABS)
    if not abs_vertices:
        empty: ScopeFn = {}
        if validate_scope(g, empty).passed:
            yield empty
        return
    universe = list(g.vertices())
    edges = list(g.edges())
    per_abs = []
    for v in abs_vertices:
        options = []
        rest = [u for u in universe if u != v]
        for mask in range(1 << len(rest)):
            members = frozenset([v] + [u for i, u in enumerate(rest) if mask >> i & 1])
            if g.root in members - {v}:
                continue
            if any(wk in members - {v} and w not in members for w, _, wk in edges):
                continue
            options.append(members)
        per_abs.append(options)
    for combo in product(*per_abs):
        sc = dict(zip(abs_vertices, combo))
        if validate_scope(g, sc).passed:
            yield sc

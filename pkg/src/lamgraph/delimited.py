"""First-order lambda term graphs with scope-delimiter vertices.

Here the prefix discipline is strict: abstraction and application edges
determine the successor's prefix exactly, and each delimiter vertex pops
exactly one abstraction off the word.  That rigidity makes the correct
prefix function unique, so membership in the class is decidable by
forward propagation from the root.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .core import Label, TermGraph, VariantMismatch
from .scoped import (
    PrefixFn,
    ValidationReport,
    Violation,
    _is_word_prefix,
    _prefix_word_sanity,
    normalize_prefix_fn,
)


def validate_prefix_fo(g: TermGraph, p: Mapping) -> ValidationReport:
    """Check a prefix function against the strict delimiter conditions."""
    if g.variant.del_arity is None:
        raise VariantMismatch("this validator needs a signature with delimiters")
    p = normalize_prefix_fn(g, p)
    bad = _prefix_word_sanity(g, p)
    if p[g.root] != ():
        bad.append(Violation("root", (g.root,)))
    for w, k, wk in g.edges():
        lab = g.labels[w]
        if lab is Label.ABS and p[wk] != p[w] + (w,):
            bad.append(Violation("lambda", (w, wk)))
        elif lab is Label.APP and p[wk] != p[w]:
            bad.append(Violation("apply", (w, wk)))
        elif lab is Label.DEL and k == 0 and (not p[w] or p[wk] != p[w][:-1]):
            # A delimiter pops one entry, so its own word cannot be empty.
            bad.append(Violation("delim-pop", (w, wk)))
        elif lab is Label.DEL and k == 1:
            if g.labels[wk] is not Label.ABS or p[wk] + (wk,) != p[w]:
                bad.append(Violation("delim-backlink", (w, wk)))
    for w in g.vertices_labeled(Label.VAR):
        if p[w] == ():
            bad.append(Violation("var0", (w,)))
        elif g.variant.var_arity == 1:
            w0 = g.args[w][0]
            if g.labels[w0] is not Label.ABS or p[w0] + (w0,) != p[w]:
                bad.append(Violation("var1", (w, w0)))
    return ValidationReport(tuple(bad))


def infer_prefix(
    g: TermGraph, rng: random.Random | None = None
) -> tuple[PrefixFn | None, ValidationReport | None]:
    """Compute the unique correct prefix function, if one exists.

    Propagates the forced prefix values from the root outward; a
    conflict at a join vertex means no correct function exists.  A full
    re-validation pass follows, catching the conditions propagation does
    not use.  ``rng`` shuffles the traversal order; the result is
    order-independent.  Returns (prefixes, None) on success and
    (None, report_or_None) on failure.
    """
    if g.variant.del_arity is None:
        raise VariantMismatch("prefix inference needs a signature with delimiters")
    prefixes: PrefixFn = {g.root: ()}
    worklist = [g.root]
    while worklist:
        if rng is None:
            w = worklist.pop()
        else:
            w = worklist.pop(rng.randrange(len(worklist)))
        pw = prefixes[w]
        lab = g.labels[w]
        forced: list[tuple[int, tuple[int, ...]]] = []
        if lab is Label.ABS:
            forced.append((g.args[w][0], pw + (w,)))
        elif lab is Label.APP:
            forced.append((g.args[w][0], pw))
            forced.append((g.args[w][1], pw))
        elif lab is Label.VAR and g.variant.var_arity == 1:
            if not pw or g.args[w][0] != pw[-1]:
                return None, None
            forced.append((g.args[w][0], pw[:-1]))
        elif lab is Label.DEL:
            if not pw:
                return None, None
            forced.append((g.args[w][0], pw[:-1]))
            if g.variant.del_arity == 2:
                if g.args[w][1] != pw[-1]:
                    return None, None
                forced.append((g.args[w][1], pw[:-1]))
        for target, value in forced:
            if target in prefixes:
                if prefixes[target] != value:
                    return None, None
            else:
                prefixes[target] = value
                worklist.append(target)
    report = validate_prefix_fo(g, prefixes)
    if not report.passed:
        return None, report
    return prefixes, None


def is_lambda_term_graph(g: TermGraph) -> bool:
    """True iff the graph admits a correct abstraction-prefix function."""
    prefixes, _ = infer_prefix(g)
    return prefixes is not None


@dataclass(frozen=True)
class DelimitedGraph:
    """A graph that passed prefix inference, with the prefixes cached."""

    graph: TermGraph
    prefixes: dict[int, tuple[int, ...]] = field(hash=False)

    @classmethod
    def from_graph(cls, graph: TermGraph) -> "DelimitedGraph":
        prefixes, report = infer_prefix(graph)
        if prefixes is None:
            detail = report.describe(graph) if report is not None else "prefix conflict"
            raise ValueError(f"not a valid delimited lambda graph: {detail}")
        return cls(graph, prefixes)

    def __eq__(self, other):
        if not isinstance(other, DelimitedGraph):
            return NotImplemented
        return self.graph == other.graph and self.prefixes == other.prefixes


def is_fully_back_linked(g: DelimitedGraph) -> bool:
    """True iff the last abstraction of every nonempty prefix is reachable.

    Reachability is plain directed reachability, back-link edges included.
    """
    from .core import reachable_from

    for w, word in g.prefixes.items():
        if word and word[-1] not in reachable_from(g.graph, w):
            return False
    return True


def is_eager_scope(g: DelimitedGraph, strict: bool = False) -> bool:
    """Check that every open scope can still reach a use of its variable.

    For each vertex w whose prefix ends with abstraction v there must be
    a path from w to a variable vertex back-linking to v, moving only
    through vertices whose prefixes extend w's.  Delimiter vertices are
    exempt as path sources by default: a delimiter closing a binder with
    no remaining occurrences could never satisfy the condition, and its
    chain target carries its own obligation.  ``strict=True`` quantifies
    over delimiter vertices as well.
    """
    if g.graph.variant.var_arity != 1:
        raise VariantMismatch("eager-scope is defined only with variable back-links")
    graph = g.graph
    for w, word in g.prefixes.items():
        if not word:
            continue
        if graph.labels[w] is Label.DEL and not strict:
            continue
        if not _eager_at(graph, g.prefixes, w, word[-1]):
            return False
    return True


def _eager_at(graph: TermGraph, prefixes: PrefixFn, w: int, v: int) -> bool:
    # Search the region whose prefixes extend prefixes[w] for a variable
    # vertex back-linking to v.  w itself may be that variable.
    base = prefixes[w]
    seen = {w}
    stack = [w]
    while stack:
        u = stack.pop()
        if graph.labels[u] is Label.VAR and graph.args[u] and graph.args[u][0] == v:
            return True
        for t in graph.args[u]:
            if t not in seen and _is_word_prefix(base, prefixes[t]):
                seen.add(t)
                stack.append(t)
    return False

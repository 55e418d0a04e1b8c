"""Downward and upward refinement of class expressions.

The downward operator specializes an expression into strictly-not-more-
general ones, bounded by a target length.  The rule set follows the usual
top-down concept-learning repertoire: walk down the declared hierarchy,
append conjuncts drawn from the one-step specializations of Thing, refine
restriction fillers, and tighten cardinalities.

Determinism contract: for equal inputs the returned sequence is identical.
Candidates are emitted rule by rule, sorted by rendering within each rule;
for conjunctions and disjunctions the replaced operand position forms the
rule, iterated last position first, so refinements that extend the tail of
a conjunction surface before rewrites of its head.
"""

from __future__ import annotations

from dataclasses import dataclass

from .expr import (
    And,
    Bottom,
    ClassExpression,
    Exists,
    ForAll,
    MaxCard,
    MinCard,
    Named,
    Not,
    Or,
    TOP,
    Top,
    length,
    render,
)
from .reasoner import ClassHierarchy


@dataclass(frozen=True)
class RefinementConfig:
    use_negation: bool = True
    use_all_restriction: bool = True
    use_cardinality: bool = True
    max_cardinality: int = 3

    def __post_init__(self):
        if self.max_cardinality < 1:
            raise ValueError("max_cardinality must be >= 1")


DEFAULT_CONFIG = RefinementConfig()


def refine_down(
    ce: ClassExpression,
    max_length: int,
    hierarchy: ClassHierarchy,
    cfg: RefinementConfig = DEFAULT_CONFIG,
) -> list[ClassExpression]:
    """All one-step specializations of *ce* with length <= *max_length*."""
    if max_length < 1:
        raise ValueError("max_length must be >= 1")
    return [r for r in _rho(ce, hierarchy, cfg) if length(r) <= max_length]


def _sorted_rule(items) -> list[ClassExpression]:
    return sorted(items, key=render)


def _rho_top(hierarchy: ClassHierarchy, cfg: RefinementConfig) -> list[ClassExpression]:
    out: list[ClassExpression] = []
    out.extend(_sorted_rule(Named(c) for c in hierarchy.top_level))
    if cfg.use_negation:
        out.extend(_sorted_rule(Not(Named(c)) for c in hierarchy.leaves))
    out.extend(_sorted_rule(Exists(p, TOP) for p in hierarchy.properties))
    if cfg.use_all_restriction:
        out.extend(_sorted_rule(ForAll(p, TOP) for p in hierarchy.properties))
    if cfg.use_cardinality and cfg.max_cardinality >= 2:
        out.extend(_sorted_rule(MinCard(2, p, TOP) for p in hierarchy.properties))
    return out


def _with_conjunct(ce: ClassExpression, extras) -> list[ClassExpression]:
    return _sorted_rule(And((ce, d)) for d in extras)


def _rho(ce: ClassExpression, hierarchy: ClassHierarchy, cfg: RefinementConfig) -> list[ClassExpression]:
    if isinstance(ce, Top):
        return _rho_top(hierarchy, cfg)
    if isinstance(ce, Bottom):
        return []
    if isinstance(ce, Named):
        out = _sorted_rule(Named(c) for c in hierarchy.direct_sub.get(ce.iri, ()))
        out.extend(_with_conjunct(ce, _rho_top(hierarchy, cfg)))
        return out
    if isinstance(ce, Not):
        out: list[ClassExpression] = []
        if cfg.use_negation and isinstance(ce.arg, Named):
            out.extend(
                _sorted_rule(Not(Named(c)) for c in hierarchy.direct_sup.get(ce.arg.iri, ()))
            )
        out.extend(_with_conjunct(ce, _rho_top(hierarchy, cfg)))
        return out
    if isinstance(ce, Exists):
        out = _sorted_rule(Exists(ce.prop, f) for f in _rho(ce.filler, hierarchy, cfg))
        out.extend(_with_conjunct(ce, _rho_top(hierarchy, cfg)))
        if cfg.use_cardinality and cfg.max_cardinality >= 2:
            out.append(MinCard(2, ce.prop, ce.filler))
        return out
    if isinstance(ce, ForAll):
        out = _sorted_rule(ForAll(ce.prop, f) for f in _rho(ce.filler, hierarchy, cfg))
        out.extend(_with_conjunct(ce, _rho_top(hierarchy, cfg)))
        return out
    if isinstance(ce, MinCard):
        out = _sorted_rule(MinCard(ce.n, ce.prop, f) for f in _rho(ce.filler, hierarchy, cfg))
        if ce.n + 1 <= cfg.max_cardinality:
            out.append(MinCard(ce.n + 1, ce.prop, ce.filler))
        return out
    if isinstance(ce, MaxCard):
        # counting fewer successors makes <= easier, so specializing a max
        # restriction means generalizing its filler
        out = _sorted_rule(MaxCard(ce.n, ce.prop, f) for f in refine_up(ce.filler, hierarchy))
        if ce.n >= 1:
            out.append(MaxCard(ce.n - 1, ce.prop, ce.filler))
        return out
    if isinstance(ce, (And, Or)):
        kind = type(ce)
        out = []
        for i in range(len(ce.args) - 1, -1, -1):
            group = []
            for rep in _rho(ce.args[i], hierarchy, cfg):
                group.append(_splice(kind, ce.args, i, rep))
            out.extend(_sorted_rule(group))
        return out
    raise TypeError(f"not a class expression: {ce!r}")


def _splice(kind, args: tuple, i: int, rep: ClassExpression) -> ClassExpression:
    parts: list[ClassExpression] = []
    for j, a in enumerate(args):
        if j != i:
            parts.append(a)
        elif isinstance(rep, kind):
            parts.extend(rep.args)
        else:
            parts.append(rep)
    return kind(tuple(parts))


def refine_up(ce: ClassExpression, hierarchy: ClassHierarchy) -> list[ClassExpression]:
    """One-step generalizations; the dual operator, not used by the search."""
    if isinstance(ce, (Top, Bottom)):
        return []
    if isinstance(ce, Named):
        sups = _sorted_rule(Named(c) for c in hierarchy.direct_sup.get(ce.iri, ()))
        if ce.iri in hierarchy.top_level:
            sups.append(TOP)
        return sups
    if isinstance(ce, Not):
        if isinstance(ce.arg, Named):
            return _sorted_rule(Not(Named(c)) for c in hierarchy.direct_sub.get(ce.arg.iri, ()))
        return []
    if isinstance(ce, Exists):
        return _sorted_rule(Exists(ce.prop, f) for f in refine_up(ce.filler, hierarchy))
    if isinstance(ce, ForAll):
        return _sorted_rule(ForAll(ce.prop, f) for f in refine_up(ce.filler, hierarchy))
    if isinstance(ce, MinCard):
        out = _sorted_rule(MinCard(ce.n, ce.prop, f) for f in refine_up(ce.filler, hierarchy))
        if ce.n > 1:
            out.append(MinCard(ce.n - 1, ce.prop, ce.filler))
        else:
            out.append(Exists(ce.prop, ce.filler))
        return out
    if isinstance(ce, MaxCard):
        # dual of the downward rule: relax the bound; the filler would have
        # to be specialized, which the upward walk does not attempt
        out = [MaxCard(ce.n + 1, ce.prop, ce.filler)]
        return out
    if isinstance(ce, And):
        out = []
        for i in range(len(ce.args) - 1, -1, -1):
            rest = ce.args[:i] + ce.args[i + 1:]
            out.append(rest[0] if len(rest) == 1 else And(rest))
        return out
    if isinstance(ce, Or):
        out = []
        for i in range(len(ce.args) - 1, -1, -1):
            group = [_splice(Or, ce.args, i, rep) for rep in refine_up(ce.args[i], hierarchy)]
            out.extend(_sorted_rule(group))
        return out
    raise TypeError(f"not a class expression: {ce!r}")

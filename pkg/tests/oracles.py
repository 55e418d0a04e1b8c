"""Independent brute-force oracles for cross-checking the reasoner.

These deliberately avoid the reasoner's materialized sets: membership is
decided per individual by walking the raw assertion and axiom sets, with
the subclass closure recomputed from the axioms on every call chain.
"""

from __future__ import annotations

from dlforest.expr import (
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
    Top,
)
from dlforest.model import LearningProblem, Ontology


def _subclasses_transitive(o: Ontology, cls: str) -> set[str]:
    below = {cls}
    frontier = [cls]
    while frontier:
        c = frontier.pop()
        for sub, sup in o.subclass_axioms:
            if sup == c and sub not in below:
                below.add(sub)
                frontier.append(sub)
    return below


def member(o: Ontology, ind: str, ce: ClassExpression) -> bool:
    """One-individual recursive closed-world membership check."""
    if isinstance(ce, Top):
        return True
    if isinstance(ce, Bottom):
        return False
    if isinstance(ce, Named):
        classes = _subclasses_transitive(o, ce.iri)
        return any((ind, c) in o.class_assertions for c in classes)
    if isinstance(ce, Not):
        return not member(o, ind, ce.arg)
    if isinstance(ce, And):
        return all(member(o, ind, a) for a in ce.args)
    if isinstance(ce, Or):
        return any(member(o, ind, a) for a in ce.args)
    successors = [
        obj for (subj, prop, obj) in o.property_assertions
        if subj == ind and prop == ce.prop
    ]
    if isinstance(ce, Exists):
        return any(member(o, s, ce.filler) for s in successors)
    if isinstance(ce, ForAll):
        return all(member(o, s, ce.filler) for s in successors)
    hits = sum(1 for s in successors if member(o, s, ce.filler))
    if isinstance(ce, MinCard):
        return hits >= ce.n
    if isinstance(ce, MaxCard):
        return hits <= ce.n
    raise TypeError(f"not a class expression: {ce!r}")


def brute_instances(o: Ontology, ce: ClassExpression) -> frozenset[str]:
    return frozenset(i for i in o.individuals if member(o, i, ce))


def brute_confusion(
    o: Ontology, lp: LearningProblem, ce: ClassExpression
) -> tuple[int, int, int, int]:
    """(tp, fp, tn, fn) by looping over every example individually."""
    tp = fp = tn = fn = 0
    for ind in lp.positives:
        if member(o, ind, ce):
            tp += 1
        else:
            fn += 1
    for ind in lp.negatives:
        if member(o, ind, ce):
            fp += 1
        else:
            tn += 1
    return tp, fp, tn, fn

"""In-memory ontology representation.

An :class:`Ontology` is an immutable bag of named classes, object
properties, individuals and the axioms/assertions relating them.  Instances
are validated on construction paths (parser, fixtures) via
:func:`validate_ontology`; after that they are safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

ClassId = str
PropertyId = str
IndividualId = str

DEFAULT_PREFIX = "http://example.org/onto#"
DEFAULT_ONTOLOGY_IRI = "http://example.org/onto"


class OntologyError(Exception):
    """Base class for ontology loading and validation failures."""


class UndeclaredEntityError(OntologyError):
    pass


class SubclassCycleError(OntologyError):
    pass


class DuplicateDeclarationError(OntologyError):
    pass


@dataclass(frozen=True)
class Ontology:
    classes: frozenset[ClassId]
    properties: frozenset[PropertyId]
    individuals: frozenset[IndividualId]
    subclass_axioms: frozenset[tuple[ClassId, ClassId]] = frozenset()
    disjoint_axioms: frozenset[frozenset[ClassId]] = frozenset()
    class_assertions: frozenset[tuple[IndividualId, ClassId]] = frozenset()
    property_assertions: frozenset[tuple[IndividualId, PropertyId, IndividualId]] = frozenset()
    iri: str = DEFAULT_ONTOLOGY_IRI
    prefix: str = DEFAULT_PREFIX


def validate_ontology(o: Ontology) -> Ontology:
    """Check referential integrity and subclass acyclicity; return *o*.

    Raises :class:`UndeclaredEntityError` if an axiom or assertion mentions
    an entity that was never declared, and :class:`SubclassCycleError` if
    the declared subclass relation has a cycle among named classes.
    """
    for sub, sup in o.subclass_axioms:
        _require(sub in o.classes, "class", sub)
        _require(sup in o.classes, "class", sup)
    for group in o.disjoint_axioms:
        for c in group:
            _require(c in o.classes, "class", c)
    for ind, cls in o.class_assertions:
        _require(ind in o.individuals, "individual", ind)
        _require(cls in o.classes, "class", cls)
    for subj, prop, obj in o.property_assertions:
        _require(subj in o.individuals, "individual", subj)
        _require(prop in o.properties, "object property", prop)
        _require(obj in o.individuals, "individual", obj)
    cycle = _find_subclass_cycle(o)
    if cycle is not None:
        raise SubclassCycleError(
            "subclass axioms form a cycle: " + " -> ".join(cycle)
        )
    return o


def _require(ok: bool, kind: str, name: str) -> None:
    if not ok:
        raise UndeclaredEntityError(f"undeclared {kind}: {name}")


def _find_subclass_cycle(o: Ontology) -> list[str] | None:
    sups: dict[str, set[str]] = {}
    for sub, sup in o.subclass_axioms:
        sups.setdefault(sub, set()).add(sup)
    WHITE, GREY, BLACK = 0, 1, 2
    color = dict.fromkeys(o.classes, WHITE)
    stack: list[str] = []

    def visit(c: str) -> list[str] | None:
        color[c] = GREY
        stack.append(c)
        for s in sorted(sups.get(c, ())):
            if color[s] == GREY:
                i = stack.index(s)
                return stack[i:] + [s]
            if color[s] == WHITE:
                found = visit(s)
                if found:
                    return found
        stack.pop()
        color[c] = BLACK
        return None

    for c in sorted(o.classes):
        if color[c] == WHITE:
            found = visit(c)
            if found:
                return found
    return None


@dataclass(frozen=True)
class LearningProblem:
    """Positive and negative example individuals for one learning task."""

    positives: frozenset[IndividualId]
    negatives: frozenset[IndividualId]


def validate_learning_problem(lp: LearningProblem, o: Ontology) -> LearningProblem:
    if not lp.positives or not lp.negatives:
        raise ValueError("positive and negative example sets must be nonempty")
    if lp.positives & lp.negatives:
        raise ValueError("positive and negative example sets overlap")
    for ind in lp.positives | lp.negatives:
        if ind not in o.individuals:
            raise UndeclaredEntityError(f"undeclared individual: {ind}")
    return lp

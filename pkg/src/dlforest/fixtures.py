"""Built-in test ontologies and randomized generators.

The university fixture is a small non-disjoint-classes world: students and
university employees overlap, two people additionally sit in a research
program, and those two are the positive examples.  Its metric trail is
pinned by tests (accuracy 0.6 for Student alone, 0.8 with the conjunction,
1.0 once the program restriction is added).

The random generators produce seeded ontologies, expressions and example
splits for the property suites.
"""

from __future__ import annotations

import random

from .expr import (
    And,
    BOTTOM,
    ClassExpression,
    Exists,
    ForAll,
    MaxCard,
    MinCard,
    Named,
    Not,
    Or,
    TOP,
)
from .model import LearningProblem, Ontology, validate_ontology

UNI = "http://example.org/uni#"


def build_fixture() -> tuple[Ontology, LearningProblem]:
    """The university ontology with its learning problem.

    4 classes, 2 object properties, 11 individuals.  Positives: alice and
    bob (student + employee + in a program).  Negatives: carol (student +
    employee, no program), dave (student only), eve (employee only).
    dave and eve do sit in programs, so no restriction shorter than the
    three-conjunct target separates the examples.
    """
    student = UNI + "Student"
    employee = UNI + "UniversityEmployee"
    program = UNI + "ResearchProgram"
    university = UNI + "University"
    in_program = UNI + "inProgram"
    works_for = UNI + "worksFor"

    people = ["alice", "bob", "carol", "dave", "eve"]
    programs = ["prog_ai", "prog_bio", "prog_cs"]
    universities = ["uni_north", "uni_south", "uni_west"]
    ind = {n: UNI + n for n in people + programs + universities}

    class_assertions = set()
    for n in ["alice", "bob", "carol", "dave"]:
        class_assertions.add((ind[n], student))
    for n in ["alice", "bob", "carol", "eve"]:
        class_assertions.add((ind[n], employee))
    for n in programs:
        class_assertions.add((ind[n], program))
    for n in universities:
        class_assertions.add((ind[n], university))

    property_assertions = {
        (ind["alice"], in_program, ind["prog_ai"]),
        (ind["bob"], in_program, ind["prog_bio"]),
        (ind["dave"], in_program, ind["prog_ai"]),
        (ind["eve"], in_program, ind["prog_cs"]),
        (ind["alice"], works_for, ind["uni_north"]),
        (ind["bob"], works_for, ind["uni_south"]),
        (ind["carol"], works_for, ind["uni_north"]),
        (ind["eve"], works_for, ind["uni_south"]),
    }

    o = validate_ontology(
        Ontology(
            classes=frozenset({student, employee, program, university}),
            properties=frozenset({in_program, works_for}),
            individuals=frozenset(ind.values()),
            class_assertions=frozenset(class_assertions),
            property_assertions=frozenset(property_assertions),
            iri="http://example.org/uni",
            prefix=UNI,
        )
    )
    lp = LearningProblem(
        positives=frozenset({ind["alice"], ind["bob"]}),
        negatives=frozenset({ind["carol"], ind["dave"], ind["eve"]}),
    )
    return o, lp


BIRD = "http://example.org/birds#"


def build_bird_ontology() -> Ontology:
    """Tiny flat ontology for refinement-operator examples."""
    bird = BIRD + "Bird"
    aquatic = BIRD + "Aquatic"
    fly = BIRD + "Fly"
    carnivore = BIRD + "Carnivore"
    has_feature = BIRD + "hasFeature"
    sparrow = BIRD + "sparrow"
    penguin = BIRD + "penguin"
    flying = BIRD + "flying"
    return validate_ontology(
        Ontology(
            classes=frozenset({bird, aquatic, fly, carnivore}),
            properties=frozenset({has_feature}),
            individuals=frozenset({sparrow, penguin, flying}),
            class_assertions=frozenset(
                {
                    (sparrow, bird),
                    (penguin, bird),
                    (penguin, aquatic),
                    (flying, fly),
                }
            ),
            property_assertions=frozenset({(sparrow, has_feature, flying)}),
            iri="http://example.org/birds",
            prefix=BIRD,
        )
    )


def random_ontology(
    rng: random.Random,
    n_classes: int = 6,
    n_properties: int = 2,
    n_individuals: int = 20,
    subclass_prob: float = 0.4,
    assertion_rate: float = 2.0,
    link_rate: float = 1.5,
    prefix: str = "http://example.org/rand#",
) -> Ontology:
    """A seeded random ontology with an acyclic subclass forest."""
    classes = [f"{prefix}C{i}" for i in range(n_classes)]
    props = [f"{prefix}r{i}" for i in range(n_properties)]
    inds = [f"{prefix}i{i}" for i in range(n_individuals)]
    subclass = set()
    for i in range(1, n_classes):
        if rng.random() < subclass_prob:
            # parents only among earlier classes keeps the relation acyclic
            subclass.add((classes[i], classes[rng.randrange(i)]))
    class_assertions = set()
    for _ in range(int(assertion_rate * n_individuals)):
        class_assertions.add((rng.choice(inds), rng.choice(classes)))
    property_assertions = set()
    if props:
        for _ in range(int(link_rate * n_individuals)):
            property_assertions.add(
                (rng.choice(inds), rng.choice(props), rng.choice(inds))
            )
    return validate_ontology(
        Ontology(
            classes=frozenset(classes),
            properties=frozenset(props),
            individuals=frozenset(inds),
            subclass_axioms=frozenset(subclass),
            class_assertions=frozenset(class_assertions),
            property_assertions=frozenset(property_assertions),
            iri=prefix.rstrip("#"),
            prefix=prefix,
        )
    )


def random_expression(rng: random.Random, o: Ontology, depth: int = 3) -> ClassExpression:
    """A seeded random class expression over the ontology's vocabulary."""
    classes = sorted(o.classes)
    props = sorted(o.properties)
    atoms = [TOP, BOTTOM] + [Named(c) for c in classes]
    if depth <= 0 or not props or rng.random() < 0.3:
        return rng.choice(atoms)
    kind = rng.randrange(6)
    if kind == 0:
        return Not(random_expression(rng, o, depth - 1))
    if kind == 1:
        k = rng.randint(2, 3)
        return And(tuple(random_expression(rng, o, depth - 1) for _ in range(k)))
    if kind == 2:
        k = rng.randint(2, 3)
        return Or(tuple(random_expression(rng, o, depth - 1) for _ in range(k)))
    if kind == 3:
        return Exists(rng.choice(props), random_expression(rng, o, depth - 1))
    if kind == 4:
        return ForAll(rng.choice(props), random_expression(rng, o, depth - 1))
    if rng.random() < 0.5:
        return MinCard(rng.randint(1, 3), rng.choice(props), random_expression(rng, o, depth - 1))
    return MaxCard(rng.randint(0, 3), rng.choice(props), random_expression(rng, o, depth - 1))


def random_learning_problem(rng: random.Random, o: Ontology) -> LearningProblem:
    """A random disjoint nonempty positive/negative split."""
    inds = sorted(o.individuals)
    rng.shuffle(inds)
    n_pos = rng.randint(1, max(1, len(inds) // 2))
    n_neg = rng.randint(1, max(1, len(inds) - n_pos - 1)) if len(inds) - n_pos > 1 else 1
    return LearningProblem(
        positives=frozenset(inds[:n_pos]),
        negatives=frozenset(inds[n_pos:n_pos + n_neg]),
    )

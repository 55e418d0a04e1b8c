"""Class expression learning over ontologies.

Learns description-logic concepts from positive/negative examples with a
single-tree best-first search or its forest-mixing variant (multiple trees
plus a shared conjunction pool).  Ships a parser for an OWL
functional-syntax subset, a closed-world reasoner with a compiled bitset
kernel, and a seeded benchmark generator.
"""

from .benchgen import GeneratedTest, apply_noise, generate_test
from .expr import (
    And,
    BOTTOM,
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
    canonical_form,
    conjoin,
    length,
    named_classes,
    render,
)
from .heuristics import (
    Fh1Weights,
    Ht1Weights,
    NodeStats,
    score_fh1,
    score_ht1,
    score_oe,
)
from .metrics import Evaluation, evaluate, pos_cov
from .model import LearningProblem, Ontology
from .ofn import parse_ontology, serialize_ontology
from .reasoner import instances_of, materialize
from .refinement import RefinementConfig, refine_down, refine_up
from .search import (
    FmParams,
    RunReport,
    SearchNode,
    SearchTree,
    SharedPool,
    find_starting_classes,
    maybe_share_conjunction,
    run_celoe,
    run_fm,
)

__version__ = "0.1.0"

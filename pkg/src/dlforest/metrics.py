"""Evaluation of class expressions against a learning problem.

All measures are computed over the example sets only: predictive accuracy
is (tp + tn) / (tp + tn + fp + fn), F1 is 2*tp / (2*tp + fp + fn) with the
convention that an expression covering nothing scores 0, and positive
coverage is tp / |positives|.
"""

from __future__ import annotations

from dataclasses import dataclass

from .expr import ClassExpression
from .model import LearningProblem
from .reasoner import MaterializedExtensions, instances_of


@dataclass(frozen=True)
class Evaluation:
    tp: int
    fp: int
    tn: int
    fn: int
    accuracy: float
    f1: float
    pos_cov: float


def evaluate(
    ce: ClassExpression, lp: LearningProblem, ext: MaterializedExtensions
) -> Evaluation:
    covered = instances_of(ce, ext)
    tp = len(lp.positives & covered)
    fp = len(lp.negatives & covered)
    fn = len(lp.positives) - tp
    tn = len(lp.negatives) - fp
    accuracy = (tp + tn) / (tp + tn + fp + fn)
    denom = 2 * tp + fp + fn
    f1 = 2 * tp / denom if denom else 0.0
    return Evaluation(
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
        accuracy=accuracy,
        f1=f1,
        pos_cov=tp / len(lp.positives),
    )


def pos_cov(
    ce: ClassExpression, lp: LearningProblem, ext: MaterializedExtensions
) -> float:
    """Fraction of positive examples that are instances of *ce*."""
    covered = instances_of(ce, ext)
    return len(lp.positives & covered) / len(lp.positives)

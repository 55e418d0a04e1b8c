"""Node scoring for the search loops.

Three scorers are provided: the classic expansion-penalty heuristic used by
single-tree search (``oe``), a variant that rewards children of
low-branching parents (``ht1``), and an F1-band scorer with a depth penalty
(``fh1``).  All are pure functions of :class:`NodeStats`.
"""

from __future__ import annotations

from dataclasses import dataclass


class ContractViolation(ValueError):
    """A scorer was called with stats outside its stated domain."""


@dataclass(frozen=True)
class NodeStats:
    """Snapshot of one search node, as consumed by the scorers.

    ``horiz`` is the node's horizontal expansion (at least the expression
    length), ``refin`` the number of children attached so far, and
    ``refin_parent`` the parent's child count at scoring time.
    """

    acc: float
    f1: float
    horiz: int
    refin: int
    is_root: bool
    acc_parent: float | None = None
    refin_parent: int = 0


@dataclass(frozen=True)
class Ht1Weights:
    start_bonus: float = 0.7
    beta: float = 0.1  # expansion penalty
    gamma: float = 0.01  # refinement-count penalty
    delta: float = 0.3  # accuracy-gain weight
    epsilon: float = 0.1  # inverse-parent-refinements weight


@dataclass(frozen=True)
class Fh1Weights:
    alpha: float = 0.05  # depth penalty
    beta: float = 1.0  # high-F1 bonus
    gamma: float = 0.5  # low-F1 penalty
    hi: float = 0.8
    lo: float = 0.3

    def __post_init__(self):
        if not (0 <= self.lo < self.hi <= 1):
            raise ValueError("thresholds must satisfy 0 <= lo < hi <= 1")


DEFAULT_HT1 = Ht1Weights()
DEFAULT_FH1 = Fh1Weights()


def score_ht1(s: NodeStats, w: Ht1Weights = DEFAULT_HT1) -> float:
    if s.is_root:
        return w.start_bonus - (s.horiz - 1) * w.beta - s.refin * w.gamma
    if s.refin_parent < 1:
        raise ContractViolation("non-root node with refin_parent = 0")
    return (
        (s.acc - s.acc_parent) * w.delta
        + (1.0 / s.refin_parent) * w.epsilon
        - (s.horiz - 1) * w.beta
        - s.refin * w.gamma
    )


def score_fh1(s: NodeStats, w: Fh1Weights = DEFAULT_FH1) -> float:
    base = -s.horiz * w.alpha
    if s.f1 >= w.hi:
        return base + s.f1 * w.beta
    if s.f1 <= w.lo:
        return base - s.f1 * w.gamma
    return base


def score_oe(s: NodeStats, w: Ht1Weights = DEFAULT_HT1) -> float:
    if s.is_root:
        return w.start_bonus - (s.horiz - 1) * w.beta
    return (
        s.acc
        + (s.acc - s.acc_parent) * w.delta
        - (s.horiz - 1) * w.beta
        - s.refin * w.gamma
    )


SCORERS = {"oe": score_oe, "ht1": score_ht1, "fh1": score_fh1}

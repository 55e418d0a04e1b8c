"""Seeded generation of learning problems from an ontology.

A generated test pairs a target expression of the shape
``ClassA and (r some Thing)`` with sampled positive/negative example sets,
then perturbs both sets: a fraction of each is removed and a fixed number
of examples is swapped between the two sides, which guarantees the target
no longer classifies the examples perfectly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .expr import ClassExpression, Exists, Named, TOP, conjoin, render
from .metrics import evaluate
from .model import LearningProblem, Ontology
from .reasoner import instances_of, materialize


class GenerationError(Exception):
    """No (class, property) pair has enough instances for the request."""


class NoiseError(Exception):
    """Removal or swapping would empty an example set."""


@dataclass(frozen=True)
class GeneratedTest:
    target: ClassExpression
    positives: frozenset[str]
    negatives: frozenset[str]
    seed: int
    noise_ratio: float
    swap_count: int
    target_accuracy: float
    pre_noise_positives: frozenset[str] = frozenset()


def apply_noise(
    positives: frozenset[str],
    negatives: frozenset[str],
    noise_ratio: float,
    swap_count: int,
    seed: int,
) -> tuple[frozenset[str], frozenset[str]]:
    """Remove a ratio of each set, then swap examples between the sides.

    Removal takes ``floor(noise_ratio * |set|)`` uniformly chosen elements
    from each side independently; swapping then moves *swap_count* random
    elements in each direction simultaneously, preserving both cardinality
    and disjointness.
    """
    if swap_count < 0:
        raise ValueError("swap_count must be >= 0")
    rng = random.Random(seed)
    pos = sorted(positives)
    neg = sorted(negatives)
    drop_pos = int(noise_ratio * len(pos))
    drop_neg = int(noise_ratio * len(neg))
    if drop_pos >= len(pos) or drop_neg >= len(neg):
        raise NoiseError("removal would empty an example set")
    for victims, pool in ((rng.sample(pos, drop_pos), pos), (rng.sample(neg, drop_neg), neg)):
        for v in victims:
            pool.remove(v)
    if swap_count > min(len(pos), len(neg)):
        raise NoiseError("swap would empty an example set")
    out_of_pos = rng.sample(pos, swap_count)
    out_of_neg = rng.sample(neg, swap_count)
    new_pos = (set(pos) - set(out_of_pos)) | set(out_of_neg)
    new_neg = (set(neg) - set(out_of_neg)) | set(out_of_pos)
    return frozenset(new_pos), frozenset(new_neg)


def default_swap_count(noise_ratio: float, n_pos: int, n_neg: int) -> int:
    """At least one swap, scaling with the noise ratio."""
    return max(1, int(noise_ratio * min(n_pos, n_neg)))


def generate_test(
    o: Ontology,
    min_pos: int,
    neg_count: int,
    noise_ratio: float = 0.05,
    seed: int = 0,
    swap_count: int | None = None,
) -> GeneratedTest:
    """Find a suitable target and sample a noisy learning problem.

    Candidate (class, property) pairs are scanned in seeded-random order
    without replacement; the first whose intersection
    ``class and (property some Thing)`` has at least *min_pos* instances
    becomes the target.  Deterministic per seed.
    """
    if min_pos < 2:
        raise ValueError("min_pos must be >= 2")
    if len(o.individuals) < min_pos + neg_count:
        raise GenerationError(
            f"ontology has {len(o.individuals)} individuals, "
            f"need at least {min_pos + neg_count}"
        )
    rng = random.Random(seed)
    _, ext = materialize(o)
    pairs = [(c, p) for c in sorted(o.classes) for p in sorted(o.properties)]
    rng.shuffle(pairs)
    for cls, prop in pairs:
        target = conjoin(Named(cls), Exists(prop, TOP))
        extension = sorted(instances_of(target, ext))
        if len(extension) < min_pos:
            continue
        positives = set(rng.sample(extension, min_pos))
        others = sorted(o.individuals - positives)
        if len(others) < neg_count:
            continue
        negatives = set(rng.sample(others, neg_count))
        if swap_count is None:
            swap_count = default_swap_count(noise_ratio, len(positives), len(negatives))
        noisy_pos, noisy_neg = apply_noise(
            frozenset(positives),
            frozenset(negatives),
            noise_ratio,
            swap_count,
            seed=rng.randrange(2**32),
        )
        lp = LearningProblem(positives=noisy_pos, negatives=noisy_neg)
        accuracy = evaluate(target, lp, ext).accuracy
        return GeneratedTest(
            target=target,
            positives=noisy_pos,
            negatives=noisy_neg,
            seed=seed,
            noise_ratio=noise_ratio,
            swap_count=swap_count,
            target_accuracy=accuracy,
            pre_noise_positives=frozenset(positives),
        )
    raise GenerationError(
        f"no (class, property) pair has {min_pos} or more instances"
    )


def sidecar_dict(test: GeneratedTest) -> dict:
    """JSON-ready description of a generated test."""
    return {
        "target": render(test.target),
        "positives": sorted(test.positives),
        "negatives": sorted(test.negatives),
        "seed": test.seed,
        "noise_ratio": test.noise_ratio,
        "swap_count": test.swap_count,
        "target_accuracy": test.target_accuracy,
    }

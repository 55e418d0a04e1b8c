"""Learning loops: single-tree search and forest mixing.

Both algorithms grow search trees of class expressions by repeatedly
selecting the best-scoring node, widening its horizontal expansion by one,
and attaching the unseen refinements as children.  Forest mixing runs
several trees round-robin and additionally maintains a shared pool of
conjunctions built from the best nodes of distinct trees; every tree draws
unseen pool entries before its own refinements, capped per cycle.

The loops are single-threaded and fully deterministic: node selection
breaks score ties by shorter expression then rendering, refinement order is
fixed by the operator, and the only randomness in the system (example
sampling) lives in the benchmark generator.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .expr import (
    ClassExpression,
    Named,
    TOP,
    Top,
    canonical_key,
    conjoin,
    length,
    named_classes,
    render,
)
from .heuristics import (
    DEFAULT_FH1,
    DEFAULT_HT1,
    Fh1Weights,
    Ht1Weights,
    NodeStats,
    score_fh1,
    score_ht1,
    score_oe,
)
from .metrics import Evaluation, evaluate, pos_cov
from .model import LearningProblem, Ontology, validate_learning_problem
from .reasoner import ClassHierarchy, MaterializedExtensions, instances_of, materialize
from .refinement import DEFAULT_CONFIG, RefinementConfig, refine_down


@dataclass
class SearchNode:
    expr: ClassExpression
    eval: Evaluation
    tree_id: int
    parent: SearchNode | None
    origin: str  # "root" | "refinement" | "pool"
    horiz: int
    children: list[SearchNode] = field(default_factory=list)
    gen_max_length: int | None = None  # refinement bound the node was produced under

    @property
    def refin(self) -> int:
        return len(self.children)


@dataclass
class SearchTree:
    root: SearchNode
    tree_id: int
    nodes: list[SearchNode]
    seen: set[str]
    pool_cursor: int = 0
    best: SearchNode | None = None  # best by (accuracy, f1, shorter)


class SharedPool:
    """Append-only list of conjunction-derived expressions.

    Entries always have pairwise-distinct named classes and length below
    the configured bound; duplicates (by canonical form) are rejected.
    """

    def __init__(self):
        self.entries: list[ClassExpression] = []
        self._canon: set[str] = set()

    def __len__(self) -> int:
        return len(self.entries)

    def try_add(self, expr: ClassExpression, max_length: int) -> bool:
        counts = named_classes(expr)
        if any(v > 1 for v in counts.values()):
            return False
        if length(expr) >= max_length:
            return False
        key = canonical_key(expr)
        if key in self._canon:
            return False
        self._canon.add(key)
        self.entries.append(expr)
        return True


@dataclass
class FmParams:
    nb_trees: int = 2
    max_nodes_added_per_tree: int = 5
    max_length: int = 11
    max_exec_ms: int = 10_000
    max_refinements: int = 10_000
    heuristic: str = "ht1"
    start_classes: list[ClassExpression] | None = None
    seed: int = 0
    stop_on_perfect: bool = False
    ht1: Ht1Weights = DEFAULT_HT1
    fh1: Fh1Weights = DEFAULT_FH1
    refinement: RefinementConfig = DEFAULT_CONFIG

    def __post_init__(self):
        if self.nb_trees < 1 or self.max_nodes_added_per_tree < 1 or self.max_length < 1:
            raise ValueError("tree count, node cap and length bound must be >= 1")
        if self.max_exec_ms < 0 or self.max_refinements < 0:
            raise ValueError("budgets must be >= 0")


@dataclass
class RunReport:
    best_expr: ClassExpression
    accuracy: float
    f1: float
    refinement_count: int
    elapsed_ms: int
    algorithm: str
    nb_trees: int
    seed: int
    pool_added: int = 0
    trace: list[str] | None = None
    trees: list[SearchTree] = field(default_factory=list, repr=False)


def find_starting_classes(
    lp: LearningProblem,
    hierarchy: ClassHierarchy,
    ext: MaterializedExtensions,
    nb_trees: int,
    cov_log: list[str] | None = None,
) -> list[ClassExpression]:
    """Most specific classes that still cover every positive example.

    Walks down from Thing; a class is specialized into exactly the children
    that preserve its positive coverage and emitted once no child does.
    If more classes qualify than *nb_trees*, the ones with the smallest
    extensions are kept (ties by rendered name); fewer is allowed.
    """

    def cov_of(ce: ClassExpression) -> float:
        return pos_cov(ce, lp, ext)

    results: list[ClassExpression] = []
    emitted: set[str] = set()
    queue: list[ClassExpression] = [TOP]
    queued: set[str] = {render(TOP)}
    while queue:
        ce = queue.pop(0)
        cov = cov_of(ce)
        if cov_log is not None:
            cov_log.append(f"{render(ce)} cov {cov!r}")
        child_classes = (
            hierarchy.top_level
            if isinstance(ce, Top)
            else hierarchy.direct_sub.get(ce.iri, frozenset())
        )
        keep: list[ClassExpression] = []
        for cls in sorted(child_classes, key=lambda c: render(Named(c))):
            child = Named(cls)
            child_cov = cov_of(child)
            if cov_log is not None:
                cov_log.append(f"{render(child)} cov {child_cov!r}")
            if child_cov == cov:
                keep.append(child)
        if not keep:
            key = render(ce)
            if key not in emitted:
                emitted.add(key)
                results.append(ce)
        else:
            for child in keep:
                key = render(child)
                if key not in queued:
                    queued.add(key)
                    queue.append(child)
    if len(results) > nb_trees:
        results.sort(key=lambda ce: (len(instances_of(ce, ext)), render(ce)))
        results = results[:nb_trees]
    return results


def maybe_share_conjunction(
    current: SearchNode,
    best_of_other_trees: list[SearchNode],
    pool: SharedPool,
    max_length: int,
    trace: list[str] | None = None,
) -> int:
    """Offer conjunctions of *current* with other trees' best nodes.

    A conjunction is built only when the two expressions share no named
    class; the pool itself enforces distinct classes, the length bound and
    canonical uniqueness.  Returns the number of entries appended.
    """
    added = 0
    cur_named = set(named_classes(current.expr))
    for prev in best_of_other_trees:
        if set(named_classes(prev.expr)) & cur_named:
            continue
        conj = conjoin(current.expr, prev.expr)
        if pool.try_add(conj, max_length):
            added += 1
            if trace is not None:
                trace.append(f"REF added from conj: ({render(conj)})")
    return added


class _Engine:
    def __init__(
        self,
        o: Ontology,
        lp: LearningProblem,
        params: FmParams,
        algorithm: str,
        tracing: bool,
    ):
        self.params = params
        self.algorithm = algorithm
        self.lp = validate_learning_problem(lp, o)
        self.hierarchy, self.ext = materialize(o)
        self.trace: list[str] | None = [] if tracing else None
        self.trees: list[SearchTree] = []
        self.pool = SharedPool()
        self.pool_added = 0
        self.refinement_count = 0
        self.best: SearchNode | None = None
        self.done = False
        self._t0 = time.perf_counter()

    # -- plumbing ----------------------------------------------------

    def elapsed_ms(self) -> int:
        return int((time.perf_counter() - self._t0) * 1000)

    def log(self, line: str) -> None:
        if self.trace is not None:
            self.trace.append(line)

    def stats(self, node: SearchNode) -> NodeStats:
        parent = node.parent
        return NodeStats(
            acc=node.eval.accuracy,
            f1=node.eval.f1,
            horiz=node.horiz,
            refin=node.refin,
            is_root=parent is None,
            acc_parent=parent.eval.accuracy if parent else None,
            refin_parent=parent.refin if parent else 0,
        )

    def score(self, node: SearchNode) -> float:
        s = self.stats(node)
        if self.params.heuristic == "ht1":
            return score_ht1(s, self.params.ht1)
        if self.params.heuristic == "fh1":
            return score_fh1(s, self.params.fh1)
        if self.params.heuristic == "oe":
            return score_oe(s, self.params.ht1)
        raise ValueError(f"unknown heuristic {self.params.heuristic!r}")

    def select(self, tree: SearchTree) -> SearchNode:
        best = None
        best_key = None
        for node in tree.nodes:
            key = (-self.score(node), length(node.expr), render(node.expr))
            if best_key is None or key < best_key:
                best, best_key = node, key
        return best

    def log_score_block(self, node: SearchNode) -> None:
        if self.trace is None:
            return
        s = self.stats(node)
        gain = -1.0 if s.is_root else s.acc - s.acc_parent
        self.trace.append(f"Node {render(node.expr)} score calculation : ")
        self.trace.append(f"    Horizontal expansion: {float(s.horiz)!r}")
        self.trace.append(f"    Start node: {(1.0 if s.is_root else 0.0)!r}")
        self.trace.append(f"    Acc gain: {gain!r}")
        self.trace.append(f"    Parent Refinements: {float(s.refin_parent)!r}")
        self.trace.append(f"    Refinements: {float(s.refin)!r}")
        self.trace.append(f"    score: {self.score(node)!r}")

    @staticmethod
    def _better(node: SearchNode, incumbent: SearchNode | None) -> bool:
        if incumbent is None:
            return True
        old = (incumbent.eval.accuracy, incumbent.eval.f1, -length(incumbent.expr))
        new = (node.eval.accuracy, node.eval.f1, -length(node.expr))
        return new > old

    def update_best(self, node: SearchNode) -> None:
        tree = self.trees[node.tree_id]
        if self._better(node, tree.best):
            tree.best = node
        if not self._better(node, self.best):
            return
        self.best = node
        e = node.eval
        self.log(
            f"Best description so far: {render(node.expr)} "
            f"acc: {e.accuracy!r} f-score: {e.f1!r} "
            f"ref: {self.refinement_count} time: {self.elapsed_ms()}"
        )
        if self.params.stop_on_perfect and e.accuracy >= 1.0:
            self.done = True

    def evaluate(self, expr: ClassExpression) -> Evaluation:
        return evaluate(expr, self.lp, self.ext)

    def add_root(self, expr: ClassExpression, tree_id: int) -> SearchTree:
        ev = self.evaluate(expr)
        node = SearchNode(
            expr=expr,
            eval=ev,
            tree_id=tree_id,
            parent=None,
            origin="root",
            horiz=length(expr),
        )
        tree = SearchTree(
            root=node, tree_id=tree_id, nodes=[node], seen={canonical_key(expr)}
        )
        self.trees.append(tree)
        if self.algorithm == "fm":
            self.log(f"{render(expr)} acc: {ev.accuracy!r}")
        self.update_best(node)
        return tree

    def attach(
        self, tree: SearchTree, parent: SearchNode, expr: ClassExpression, origin: str
    ) -> SearchNode:
        ev = self.evaluate(expr)
        node = SearchNode(
            expr=expr,
            eval=ev,
            tree_id=tree.tree_id,
            parent=parent,
            origin=origin,
            horiz=length(expr),
            gen_max_length=parent.horiz if origin == "refinement" else None,
        )
        parent.children.append(node)
        tree.nodes.append(node)
        tree.seen.add(canonical_key(expr))
        if origin == "refinement":
            self.refinement_count += 1
        shown = render(expr) if origin == "refinement" else f"({render(expr)})"
        self.log(f"Selected refinement: {shown} acc: {ev.accuracy!r}")
        self.log("    Node Added")
        self.update_best(node)
        if self.refinement_count >= self.params.max_refinements:
            self.done = True
        return node

    def out_of_budget(self) -> bool:
        return (
            self.refinement_count >= self.params.max_refinements
            or self.elapsed_ms() >= self.params.max_exec_ms
        )

    # -- one scheduling cycle per tree --------------------------------

    def cycle(self, tree: SearchTree) -> None:
        node = self.select(tree)
        self.log_score_block(node)
        node.horiz += 1
        refinements = refine_down(
            node.expr, node.horiz, self.hierarchy, self.params.refinement
        )
        self.log(f"CURRENT TREE WITH ROOT: {render(tree.root.expr)}")
        self.log(f"Current node: {render(node.expr)}, accuracy: {node.eval.accuracy!r}")
        self.log(f"Horizontal Expansion: {node.horiz}")

        cap = None
        if self.algorithm == "fm":
            others = [t.best for t in self.trees if t is not tree and t.best is not None]
            added = maybe_share_conjunction(
                node, others, self.pool, self.params.max_length, self.trace
            )
            self.pool_added += added
            if added == 0:
                self.log("REF added from conj:")
            cap = self.params.max_nodes_added_per_tree

        self.log(
            f"Refinements for node {render(node.expr)}: "
            f"[{', '.join(render(r) for r in refinements)}]"
        )

        attached = 0
        if self.algorithm == "fm":
            while tree.pool_cursor < len(self.pool.entries):
                if self.done or attached >= cap:
                    return
                entry = self.pool.entries[tree.pool_cursor]
                tree.pool_cursor += 1
                if canonical_key(entry) in tree.seen:
                    continue
                self.attach(tree, node, entry, origin="pool")
                attached += 1
        for r in refinements:
            if self.done or (cap is not None and attached >= cap):
                return
            if canonical_key(r) in tree.seen:
                continue
            self.attach(tree, node, r, origin="refinement")
            attached += 1

    # -- top level -----------------------------------------------------

    def run(self) -> RunReport:
        while not self.done and not self.out_of_budget():
            for tree in self.trees:
                if self.done or self.out_of_budget():
                    break
                self.cycle(tree)
        best = self.best
        e = best.eval
        self.log(
            f"Finished: best {render(best.expr)} acc: {e.accuracy!r} "
            f"f-score: {e.f1!r} ref: {self.refinement_count} time: {self.elapsed_ms()}"
        )
        return RunReport(
            best_expr=best.expr,
            accuracy=e.accuracy,
            f1=e.f1,
            refinement_count=self.refinement_count,
            elapsed_ms=self.elapsed_ms(),
            algorithm=self.algorithm,
            nb_trees=len(self.trees),
            seed=self.params.seed,
            pool_added=self.pool_added,
            trace=self.trace,
            trees=self.trees,
        )


def run_celoe(
    o: Ontology, lp: LearningProblem, params: FmParams, tracing: bool = False
) -> RunReport:
    """Single-tree search from the given start class (or Thing)."""
    engine = _Engine(o, lp, params, algorithm="celoe", tracing=tracing)
    engine.log('Running algorithm instance "alg" (CELOE)')
    start = params.start_classes[0] if params.start_classes else TOP
    engine.add_root(start, tree_id=0)
    return engine.run()


def run_fm(
    o: Ontology, lp: LearningProblem, params: FmParams, tracing: bool = False
) -> RunReport:
    """Forest-mixing search over several trees with a shared pool."""
    engine = _Engine(o, lp, params, algorithm="fm", tracing=tracing)
    engine.log('Running algorithm instance "alg" (FM)')
    engine.log("FMA starting")
    if params.start_classes:
        roots = list(params.start_classes)
        engine.log(f"Starting classes: [{', '.join(render(r) for r in roots)}]")
    else:
        engine.log(f"Nb of tree roots to find: {params.nb_trees}")
        cov_log: list[str] = []
        roots = find_starting_classes(
            lp, engine.hierarchy, engine.ext, params.nb_trees, cov_log
        )
        engine.log(", ".join(cov_log))
        engine.log(
            f"{len(roots)} trees found with roots: "
            f"[{', '.join(render(r) for r in roots)}]"
        )
    for i, root in enumerate(roots):
        engine.add_root(root, tree_id=i)
    return engine.run()

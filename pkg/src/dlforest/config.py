"""Run configuration files.

Flat ``section.key = value`` lines, one per line; ``#`` starts a comment.
Values are quoted strings, numbers, booleans, or brace lists of entity
references (``{ :alice, :bob }``).  Entity references use the ontology's
default prefix (``:name``), a full IRI in angle brackets, or the bare word
``Thing`` for the top class in ``alg.startClasses``.

Recognized keys::

    ks.file                      ontology path (relative to the config file)
    lp.positiveExamples          brace list of individuals
    lp.negativeExamples          brace list of individuals
    alg.type                     "celoe" | "fm"            (default fm)
    alg.heuristic                "oe" | "ht1" | "fh1"      (default ht1)
    alg.nbTrees                  int                        (default 2)
    alg.maxNodesAddedPerTree     int                        (default 5)
    alg.maxLength                int                        (default 11)
    alg.maxExecutionTimeSeconds  int                        (default 10)
    alg.maxRefinements           int                        (default 10000)
    alg.startClasses             brace list of classes      (default auto)
    alg.seed                     int                        (default 0)
    alg.stopOnPerfect            true | false               (default false)
    h.startBonus h.beta h.gamma h.delta h.epsilon           scorer weights
    h.alpha h.f1Hi h.f1Lo                                   band-scorer weights
    op.useNegation op.useAllRestriction op.useCardinality   operator toggles
    op.maxCardinality            int                        (default 3)
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

from .expr import ClassExpression, Named, TOP
from .heuristics import DEFAULT_FH1, DEFAULT_HT1, Fh1Weights, Ht1Weights
from .model import Ontology, UndeclaredEntityError
from .refinement import DEFAULT_CONFIG, RefinementConfig
from .search import FmParams


class ConfigError(ValueError):
    """Malformed configuration file."""

    def __init__(self, message: str, path: str | Path = "", line: int = 0):
        where = f"{path}:{line}: " if line else ""
        super().__init__(f"{where}{message}")


@dataclass
class RunConfig:
    ontology_path: Path
    positives: list[str] = field(default_factory=list)
    negatives: list[str] = field(default_factory=list)
    algorithm: str = "fm"
    heuristic: str = "ht1"
    nb_trees: int = 2
    max_nodes_added_per_tree: int = 5
    max_length: int = 11
    max_exec_seconds: int = 10
    max_refinements: int = 10_000
    start_classes: list[str] = field(default_factory=list)
    seed: int = 0
    stop_on_perfect: bool = False
    ht1: Ht1Weights = DEFAULT_HT1
    fh1: Fh1Weights = DEFAULT_FH1
    refinement: RefinementConfig = DEFAULT_CONFIG

    def params(self, o: Ontology) -> FmParams:
        """Resolve entity references against *o* and build search params."""
        starts = [resolve_class(tok, o) for tok in self.start_classes]
        return FmParams(
            nb_trees=self.nb_trees,
            max_nodes_added_per_tree=self.max_nodes_added_per_tree,
            max_length=self.max_length,
            max_exec_ms=self.max_exec_seconds * 1000,
            max_refinements=self.max_refinements,
            heuristic=self.heuristic,
            start_classes=starts or None,
            seed=self.seed,
            stop_on_perfect=self.stop_on_perfect,
            ht1=self.ht1,
            fh1=self.fh1,
            refinement=self.refinement,
        )


def resolve_individual(token: str, o: Ontology) -> str:
    iri = _expand(token, o)
    if iri not in o.individuals:
        raise UndeclaredEntityError(f"unresolved individual IRI: {token}")
    return iri


def resolve_class(token: str, o: Ontology) -> ClassExpression:
    if token in ("Thing", "owl:Thing"):
        return TOP
    iri = _expand(token, o)
    if iri not in o.classes:
        raise UndeclaredEntityError(f"unresolved class IRI: {token}")
    return Named(iri)


def _expand(token: str, o: Ontology) -> str:
    if token.startswith("<") and token.endswith(">"):
        return token[1:-1]
    if token.startswith(":"):
        return o.prefix + token[1:]
    return token


_INT_KEYS = {
    "alg.nbTrees": "nb_trees",
    "alg.maxNodesAddedPerTree": "max_nodes_added_per_tree",
    "alg.maxLength": "max_length",
    "alg.maxExecutionTimeSeconds": "max_exec_seconds",
    "alg.maxRefinements": "max_refinements",
    "alg.seed": "seed",
}
_HT1_KEYS = {
    "h.startBonus": "start_bonus",
    "h.beta": "beta",
    "h.gamma": "gamma",
    "h.delta": "delta",
    "h.epsilon": "epsilon",
}
_FH1_KEYS = {"h.alpha": "alpha", "h.f1Hi": "hi", "h.f1Lo": "lo"}
_OP_BOOL_KEYS = {
    "op.useNegation": "use_negation",
    "op.useAllRestriction": "use_all_restriction",
    "op.useCardinality": "use_cardinality",
}


def load_config(path: str | Path) -> RunConfig:
    """Parse a configuration file; unknown keys are errors."""
    path = Path(path)
    cfg = RunConfig(ontology_path=Path(""))
    saw_ontology = False
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", path, lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        try:
            if key == "ks.file":
                cfg.ontology_path = path.parent / _string(value)
                saw_ontology = True
            elif key == "lp.positiveExamples":
                cfg.positives = _brace_list(value)
            elif key == "lp.negativeExamples":
                cfg.negatives = _brace_list(value)
            elif key == "alg.type":
                cfg.algorithm = _choice(_string(value), ("celoe", "fm"))
            elif key == "alg.heuristic":
                cfg.heuristic = _choice(_string(value), ("oe", "ht1", "fh1"))
            elif key == "alg.startClasses":
                cfg.start_classes = _brace_list(value)
            elif key == "alg.stopOnPerfect":
                cfg.stop_on_perfect = _boolean(value)
            elif key in _INT_KEYS:
                setattr(cfg, _INT_KEYS[key], _integer(value))
            elif key in _HT1_KEYS:
                cfg.ht1 = replace(cfg.ht1, **{_HT1_KEYS[key]: _number(value)})
            elif key in _FH1_KEYS:
                cfg.fh1 = replace(cfg.fh1, **{_FH1_KEYS[key]: _number(value)})
            elif key in _OP_BOOL_KEYS:
                cfg.refinement = replace(
                    cfg.refinement, **{_OP_BOOL_KEYS[key]: _boolean(value)}
                )
            elif key == "op.maxCardinality":
                cfg.refinement = replace(cfg.refinement, max_cardinality=_integer(value))
            else:
                raise ConfigError(f"unknown key {key!r}", path, lineno)
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(str(exc), path, lineno) from exc
    if not saw_ontology:
        raise ConfigError("missing required key 'ks.file'", path)
    for name, bound in (
        ("alg.nbTrees", cfg.nb_trees),
        ("alg.maxNodesAddedPerTree", cfg.max_nodes_added_per_tree),
        ("alg.maxLength", cfg.max_length),
    ):
        if bound < 1:
            raise ConfigError(f"{name} must be positive", path)
    return cfg


def _string(value: str) -> str:
    value = value.strip()
    if value.startswith('"') and value.endswith('"') and len(value) >= 2:
        return value[1:-1]
    return value


def _choice(value: str, allowed: tuple[str, ...]) -> str:
    if value not in allowed:
        raise ValueError(f"expected one of {', '.join(allowed)}, got {value!r}")
    return value


def _integer(value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"expected an integer, got {value!r}") from None


def _number(value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ValueError(f"expected a number, got {value!r}") from None


def _boolean(value: str) -> bool:
    v = value.strip().lower()
    if v == "true":
        return True
    if v == "false":
        return False
    raise ValueError(f"expected true or false, got {value!r}")


def _brace_list(value: str) -> list[str]:
    value = value.strip()
    if not (value.startswith("{") and value.endswith("}")):
        raise ValueError(f"expected a brace list, got {value!r}")
    inner = value[1:-1].strip()
    if not inner:
        return []
    return [item.strip() for item in inner.split(",")]

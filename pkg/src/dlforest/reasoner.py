"""Closed-world instance checking.

:func:`materialize` precomputes the declared class hierarchy and per-class
extensions from an ontology; :func:`instances_of` then evaluates arbitrary
class expressions to individual sets.  Absent facts are false: complements
are taken against the full individual set, and universal restrictions hold
vacuously for individuals without successors.

Expression evaluation compiles the AST to a small postfix program executed
by a bitset kernel.  The compiled Cython kernel is used when the extension
module built, otherwise a pure-Python kernel; set ``DLFOREST_PURE=1`` to
force the fallback.  Results are cached per canonical form (LRU).
"""

from __future__ import annotations

import os
import threading
from collections import OrderedDict
from dataclasses import dataclass

from . import _evalpure
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
    Top,
    canonical_key,
)
from .model import Ontology, OntologyError

try:  # compiled kernel is optional
    from . import _evalcore
except ImportError:  # pragma: no cover - depends on the build
    _evalcore = None


class UnknownEntityError(OntologyError):
    """A class expression mentions an entity the ontology does not declare."""


@dataclass(frozen=True)
class ClassHierarchy:
    """Declared subclass structure over named classes."""

    classes: tuple[str, ...]
    properties: tuple[str, ...]
    direct_sub: dict[str, frozenset[str]]
    direct_sup: dict[str, frozenset[str]]
    top_level: frozenset[str]
    leaves: frozenset[str]

    def children(self, cls: str) -> frozenset[str]:
        return self.direct_sub[cls]


class MaterializedExtensions:
    """Per-class instance sets plus successor maps, ready for evaluation.

    Public attributes mirror the closed-world data: ``instances`` maps each
    class to the individuals asserted in it or any transitive subclass,
    ``all_individuals`` is the domain, ``successors`` maps
    ``(individual, property)`` to the asserted objects.
    """

    def __init__(self, o: Ontology, backend: str | None = None, cache_size: int = 100_000):
        inds = sorted(o.individuals)
        classes = sorted(o.classes)
        props = sorted(o.properties)
        self._ind_index = {x: i for i, x in enumerate(inds)}
        self._inds = inds
        self._class_index = {x: i for i, x in enumerate(classes)}
        self._prop_index = {x: i for i, x in enumerate(props)}

        asserted: dict[str, set[str]] = {c: set() for c in classes}
        for ind, cls in o.class_assertions:
            asserted[cls].add(ind)
        subs: dict[str, set[str]] = {c: set() for c in classes}
        for sub, sup in o.subclass_axioms:
            subs[sup].add(sub)

        closure: dict[str, frozenset[str]] = {}

        def close(c: str) -> frozenset[str]:
            if c not in closure:
                acc = set(asserted[c])
                for s in subs[c]:
                    acc |= close(s)
                closure[c] = frozenset(acc)
            return closure[c]

        self.instances: dict[str, frozenset[str]] = {c: close(c) for c in classes}
        self.all_individuals: frozenset[str] = frozenset(inds)
        succ: dict[tuple[str, str], set[str]] = {}
        for subj, prop, obj in o.property_assertions:
            succ.setdefault((subj, prop), set()).add(obj)
        self.successors: dict[tuple[str, str], frozenset[str]] = {
            k: frozenset(v) for k, v in succ.items()
        }

        n = len(inds)
        class_masks = []
        for c in classes:
            m = 0
            for ind in self.instances[c]:
                m |= 1 << self._ind_index[ind]
            class_masks.append(m)
        succ_masks: list[list[tuple[int, int]]] = []
        for p in props:
            rows = []
            for ind in inds:
                objs = succ.get((ind, p))
                if objs:
                    m = 0
                    for obj in objs:
                        m |= 1 << self._ind_index[obj]
                    rows.append((self._ind_index[ind], m))
            succ_masks.append(rows)

        if backend is None:
            backend = "pure" if (_evalcore is None or os.environ.get("DLFOREST_PURE") == "1") else "compiled"
        if backend == "compiled":
            if _evalcore is None:
                raise RuntimeError("compiled kernel requested but not built")
            self._backend = _CompiledBackend(n, class_masks, succ_masks)
        elif backend == "pure":
            self._backend = _evalpure.PureEvalBackend(n, class_masks, succ_masks)
        else:
            raise ValueError(f"unknown backend {backend!r}")

        self._cache: OrderedDict[str, frozenset[str]] = OrderedDict()
        self._cache_size = cache_size
        self._lock = threading.Lock()

    @property
    def backend_name(self) -> str:
        return self._backend.name

    def _compile(self, ce: ClassExpression, out: list[tuple[int, int, int]]) -> None:
        if isinstance(ce, Top):
            out.append((_evalpure.OP_ALL, 0, 0))
        elif isinstance(ce, Bottom):
            out.append((_evalpure.OP_NONE, 0, 0))
        elif isinstance(ce, Named):
            idx = self._class_index.get(ce.iri)
            if idx is None:
                raise UnknownEntityError(f"unknown class: {ce.iri}")
            out.append((_evalpure.OP_CLASS, idx, 0))
        elif isinstance(ce, Not):
            self._compile(ce.arg, out)
            out.append((_evalpure.OP_NOT, 0, 0))
        elif isinstance(ce, (And, Or)):
            for a in ce.args:
                self._compile(a, out)
            op = _evalpure.OP_AND if isinstance(ce, And) else _evalpure.OP_OR
            out.append((op, len(ce.args), 0))
        elif isinstance(ce, (Exists, ForAll, MinCard, MaxCard)):
            pidx = self._prop_index.get(ce.prop)
            if pidx is None:
                raise UnknownEntityError(f"unknown object property: {ce.prop}")
            self._compile(ce.filler, out)
            if isinstance(ce, Exists):
                out.append((_evalpure.OP_EXISTS, pidx, 0))
            elif isinstance(ce, ForAll):
                out.append((_evalpure.OP_FORALL, pidx, 0))
            elif isinstance(ce, MinCard):
                out.append((_evalpure.OP_MINCARD, pidx, ce.n))
            else:
                out.append((_evalpure.OP_MAXCARD, pidx, ce.n))
        else:
            raise TypeError(f"not a class expression: {ce!r}")

    def instance_set(self, ce: ClassExpression) -> frozenset[str]:
        key = canonical_key(ce)
        with self._lock:
            cached = self._cache.get(key)
            if cached is not None:
                self._cache.move_to_end(key)
                return cached
        program: list[tuple[int, int, int]] = []
        self._compile(ce, program)
        mask = self._backend.run(program)
        result = frozenset(self._inds[i] for i in _iter_bits(mask))
        with self._lock:
            self._cache[key] = result
            if len(self._cache) > self._cache_size:
                self._cache.popitem(last=False)
        return result


def _iter_bits(mask: int):
    while mask:
        yield (mask & -mask).bit_length() - 1
        mask &= mask - 1


class _CompiledBackend:
    """Adapter packing programs into arrays for the Cython kernel."""

    name = "compiled"

    def __init__(self, n: int, class_masks: list[int], succ_masks: list[list[tuple[int, int]]]):
        import numpy as np

        self._np = np
        self.n = n
        words = max(1, (n + 63) // 64)
        self._words = words

        def mask_to_row(m: int):
            return np.frombuffer(m.to_bytes(words * 8, "little"), dtype=np.uint64)

        nclasses = max(1, len(class_masks))
        self.class_bits = np.zeros((nclasses, words), dtype=np.uint64)
        for i, m in enumerate(class_masks):
            self.class_bits[i] = mask_to_row(m)
        self.full_mask = mask_to_row((1 << n) - 1).copy()

        nprops = max(1, len(succ_masks))
        self.indptr = np.zeros((nprops, n + 1), dtype=np.int32)
        flat: list[int] = []
        for p, rows in enumerate(succ_masks):
            per_ind: dict[int, list[int]] = {}
            for i, m in rows:
                per_ind[i] = list(_iter_bits(m))
            cursor = len(flat)
            for i in range(n):
                self.indptr[p, i] = cursor
                for t in per_ind.get(i, ()):
                    flat.append(t)
                    cursor += 1
            self.indptr[p, n] = cursor
        self.succ = np.asarray(flat if flat else [0], dtype=np.int32)

    def run(self, program: list[tuple[int, int, int]]) -> int:
        np = self._np
        ops = np.asarray([p[0] for p in program], dtype=np.int32)
        a1 = np.asarray([p[1] for p in program], dtype=np.int32)
        a2 = np.asarray([p[2] for p in program], dtype=np.int32)
        out = _evalcore.evaluate(
            ops, a1, a2, self.class_bits, self.full_mask, self.indptr, self.succ, self.n
        )
        return int.from_bytes(out.tobytes(), "little")


def materialize(
    o: Ontology, backend: str | None = None, cache_size: int = 100_000
) -> tuple[ClassHierarchy, MaterializedExtensions]:
    """Build the class hierarchy and materialized extensions for *o*."""
    classes = tuple(sorted(o.classes))
    props = tuple(sorted(o.properties))
    direct_sub: dict[str, set[str]] = {c: set() for c in classes}
    direct_sup: dict[str, set[str]] = {c: set() for c in classes}
    for sub, sup in o.subclass_axioms:
        direct_sub[sup].add(sub)
        direct_sup[sub].add(sup)
    hierarchy = ClassHierarchy(
        classes=classes,
        properties=props,
        direct_sub={c: frozenset(v) for c, v in direct_sub.items()},
        direct_sup={c: frozenset(v) for c, v in direct_sup.items()},
        top_level=frozenset(c for c in classes if not direct_sup[c]),
        leaves=frozenset(c for c in classes if not direct_sub[c]),
    )
    return hierarchy, MaterializedExtensions(o, backend=backend, cache_size=cache_size)


def instances_of(ce: ClassExpression, ext: MaterializedExtensions) -> frozenset[str]:
    """Individuals satisfying *ce* under the closed-world reading."""
    return ext.instance_set(ce)

"""Class-expression AST and structural utilities.

Expressions are immutable values built from named classes with complement,
conjunction, disjunction, quantified restrictions and cardinality
restrictions.  They are rendered in a Manchester-like surface syntax
(``Student and (inProgram some Thing)``) which is also the canonical sort
key used for deterministic orderings throughout the learner.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


def local_name(iri: str) -> str:
    """Short display form of an IRI: the part after the last '#' or '/'."""
    for sep in ("#", "/"):
        if sep in iri:
            return iri.rsplit(sep, 1)[1]
    return iri


class ClassExpression:
    """Base class for all expression variants."""

    __slots__ = ()

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {render(self)}>"


@dataclass(frozen=True, repr=False)
class Top(ClassExpression):
    pass


@dataclass(frozen=True, repr=False)
class Bottom(ClassExpression):
    pass


@dataclass(frozen=True, repr=False)
class Named(ClassExpression):
    iri: str


@dataclass(frozen=True, repr=False)
class Not(ClassExpression):
    arg: ClassExpression


@dataclass(frozen=True, repr=False)
class And(ClassExpression):
    args: tuple[ClassExpression, ...]

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("conjunction needs at least two operands")


@dataclass(frozen=True, repr=False)
class Or(ClassExpression):
    args: tuple[ClassExpression, ...]

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("disjunction needs at least two operands")


@dataclass(frozen=True, repr=False)
class Exists(ClassExpression):
    prop: str
    filler: ClassExpression


@dataclass(frozen=True, repr=False)
class ForAll(ClassExpression):
    prop: str
    filler: ClassExpression


@dataclass(frozen=True, repr=False)
class MinCard(ClassExpression):
    n: int
    prop: str
    filler: ClassExpression

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("min cardinality must be >= 1")


@dataclass(frozen=True, repr=False)
class MaxCard(ClassExpression):
    n: int
    prop: str
    filler: ClassExpression

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("max cardinality must be >= 0")


TOP = Top()
BOTTOM = Bottom()


def length(ce: ClassExpression) -> int:
    """Structural length of an expression.

    Atoms count 1, a complement adds 1, every and/or connective adds 1,
    quantified restrictions count 2 plus the filler, cardinality
    restrictions 3 plus the filler.
    """
    if isinstance(ce, (Top, Bottom, Named)):
        return 1
    if isinstance(ce, Not):
        return 1 + length(ce.arg)
    if isinstance(ce, (And, Or)):
        return sum(length(a) for a in ce.args) + len(ce.args) - 1
    if isinstance(ce, (Exists, ForAll)):
        return 2 + length(ce.filler)
    if isinstance(ce, (MinCard, MaxCard)):
        return 3 + length(ce.filler)
    raise TypeError(f"not a class expression: {ce!r}")


def named_classes(ce: ClassExpression) -> Counter:
    """All named-class occurrences in the expression, with multiplicity."""
    out: Counter = Counter()
    _collect_named(ce, out)
    return out


def _collect_named(ce: ClassExpression, out: Counter) -> None:
    if isinstance(ce, Named):
        out[ce.iri] += 1
    elif isinstance(ce, Not):
        _collect_named(ce.arg, out)
    elif isinstance(ce, (And, Or)):
        for a in ce.args:
            _collect_named(a, out)
    elif isinstance(ce, (Exists, ForAll, MinCard, MaxCard)):
        _collect_named(ce.filler, out)


def conjoin(a: ClassExpression, b: ClassExpression) -> ClassExpression:
    """Flattened conjunction of two expressions, left operand first.

    No simplification happens here: ``conjoin(Top, X)`` is ``Top and X``.
    """
    parts: list[ClassExpression] = []
    for side in (a, b):
        if isinstance(side, And):
            parts.extend(side.args)
        else:
            parts.append(side)
    return And(tuple(parts))


def render(ce: ClassExpression) -> str:
    """Manchester-like surface syntax, bit-exact as used in traces."""
    if isinstance(ce, Top):
        return "Thing"
    if isinstance(ce, Bottom):
        return "Nothing"
    if isinstance(ce, Named):
        return local_name(ce.iri)
    if isinstance(ce, Not):
        return f"not ({render(ce.arg)})"
    if isinstance(ce, And):
        return " and ".join(_operand(a) for a in ce.args)
    if isinstance(ce, Or):
        return " or ".join(_operand(a) for a in ce.args)
    if isinstance(ce, Exists):
        return f"{local_name(ce.prop)} some {_operand(ce.filler)}"
    if isinstance(ce, ForAll):
        return f"{local_name(ce.prop)} only {_operand(ce.filler)}"
    if isinstance(ce, MinCard):
        return f">= {ce.n} {local_name(ce.prop)}.{_operand(ce.filler)}"
    if isinstance(ce, MaxCard):
        return f"<= {ce.n} {local_name(ce.prop)}.{_operand(ce.filler)}"
    raise TypeError(f"not a class expression: {ce!r}")


def _operand(ce: ClassExpression) -> str:
    if isinstance(ce, (Top, Bottom, Named)):
        return render(ce)
    return f"({render(ce)})"


def canonical_form(ce: ClassExpression) -> ClassExpression:
    """Normal form used for duplicate detection.

    Negation normal form (complements pushed to atoms), nested and/or
    flattened, operands sorted by rendering, exact duplicate operands
    dropped.  Idempotent.
    """
    return _canon(_nnf(ce))


def _nnf(ce: ClassExpression) -> ClassExpression:
    if isinstance(ce, (Top, Bottom, Named)):
        return ce
    if isinstance(ce, And):
        return And(tuple(_nnf(a) for a in ce.args))
    if isinstance(ce, Or):
        return Or(tuple(_nnf(a) for a in ce.args))
    if isinstance(ce, Exists):
        return Exists(ce.prop, _nnf(ce.filler))
    if isinstance(ce, ForAll):
        return ForAll(ce.prop, _nnf(ce.filler))
    if isinstance(ce, MinCard):
        return MinCard(ce.n, ce.prop, _nnf(ce.filler))
    if isinstance(ce, MaxCard):
        return MaxCard(ce.n, ce.prop, _nnf(ce.filler))
    # complement: push inward
    arg = ce.arg
    if isinstance(arg, Top):
        return BOTTOM
    if isinstance(arg, Bottom):
        return TOP
    if isinstance(arg, Named):
        return ce
    if isinstance(arg, Not):
        return _nnf(arg.arg)
    if isinstance(arg, And):
        return Or(tuple(_nnf(Not(a)) for a in arg.args))
    if isinstance(arg, Or):
        return And(tuple(_nnf(Not(a)) for a in arg.args))
    if isinstance(arg, Exists):
        return ForAll(arg.prop, _nnf(Not(arg.filler)))
    if isinstance(arg, ForAll):
        return Exists(arg.prop, _nnf(Not(arg.filler)))
    if isinstance(arg, MinCard):
        # closed world: not(>= n) == <= n-1
        return MaxCard(arg.n - 1, arg.prop, _nnf(arg.filler))
    if isinstance(arg, MaxCard):
        return MinCard(arg.n + 1, arg.prop, _nnf(arg.filler))
    raise TypeError(f"not a class expression: {arg!r}")


def _canon(ce: ClassExpression) -> ClassExpression:
    if isinstance(ce, (Top, Bottom, Named, Not)):
        return ce
    if isinstance(ce, (And, Or)):
        kind = type(ce)
        flat: list[ClassExpression] = []
        for a in ce.args:
            c = _canon(a)
            if isinstance(c, kind):
                flat.extend(c.args)
            else:
                flat.append(c)
        flat.sort(key=render)
        dedup: list[ClassExpression] = []
        for c in flat:
            if not dedup or c != dedup[-1]:
                dedup.append(c)
        if len(dedup) == 1:
            return dedup[0]
        return kind(tuple(dedup))
    if isinstance(ce, Exists):
        return Exists(ce.prop, _canon(ce.filler))
    if isinstance(ce, ForAll):
        return ForAll(ce.prop, _canon(ce.filler))
    if isinstance(ce, MinCard):
        return MinCard(ce.n, ce.prop, _canon(ce.filler))
    if isinstance(ce, MaxCard):
        return MaxCard(ce.n, ce.prop, _canon(ce.filler))
    raise TypeError(f"not a class expression: {ce!r}")


def canonical_key(ce: ClassExpression) -> str:
    """Rendering of the canonical form; the duplicate-detection key."""
    return render(canonical_form(ce))

"""Parser and serializer for an OWL functional-style-syntax subset.

Supported document shape (``#`` starts a comment, whitespace between tokens
is free)::

    Prefix(:=<http://example.org/uni#>)
    Ontology(<http://example.org/uni>
      Declaration(Class(:Student))
      Declaration(ObjectProperty(:inProgram))
      Declaration(NamedIndividual(:alice))
      SubClassOf(:Sub :Sup)
      DisjointClasses(:A :B)
      ClassAssertion(:Student :alice)
      ObjectPropertyAssertion(:inProgram :alice :prog)
    )

Data-property declarations and assertions are accepted but ignored with a
warning.  Entity references may use the declared default prefix (``:name``)
or a full IRI in angle brackets.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass

from .model import (
    DEFAULT_ONTOLOGY_IRI,
    DEFAULT_PREFIX,
    DuplicateDeclarationError,
    Ontology,
    OntologyError,
    validate_ontology,
)

log = logging.getLogger(__name__)


class OfnSyntaxError(OntologyError):
    """Syntax error with 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Token:
    kind: str  # keyword | pname | iriref | coloneq | lparen | rparen | eof
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>\#[^\n]*)
    | (?P<iriref><[^<>\s]*>)
    | (?P<coloneq>:=)
    | (?P<pname>:[A-Za-z_][A-Za-z0-9_\-.]*)
    | (?P<keyword>[A-Za-z][A-Za-z0-9]*)
    | (?P<lparen>\()
    | (?P<rparen>\))
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise OfnSyntaxError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, chunk, line, pos - line_start + 1))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.prefix: str | None = None

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message: str, tok: _Token | None = None) -> OfnSyntaxError:
        tok = tok or self.peek()
        return OfnSyntaxError(message, tok.line, tok.column)

    def expect(self, kind: str, what: str) -> _Token:
        t = self.next()
        if t.kind != kind:
            raise self.error(f"expected {what}, found {t.text or 'end of input'!r}", t)
        return t

    def expect_keyword(self, word: str) -> _Token:
        t = self.next()
        if t.kind != "keyword" or t.text != word:
            raise self.error(f"expected {word!r}, found {t.text or 'end of input'!r}", t)
        return t

    def entity(self) -> str:
        """A prefixed name or a full IRI, expanded to the full IRI."""
        t = self.next()
        if t.kind == "pname":
            if self.prefix is None:
                raise self.error("prefixed name used but no Prefix declared", t)
            return self.prefix + t.text[1:]
        if t.kind == "iriref":
            return t.text[1:-1]
        raise self.error(f"expected entity, found {t.text or 'end of input'!r}", t)

    def parse_document(self) -> Ontology:
        while self.peek().kind == "keyword" and self.peek().text == "Prefix":
            self.next()
            self.expect("lparen", "'('")
            self.expect("coloneq", "':='")
            iri = self.expect("iriref", "an IRI").text[1:-1]
            self.expect("rparen", "')'")
            if self.prefix is not None:
                raise self.error("duplicate Prefix declaration")
            self.prefix = iri
        self.expect_keyword("Ontology")
        self.expect("lparen", "'('")
        onto_iri = DEFAULT_ONTOLOGY_IRI
        if self.peek().kind == "iriref":
            onto_iri = self.next().text[1:-1]

        classes: set[str] = set()
        properties: set[str] = set()
        individuals: set[str] = set()
        subclass: set[tuple[str, str]] = set()
        disjoint: set[frozenset[str]] = set()
        class_assertions: set[tuple[str, str]] = set()
        prop_assertions: set[tuple[str, str, str]] = set()

        while True:
            t = self.peek()
            if t.kind == "rparen":
                self.next()
                break
            if t.kind != "keyword":
                raise self.error(
                    f"expected an axiom or ')', found {t.text or 'end of input'!r}", t
                )
            name = t.text
            if name == "Declaration":
                self.next()
                self.expect("lparen", "'('")
                kind_tok = self.expect("keyword", "a declaration kind")
                self.expect("lparen", "'('")
                entity = self.entity()
                self.expect("rparen", "')'")
                self.expect("rparen", "')'")
                if kind_tok.text == "Class":
                    _declare(classes, entity, "class")
                elif kind_tok.text == "ObjectProperty":
                    _declare(properties, entity, "object property")
                elif kind_tok.text == "NamedIndividual":
                    _declare(individuals, entity, "individual")
                elif kind_tok.text == "DataProperty":
                    log.warning("ignoring data property declaration: %s", entity)
                else:
                    raise self.error(
                        f"unsupported declaration kind {kind_tok.text!r}", kind_tok
                    )
            elif name == "SubClassOf":
                self.next()
                self.expect("lparen", "'('")
                sub = self.entity()
                sup = self.entity()
                self.expect("rparen", "')'")
                subclass.add((sub, sup))
            elif name == "DisjointClasses":
                self.next()
                self.expect("lparen", "'('")
                members = [self.entity()]
                while self.peek().kind in ("pname", "iriref"):
                    members.append(self.entity())
                self.expect("rparen", "')'")
                if len(members) < 2:
                    raise self.error("DisjointClasses needs at least two classes", t)
                disjoint.add(frozenset(members))
            elif name == "ClassAssertion":
                self.next()
                self.expect("lparen", "'('")
                cls = self.entity()
                ind = self.entity()
                self.expect("rparen", "')'")
                class_assertions.add((ind, cls))
            elif name == "ObjectPropertyAssertion":
                self.next()
                self.expect("lparen", "'('")
                prop = self.entity()
                subj = self.entity()
                obj = self.entity()
                self.expect("rparen", "')'")
                prop_assertions.add((subj, prop, obj))
            elif name == "DataPropertyAssertion":
                self.next()
                self.expect("lparen", "'('")
                args = []
                while self.peek().kind in ("pname", "iriref", "keyword"):
                    args.append(self.next().text)
                self.expect("rparen", "')'")
                log.warning("ignoring data property assertion: %s", " ".join(args))
            else:
                raise self.error(f"unsupported axiom {name!r}", t)

        tail = self.peek()
        if tail.kind != "eof":
            raise self.error("trailing content after the Ontology block", tail)

        return Ontology(
            classes=frozenset(classes),
            properties=frozenset(properties),
            individuals=frozenset(individuals),
            subclass_axioms=frozenset(subclass),
            disjoint_axioms=frozenset(disjoint),
            class_assertions=frozenset(class_assertions),
            property_assertions=frozenset(prop_assertions),
            iri=onto_iri,
            prefix=self.prefix if self.prefix is not None else DEFAULT_PREFIX,
        )


def _declare(into: set[str], entity: str, kind: str) -> None:
    if entity in into:
        raise DuplicateDeclarationError(f"duplicate {kind} declaration: {entity}")
    into.add(entity)


def parse_ontology(text: str) -> Ontology:
    """Parse a document into a validated :class:`Ontology`.

    Declaration order does not matter; all references are resolved after the
    whole document has been read.
    """
    return validate_ontology(_Parser(text).parse_document())


def _compact(iri: str, prefix: str) -> str:
    if iri.startswith(prefix):
        rest = iri[len(prefix):]
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_\-.]*", rest):
            return ":" + rest
    return f"<{iri}>"


def serialize_ontology(o: Ontology) -> str:
    """Serialize so that ``parse_ontology(serialize_ontology(o)) == o``."""
    c = lambda iri: _compact(iri, o.prefix)
    lines = [f"Prefix(:=<{o.prefix}>)", f"Ontology(<{o.iri}>"]
    for cls in sorted(o.classes):
        lines.append(f"  Declaration(Class({c(cls)}))")
    for prop in sorted(o.properties):
        lines.append(f"  Declaration(ObjectProperty({c(prop)}))")
    for ind in sorted(o.individuals):
        lines.append(f"  Declaration(NamedIndividual({c(ind)}))")
    for sub, sup in sorted(o.subclass_axioms):
        lines.append(f"  SubClassOf({c(sub)} {c(sup)})")
    for group in sorted(o.disjoint_axioms, key=sorted):
        members = " ".join(c(m) for m in sorted(group))
        lines.append(f"  DisjointClasses({members})")
    for ind, cls in sorted(o.class_assertions, key=lambda a: (a[1], a[0])):
        lines.append(f"  ClassAssertion({c(cls)} {c(ind)})")
    for subj, prop, obj in sorted(o.property_assertions, key=lambda a: (a[1], a[0], a[2])):
        lines.append(f"  ObjectPropertyAssertion({c(prop)} {c(subj)} {c(obj)})")
    lines.append(")")
    return "\n".join(lines) + "\n"

"""The quiver-with-relations input language.

Line oriented, '#' starts a comment:

    FIELD Q            or  FIELD GF 5
    NILBOUND 3
    VERTEX 1 2 3
    ARROW a 1 2
    REL b*a - 2*b*c

A relation term is ``[coeff *] arrow {* arrow}`` with ``b*a`` meaning b
after a.  Documents round-trip: parse(print(parse(text))) == parse(text).
"""

import re
from dataclasses import dataclass

from .errors import UnisvarError
from .fields import QQ, FieldError, PrimeField
from .quiver import AlgebraElement, Quiver
from .rewriting import ReductionSystem

_NAME = re.compile(r"^[A-Za-z0-9_]+$")
_COEFF = re.compile(r"^-?\d+(/\d+)?$")


class QuiverSyntaxError(UnisvarError):
    kind = "syntax"

    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line

    def payload(self):
        data = super().payload()
        data["line"] = self.line
        return data


@dataclass(frozen=True)
class RelationTerm:
    """One summand: a coefficient and arrow names in written order."""

    coefficient: object
    arrows: tuple


@dataclass(frozen=True)
class QuiverDocument:
    field: object
    nilbound: int
    vertices: tuple
    arrows: tuple
    relations: tuple

    def to_text(self):
        lines = []
        if self.field.modulus is None:
            lines.append("FIELD Q")
        else:
            lines.append(f"FIELD GF {self.field.modulus}")
        lines.append(f"NILBOUND {self.nilbound}")
        if self.vertices:
            lines.append("VERTEX " + " ".join(self.vertices))
        for name, source, target in self.arrows:
            lines.append(f"ARROW {name} {source} {target}")
        for terms in self.relations:
            lines.append("REL " + _print_relation(self.field, terms))
        return "\n".join(lines) + "\n"

    def build(self):
        """The reduction system presented by this document."""
        quiver = Quiver(self.vertices, self.arrows)
        relations = []
        for terms in self.relations:
            element = AlgebraElement(self.field)
            for term in terms:
                path = quiver.path(tuple(reversed(term.arrows)))
                element = element + AlgebraElement.from_path(
                    self.field, path, term.coefficient
                )
            relations.append(element)
        return ReductionSystem(quiver, relations, self.nilbound, self.field)


def _print_relation(field, terms):
    parts = []
    for position, term in enumerate(terms):
        coeff = term.coefficient
        joiner = ""
        if position > 0:
            if field.modulus is None and coeff < 0:
                joiner, coeff = " - ", -coeff
            else:
                joiner = " + "
        body = "*".join(term.arrows)
        text = field.format(coeff)
        parts.append(joiner + (body if text == "1" else f"{text}*{body}"))
    return "".join(parts)


def parse_quiver_file(text):
    field = None
    nilbound = None
    vertices = []
    arrows = []
    relation_lines = []
    known_vertices = set()
    known_arrows = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0].upper()
        if keyword == "FIELD":
            if field is not None:
                raise QuiverSyntaxError(lineno, "duplicate FIELD declaration")
            field = _parse_field(lineno, tokens[1:])
        elif keyword == "NILBOUND":
            if nilbound is not None:
                raise QuiverSyntaxError(lineno, "duplicate NILBOUND declaration")
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise QuiverSyntaxError(lineno, "expected NILBOUND <integer>")
            nilbound = int(tokens[1])
            if nilbound < 2:
                raise QuiverSyntaxError(lineno, "nilpotency bound must be >= 2")
        elif keyword == "VERTEX":
            if len(tokens) == 1:
                raise QuiverSyntaxError(lineno, "VERTEX needs at least one name")
            for name in tokens[1:]:
                _check_name(lineno, name)
                if name in known_vertices:
                    raise QuiverSyntaxError(lineno, f"duplicate vertex {name}")
                known_vertices.add(name)
                vertices.append(name)
        elif keyword == "ARROW":
            if len(tokens) != 4:
                raise QuiverSyntaxError(lineno, "expected ARROW <name> <src> <tgt>")
            name, source, target = tokens[1:]
            _check_name(lineno, name)
            if _COEFF.match(name):
                # A numeric arrow name would be ambiguous in relation terms.
                raise QuiverSyntaxError(
                    lineno, f"arrow name {name} would parse as a coefficient"
                )
            if name in known_arrows or name in known_vertices:
                raise QuiverSyntaxError(lineno, f"duplicate name {name}")
            for vertex in (source, target):
                if vertex not in known_vertices:
                    raise QuiverSyntaxError(lineno, f"unknown vertex {vertex}")
            known_arrows[name] = (source, target)
            arrows.append((name, source, target))
        elif keyword == "REL":
            relation_lines.append((lineno, tokens[1:]))
        else:
            raise QuiverSyntaxError(lineno, f"unknown keyword {tokens[0]}")
    if field is None:
        raise QuiverSyntaxError(0, "missing FIELD declaration")
    if nilbound is None:
        raise QuiverSyntaxError(0, "missing NILBOUND declaration")
    relations = tuple(
        _parse_relation(lineno, tokens, field, known_arrows)
        for lineno, tokens in relation_lines
    )
    return QuiverDocument(
        field, nilbound, tuple(vertices), tuple(arrows), relations
    )


def _parse_field(lineno, tokens):
    if tokens == ["Q"]:
        return QQ
    if len(tokens) == 2 and tokens[0] == "GF":
        if not tokens[1].isdigit():
            raise QuiverSyntaxError(lineno, f"malformed modulus {tokens[1]}")
        try:
            return PrimeField(int(tokens[1]))
        except FieldError as exc:
            raise QuiverSyntaxError(lineno, str(exc)) from None
    raise QuiverSyntaxError(lineno, "expected FIELD Q or FIELD GF <prime>")


def _check_name(lineno, name):
    if not _NAME.match(name):
        raise QuiverSyntaxError(lineno, f"invalid name {name!r}")


def _parse_relation(lineno, tokens, field, known_arrows):
    if not tokens:
        raise QuiverSyntaxError(lineno, "empty relation")
    sign = field.one
    expect_term = True
    folded = {}
    order = []
    for token in tokens:
        if token in ("+", "-"):
            if expect_term:
                raise QuiverSyntaxError(lineno, f"unexpected {token}")
            sign = field.one if token == "+" else field.neg(field.one)
            expect_term = True
            continue
        if not expect_term:
            raise QuiverSyntaxError(lineno, f"expected + or - before {token}")
        coefficient, arrows = _parse_term(lineno, token, field, known_arrows)
        coefficient = field.mul(sign, coefficient)
        if arrows in folded:
            folded[arrows] = field.add(folded[arrows], coefficient)
        else:
            folded[arrows] = coefficient
            order.append(arrows)
        expect_term = False
    if expect_term:
        raise QuiverSyntaxError(lineno, "relation ends with a dangling sign")
    terms = tuple(
        RelationTerm(folded[arrows], arrows)
        for arrows in order
        if not field.is_zero(folded[arrows])
    )
    if not terms:
        raise QuiverSyntaxError(lineno, "relation is zero")
    _check_uniform(lineno, terms, known_arrows)
    return terms


def _parse_term(lineno, token, field, known_arrows):
    pieces = token.split("*")
    if any(not piece for piece in pieces):
        raise QuiverSyntaxError(lineno, f"malformed term {token!r}")
    coefficient = field.one
    if _COEFF.match(pieces[0]):
        try:
            coefficient = field.parse(pieces[0])
        except FieldError as exc:
            raise QuiverSyntaxError(lineno, str(exc)) from None
        pieces = pieces[1:]
        if not pieces:
            raise QuiverSyntaxError(lineno, f"term {token!r} has no arrows")
    arrows = tuple(pieces)
    for name in arrows:
        if name not in known_arrows:
            raise QuiverSyntaxError(lineno, f"unknown arrow {name}")
    # Written order is 'after': b*a traverses a first.
    for late, early in zip(arrows, arrows[1:]):
        if known_arrows[early][1] != known_arrows[late][0]:
            raise QuiverSyntaxError(
                lineno, f"arrows {late} and {early} do not compose"
            )
    return coefficient, arrows


def _check_uniform(lineno, terms, known_arrows):
    endpoints = set()
    for term in terms:
        source = known_arrows[term.arrows[-1]][0]
        target = known_arrows[term.arrows[0]][1]
        endpoints.add((source, target))
    if len(endpoints) > 1:
        raise QuiverSyntaxError(lineno, "non-uniform relation (mixed endpoints)")


def load_system(text):
    """Parse a document and build its reduction system."""
    document = parse_quiver_file(text)
    return document, document.build()

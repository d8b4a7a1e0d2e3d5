"""Text formats: graph JSON and the element grammar

    element  := term (("+" | "-") term)*
    term     := (rational "*")? mono
    mono     := "[" leg "|" leg "]"
    leg      := vertex-id | edge-id (" " edge-id)*
    rational := "-"? digits ("/" digits)?

Legs list edges range-to-source. The bare element ``0`` is also accepted.
"""

from __future__ import annotations

import json
import os
import re
from fractions import Fraction
from typing import Union

from .algebra import LpaElement, Monomial, make_monomial
from .errors import GraphSyntaxError, UnknownId
from .graph import Graph, LadderGraph, Path, graph_from_json

_RATIONAL = re.compile(r"-?\d+(?:/\d+)?")


def parse_graph(source: str) -> Union[Graph, LadderGraph]:
    """Load a graph from a file path or an inline JSON string."""
    text = source
    if not source.lstrip().startswith("{") and os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphSyntaxError(f"malformed graph JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return graph_from_json(raw)


def parse_leg(text: str, g: Graph) -> Path:
    tokens = text.split()
    if not tokens:
        raise GraphSyntaxError("empty leg")
    if len(tokens) == 1 and tokens[0] in g.vertex_set:
        return g.vertex_path(tokens[0])
    for t in tokens:
        if t not in g.edge:
            raise UnknownId(f"unknown id {t!r}")
    return g.path(tokens)


class _Parser:
    def __init__(self, text: str, g: Graph):
        self.text = text
        self.g = g
        self.i = 0

    def error(self, msg: str) -> GraphSyntaxError:
        return GraphSyntaxError(f"{msg} in element {self.text!r}", 1, self.i + 1)

    def ws(self) -> None:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def term(self) -> tuple[Monomial, Fraction]:
        coeff = Fraction(1)
        self.ws()
        if self.peek() == "-" and self.text[self.i + 1: self.i + 2] == "[":
            self.i += 1
            coeff = Fraction(-1)
        m = _RATIONAL.match(self.text, self.i)
        if m:
            coeff *= Fraction(m.group(0))
            self.i = m.end()
            if self.peek() == "*":
                self.i += 1
        if self.peek() != "[":
            raise self.error("expected '['")
        close = self.text.find("]", self.i)
        if close < 0:
            raise self.error("unterminated monomial")
        body = self.text[self.i + 1: close]
        if body.count("|") != 1:
            raise self.error("monomial needs exactly one '|'")
        left, right = body.split("|")
        self.i = close + 1
        alpha, beta = parse_leg(left, self.g), parse_leg(right, self.g)
        return make_monomial(self.g, alpha, beta), coeff

    def element(self) -> dict[Monomial, Fraction]:
        if self.text.strip() == "0":
            return {}
        raw: dict[Monomial, Fraction] = {}
        sign = 1
        while True:
            mono, c = self.term()
            raw[mono] = raw.get(mono, 0) + sign * c
            op = self.peek()
            if not op:
                return raw
            if op not in "+-":
                raise self.error(f"unexpected {op!r}")
            sign = 1 if op == "+" else -1
            self.i += 1


def parse_raw(text: str, g: Graph) -> dict[Monomial, Fraction]:
    """Parse without normalizing (zero coefficients are kept out)."""
    g.require_finite_algebra()
    return {m: c for m, c in _Parser(text, g).element().items() if c}


def parse_element(text: str, g: Graph) -> LpaElement:
    return LpaElement(g, parse_raw(text, g))


def format_leg(p: Path) -> str:
    return " ".join(p.edges) if p.edges else p.rng


def format_monomial(m: Monomial) -> str:
    return f"[{format_leg(m[0])}|{format_leg(m[1])}]"


def format_terms(g: Graph, terms) -> str:
    from .algebra import monomial_key

    items = sorted(terms.items(), key=lambda t: monomial_key(g, t[0]))
    if not items:
        return "0"
    parts = []
    for n, (m, c) in enumerate(items):
        mag = abs(c)
        body = format_monomial(m) if mag == 1 else f"{mag}*{format_monomial(m)}"
        if n == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)


def format_element(x: LpaElement) -> str:
    return format_terms(x.graph, x.terms)

"""Text syntax for MWC rules; the grammar is documented in docs/rule_dsl.md."""
from __future__ import annotations

import re
from typing import Callable, List, Optional

from models import Decision
from services.selection.rules import MwcRule

Predicate = Callable[[str], bool]

_TOKEN = re.compile(
    r"\s*(suffix\([01]*\)|len%\d+==\d+|ones>zeros|zeros>ones|all|none|until|\d+|[&|!()])"
)


def _tokenize(text: str) -> List[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ValueError(f"rule syntax error at column {pos + 1}: {text[pos:pos + 12]!r}")
        tokens.append(match.group(1))
        pos = match.end()
    return tokens


def _atom(token: str) -> Predicate:
    if token == "all":
        return lambda prefix: True
    if token == "none":
        return lambda prefix: False
    if token == "ones>zeros":
        return lambda prefix: 2 * prefix.count("1") > len(prefix)
    if token == "zeros>ones":
        return lambda prefix: 2 * prefix.count("1") < len(prefix)
    if token.startswith("suffix("):
        pattern = token[len("suffix(") : -1]
        return lambda prefix: prefix.endswith(pattern)
    if token.startswith("len%"):
        modulus, remainder = (int(part) for part in token[len("len%") :].split("=="))
        if modulus < 1:
            raise ValueError("len% needs a modulus >= 1")
        return lambda prefix: len(prefix) % modulus == remainder
    raise ValueError(f"unexpected token {token!r}")


class _Parser:
    def __init__(self, tokens: List[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> str:
        token = self.peek()
        if token is None:
            raise ValueError("rule ends unexpectedly")
        if expected is not None and token != expected:
            raise ValueError(f"expected {expected!r}, found {token!r}")
        self.pos += 1
        return token

    def expr(self) -> Predicate:
        terms = [self.term()]
        while self.peek() == "|":
            self.take()
            terms.append(self.term())
        if len(terms) == 1:
            return terms[0]
        return lambda prefix: any(term(prefix) for term in terms)

    def term(self) -> Predicate:
        factors = [self.factor()]
        while self.peek() == "&":
            self.take()
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return lambda prefix: all(factor(prefix) for factor in factors)

    def factor(self) -> Predicate:
        token = self.take()
        if token == "!":
            inner = self.factor()
            return lambda prefix: not inner(prefix)
        if token == "(":
            inner = self.expr()
            self.take(")")
            return inner
        return _atom(token)


def parse_rule(text: str) -> MwcRule:
    """Parse ``expr [until N]`` into an MwcRule."""
    parser = _Parser(_tokenize(text))
    predicate = parser.expr()
    horizon = None
    if parser.peek() == "until":
        parser.take()
        count = parser.take()
        if not count.isdigit():
            raise ValueError(f"until needs a number, found {count!r}")
        horizon = int(count)
    if parser.peek() is not None:
        raise ValueError(f"unexpected trailing token {parser.peek()!r}")

    def decide(prefix: str) -> Decision:
        if horizon is not None and len(prefix) >= horizon:
            return Decision.UNDEFINED
        return Decision.SELECT if predicate(prefix) else Decision.SKIP

    return MwcRule(name=" ".join(text.split()), decide=decide)

import re

from toric_codes.poly import ParseError, Polynomial, PolynomialRing, UnknownVariable

_TOKEN_PATTERN = re.compile(
    r"(?P<space>\s+)|(?P<number>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^()])"
)


class Token:
    """Record info on a lexical token of a polynomial text.

    Parameters
    ----------
    kind
        One of "number", "name", "op" or "end".
    text
        The token text as it appears in the source ("" for the end token).
    offset
        The index of the first character of the token in the source text.

    """

    __slots__ = ("kind", "text", "offset")

    def __init__(self, kind: str, text: str, offset: int) -> None:
        self.kind = kind
        self.text = text
        self.offset = offset

    def __eq__(self, other: object, /) -> bool:
        return type(self) is type(other) and all(
            getattr(self, slot) == getattr(other, slot) for slot in type(self).__slots__
        )

    def __str__(self) -> str:
        return self.text if self.kind != "end" else "end of input"

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(kind='{self.kind}', text='{self.text}', "
            f"offset={self.offset})"
        )


def tokenize(src: str) -> list[Token]:
    """Split a polynomial text into tokens, ending with an "end" token.

    Raises
    ------
    ParseError
        On a character that cannot start any token.

    """
    tokens = []
    pos = 0
    while pos < len(src):
        match = _TOKEN_PATTERN.match(src, pos)
        if match is None:
            raise ParseError(f"Unexpected character '{src[pos]}'", position=pos)
        kind = match.lastgroup
        if kind != "space":
            assert kind is not None
            tokens.append(Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(Token("end", "", len(src)))
    return tokens


class PolynomialParser:
    """Recursive descent parser for polynomial texts.

    The grammar is::

        expr   := ['+'|'-'] term (('+'|'-') term)*
        term   := power ('*' power)*
        power  := atom ['^' nat]
        atom   := nat | name | '(' expr ')'

    Names are the ring variables, plus `a` (the modulus root) over extension fields.
    Integers are reduced into the prime subfield.

    Parameters
    ----------
    ring
        The ring the parsed polynomials belong to.

    """

    def __init__(self, ring: PolynomialRing) -> None:
        self.ring = ring
        self._tokens: list[Token] = []
        self._pos = 0

    def parse(self, src: str) -> Polynomial:
        self._tokens = tokenize(src)
        self._pos = 0
        result = self._expr()
        token = self._peek()
        if token.kind != "end":
            raise ParseError(f"Unexpected '{token}'", position=token.offset)
        return result

    def _peek(self) -> Token:
        return self._tokens[self._pos]

    def _next(self) -> Token:
        token = self._tokens[self._pos]
        self._pos += 1
        return token

    def _accept(self, *ops: str) -> Token | None:
        token = self._peek()
        if token.kind == "op" and token.text in ops:
            self._pos += 1
            return token
        return None

    def _expr(self) -> Polynomial:
        sign = self._accept("+", "-")
        result = self._term()
        if sign is not None and sign.text == "-":
            result = -result
        while (op := self._accept("+", "-")) is not None:
            rhs = self._term()
            result = result + rhs if op.text == "+" else result - rhs
        return result

    def _term(self) -> Polynomial:
        result = self._power()
        while self._accept("*") is not None:
            result = result * self._power()
        return result

    def _power(self) -> Polynomial:
        base = self._atom()
        if self._accept("^") is not None:
            token = self._next()
            if token.kind != "number":
                raise ParseError(
                    f"Expected a natural exponent, got '{token}'", position=token.offset
                )
            return base ** int(token.text)
        return base

    def _atom(self) -> Polynomial:
        token = self._next()
        if token.kind == "number":
            return self.ring.constant(int(token.text))
        if token.kind == "name":
            if token.text in self.ring.var_names:
                return self.ring.var(token.text)
            if token.text == "a" and self.ring.field.k > 1:
                return self.ring.constant(self.ring.field.generator)
            raise UnknownVariable(f"Unknown variable '{token.text}'", token.offset)
        if token.kind == "op" and token.text == "(":
            inner = self._expr()
            closing = self._next()
            if closing.kind != "op" or closing.text != ")":
                raise ParseError(
                    f"Expected ')', got '{closing}'", position=closing.offset
                )
            return inner
        raise ParseError(f"Unexpected '{token}'", position=token.offset)

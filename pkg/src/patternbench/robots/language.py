"""Parser for the cube-robot string language.

A robot is written as a dot-separated sequence of cube terms, blanks, and
parenthesized groups, optionally repeated with a counted star:

    dr_(2,0,0)^(N,B,W) . ba_(1,0,0)^(F,N,W) . di_(0,0,0)^(S,F,W)
    di . ba . fl                      # coordinate-free chain
    (B . ba_(1,1,2)^(N,F,W))*2@(0,0,2)

``kk_(x,y,z)^(F,N,W)`` places a cube of kind ``kk`` with its front/north/
west faces pointing at the given global directions.  ``B`` (or ``B^k``)
marks empty positions, ``#`` starts a line comment, and whitespace is
insignificant.  Stars always carry an explicit repeat count; in
coordinate mode they also carry an ``@(dx,dy,dz)`` translation applied
cumulatively to each copy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

# kind code -> (full name, role); the three symmetric kinds carry no
# orientation label because every face looks the same.
CUBE_KINDS = {
    "di": ("distance", "sense"),
    "br": ("brightness", "sense"),
    "kn": ("knob", "sense"),
    "te": ("temperature", "sense"),
    "ba": ("battery", "think"),
    "bl": ("bluetooth", "think"),
    "pa": ("passive", "think"),
    "bo": ("blocker", "think"),
    "in": ("inverse", "think"),
    "mi": ("minimum", "think"),
    "ma": ("maximum", "think"),
    "th": ("threshold", "think"),
    "ro": ("rotate", "action"),
    "dr": ("drive", "action"),
    "bg": ("bar graph", "action"),
    "sp": ("speaker", "action"),
    "fl": ("flashlight", "action"),
}

SYMMETRIC_KINDS = frozenset({"bo", "in", "pa"})
DIRECTIONS = ("N", "S", "E", "W", "F", "B")

_DIR_VECTORS = {
    "E": (1, 0, 0), "W": (-1, 0, 0),
    "N": (0, 1, 0), "S": (0, -1, 0),
    "F": (0, 0, 1), "B": (0, 0, -1),
}

_AXIS = {"N": "ns", "S": "ns", "E": "ew", "W": "ew", "F": "fb", "B": "fb"}

IDENTITY_ORIENTATION = ("F", "N", "W")


def kind_role(kind: str) -> str:
    return CUBE_KINDS[kind][1]


def orientation_valid(orient: tuple[str, str, str]) -> bool:
    """True when the three directions span three distinct axes."""
    if any(d not in _AXIS for d in orient):
        return False
    return len({_AXIS[d] for d in orient}) == 3


def orientation_right_handed(orient: tuple[str, str, str]) -> bool:
    """True when (front, north, west) forms a right-handed basis."""
    if not orientation_valid(orient):
        return False
    f = _DIR_VECTORS[orient[0]]
    n = _DIR_VECTORS[orient[1]]
    w = _DIR_VECTORS[orient[2]]
    cross = (
        n[1] * w[2] - n[2] * w[1],
        n[2] * w[0] - n[0] * w[2],
        n[0] * w[1] - n[1] * w[0],
    )
    return sum(fi * ci for fi, ci in zip(f, cross)) == 1


class RobotParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class CubeTerm:
    kind: str
    pos: Optional[tuple[int, int, int]] = None
    orient: Optional[tuple[str, str, str]] = None
    loc: tuple[int, int] = (0, 0)


@dataclass(frozen=True)
class BlankTerm:
    count: int = 1
    loc: tuple[int, int] = (0, 0)


@dataclass(frozen=True)
class Group:
    inner: "Node"


@dataclass(frozen=True)
class Sequence:
    items: tuple["Node", ...]


@dataclass(frozen=True)
class Star:
    body: "Node"
    count: int
    translation: Optional[tuple[int, int, int]] = None
    loc: tuple[int, int] = (0, 0)


Node = Union[CubeTerm, BlankTerm, Group, Sequence, Star]
RobotExpr = Node


@dataclass
class _Token:
    type: str   # KIND, B, INT, DIR, punctuation literal
    value: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch in "()._^*@,":
            tokens.append(_Token(ch, ch, line, start_col))
            i += 1
            col += 1
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("INT", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.islower():
            j = i
            while j < n and text[j].islower():
                j += 1
            word = text[i:j]
            if word not in CUBE_KINDS:
                raise RobotParseError(f"unknown cube kind {word!r}", line, start_col)
            tokens.append(_Token("KIND", word, line, start_col))
            col += j - i
            i = j
            continue
        if ch.isupper():
            if ch == "B":
                # 'B' is a blank at term level and the back direction inside
                # an orientation tuple; the parser disambiguates by context.
                tokens.append(_Token("B", ch, line, start_col))
            elif ch in DIRECTIONS:
                tokens.append(_Token("DIR", ch, line, start_col))
            else:
                raise RobotParseError(f"unexpected character {ch!r}", line, start_col)
            i += 1
            col += 1
            continue
        raise RobotParseError(f"unexpected character {ch!r}", line, start_col)
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], text_end: tuple[int, int]):
        self.tokens = tokens
        self.pos = 0
        self.text_end = text_end

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            line, col = self.text_end
            raise RobotParseError("unexpected end of input", line, col)
        self.pos += 1
        return tok

    def expect(self, type_: str) -> _Token:
        tok = self.next()
        if tok.type != type_:
            raise RobotParseError(f"expected {type_!r}, found {tok.value!r}",
                                  tok.line, tok.column)
        return tok

    def parse_expression(self) -> Node:
        seq = self.parse_sequence()
        tok = self.peek()
        if tok is not None:
            if tok.type == ")":
                raise RobotParseError("unbalanced ')'", tok.line, tok.column)
            raise RobotParseError(f"unexpected {tok.value!r}", tok.line, tok.column)
        return seq

    def parse_sequence(self) -> Node:
        items = [self.parse_item()]
        while True:
            tok = self.peek()
            if tok is not None and tok.type == ".":
                self.next()
                items.append(self.parse_item())
            else:
                break
        if len(items) == 1:
            return items[0]
        return Sequence(items=tuple(items))

    def parse_item(self) -> Node:
        node = self.parse_factor()
        tok = self.peek()
        if tok is not None and tok.type == "*":
            star_tok = self.next()
            count_tok = self.peek()
            if count_tok is None or count_tok.type != "INT":
                raise RobotParseError("star requires an explicit count",
                                      star_tok.line, star_tok.column)
            self.next()
            count = int(count_tok.value)
            if count < 0:
                raise RobotParseError("star count must be non-negative",
                                      count_tok.line, count_tok.column)
            translation = None
            nxt = self.peek()
            if nxt is not None and nxt.type == "@":
                self.next()
                translation = self.parse_int_triple()
            node = Star(body=node, count=count, translation=translation,
                        loc=(star_tok.line, star_tok.column))
        return node

    def parse_factor(self) -> Node:
        tok = self.peek()
        if tok is None:
            line, col = self.text_end
            raise RobotParseError("expected a term", line, col)
        if tok.type == "(":
            self.next()
            inner = self.parse_sequence()
            closing = self.peek()
            if closing is None or closing.type != ")":
                raise RobotParseError("unbalanced '('", tok.line, tok.column)
            self.next()
            return Group(inner=inner)
        if tok.type == "B":
            self.next()
            count = 1
            nxt = self.peek()
            if nxt is not None and nxt.type == "^":
                self.next()
                count_tok = self.expect("INT")
                count = int(count_tok.value)
                if count < 1:
                    raise RobotParseError("blank run length must be positive",
                                          count_tok.line, count_tok.column)
            return BlankTerm(count=count, loc=(tok.line, tok.column))
        if tok.type == "KIND":
            return self.parse_cube()
        raise RobotParseError(f"unexpected {tok.value!r}", tok.line, tok.column)

    def parse_cube(self) -> CubeTerm:
        kind_tok = self.expect("KIND")
        kind = kind_tok.value
        pos = None
        orient = None
        tok = self.peek()
        if tok is not None and tok.type == "_":
            self.next()
            pos = self.parse_int_triple()
            tok = self.peek()
        if tok is not None and tok.type == "^":
            # Symmetric kinds are sometimes written with a redundant
            # orientation label; the AST keeps it verbatim and expansion
            # normalizes it away.
            self.next()
            orient = self.parse_dir_triple()
        return CubeTerm(kind=kind, pos=pos, orient=orient,
                        loc=(kind_tok.line, kind_tok.column))

    def parse_int_triple(self) -> tuple[int, int, int]:
        self.expect("(")
        a = int(self.expect("INT").value)
        self.expect(",")
        b = int(self.expect("INT").value)
        self.expect(",")
        c = int(self.expect("INT").value)
        self.expect(")")
        return (a, b, c)

    def parse_dir_triple(self) -> tuple[str, str, str]:
        self.expect("(")
        dirs = []
        for k in range(3):
            tok = self.next()
            if tok.type == "B":
                dirs.append("B")
            elif tok.type == "DIR":
                dirs.append(tok.value)
            else:
                raise RobotParseError(
                    f"expected a direction letter, found {tok.value!r}",
                    tok.line, tok.column)
            if k < 2:
                self.expect(",")
        self.expect(")")
        return tuple(dirs)


def parse(text: str) -> RobotExpr:
    """Parse robot source text into its expression tree.

    An empty (or comment-only) source parses to an empty sequence.
    """
    lines = text.split("\n")
    text_end = (len(lines), len(lines[-1]) + 1)
    tokens = _tokenize(text)
    if not tokens:
        return Sequence(items=())
    return _Parser(tokens, text_end).parse_expression()

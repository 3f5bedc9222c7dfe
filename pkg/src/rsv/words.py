"""Words, identities and the identity DSL.

Words are plain ``str`` objects over the alphabet ``a``..``z``; every helper
here checks that alphabet on entry.  An :class:`Identity` pairs two words.

The DSL::

    file      := line (newline line)*
    identity  := word "=" word
    word      := factor+
    factor    := atom ("^" uint)?
    atom      := var | "(" word ")"

``*`` and whitespace are separators and carry no meaning.
"""

from __future__ import annotations

import string
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

ALPHABET = frozenset(string.ascii_lowercase)

__all__ = [
    "ALPHABET",
    "Identity",
    "ParseError",
    "affixes",
    "check_word",
    "content",
    "is_balanced",
    "is_covered_by_cycles",
    "multiplicity",
    "parse_identities",
    "parse_identity",
    "parse_word",
    "render",
    "render_word",
    "rename",
    "substitute",
    "words_up_to",
]


class ParseError(ValueError):
    """Malformed DSL input; ``pos`` is a 0-based column, ``line`` 1-based."""

    def __init__(self, message: str, pos: int, line: int | None = None):
        self.message = message
        self.pos = pos
        self.line = line
        where = f"line {line}, col {pos + 1}" if line is not None else f"col {pos + 1}"
        super().__init__(f"{where}: {message}")


def check_word(w: str) -> str:
    if not isinstance(w, str) or not w:
        raise ValueError("a word must be a non-empty string")
    bad = set(w) - ALPHABET
    if bad:
        raise ValueError(f"invalid letters in word {w!r}: {''.join(sorted(bad))}")
    return w


@dataclass(frozen=True)
class Identity:
    lhs: str
    rhs: str

    def __post_init__(self):
        check_word(self.lhs)
        check_word(self.rhs)

    @property
    def is_tautology(self) -> bool:
        return self.lhs == self.rhs

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.lhs) | set(self.rhs)))

    def swapped(self) -> Identity:
        return Identity(self.rhs, self.lhs)

    def __str__(self) -> str:
        return render(self)


# -- parsing ---------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r*":
            self.pos += 1

    def peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, msg: str):
        raise ParseError(msg, self.pos)

    def word(self) -> str:
        parts = []
        while True:
            c = self.peek()
            if c in ALPHABET or c == "(":
                parts.append(self.factor())
            else:
                break
        if not parts:
            c = self.peek()
            self.error(f"expected a word, found {c!r}" if c else "expected a word, found end of input")
        return "".join(parts)

    def factor(self) -> str:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            base *= self.uint()
        return base

    def atom(self) -> str:
        c = self.peek()
        if c in ALPHABET:
            self.pos += 1
            return c
        if c == "(":
            self.pos += 1
            inner = self.word()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        self.error(f"unexpected character {c!r}")

    def uint(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if not digits:
            self.error("expected an exponent after '^'")
        if digits[0] == "0":
            raise ParseError("exponent must be a positive integer without leading zeros", start)
        return int(digits)


def _check_ascii(text: str):
    for i, c in enumerate(text):
        if ord(c) > 127:
            raise ParseError(f"non-ASCII character {c!r}", i)


def parse_word(text: str) -> str:
    _check_ascii(text)
    p = _Parser(text)
    w = p.word()
    if p.peek():
        p.error(f"unexpected trailing input {p.peek()!r}")
    return w


def parse_identity(text: str) -> Identity:
    """Parse ``"xyx = (xy)^2 x"`` into a fully expanded :class:`Identity`."""
    _check_ascii(text)
    p = _Parser(text)
    if p.peek() == "=":
        p.error("empty left side")
    lhs = p.word()
    c = p.peek()
    if c != "=":
        p.error(f"unexpected character {c!r}" if c else "expected '='")
    p.pos += 1
    if not p.peek():
        p.error("empty right side")
    rhs = p.word()
    if p.peek():
        p.error(f"unexpected trailing input {p.peek()!r}")
    return Identity(lhs, rhs)


def parse_identities(text: str) -> list[Identity]:
    """Parse an identity file: one identity per line, ``#`` comments, blanks."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            out.append(parse_identity(line))
        except ParseError as e:
            raise ParseError(e.message, e.pos, lineno) from None
    return out


def render_word(w: str) -> str:
    """Canonical printer: runs of one letter are written as powers."""
    check_word(w)
    out = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        out.append(w[i] if j - i == 1 else f"{w[i]}^{j - i}")
        i = j
    return " ".join(out)


def render(identity: Identity) -> str:
    return f"{render_word(identity.lhs)} = {render_word(identity.rhs)}"


# -- syntactic predicates --------------------------------------------------


def content(w: str) -> frozenset[str]:
    return frozenset(check_word(w))


def multiplicity(w: str, v: str) -> int:
    return check_word(w).count(v)


def is_balanced(identity: Identity) -> bool:
    return Counter(identity.lhs) == Counter(identity.rhs)


def substitute(w: str, mapping: Mapping[str, str]) -> str:
    """Replace every letter of ``w`` by its image word."""
    check_word(w)
    missing = sorted(set(w) - set(mapping))
    if missing:
        raise KeyError(f"substitution undefined on {', '.join(missing)}")
    return "".join(check_word(mapping[c]) for c in w)


def rename(identity: Identity, mapping: Mapping[str, str]) -> Identity:
    return Identity(substitute(identity.lhs, mapping), substitute(identity.rhs, mapping))


def affixes(w: str, s: int) -> tuple[str, str]:
    """Return the length-``s`` prefix and suffix of ``w``."""
    check_word(w)
    if not 1 <= s <= len(w):
        raise ValueError(f"affix length {s} out of range 1..{len(w)}")
    return w[:s], w[-s:]


def is_covered_by_cycles(w: str) -> bool:
    """True iff every 2-letter factor of ``w`` sits inside a factor whose
    first and last letters coincide.

    Position ``i, i+1`` is covered exactly when some letter occurs both at or
    before ``i`` and at or after ``i+1``.
    """
    check_word(w)
    if len(w) < 2:
        raise ValueError("covered-by-cycles is defined for words of length > 1")
    seen: set[str] = set()
    suffix_counts = Counter(w)
    for i in range(len(w) - 1):
        seen.add(w[i])
        suffix_counts[w[i]] -= 1
        if not any(suffix_counts[c] > 0 for c in seen):
            return False
    return True


def words_up_to(letters: Iterable[str], max_len: int):
    """All words over ``letters`` of length 1..max_len, shortlex order."""
    letters = list(letters)
    layer = [""]
    for _ in range(max_len):
        layer = [w + c for w in layer for c in letters]
        yield from layer

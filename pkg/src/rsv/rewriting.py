"""Finite semigroup presentations, completed by shortlex Knuth-Bendix.

A relation right-hand side may be the symbol ``0``; the presented semigroup
then has an adjoined absorbing zero and ``0`` behaves as an extra letter that
is smaller than every generator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import FiniteSemigroup, checked
from .caps import DEFAULT_CAPS, CapExceeded, Caps
from .words import ParseError, check_word, parse_word

ZERO = "0"

__all__ = [
    "Presentation",
    "RewritingSystem",
    "ZERO",
    "complete",
    "enumerate_presentation",
    "parse_presentation",
]


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[str, str], ...]
    label: str = "P"

    def __post_init__(self):
        gens = tuple(self.generators)
        rels = tuple((str(u), str(v)) for u, v in self.relations)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relations", rels)
        if not gens or len(set(gens)) != len(gens):
            raise ValueError("generators must be distinct and non-empty")
        for g in gens:
            if len(g) != 1:
                raise ValueError(f"generator {g!r} must be a single letter")
            check_word(g)
        allowed = set(gens)
        for u, v in rels:
            if u == ZERO:
                raise ValueError("0 may only appear as a right-hand side")
            for w in (u, v):
                if w == ZERO:
                    continue
                check_word(w)
                extra = set(w) - allowed
                if extra:
                    raise ValueError(f"relation word {w!r} uses undeclared generators {sorted(extra)}")

    @property
    def has_zero(self) -> bool:
        return any(v == ZERO for _, v in self.relations)


def parse_presentation(text: str, label: str = "P") -> Presentation:
    """Parse the ``gens:`` / ``rels:`` text format.

    Relations are separated by ``;`` or newlines; a chain ``u = v = w`` adds
    ``u = v`` and ``v = w``.  A side consisting of ``0`` is the zero.
    """
    gens: list[str] | None = None
    rel_chunks: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip().lower()
        if sep and key in ("gens", "generators"):
            gens = [g.strip() for g in re.split(r"[,\s]+", rest) if g.strip()]
        elif sep and key in ("rels", "relations"):
            rel_chunks.extend((lineno, c) for c in rest.split(";"))
        elif rel_chunks:
            rel_chunks.extend((lineno, c) for c in line.split(";"))
        else:
            raise ParseError("expected 'gens:' or 'rels:'", 0, lineno)
    if not gens:
        raise ParseError("missing 'gens:' line", 0, 1)
    rels = []
    for lineno, chunk in rel_chunks:
        if not chunk.strip():
            continue
        sides = [s.strip() for s in chunk.split("=")]
        if len(sides) < 2:
            raise ParseError(f"relation {chunk.strip()!r} has no '='", 0, lineno)
        parsed = []
        for s in sides:
            if not s:
                raise ParseError(f"empty side in relation {chunk.strip()!r}", 0, lineno)
            if s == ZERO:
                parsed.append(ZERO)
                continue
            try:
                parsed.append(parse_word(s))
            except ParseError as e:
                raise ParseError(e.message, e.pos, lineno) from None
        for u, v in zip(parsed, parsed[1:]):
            if u == ZERO and v == ZERO:
                continue
            rels.append((v, u) if u == ZERO else (u, v))
    try:
        return Presentation(tuple(gens), tuple(rels), label)
    except ValueError as e:
        raise ParseError(str(e), 0, None) from None


class RewritingSystem:
    """Length-reducing rules ordered by shortlex; ``0`` is the least letter."""

    def __init__(self, alphabet: str):
        self.rank = {c: i for i, c in enumerate(alphabet)}
        self.rules: dict[str, str] = {}

    def key(self, w: str):
        return (len(w), [self.rank[c] for c in w])

    def reduce(self, w: str) -> str:
        changed = True
        while changed:
            changed = False
            for lhs, rhs in self.rules.items():
                if lhs in w:
                    w = w.replace(lhs, rhs)
                    changed = True
        return w

    def is_reduced(self, w: str) -> bool:
        return not any(lhs in w for lhs in self.rules)


def _orient(rs: RewritingSystem, u: str, v: str):
    return (u, v) if rs.key(u) > rs.key(v) else (v, u)


def _critical_pairs(rules: dict[str, str]):
    items = list(rules.items())
    for l1, r1 in items:
        for l2, r2 in items:
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    yield r1 + l2[k:], l1[:-k] + r2
            if l1 != l2:
                i = l1.find(l2)
                while i != -1:
                    yield r1, l1[:i] + r2 + l1[i + len(l2):]
                    i = l1.find(l2, i + 1)


def complete(p: Presentation, caps: Caps = DEFAULT_CAPS) -> RewritingSystem:
    alphabet = (ZERO if p.has_zero else "") + "".join(p.generators)
    rs = RewritingSystem(alphabet)
    pending = list(p.relations)
    if p.has_zero:
        pending.append((ZERO + ZERO, ZERO))
        for g in p.generators:
            pending += [(ZERO + g, ZERO), (g + ZERO, ZERO)]

    def absorb(eqs):
        added = False
        while eqs:
            u, v = eqs.pop()
            u, v = rs.reduce(u), rs.reduce(v)
            if u == v:
                continue
            lhs, rhs = _orient(rs, u, v)
            # rules made redundant by the new left side are re-queued
            for l, r in list(rs.rules.items()):
                if lhs in l:
                    del rs.rules[l]
                    eqs.append((l, r))
            rs.rules[lhs] = rhs
            for l, r in list(rs.rules.items()):
                rs.rules[l] = rs.reduce(r)
            added = True
            if len(rs.rules) > caps.pres_rules:
                raise CapExceeded("pres_rules", caps.pres_rules)
            if len(lhs) > caps.pres_word_length:
                raise CapExceeded("pres_word_length", caps.pres_word_length)
        return added

    absorb(pending)
    while True:
        todo = [(a, b) for a, b in _critical_pairs(rs.rules) if rs.reduce(a) != rs.reduce(b)]
        if not todo:
            return rs
        absorb(todo)


def enumerate_presentation(p: Presentation, caps: Caps = DEFAULT_CAPS, label: str | None = None) -> FiniteSemigroup:
    """The finite semigroup presented by ``p``, elements named by normal forms.

    Raises :class:`CapExceeded` naming the exhausted cap.
    """
    rs = complete(p, caps)
    order: list[str] = []
    index: dict[str, int] = {}

    def intern(w: str) -> int:
        if w not in index:
            if len(w) > caps.pres_word_length:
                raise CapExceeded("pres_word_length", caps.pres_word_length)
            index[w] = len(order)
            order.append(w)
            if len(order) > caps.pres_elements:
                raise CapExceeded("pres_elements", caps.pres_elements)
        return index[w]

    for g in p.generators:
        intern(rs.reduce(g))
    right: dict[int, list[int]] = {}
    i = 0
    while i < len(order):
        w = order[i]
        right[i] = [intern(rs.reduce(w + g)) for g in p.generators]
        i += 1

    def times(a: int, word: str) -> int:
        for c in word:
            a = right[a][p.generators.index(c)] if c != ZERO else index[ZERO]
        return a

    n = len(order)
    table = [[times(a, order[b]) for b in range(n)] for a in range(n)]
    zero = index.get(ZERO)
    S = FiniteSemigroup(label or p.label, order, table, zero)
    return checked(S)

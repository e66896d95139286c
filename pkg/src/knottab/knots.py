"""Free commutative-associative knot-expression algebra.

Knot expressions are built from prime-knot atoms (named ``<crossings>_<index>``,
e.g. ``3_1``) under two connected-sum operations:

* ``*`` (star): alternating crossings of the result drop by 2 per join,
* ``x`` (times): alternating crossings add exactly.

Both operations are commutative and associative, so every expression has a
unique canonical form: same-operation nesting is flattened and children are
kept in a fixed total order.  Equality of canonical forms is plain structural
equality.  All values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

# Prime-knot census by minimal crossing number.  Entries through 8 crossings
# are load-bearing (atom validation, table construction); the higher entries
# only matter when allocating names for deep tables.
PRIME_KNOT_COUNTS = {
    3: 1, 4: 1, 5: 2, 6: 3, 7: 7, 8: 21,
    9: 49, 10: 165, 11: 552, 12: 2176, 13: 9988,
}

# Counts that atom construction actually enforces.
_ENFORCED_MAX_CROSSINGS = 8

STAR_OP = "*"
TIMES_OP = "x"


class ParseError(ValueError):
    """Raised for malformed notation; ``offset`` is the byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True, order=True)
class PrimeKnotId:
    """A prime-knot name: crossing count, table index, and a mirror sign."""

    crossings: int
    index: int
    chirality: int = 1

    def __post_init__(self):
        if self.crossings < 3:
            raise ValueError(f"no prime knots with {self.crossings} crossings")
        if self.index < 1:
            raise ValueError(f"prime-knot index must be >= 1, got {self.index}")
        if self.chirality not in (1, -1):
            raise ValueError(f"chirality must be +1 or -1, got {self.chirality}")
        if self.crossings <= _ENFORCED_MAX_CROSSINGS:
            count = PRIME_KNOT_COUNTS[self.crossings]
            if self.index > count:
                raise ValueError(
                    f"only {count} prime knot(s) with {self.crossings} crossings, "
                    f"got index {self.index}"
                )

    @property
    def name(self) -> str:
        sign = "-" if self.chirality < 0 else ""
        return f"{sign}{self.crossings}_{self.index}"

    def achiral(self) -> "PrimeKnotId":
        return self if self.chirality == 1 else PrimeKnotId(self.crossings, self.index)


class KnotExpr:
    """Base class for canonical knot expressions."""

    __slots__ = ()

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {render(self)}>"


@dataclass(frozen=True, repr=False)
class Atom(KnotExpr):
    id: PrimeKnotId


@dataclass(frozen=True, repr=False)
class Star(KnotExpr):
    parts: tuple[KnotExpr, ...]


@dataclass(frozen=True, repr=False)
class Times(KnotExpr):
    parts: tuple[KnotExpr, ...]


def atom(crossings: int, index: int, chirality: int = 1) -> Atom:
    """Canonical atom for the prime knot ``<crossings>_<index>``."""
    return Atom(PrimeKnotId(crossings, index, chirality))


def _sort_key(k: KnotExpr):
    # Atoms first (by crossings, index, mirror-last), then times nodes, then
    # star nodes, composites ordered by their canonical text.
    if isinstance(k, Atom):
        i = k.id
        return (0, i.crossings, i.index, 0 if i.chirality > 0 else 1, "")
    if isinstance(k, Times):
        return (1, 0, 0, 0, render(k))
    return (2, 0, 0, 0, render(k))


def _merge(cls, items: Iterable[KnotExpr]) -> KnotExpr:
    parts: list[KnotExpr] = []
    for item in items:
        if isinstance(item, cls):
            parts.extend(item.parts)
        else:
            parts.append(item)
    if not parts:
        raise ValueError("operation node needs at least one operand")
    if len(parts) == 1:
        return parts[0]
    return cls(tuple(sorted(parts, key=_sort_key)))


def star(a: KnotExpr, b: KnotExpr) -> KnotExpr:
    """Connected sum with the crossing-dropping rule (canonical star-merge)."""
    return _merge(Star, (a, b))


def times(a: KnotExpr, b: KnotExpr) -> KnotExpr:
    """Connected sum with the additive crossing rule (canonical times-merge)."""
    return _merge(Times, (a, b))


def star_all(items: Iterable[KnotExpr]) -> KnotExpr:
    return _merge(Star, items)


def times_all(items: Iterable[KnotExpr]) -> KnotExpr:
    return _merge(Times, items)


def star_power(base: KnotExpr, n: int) -> KnotExpr:
    """n-fold star product of ``base`` (n >= 1)."""
    if n < 1:
        raise ValueError("star_power needs n >= 1")
    return base if n == 1 else star_all([base] * n)


def normalize(tree: KnotExpr) -> KnotExpr:
    """Canonicalize an arbitrary term tree.

    Flattens same-operation nesting, sorts children into the canonical order
    and collapses single-child operation nodes.  Idempotent; rejects empty
    operation nodes.
    """
    if isinstance(tree, Atom):
        return tree
    if isinstance(tree, (Star, Times)):
        cls = type(tree)
        return _merge(cls, (normalize(p) for p in tree.parts))
    raise TypeError(f"not a knot expression: {tree!r}")


@lru_cache(maxsize=None)
def render(k: KnotExpr) -> str:
    """Canonical notation: children joined by the node's operator symbol,
    composite children always parenthesized."""
    if isinstance(k, Atom):
        return k.id.name
    op = STAR_OP if isinstance(k, Star) else TIMES_OP
    out = []
    for part in k.parts:
        text = render(part)
        out.append(text if isinstance(part, Atom) else f"({text})")
    return op.join(out)


def alt_crossings(k: KnotExpr) -> int:
    """Alternating-crossing count: atoms contribute their crossing number,
    star joins lose 2 each, times joins add exactly."""
    if isinstance(k, Atom):
        return k.id.crossings
    total = sum(alt_crossings(p) for p in k.parts)
    if isinstance(k, Star):
        total -= 2 * (len(k.parts) - 1)
    return total


def star_factors(k: KnotExpr) -> list[KnotExpr]:
    """The unique star-factorization: a star node yields its children, any
    other expression is star-irreducible and yields itself."""
    if isinstance(k, Star):
        return list(k.parts)
    return [k]


def is_times_rooted(k: KnotExpr) -> bool:
    return isinstance(k, Times)


def contains_times(k: KnotExpr) -> bool:
    if isinstance(k, Times):
        return True
    if isinstance(k, Star):
        return any(contains_times(p) for p in k.parts)
    return False


def atoms_of(k: KnotExpr) -> Iterator[Atom]:
    if isinstance(k, Atom):
        yield k
    else:
        for part in k.parts:
            yield from atoms_of(part)


# --- notation parser ------------------------------------------------------

_TOK_ATOM = "atom"
_TOK_OP = "op"
_TOK_LPAREN = "("
_TOK_RPAREN = ")"
_TOK_END = "end"


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "(":
            tokens.append((_TOK_LPAREN, c, i))
            i += 1
        elif c == ")":
            tokens.append((_TOK_RPAREN, c, i))
            i += 1
        elif c == STAR_OP or c == TIMES_OP:
            tokens.append((_TOK_OP, c, i))
            i += 1
        elif c == "-" or c.isdigit():
            start = i
            if c == "-":
                i += 1
            if i >= n or not text[i].isdigit():
                raise ParseError("expected digits after '-'", start)
            while i < n and text[i].isdigit():
                i += 1
            if i >= n or text[i] != "_":
                raise ParseError("prime-knot name needs '_'", start)
            i += 1
            if i >= n or not text[i].isdigit():
                raise ParseError("prime-knot name needs an index", start)
            while i < n and text[i].isdigit():
                i += 1
            tokens.append((_TOK_ATOM, text[start:i], start))
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    tokens.append((_TOK_END, "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse_expr(self) -> KnotExpr:
        factors = [self.parse_factor()]
        op_char = None
        while self.peek()[0] == _TOK_OP:
            kind, char, offset = self.advance()
            if op_char is None:
                op_char = char
            elif char != op_char:
                raise ParseError(
                    "mixed '*' and 'x' at one level need parentheses", offset
                )
            factors.append(self.parse_factor())
        if op_char is None:
            return factors[0]
        cls = Star if op_char == STAR_OP else Times
        return _merge(cls, factors)

    def parse_factor(self) -> KnotExpr:
        kind, value, offset = self.advance()
        if kind == _TOK_LPAREN:
            inner = self.parse_expr()
            kind, _, off2 = self.advance()
            if kind != _TOK_RPAREN:
                raise ParseError("expected ')'", off2)
            return inner
        if kind == _TOK_ATOM:
            return self._make_atom(value, offset)
        raise ParseError(f"expected a knot name or '(', got {value!r}", offset)

    def _make_atom(self, name: str, offset: int) -> Atom:
        chirality = 1
        body = name
        if body.startswith("-"):
            chirality = -1
            body = body[1:]
        crossings_text, index_text = body.split("_")
        try:
            return atom(int(crossings_text), int(index_text), chirality)
        except ValueError as exc:
            raise ParseError(f"unknown prime knot {name!r}: {exc}", offset) from None


def parse(text: str) -> KnotExpr:
    """Parse notation text into a canonical expression.

    Raises :class:`ParseError` (with byte offset) for malformed input,
    including mixed unparenthesized operators and unknown atom names.
    """
    parser = _Parser(text)
    expr = parser.parse_expr()
    kind, value, offset = parser.peek()
    if kind != _TOK_END:
        raise ParseError(f"trailing input {value!r}", offset)
    return expr


# --- prime-knot catalog ---------------------------------------------------


@dataclass(frozen=True)
class KnotCatalog:
    """Ordered census of prime knots by crossing number."""

    counts: dict[int, int] = field(default_factory=lambda: dict(PRIME_KNOT_COUNTS))

    def count(self, crossings: int) -> int:
        return self.counts.get(crossings, 0)

    def names(self, crossings: int) -> list[str]:
        return [f"{crossings}_{i}" for i in range(1, self.count(crossings) + 1)]

    def iter_atoms(self) -> Iterator[Atom]:
        """All catalogued prime knots in (crossings, index) order."""
        for crossings in sorted(self.counts):
            for index in range(1, self.counts[crossings] + 1):
                yield atom(crossings, index)


CATALOG = KnotCatalog()

TREFOIL = atom(3, 1)

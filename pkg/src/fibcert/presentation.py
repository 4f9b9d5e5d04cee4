"""Group presentations, their parsing, and free abelianizations.

Two source forms are accepted:

    raag { a, b, z; a-z, b-z }
    pres { a, t | t a t^-1 a^-2 } rewriting { t a t^-1 -> a a; ... }

A raag block lists generators, then commutation edges; the commutator
relators are synthesized and a trace-group normal-form engine attached.
A pres block lists generators and relators and requires a user-supplied
rewriting system (which may be empty only for free groups, where free
reduction alone is already confluent).

GroupPresentation doubles as the arithmetic context for words: normal
forms, products, inverses, and the abelianization map all live here.
Presentations derived by Reidemeister-Schreier carry engine=None; they
support abelianization but not normal forms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .engines import RaagEngine, RewritingEngine
from .errors import EngineError, ParseError
from .words import (
    EMPTY,
    Word,
    exponent_vector,
    format_word,
    free_reduce,
    invert_word,
    parse_word,
    shortlex_key,
    validate_word,
)

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Abelianization:
    """Free abelianization data: G -> Z^rank with recorded torsion.

    projection has shape rank x n_gens; alpha(word) is the image of the
    word's exponent vector, killing relators and torsion.
    """

    n_gens: int
    rank: int
    torsion: tuple[int, ...]
    projection: tuple[tuple[int, ...], ...]

    def alpha(self, word: Word) -> tuple[int, ...]:
        vec = exponent_vector(word, self.n_gens)
        return tuple(sum(r * v for r, v in zip(row, vec)) for row in self.projection)


class GroupPresentation:
    """A finitely presented group with an attached normal-form engine."""

    def __init__(self, generators, relators, engine, source: str | None = None):
        generators = tuple(generators)
        if not generators:
            raise ParseError("a presentation needs at least one generator")
        seen = set()
        for g in generators:
            if not _NAME.match(g):
                raise ParseError(f"invalid generator name {g!r}")
            if g in seen:
                raise ParseError(f"duplicate generator {g!r}")
            seen.add(g)
        self.generators = generators
        self.relators = tuple(tuple(r) for r in relators)
        for r in self.relators:
            validate_word(r, len(generators))
        if engine is not None and getattr(engine, "n_gens", None) != len(generators):
            raise EngineError("engine alphabet does not match the generator set")
        self.engine = engine
        self.source = source
        self._abelianization: Abelianization | None = None

    @property
    def n_gens(self) -> int:
        return len(self.generators)

    @property
    def is_raag(self) -> bool:
        return isinstance(self.engine, RaagEngine)

    # -- word arithmetic ------------------------------------------------

    def nf_word(self, word: Word) -> Word:
        if self.engine is None:
            raise EngineError(
                "presentation has no normal-form engine (derived subgroup "
                "presentations support abelianization only)"
            )
        return self.engine.normal_form(tuple(word))

    def normal_form(self, item) -> "GroupElement":
        word = item.word if isinstance(item, GroupElement) else tuple(item)
        return GroupElement(self.nf_word(word), self)

    def element(self, word) -> "GroupElement":
        return self.normal_form(tuple(word))

    def identity(self) -> "GroupElement":
        return GroupElement(EMPTY, self)

    def generator(self, i: int) -> "GroupElement":
        return self.normal_form((i + 1,))

    def mul_words(self, a: Word, b: Word) -> Word:
        return self.nf_word(tuple(a) + tuple(b))

    def inv_word(self, a: Word) -> Word:
        return self.nf_word(invert_word(a))

    def conjugate_word(self, by: Word, w: Word) -> Word:
        """Normal form of by * w * by^-1."""
        return self.nf_word(tuple(by) + tuple(w) + invert_word(by))

    def power_word(self, a: Word, n: int) -> Word:
        base = tuple(a) if n >= 0 else invert_word(a)
        return self.nf_word(base * abs(n))

    # -- parsing and formatting -----------------------------------------

    def parse_word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format_word(self, word: Word) -> str:
        return format_word(word, self.generators)

    # -- abelianization ---------------------------------------------------

    def abelianization(self) -> Abelianization:
        if self._abelianization is None:
            self._abelianization = free_abelianization(self)
        return self._abelianization

    def alpha(self, word: Word) -> tuple[int, ...]:
        return self.abelianization().alpha(word)

    def __repr__(self):
        kind = "raag" if self.is_raag else "pres"
        return f"<GroupPresentation {kind} gens={','.join(self.generators)}>"


@dataclass(frozen=True)
class GroupElement:
    """A group element as a normal-form word plus its owning presentation."""

    word: Word
    group: GroupPresentation

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.group is other.group
            and self.word == other.word
        )

    def __hash__(self):
        return hash((id(self.group), self.word))

    def __mul__(self, other):
        if self.group is not other.group:
            raise ValueError("elements from different presentations")
        return GroupElement(self.group.mul_words(self.word, other.word), self.group)

    def inverse(self):
        return GroupElement(self.group.inv_word(self.word), self.group)

    def is_identity(self) -> bool:
        return not self.word

    def __repr__(self):
        return self.group.format_word(self.word)


# -- parsing ---------------------------------------------------------------


def _position(text: str, index: int) -> tuple[int, int]:
    line = text.count("\n", 0, index) + 1
    col = index - (text.rfind("\n", 0, index) + 1) + 1
    return line, col


def _fail(text: str, index: int, message: str):
    line, col = _position(text, index)
    raise ParseError(message, line, col)


def _brace_block(text: str, start: int) -> tuple[str, int, int]:
    """Return (content, content_start, index_after_closing_brace)."""
    open_idx = text.find("{", start)
    if open_idx < 0:
        _fail(text, start, "expected '{'")
    close_idx = text.find("}", open_idx)
    if close_idx < 0:
        _fail(text, open_idx, "unbalanced '{'")
    return text[open_idx + 1 : close_idx], open_idx + 1, close_idx + 1


def parse_presentation(text: str) -> GroupPresentation:
    """Parse a raag or pres source string into a GroupPresentation."""
    stripped = text.lstrip()
    offset = len(text) - len(stripped)
    if stripped.startswith("raag"):
        return _parse_raag(text, offset + 4)
    if stripped.startswith("pres"):
        return _parse_pres(text, offset + 4)
    _fail(text, offset, "expected 'raag' or 'pres'")


def _parse_names(text: str, chunk: str, chunk_start: int) -> tuple[str, ...]:
    names = []
    for piece in chunk.split(","):
        name = piece.strip()
        if not name:
            _fail(text, chunk_start, "empty generator name")
        if not _NAME.match(name):
            _fail(text, chunk_start + chunk.find(piece), f"invalid generator name {name!r}")
        names.append(name)
    return tuple(names)


def _parse_raag(text: str, after_kw: int) -> GroupPresentation:
    content, c_start, end = _brace_block(text, after_kw)
    if text[end:].strip():
        _fail(text, end, "unexpected trailing input after raag block")
    if ";" in content:
        gens_part, _, edges_part = content.partition(";")
    else:
        gens_part, edges_part = content, ""
    gens = _parse_names(text, gens_part, c_start)
    edges = []
    for piece in edges_part.split(","):
        pair = piece.strip()
        if not pair:
            continue
        left, sep, right = pair.partition("-")
        if not sep:
            _fail(text, c_start + content.find(pair), f"expected edge 'x-y', got {pair!r}")
        a, b = left.strip(), right.strip()
        for nm in (a, b):
            if nm not in gens:
                _fail(text, c_start + content.find(pair), f"unknown generator {nm!r} in edge")
        if a == b:
            _fail(text, c_start + content.find(pair), "edge endpoints must be distinct")
        edges.append((gens.index(a), gens.index(b)))
    engine = RaagEngine(len(gens), edges)
    relators = [
        (i + 1, j + 1, -(i + 1), -(j + 1)) for i, j in sorted(engine.edges)
    ]
    return GroupPresentation(gens, relators, engine, source=text.strip())


def _parse_pres(text: str, after_kw: int) -> GroupPresentation:
    content, c_start, end = _brace_block(text, after_kw)
    if "|" not in content:
        _fail(text, c_start, "pres block needs '|' between generators and relators")
    gens_part, _, rel_part = content.partition("|")
    gens = _parse_names(text, gens_part, c_start)

    relators = []
    for piece in rel_part.split(","):
        chunk = piece.strip()
        if not chunk:
            continue
        try:
            relators.append(free_reduce(parse_word(chunk, gens)))
        except ParseError as exc:
            _fail(text, c_start + content.find(chunk), str(exc))

    rest = text[end:].strip()
    rules = []
    if rest:
        rest_abs = text.find(rest, end)
        if not rest.startswith("rewriting"):
            _fail(text, rest_abs, "expected 'rewriting' block after pres")
        r_content, r_start, r_end = _brace_block(text, rest_abs + len("rewriting"))
        if text[r_end:].strip():
            _fail(text, r_end, "unexpected trailing input after rewriting block")
        for piece in r_content.split(";"):
            rule = piece.strip()
            if not rule:
                continue
            lhs_text, sep, rhs_text = rule.partition("->")
            if not sep:
                _fail(text, r_start + r_content.find(rule), f"expected 'lhs -> rhs' in {rule!r}")
            try:
                lhs = parse_word(lhs_text.strip(), gens)
                rhs = parse_word(rhs_text.strip(), gens)
            except ParseError as exc:
                _fail(text, r_start + r_content.find(rule), str(exc))
            rules.append((lhs, rhs))
    if not rules and relators:
        raise ParseError(
            "general presentations need a rewriting block (only free groups "
            "may omit it)"
        )
    try:
        engine = RewritingEngine(len(gens), rules)
    except EngineError:
        raise
    return GroupPresentation(gens, relators, engine, source=text.strip())


# -- abelianization ----------------------------------------------------------


def free_abelianization(pres: GroupPresentation) -> Abelianization:
    """Rank, torsion, and projection of the free part of G^ab.

    The projection is read off the row transform of an integer Smith
    normal form of the transposed relator exponent matrix: rows landing on
    zero diagonal entries descend to a basis of the free quotient.
    """
    n = pres.n_gens
    rows = [exponent_vector(r, n) for r in pres.relators]
    rows = [r for r in rows if any(r)]
    if not rows:
        proj = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        return Abelianization(n, n, (), proj)

    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_decomp

    at = Matrix([[row[i] for row in rows] for i in range(n)])  # n x m
    snf, s, _t = smith_normal_decomp(at, domain=ZZ)
    diag = [int(snf[i, i]) for i in range(min(snf.shape))]
    nonzero = [d for d in diag if d != 0]
    rank = n - len(nonzero)
    torsion = tuple(abs(d) for d in nonzero if abs(d) > 1)
    proj_rows = []
    for i in range(n):
        d = abs(diag[i]) if i < len(diag) else 0
        if d == 0:
            proj_rows.append(tuple(int(s[i, j]) for j in range(n)))
    assert len(proj_rows) == rank
    return Abelianization(n, rank, torsion, tuple(proj_rows))


def shortlex_words(n_gens: int):
    """Yield all words over the alphabet in shortlex order, starting with
    the empty word.  Used for default sections; consumers bound the walk."""
    from collections import deque

    letters = []
    for g in range(1, n_gens + 1):
        letters.extend([g, -g])
    queue: deque[Word] = deque([EMPTY])
    while queue:
        w = queue.popleft()
        yield w
        for lt in letters:
            queue.append(w + (lt,))

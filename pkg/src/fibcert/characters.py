"""Exact real-valued characters on free abelianizations.

A character is a (k+1) x r rational matrix over the value field basis
(1, sqrt(2), ..., sqrt(p_k)): column j is the value of the j-th coordinate
of the abelianization.  Irrationality (injectivity on Z^r) is decided by
rational rank; compatible orders add a lexicographic tie-break.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import TYPE_CHECKING

from . import linalg
from .errors import ValidationError
from .presentation import GroupElement
from .valuefield import DEFAULT_FIELD, FieldElement, ValueField

if TYPE_CHECKING:
    from .quotients import SubgroupPresentation


@dataclass(frozen=True)
class Character:
    """Homomorphism Z^r -> R with values in the fixed quadratic extension field."""

    field: ValueField
    columns: tuple[tuple[Fraction, ...], ...]  # column j = coordinates of value at e_j
    label: str | None = None

    def __post_init__(self) -> None:
        for col in self.columns:
            if len(col) != self.field.dimension:
                raise ValidationError("character column does not match the field dimension")

    @property
    def rank(self) -> int:
        return len(self.columns)

    def value_at(self, j: int) -> FieldElement:
        return self.field.element(self.columns[j])

    def on_vector(self, vec: tuple[int, ...] | tuple[Fraction, ...]) -> FieldElement:
        if len(vec) != self.rank:
            raise ValidationError(f"rank mismatch: character rank {self.rank}, vector length {len(vec)}")
        coords = [Fraction(0)] * self.field.dimension
        for j, a in enumerate(vec):
            if a:
                col = self.columns[j]
                for i in range(len(coords)):
                    coords[i] += Fraction(a) * col[i]
        return self.field.element(coords)

    def is_zero(self) -> bool:
        return all(all(c == 0 for c in col) for col in self.columns)

    def is_rational(self) -> bool:
        return all(all(c == 0 for c in col[1:]) for col in self.columns)

    def rational_vector(self) -> tuple[Fraction, ...]:
        if not self.is_rational():
            raise ValidationError("character is not rational")
        return tuple(col[0] for col in self.columns)

    def negate(self) -> "Character":
        cols = tuple(tuple(-c for c in col) for col in self.columns)
        label = f"-{self.label}" if self.label else None
        return Character(self.field, cols, label)

    def scale(self, q: Fraction | int) -> "Character":
        q = Fraction(q)
        cols = tuple(tuple(q * c for c in col) for col in self.columns)
        return Character(self.field, cols, self.label)

    def __repr__(self) -> str:
        vals = ", ".join(repr(self.value_at(j)) for j in range(self.rank))
        return f"Character({vals})"


def character_from_values(values, field: ValueField = DEFAULT_FIELD, label: str | None = None) -> Character:
    """Build a character from one value (FieldElement or rational) per coordinate."""
    cols = []
    for v in values:
        if isinstance(v, FieldElement):
            cols.append(v.coords)
        else:
            cols.append(field.rational(v).coords)
    return Character(field, tuple(cols), label)


def evaluate(c: Character, g: GroupElement) -> FieldElement:
    """phi(g) = coefficient matrix applied to alpha(g); a homomorphism on G."""
    return c.on_vector(g.group.alpha(g.word))


def is_irrational(c: Character, rank: int) -> bool:
    """True iff the character is injective on Z^rank (rational column rank = rank)."""
    if c.rank != rank:
        raise ValidationError(f"rank mismatch: character rank {c.rank}, expected {rank}")
    if rank == 0:
        return True
    rows = [[c.columns[j][i] for j in range(rank)] for i in range(c.field.dimension)]
    return linalg.rank(rows) == rank


@dataclass(frozen=True)
class CompatibleOrder:
    """Total order on Z^r: compare by phi-value, break ties lexicographically.

    The tie-break makes the order translation-invariant (a biordering) even
    for rational characters, so leading terms stay well-defined.
    """

    character: Character

    def compare_vectors(self, u: tuple[int, ...], v: tuple[int, ...]) -> int:
        diff = tuple(a - b for a, b in zip(u, v))
        s = self.character.on_vector(diff).sign()
        if s:
            return s
        for d in diff:
            if d > 0:
                return -1  # positive leading coordinate sorts first
            if d < 0:
                return 1
        return 0

    def compare(self, g: GroupElement, h: GroupElement) -> int:
        """-1 if g is smaller, 0 on equal abelianized coordinates, +1 otherwise."""
        return self.compare_vectors(g.group.alpha(g.word), h.group.alpha(h.word))


def normalize_primitive(c: Character) -> tuple[Character, bool]:
    """Scale a rational character to primitive integer coordinates.

    Returns (normalized, changed).  A primitive character surjects onto Z.
    """
    vec = c.rational_vector()
    if all(v == 0 for v in vec):
        raise ValidationError("zero character cannot be normalized")
    denom = 1
    for v in vec:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [int(v * denom) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    scaled = [Fraction(v, g) for v in ints]
    changed = scaled != list(vec)
    return character_from_values(scaled, c.field, c.label), changed


def restrict_character(phi: Character, sub: "SubgroupPresentation") -> Character:
    """Restriction of a character on G to H along the inclusion."""
    alpha_h = sub.abelianization()
    domain = []
    image = []
    for i in range(sub.presentation.n_gens):
        gen_word = ((i + 1),)
        domain.append(tuple(alpha_h.alpha(gen_word)))
        g_word = sub.include(gen_word)
        image.append(phi.on_vector(sub.group.alpha(g_word)).coords)
    matrix = linalg.solve_transform(domain, image)
    cols = tuple(tuple(row[j] for row in matrix) for j in range(alpha_h.rank))
    out = Character(phi.field, cols, phi.label)
    for dom, img in zip(domain, image):
        if out.on_vector(dom) != phi.field.element(img):
            raise ValidationError("restriction is not linear over the abelianization")
    return out


def conjugate_character(psi: Character, q: int, sub: "SubgroupPresentation") -> Character:
    """psi^q(x) = psi(s(q) x s(q)^{-1}), as a character on H's abelianization."""
    quot = sub.quotient
    alpha_h = sub.abelianization()
    if psi.rank != alpha_h.rank:
        raise ValidationError(f"rank mismatch: character rank {psi.rank}, H rank {alpha_h.rank}")
    s_q = quot.section[q]
    domain = []
    image = []
    for i in range(sub.presentation.n_gens):
        gen_word = ((i + 1),)
        domain.append(tuple(alpha_h.alpha(gen_word)))
        conj = sub.group.conjugate_word(s_q, sub.include(gen_word))
        h_word = sub.tau(conj)  # H normal by construction; raises if data corrupt
        image.append(psi.on_vector(alpha_h.alpha(h_word)).coords)
    matrix = linalg.solve_transform(domain, image)
    cols = tuple(tuple(row[j] for row in matrix) for j in range(alpha_h.rank))
    label = f"{psi.label}^{q}" if psi.label else None
    out = Character(psi.field, cols, label)
    for dom, img in zip(domain, image):
        if out.on_vector(dom) != psi.field.element(img):
            raise ValidationError("conjugated character is not linear; quotient data corrupt")
    return out

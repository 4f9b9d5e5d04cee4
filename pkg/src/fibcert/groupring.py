"""Exact arithmetic in QG and its coset-split twisted view (QH)Q.

Elements are finite maps from normal forms to nonzero rationals.  Twisted
arithmetic over a finite quotient is always realized inside QG through the
section isomorphism: compute in G, split by cosets for presentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .characters import Character, CompatibleOrder, evaluate
from .errors import ValidationError
from .presentation import GroupPresentation
from .quotients import FiniteQuotient
from .valuefield import PLUS_INFINITY, FieldElement, Infinity, value_min
from .words import EMPTY, Word, invert_word, shortlex_key


class RingElement:
    """Finite formal sum of group elements with rational coefficients."""

    __slots__ = ("group", "terms")

    def __init__(self, group: GroupPresentation, terms=None, normalize: bool = True) -> None:
        self.group = group
        acc: dict[Word, Fraction] = {}
        if terms:
            for word, coeff in terms.items() if isinstance(terms, dict) else terms:
                c = Fraction(coeff)
                if not c:
                    continue
                key = group.nf_word(tuple(word)) if normalize else tuple(word)
                c += acc.get(key, Fraction(0))
                if c:
                    acc[key] = c
                else:
                    del acc[key]
        self.terms = acc

    @staticmethod
    def zero(group: GroupPresentation) -> "RingElement":
        return RingElement(group)

    @staticmethod
    def one(group: GroupPresentation) -> "RingElement":
        return RingElement(group, {EMPTY: Fraction(1)}, normalize=False)

    @staticmethod
    def monomial(group: GroupPresentation, word: Word, coeff=1) -> "RingElement":
        return RingElement(group, {tuple(word): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def support(self) -> list[Word]:
        return sorted(self.terms, key=shortlex_key)

    def coeff(self, word: Word) -> Fraction:
        return self.terms.get(self.group.nf_word(tuple(word)), Fraction(0))

    def _require_same(self, other: "RingElement") -> None:
        if self.group is not other.group:
            raise ValidationError("ring elements live over different presentations")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._require_same(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            s = acc.get(w, Fraction(0)) + c
            if s:
                acc[w] = s
            else:
                acc.pop(w, None)
        out = RingElement(self.group)
        out.terms = acc
        return out

    def __neg__(self) -> "RingElement":
        out = RingElement(self.group)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def scale(self, q) -> "RingElement":
        q = Fraction(q)
        out = RingElement(self.group)
        if q:
            out.terms = {w: q * c for w, c in self.terms.items()}
        return out

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._require_same(other)
        acc: dict[Word, Fraction] = {}
        for wx, cx in self.terms.items():
            for wy, cy in other.terms.items():
                key = self.group.nf_word(wx + wy)
                s = acc.get(key, Fraction(0)) + cx * cy
                if s:
                    acc[key] = s
                else:
                    del acc[key]
        out = RingElement(self.group)
        out.terms = acc
        return out

    def conjugate(self, by: Word) -> "RingElement":
        inv = invert_word(by)
        out = RingElement(self.group)
        out.terms = {self.group.nf_word(tuple(by) + w + inv): c for w, c in self.terms.items()}
        return out

    def inverse_monomial(self) -> "RingElement":
        if len(self.terms) != 1:
            raise ValidationError("only monomials invert exactly in QG")
        (word, coeff), = self.terms.items()
        return RingElement.monomial(self.group, invert_word(word), Fraction(1) / coeff)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingElement)
            and self.group is other.group
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.group), frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for w in self.support():
            c = self.terms[w]
            name = self.group.format_word(w)
            bits.append(f"{c}*{name}" if c != 1 else name)
        return " + ".join(bits)


def multiply(x: RingElement, y: RingElement) -> RingElement:
    """Bilinear product in QG; associative with unit 1."""
    return x * y


def valuation(x: RingElement, c: Character) -> FieldElement | Infinity:
    """Extended valuation min phi(supp(x)); +infinity for x = 0."""
    return value_min(c.on_vector(x.group.alpha(w)) for w in x.terms)


def compare_monomials(order: CompatibleOrder, group: GroupPresentation, a: Word, b: Word) -> int:
    """Total order on normal forms: phi-value, order tie-break, then shortlex."""
    va = order.character.on_vector(group.alpha(a))
    vb = order.character.on_vector(group.alpha(b))
    s = (va - vb).sign()
    if s:
        return s
    s = order.compare_vectors(group.alpha(a), group.alpha(b))
    if s:
        return s
    ka, kb = shortlex_key(a), shortlex_key(b)
    return -1 if ka < kb else (1 if ka > kb else 0)


def leading_pair(x: RingElement, order: CompatibleOrder) -> tuple[Word, Fraction]:
    if x.is_zero():
        raise ValidationError("zero element has no leading term")
    key = cmp_to_key(lambda a, b: compare_monomials(order, x.group, a, b))
    word = min(x.terms, key=key)
    return word, x.terms[word]


def leading_term(x: RingElement, order: CompatibleOrder) -> RingElement:
    """The unique order-minimal support monomial with its coefficient."""
    word, coeff = leading_pair(x, order)
    return RingElement.monomial(x.group, word, coeff)


@dataclass(frozen=True)
class StructureFunctions:
    """nu(q) = conjugation by s(q); mu(q,p) = s(q)s(p)s(qp)^{-1} as an H-monomial."""

    quotient: FiniteQuotient
    mu: dict  # (q, p) -> RingElement, single monomial supported in H

    def nu(self, q: int, x: RingElement) -> RingElement:
        return x.conjugate(self.quotient.section[q])

    def mu_word(self, q: int, p: int) -> Word:
        (word,) = self.mu[(q, p)].terms
        return word


def structure_functions(quot: FiniteQuotient) -> StructureFunctions:
    """Build and exhaustively verify the structure functions of the twisted ring."""
    group = quot.group
    n = quot.order
    mu: dict[tuple[int, int], RingElement] = {}
    for q in range(n):
        for p in range(n):
            word = quot.section[q] + quot.section[p] + invert_word(quot.section[quot.mul(q, p)])
            if quot.beta(word) != 0:
                raise ValidationError("mu left the kernel; quotient data corrupt")
            mu[(q, p)] = RingElement.monomial(group, group.nf_word(word))
    sf = StructureFunctions(quot, mu)
    # cocycle identity over Q^3: mu(a,b) mu(ab,c) = nu(a)(mu(b,c)) mu(a,bc)
    for a in range(n):
        for b in range(n):
            ab = quot.mul(a, b)
            left_ab = mu[(a, b)]
            for c in range(n):
                lhs = left_ab * mu[(ab, c)]
                rhs = sf.nu(a, mu[(b, c)]) * mu[(a, quot.mul(b, c))]
                if lhs != rhs:
                    raise ValidationError(f"cocycle identity fails at ({a},{b},{c})")
    # automorphism identity checked on the section generators of the kernel:
    # nu(a) nu(b) = c(mu(a,b)) nu(ab)
    probes = [RingElement.monomial(group, quot.section[q] * n) for q in range(n)]
    probes += [
        RingElement.monomial(group, group.nf_word(w + (j + 1,) + invert_word(wn)))
        for q in range(n)
        for j in range(group.n_gens)
        for w in [quot.section[q]]
        for wn in [quot.section[quot.mul(q, quot.beta_letter(j + 1))]]
    ]
    for a in range(n):
        for b in range(n):
            ab = quot.mul(a, b)
            m = mu[(a, b)]
            m_inv = m.inverse_monomial()
            for x in probes:
                lhs = sf.nu(a, sf.nu(b, x))
                rhs = m * sf.nu(ab, x) * m_inv
                if lhs != rhs:
                    raise ValidationError(f"automorphism identity fails at ({a},{b})")
    return sf


class CosetSplitElement:
    """x = sum_q x_q s(q) with each x_q supported in ker beta."""

    __slots__ = ("quotient", "parts")

    def __init__(self, quotient: FiniteQuotient, parts: dict[int, RingElement]) -> None:
        self.quotient = quotient
        clean: dict[int, RingElement] = {}
        for q, part in parts.items():
            if part.is_zero():
                continue
            for w in part.terms:
                if quotient.beta(w) != 0:
                    raise ValidationError(f"part at coset {q} is not supported in the kernel")
            clean[q] = part
        self.parts = clean

    def part(self, q: int) -> RingElement:
        return self.parts.get(q, RingElement.zero(self.quotient.group))

    def is_zero(self) -> bool:
        return not self.parts

    def _require_same(self, other: "CosetSplitElement") -> None:
        if self.quotient is not other.quotient:
            raise ValidationError("coset-split elements live over different quotients")

    def __add__(self, other: "CosetSplitElement") -> "CosetSplitElement":
        self._require_same(other)
        parts = dict(self.parts)
        for q, p in other.parts.items():
            s = parts.get(q)
            parts[q] = p if s is None else s + p
        return CosetSplitElement(self.quotient, parts)

    def __neg__(self) -> "CosetSplitElement":
        return CosetSplitElement(self.quotient, {q: -p for q, p in self.parts.items()})

    def __sub__(self, other: "CosetSplitElement") -> "CosetSplitElement":
        return self + (-other)

    def scale(self, c) -> "CosetSplitElement":
        return CosetSplitElement(self.quotient, {q: p.scale(c) for q, p in self.parts.items()})

    def __mul__(self, other: "CosetSplitElement") -> "CosetSplitElement":
        # the twisted product, computed through the section isomorphism
        self._require_same(other)
        return split_by_cosets(reassemble(self) * reassemble(other), self.quotient)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CosetSplitElement)
            and self.quotient is other.quotient
            and self.parts == other.parts
        )

    def __hash__(self):
        return hash((id(self.quotient), frozenset((q, p) for q, p in self.parts.items())))

    def __repr__(self) -> str:
        if not self.parts:
            return "0"
        bits = [f"({self.parts[q]!r})*s({q})" for q in sorted(self.parts)]
        return " + ".join(bits)


def split_by_cosets(x: RingElement, quot: FiniteQuotient) -> CosetSplitElement:
    """Sort the support of x into cosets of ker beta: x = sum_q x_q s(q)."""
    if x.group is not quot.group:
        raise ValidationError("element and quotient live over different presentations")
    parts: dict[int, dict[Word, Fraction]] = {}
    for w, c in x.terms.items():
        h, q = quot.coset_decompose(w)
        bucket = parts.setdefault(q, {})
        bucket[h.word] = bucket.get(h.word, Fraction(0)) + c
    out: dict[int, RingElement] = {}
    for q, bucket in parts.items():
        elem = RingElement(quot.group)
        elem.terms = {w: c for w, c in bucket.items() if c}
        if not elem.is_zero():
            out[q] = elem
    return CosetSplitElement(quot, out)


def reassemble(e: CosetSplitElement) -> RingElement:
    """Inverse of split_by_cosets; a ring homomorphism for the twisted product."""
    group = e.quotient.group
    total = RingElement.zero(group)
    for q, part in e.parts.items():
        total = total + part * RingElement.monomial(group, e.quotient.section[q])
    return total


def conjugate_by_coset(x: RingElement, q: int, quot: FiniteQuotient) -> RingElement:
    """x^q = s(q) x s(q)^{-1}; preserves kernel support."""
    return x.conjugate(quot.section[q])


def twisted_product(
    a: CosetSplitElement, b: CosetSplitElement, sf: StructureFunctions
) -> CosetSplitElement:
    """Multiply split elements through nu/mu alone, never reassembling.

    (x_q s(q))(y_p s(p)) = x_q nu(q)(y_p) mu(q,p) s(qp).  Independent route
    against the section isomorphism: reassemble(twisted_product(split x,
    split y)) must equal x * y in QG.
    """
    quot = a.quotient
    if b.quotient is not quot or sf.quotient is not quot:
        raise ValidationError("twisted product needs both factors over one quotient")
    parts: dict[int, RingElement] = {}
    for q, xq in a.parts.items():
        for p, yp in b.parts.items():
            qp = quot.mul(q, p)
            term = xq * sf.nu(q, yp) * sf.mu[(q, p)]
            cur = parts.get(qp)
            parts[qp] = term if cur is None else cur + term
    return CosetSplitElement(quot, parts)

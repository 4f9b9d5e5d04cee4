"""Q-value calculus over coset-split twisted group rings.

For a character psi on the kernel H of a finite quotient G -> Q, the Q-value
of a split element x = sum_q x_q s(q) is

    qvalue(x) = min_{p,q} { psi^p(x_q) + (1/|Q|) psi(s(q)^{|Q|}) }

and the Q-defect of psi measures how far qvalue is from additive on the
section scalars.  invert_sum realizes the perturbation inverse: when x is a
unit with known inverse and qvalue(y) + qvalue(x^-1) - 2|psi|_Q > 0, the series
sum_i (-x^-1 y)^i x^-1 inverts x + y modulo any requested cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import Character, conjugate_character
from .errors import HypothesisViolation, ValidationError
from .groupring import CosetSplitElement, RingElement, reassemble, split_by_cosets
from .quotients import SubgroupPresentation
from .valuefield import PLUS_INFINITY, FieldElement, Infinity
from .words import Word, invert_word

# A Q-value is a field element or +infinity (exactly for the zero element);
# a Q-defect is a non-negative field element.
QValue = FieldElement | Infinity
QDefect = FieldElement

_SERIES_GUARD = 100_000


def _check_sub(psi: Character, sub: SubgroupPresentation) -> None:
    if psi.rank != sub.abelianization().rank:
        raise ValidationError(
            f"rank mismatch: character rank {psi.rank}, kernel rank {sub.abelianization().rank}"
        )


def kernel_value(psi: Character, sub: SubgroupPresentation, g_word: Word) -> FieldElement:
    """psi at a kernel element given as a word of the ambient group."""
    return psi.on_vector(sub.alpha(sub.tau(g_word)))


def conjugate_family(psi: Character, sub: SubgroupPresentation) -> dict[int, Character]:
    """All conjugates psi^p for p in Q."""
    return {p: conjugate_character(psi, p, sub) for p in range(sub.quotient.order)}


def ring_value(psi: Character, sub: SubgroupPresentation, x: RingElement) -> QValue:
    """min of psi over the support of x in QH; +inf for x = 0."""
    best: QValue = PLUS_INFINITY
    for w in x.terms:
        v = kernel_value(psi, sub, w)
        if v < best:
            best = v
    return best


def section_scalar(psi: Character, sub: SubgroupPresentation, q: int) -> FieldElement:
    """(1/|Q|) psi(s(q)^{|Q|}): the coset summand of the Q-value."""
    quot = sub.quotient
    power = quot.section_power(q)  # lies in H by Lagrange, asserted inside
    return kernel_value(psi, sub, power).scale(Fraction(1, quot.order))


def coset_value(psi: Character, sub: SubgroupPresentation, q: int) -> FieldElement:
    """qvalue of the bare coset element 1.s(q)."""
    return section_scalar(psi, sub, q)


def qvalue(
    psi: Character,
    x: CosetSplitElement,
    sub: SubgroupPresentation,
    conjugates: dict[int, Character] | None = None,
) -> QValue:
    """Exact minimum over the finite (p, q) index set; +inf for x = 0."""
    _check_sub(psi, sub)
    if x.quotient is not sub.quotient:
        raise ValidationError("split element and kernel presentation use different quotients")
    if conjugates is None:
        conjugates = conjugate_family(psi, sub)
    best: QValue = PLUS_INFINITY
    for q in range(sub.quotient.order):
        part = x.part(q)
        if part.is_zero():
            continue  # zero coefficient contributes +inf and drops out
        c_q = section_scalar(psi, sub, q)
        for p, psi_p in conjugates.items():
            v = ring_value(psi_p, sub, part)
            assert v is not PLUS_INFINITY
            total = v + c_q
            if total < best:
                best = total
    return best


def qdefect(psi: Character, sub: SubgroupPresentation) -> QDefect:
    """max_{p,q} | qvalue(s(p)s(q)s(pq)^-1) - qvalue(p) - qvalue(q) + qvalue(pq) |."""
    _check_sub(psi, sub)
    quot = sub.quotient
    group = sub.group
    conjugates = conjugate_family(psi, sub)
    scalars = [section_scalar(psi, sub, q) for q in range(quot.order)]
    best = psi.field.zero()
    for p in range(quot.order):
        for q in range(quot.order):
            mu = group.nf_word(
                quot.section[p] + quot.section[q] + invert_word(quot.section[quot.mul(p, q)])
            )
            # mu lies in H, so its qvalue is min_{p'} psi^{p'}(mu) + scalars[0]
            inner: QValue = PLUS_INFINITY
            for psi_p in conjugates.values():
                v = kernel_value(psi_p, sub, mu)
                if v < inner:
                    inner = v
            assert inner is not PLUS_INFINITY
            gap = abs(inner + scalars[0] - scalars[p] - scalars[q] + scalars[quot.mul(p, q)])
            if gap > best:
                best = gap
    return best


def monomial_level(
    psi: Character,
    sub: SubgroupPresentation,
    conjugates: dict[int, Character],
    scalars: list[FieldElement],
    h_word: Word,
    q: int,
) -> FieldElement:
    """Per-monomial Q-value min_p psi^p(h) + (1/|Q|) psi(s(q)^{|Q|})."""
    best: FieldElement | None = None
    for psi_p in conjugates.values():
        v = kernel_value(psi_p, sub, h_word)
        if best is None or v < best:
            best = v
    assert best is not None
    return best + scalars[q]


def truncate_split(
    x: CosetSplitElement,
    psi: Character,
    sub: SubgroupPresentation,
    level: FieldElement,
    conjugates: dict[int, Character] | None = None,
    scalars: list[FieldElement] | None = None,
) -> CosetSplitElement:
    """Drop monomials of per-monomial Q-value >= level.

    Sound because the Q-value is a minimum of separable per-monomial terms.
    """
    if conjugates is None:
        conjugates = conjugate_family(psi, sub)
    if scalars is None:
        scalars = [section_scalar(psi, sub, q) for q in range(sub.quotient.order)]
    parts: dict[int, RingElement] = {}
    for q in range(sub.quotient.order):
        part = x.part(q)
        if part.is_zero():
            continue
        kept = {
            w: c
            for w, c in part.terms.items()
            if monomial_level(psi, sub, conjugates, scalars, w, q) < level
        }
        if kept:
            e = RingElement(sub.group)
            e.terms = kept
            parts[q] = e
    return CosetSplitElement(x.quotient, parts)


@dataclass(frozen=True)
class InvertSumResult:
    """Truncated inverse of x + y with its hypothesis margin."""

    element: CosetSplitElement
    margin: FieldElement | Infinity
    cutoff: FieldElement
    terms_used: int


def _split_one(sub: SubgroupPresentation) -> CosetSplitElement:
    return CosetSplitElement(sub.quotient, {0: RingElement.one(sub.group)})


def _monomial_inverse(x: CosetSplitElement, sub: SubgroupPresentation) -> CosetSplitElement:
    flat = reassemble(x)
    if len(flat.terms) != 1:
        raise ValidationError(
            "no explicit inverse supplied and x is not a monomial: cannot invert"
        )
    ((word, coeff),) = flat.terms.items()
    inv = RingElement.monomial(sub.group, sub.group.inv_word(word), Fraction(1) / coeff)
    return split_by_cosets(inv, sub.quotient)


def invert_sum(
    x: CosetSplitElement,
    y: CosetSplitElement,
    psi: Character,
    cutoff: FieldElement,
    sub: SubgroupPresentation,
    x_inv: CosetSplitElement | None = None,
) -> InvertSumResult:
    """Invert x + y modulo cutoff as sum_i (-x^-1 y)^i x^-1.

    Requires an exact unit x (monomial, or with explicitly supplied exact
    inverse) and a strictly positive hypothesis margin
    qvalue(y) + qvalue(x^-1) - 2|psi|_Q.
    """
    _check_sub(psi, sub)
    if x.is_zero():
        raise ValidationError("x must be invertible; got 0")
    if x_inv is None:
        x_inv = _monomial_inverse(x, sub)
    one = _split_one(sub)
    if x * x_inv != one or x_inv * x != one:
        raise ValidationError("supplied x_inv is not an exact two-sided inverse of x")

    conjugates = conjugate_family(psi, sub)
    scalars = [section_scalar(psi, sub, q) for q in range(sub.quotient.order)]
    defect = qdefect(psi, sub)
    v_y = qvalue(psi, y, sub, conjugates)
    v_xi = qvalue(psi, x_inv, sub, conjugates)
    assert v_xi is not PLUS_INFINITY
    if v_y is PLUS_INFINITY:
        # y = 0: the inverse is exactly x^-1
        _verify_inverse_mod(x + y, x_inv, psi, sub, cutoff, conjugates, scalars)
        return InvertSumResult(element=x_inv, margin=PLUS_INFINITY, cutoff=cutoff, terms_used=0)
    margin = v_y + v_xi - defect - defect
    if margin.sign() <= 0:
        raise HypothesisViolation(
            f"qvalue(y) + qvalue(x^-1) - 2|psi|_Q = {margin!r} is not positive"
        )

    v_sum = qvalue(psi, x + y, sub, conjugates)
    assert v_sum is not PLUS_INFINITY  # x + y = 0 contradicts the margin
    slack = defect - v_sum
    internal = cutoff + slack if slack.sign() > 0 else cutoff
    level = internal - v_xi + defect

    u = -(x_inv * y)
    acc = one
    term = one
    terms_used = 0
    for _ in range(_SERIES_GUARD):
        term = truncate_split(term * u, psi, sub, level, conjugates, scalars)
        if term.is_zero():
            break
        acc = acc + term
        terms_used += 1
    else:
        raise ValidationError("inversion series did not terminate within the step guard")
    z = truncate_split(acc * x_inv, psi, sub, internal, conjugates, scalars)
    _verify_inverse_mod(x + y, z, psi, sub, cutoff, conjugates, scalars)
    return InvertSumResult(element=z, margin=margin, cutoff=cutoff, terms_used=terms_used)


def _verify_inverse_mod(w, z, psi, sub, cutoff, conjugates, scalars) -> None:
    one = _split_one(sub)
    for prod in (w * z, z * w):
        residual = truncate_split(prod - one, psi, sub, cutoff, conjugates, scalars)
        if not residual.is_zero():
            raise ValidationError(
                "inverse verification failed: product differs from 1 below the cutoff"
            )

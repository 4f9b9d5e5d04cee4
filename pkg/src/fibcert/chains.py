"""Fox-calculus chain complexes and the Novikov cycle basis.

build_complex produces the presentation 2-complex differentials d2 (Fox
Jacobian, relators x generators) and d1 (generator column g_j - 1) and checks
d1 . d2 = 0 exactly.  cycle_basis realizes the 1-cycle basis
e_t' = e_t - (1 - t)(1 - s)^{-1} e_s over a truncated Novikov ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import Character, CompatibleOrder, evaluate
from .errors import EngineError, ValidationError
from .groupring import RingElement
from .novikov import Cutoff, NovikovElement, invert, novikov_one
from .presentation import GroupPresentation
from .valuefield import FieldElement
from .words import Word, gen_index, invert_word


def fox_derivative(group: GroupPresentation, w: Word, j: int) -> RingElement:
    """Free derivative of w with respect to generator j.

    Product rule d(uv) = du + u.dv with d(x_j) = 1 and d(x_j^-1) = -x_j^-1.
    """
    if not 0 <= j < group.n_gens:
        raise ValidationError(f"generator index {j} out of range")
    out = RingElement.zero(group)
    prefix: Word = ()
    for lt in w:
        if gen_index(lt) == j:
            if lt > 0:
                out = out + RingElement.monomial(group, prefix, Fraction(1))
            else:
                out = out - RingElement.monomial(group, prefix + (lt,), Fraction(1))
        prefix = prefix + (lt,)
    return out


@dataclass(frozen=True)
class ChainComplex:
    """Presentation 2-complex differentials with exact d1 . d2 = 0."""

    group: GroupPresentation
    d2: tuple[tuple[RingElement, ...], ...]
    d1: tuple[RingElement, ...]

    @property
    def n_relators(self) -> int:
        return len(self.d2)

    @property
    def n_generators(self) -> int:
        return len(self.d1)


def build_complex(group: GroupPresentation) -> ChainComplex:
    n = group.n_gens
    d1 = tuple(
        RingElement.monomial(group, (j + 1,), Fraction(1)) - RingElement.one(group)
        for j in range(n)
    )
    d2 = tuple(
        tuple(fox_derivative(group, rel, j) for j in range(n)) for rel in group.relators
    )
    zero = RingElement.zero(group)
    for i, row in enumerate(d2):
        total = zero
        for j in range(n):
            total = total + row[j] * d1[j]
        # fundamental identity: sum_j dr/dx_j (x_j - 1) = r - 1 = 0 for relators
        if not (total == zero):
            raise EngineError(f"d1 . d2 != 0 at relator {i}: presentation data corrupt")
    return ChainComplex(group=group, d2=d2, d1=d1)


@dataclass(frozen=True)
class CycleBasis:
    """Basis of ker(d1) over the truncated Novikov ring.

    pivot_index is the generator whose column is eliminated; pivot_word is that
    generator or its inverse, whichever has positive character value.
    corrections[t] is the e_{pivot} coefficient of the basis cycle e_t', i.e.
    e_t' = e_t + corrections[t] e_{pivot}.
    """

    pivot_index: int
    pivot_word: Word
    corrections: dict[int, NovikovElement]
    vectors: tuple[tuple[NovikovElement, ...], ...]
    cutoff: Cutoff


def pick_pivot_generator(group: GroupPresentation, phi: Character) -> tuple[int, Word]:
    """Generator with the largest |phi| value, sign-adjusted positive."""
    best: tuple[int, Word] | None = None
    best_abs: FieldElement | None = None
    for j in range(group.n_gens):
        v = evaluate(phi, group.generator(j))
        if v.is_zero():
            continue
        a = abs(v)
        if best_abs is None or a > best_abs:
            best_abs = a
            word = (j + 1,) if v.sign() > 0 else (-(j + 1),)
            best = (j, word)
    if best is None:
        raise ValidationError("character vanishes on every generator")
    return best


def cycle_basis(cc: ChainComplex, phi: Character, cutoff: Cutoff) -> CycleBasis:
    group = cc.group
    order = CompatibleOrder(phi)
    s_index, s_word = pick_pivot_generator(group, phi)
    one = RingElement.one(group)
    pivot_gen = RingElement.monomial(group, (s_index + 1,), Fraction(1))
    # (x_s - 1) is strict-gap invertible for either sign of phi(x_s)
    inv = invert(NovikovElement(group, order, pivot_gen - one, cutoff))
    corrections: dict[int, NovikovElement] = {}
    vectors = []
    n = group.n_gens
    for t in range(n):
        if t == s_index:
            continue
        xt = RingElement.monomial(group, (t + 1,), Fraction(1))
        coeff = NovikovElement(group, order, one - xt, cutoff) * inv
        corrections[t] = coeff
        vec = [
            novikov_one(group, order, coeff.cutoff) if j == t else
            coeff if j == s_index else
            NovikovElement(group, order, RingElement.zero(group), coeff.cutoff)
            for j in range(n)
        ]
        vectors.append(tuple(vec))
    basis = CycleBasis(
        pivot_index=s_index,
        pivot_word=s_word,
        corrections=corrections,
        vectors=tuple(vectors),
        cutoff=cutoff,
    )
    _verify_cycles(cc, order, basis)
    return basis


def _verify_cycles(cc: ChainComplex, order: CompatibleOrder, basis: CycleBasis) -> None:
    group = cc.group
    for vec in basis.vectors:
        total = None
        for j, entry in enumerate(vec):
            term = entry * NovikovElement(group, order, cc.d1[j], entry.cutoff)
            total = term if total is None else total + term
        assert total is not None
        if not total.is_zero_mod():
            raise EngineError("cycle basis verification failed: d1(e_t') != 0 modulo cutoff")

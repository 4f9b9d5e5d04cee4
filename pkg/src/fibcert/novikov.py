"""Truncated Novikov-ring arithmetic over a character with compatible order.

A NovikovElement is a group-ring body plus a cutoff: it represents a Novikov
ring element modulo terms of phi-value >= cutoff.  Products track how far the
truncation stays trustworthy; inversion uses the Neumann series under the
strict-gap condition and verifies itself by independent multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .characters import CompatibleOrder
from .errors import EngineError, InconclusiveAtCutoff, StrictGapViolation, ValidationError
from .groupring import RingElement, compare_monomials, leading_pair, valuation
from .presentation import GroupPresentation
from .valuefield import PLUS_INFINITY, FieldElement, Infinity
from .words import Word, invert_word

Cutoff = FieldElement | Infinity

_SERIES_GUARD = 100_000


def _vadd(a: Cutoff, b: Cutoff) -> Cutoff:
    if a is PLUS_INFINITY or b is PLUS_INFINITY:
        return PLUS_INFINITY
    return a + b


def _vmin(*values: Cutoff) -> Cutoff:
    best = PLUS_INFINITY
    for v in values:
        if v < best:
            best = v
    return best


class NovikovElement:
    """Group-ring element known modulo phi-values >= cutoff."""

    __slots__ = ("group", "order", "body", "cutoff")

    def __init__(
        self,
        group: GroupPresentation,
        order: CompatibleOrder,
        body: RingElement,
        cutoff: Cutoff,
    ) -> None:
        self.group = group
        self.order = order
        self.cutoff = cutoff
        if cutoff is PLUS_INFINITY:
            self.body = body
        else:
            kept = RingElement(group)
            phi = order.character
            kept.terms = {
                w: c for w, c in body.terms.items()
                if phi.on_vector(group.alpha(w)) < cutoff
            }
            self.body = kept

    def value(self, word: Word) -> FieldElement:
        return self.order.character.on_vector(self.group.alpha(word))

    def valuation(self) -> Cutoff:
        return valuation(self.body, self.order.character)

    def truncate(self, cutoff: Cutoff) -> "NovikovElement":
        if cutoff == self.cutoff:
            return self
        return NovikovElement(self.group, self.order, self.body, _vmin(cutoff, self.cutoff))

    def is_zero_mod(self) -> bool:
        return self.body.is_zero()

    def is_one_mod(self) -> bool:
        if self.cutoff is not PLUS_INFINITY and self.cutoff.sign() <= 0:
            return True  # no information below a non-positive cutoff
        return self.body == RingElement.one(self.group)

    def _require_compatible(self, other: "NovikovElement") -> None:
        if self.group is not other.group:
            raise ValidationError("Novikov elements live over different presentations")
        if self.order.character != other.order.character:
            raise ValidationError("character mismatch in Novikov arithmetic")

    def __add__(self, other: "NovikovElement") -> "NovikovElement":
        self._require_compatible(other)
        return NovikovElement(
            self.group, self.order, self.body + other.body, _vmin(self.cutoff, other.cutoff)
        )

    def __sub__(self, other: "NovikovElement") -> "NovikovElement":
        return self + (-other)

    def __neg__(self) -> "NovikovElement":
        return NovikovElement(self.group, self.order, -self.body, self.cutoff)

    def scale(self, q) -> "NovikovElement":
        return NovikovElement(self.group, self.order, self.body.scale(q), self.cutoff)

    def __mul__(self, other: "NovikovElement") -> "NovikovElement":
        """Truncated product: cutoff = min(c_x + phi(y), c_y + phi(x), c_x + c_y)."""
        self._require_compatible(other)
        cutoff = _vmin(
            _vadd(self.cutoff, other.valuation()),
            _vadd(other.cutoff, self.valuation()),
            _vadd(self.cutoff, other.cutoff),
        )
        phi = self.order.character
        group = self.group
        acc: dict[Word, Fraction] = {}
        values = {w: phi.on_vector(group.alpha(w)) for w in self.body.terms}
        other_values = {w: phi.on_vector(group.alpha(w)) for w in other.body.terms}
        for wx, cx in self.body.terms.items():
            vx = values[wx]
            for wy, cy in other.body.terms.items():
                if cutoff is not PLUS_INFINITY and not (vx + other_values[wy] < cutoff):
                    continue  # term lands at or above the cutoff; prune during accumulation
                key = group.nf_word(wx + wy)
                s = acc.get(key, Fraction(0)) + cx * cy
                if s:
                    acc[key] = s
                else:
                    del acc[key]
        body = RingElement(group)
        body.terms = acc
        return NovikovElement(group, self.order, body, cutoff)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NovikovElement)
            and self.group is other.group
            and self.order.character == other.order.character
            and self.cutoff == other.cutoff
            and self.body == other.body
        )

    def __hash__(self):
        return hash((id(self.group), self.cutoff, frozenset(self.body.terms.items())))

    def __repr__(self) -> str:
        return f"({self.body!r} mod {self.cutoff!r})"


def novikov(group, order, body, cutoff) -> NovikovElement:
    return NovikovElement(group, order, body, cutoff)


def novikov_one(group, order, cutoff) -> NovikovElement:
    return NovikovElement(group, order, RingElement.one(group), cutoff)


def novikov_zero(group, order, cutoff) -> NovikovElement:
    return NovikovElement(group, order, RingElement.zero(group), cutoff)


def strict_gap(x: NovikovElement) -> tuple[Word, Fraction, Cutoff]:
    """Leading monomial of x and the valuation gap to the rest of the support.

    Gap is +infinity for monomials.  Raises StrictGapViolation when some
    non-leading term has phi-value <= the leading value.
    """
    if x.body.is_zero():
        raise ValidationError("zero element has no leading term")
    word, coeff = leading_pair(x.body, x.order)
    lead_val = x.value(word)
    rest_val = PLUS_INFINITY
    for w in x.body.terms:
        if w != word:
            v = x.value(w)
            if v < rest_val:
                rest_val = v
    if rest_val is PLUS_INFINITY:
        return word, coeff, PLUS_INFINITY
    gap = rest_val - lead_val
    if gap.sign() <= 0:
        raise StrictGapViolation(
            f"no strict valuation gap: leading value {lead_val!r}, next value {rest_val!r}"
        )
    return word, coeff, gap


def invert(x: NovikovElement) -> NovikovElement:
    """Neumann-series inverse of a strict-gap element, verified two-sided."""
    word, coeff, gap = strict_gap(x)
    group, order = x.group, x.order
    lead_val = x.value(word)
    ginv = RingElement.monomial(group, invert_word(word), Fraction(1) / coeff)
    if gap is PLUS_INFINITY:
        cutoff = x.cutoff
        if cutoff is not PLUS_INFINITY:
            cutoff = cutoff - lead_val - lead_val
        result = NovikovElement(group, order, ginv, cutoff)
        _verify_inverse(x, result)
        return result
    if x.cutoff is PLUS_INFINITY:
        raise ValidationError(
            "inverting a non-monomial requires a finite cutoff: the series is infinite"
        )
    # x = lead (1 - y) with phi(y) = gap > 0; series runs at cutoff - phi(x)
    rest = x.body - RingElement.monomial(group, word, coeff)
    y = NovikovElement(
        group, order, (ginv * rest).scale(-1), x.cutoff - lead_val
    )
    series_cutoff = x.cutoff - lead_val
    acc = novikov_one(group, order, series_cutoff)
    term = acc
    for _ in range(_SERIES_GUARD):
        term = (term * y).truncate(series_cutoff)
        if term.is_zero_mod():
            break
        acc = acc + term
    else:
        raise EngineError("Neumann series did not terminate within the step guard")
    inv_body = acc.body * ginv
    result = NovikovElement(group, order, inv_body, x.cutoff - lead_val - lead_val)
    _verify_inverse(x, result)
    return result


def _verify_inverse(x: NovikovElement, z: NovikovElement) -> None:
    for prod in (x * z, z * x):
        if not prod.is_one_mod():
            raise EngineError("inverse verification failed: product is not 1 modulo cutoff")


class NovikovMatrix:
    """Dense matrix of NovikovElements sharing one character and one cutoff."""

    __slots__ = ("group", "order", "entries", "cutoff")

    def __init__(self, entries) -> None:
        rows = [list(row) for row in entries]
        if not rows or not rows[0]:
            raise ValidationError("empty matrix")
        first = rows[0][0]
        self.group = first.group
        self.order = first.order
        cutoff = PLUS_INFINITY
        for row in rows:
            if len(row) != len(rows[0]):
                raise ValidationError("ragged matrix")
            for e in row:
                first._require_compatible(e)
                cutoff = _vmin(cutoff, e.cutoff)
        self.cutoff = cutoff
        self.entries = tuple(tuple(e.truncate(cutoff) for e in row) for row in rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    def entry(self, i: int, j: int) -> NovikovElement:
        return self.entries[i][j]

    @staticmethod
    def identity(n: int, group, order, cutoff) -> "NovikovMatrix":
        one = novikov_one(group, order, cutoff)
        zero = novikov_zero(group, order, cutoff)
        return NovikovMatrix([[one if i == j else zero for j in range(n)] for i in range(n)])

    def __mul__(self, other: "NovikovMatrix") -> "NovikovMatrix":
        rows, mid = self.shape
        mid2, cols = other.shape
        if mid != mid2:
            raise ValidationError(f"shape mismatch: {self.shape} * {other.shape}")
        out = []
        for i in range(rows):
            row = []
            for j in range(cols):
                acc = self.entries[i][0] * other.entries[0][j]
                for k in range(1, mid):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return NovikovMatrix(out)

    def __add__(self, other: "NovikovMatrix") -> "NovikovMatrix":
        if self.shape != other.shape:
            raise ValidationError("shape mismatch in matrix addition")
        return NovikovMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "NovikovMatrix") -> "NovikovMatrix":
        if self.shape != other.shape:
            raise ValidationError("shape mismatch in matrix subtraction")
        return NovikovMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def truncate(self, cutoff: Cutoff) -> "NovikovMatrix":
        return NovikovMatrix([[e.truncate(cutoff) for e in row] for row in self.entries])

    def is_identity_mod(self) -> bool:
        rows, cols = self.shape
        if rows != cols:
            return False
        return all(
            (self.entries[i][j].is_one_mod() if i == j else self.entries[i][j].is_zero_mod())
            for i in range(rows)
            for j in range(cols)
        )

    def is_diagonal_block_mod(self, rank: int) -> bool:
        rows, cols = self.shape
        for i in range(rows):
            for j in range(cols):
                e = self.entries[i][j]
                if i == j and i < rank:
                    if not e.is_one_mod():
                        return False
                elif not e.is_zero_mod():
                    return False
        return True

    def __repr__(self) -> str:
        rows, cols = self.shape
        return f"NovikovMatrix({rows}x{cols} mod {self.cutoff!r})"


def invert_matrix(m: NovikovMatrix) -> NovikovMatrix:
    """Neumann-series inverse of I - M where M has strictly positive valuations."""
    rows, cols = m.shape
    if rows != cols:
        raise ValidationError(f"cannot invert a {rows}x{cols} matrix")
    eye = NovikovMatrix.identity(rows, m.group, m.order, m.cutoff)
    em = eye - m
    for row in em.entries:
        for e in row:
            v = e.valuation()
            if v is not PLUS_INFINITY and v.sign() <= 0:
                raise ValidationError(
                    "matrix is not I - M with strictly positive valuations in M"
                )
    total = eye
    power = eye
    for _ in range(_SERIES_GUARD):
        power = (power * em).truncate(m.cutoff)
        if all(e.is_zero_mod() for row in power.entries for e in row):
            break
        total = total + power
    else:
        raise EngineError("matrix Neumann series did not terminate")
    for prod in (m * total, total * m):
        if not prod.is_identity_mod():
            raise EngineError("matrix inverse verification failed")
    return total


@dataclass
class EliminationResult:
    """Diagonalization witness: L m R = diag(1,...,1,0,...) modulo cutoff."""

    rank: int
    pivots: tuple[tuple[int, int], ...]
    pivot_words: tuple[Word, ...]
    lhs: NovikovMatrix
    lhs_inv: NovikovMatrix
    rhs: NovikovMatrix
    rhs_inv: NovikovMatrix
    margin: Cutoff
    cutoff: Cutoff


def _pick_pivot(work, active_rows, active_cols, order, group):
    """Minimal-valuation entries ordered by compatible order then row-major."""
    best = PLUS_INFINITY
    for i in active_rows:
        for j in active_cols:
            e = work[i][j]
            if not e.is_zero_mod():
                v = e.valuation()
                if v < best:
                    best = v
    if best is PLUS_INFINITY:
        return []
    cands = [
        (i, j)
        for i in active_rows
        for j in active_cols
        if not work[i][j].is_zero_mod() and work[i][j].valuation() == best
    ]

    def cmp(a, b):
        wa, _ = leading_pair(work[a[0]][a[1]].body, order)
        wb, _ = leading_pair(work[b[0]][b[1]].body, order)
        s = compare_monomials(order, group, wa, wb)
        if s:
            return s
        return -1 if a < b else (1 if a > b else 0)

    return sorted(cands, key=cmp_to_key(cmp))


def eliminate(m: NovikovMatrix) -> EliminationResult:
    """Valuation-greedy two-sided Gaussian elimination with explicit transforms.

    Pivots must be invertible by the strict-gap series; when every remaining
    minimal-valuation entry fails that test, the elimination is inconclusive
    at the current cutoff.  A zero remaining block is a normal finish.
    """
    rows, cols = m.shape
    group, order = m.group, m.order
    work = [[m.entry(i, j) for j in range(cols)] for i in range(rows)]
    lhs = [[e for e in row] for row in NovikovMatrix.identity(rows, group, order, m.cutoff).entries]
    lhs_inv = [[e for e in row] for row in lhs]
    rhs = [[e for e in row] for row in NovikovMatrix.identity(cols, group, order, m.cutoff).entries]
    rhs_inv = [[e for e in row] for row in rhs]

    pivots: list[tuple[int, int]] = []
    pivot_words: list[Word] = []
    margin: Cutoff = PLUS_INFINITY
    k = 0
    while k < min(rows, cols):
        active_rows = range(k, rows)
        active_cols = range(k, cols)
        cands = _pick_pivot(work, active_rows, active_cols, order, group)
        if not cands:
            break
        picked = None
        last_error = None
        for (i, j) in cands:
            try:
                pivot_inv = invert(work[i][j])
            except StrictGapViolation as exc:
                last_error = exc
                continue
            picked = (i, j, pivot_inv)
            break
        if picked is None:
            raise InconclusiveAtCutoff(
                f"no minimal-valuation entry admits a strict-gap inverse ({last_error})",
                cutoff=m.cutoff,
            )
        i, j, pivot_inv = picked
        pivot_entry = work[i][j]
        _, _, gap = strict_gap(pivot_entry)
        margin = _vmin(margin, gap)
        pivots.append((i, j))
        pivot_words.append(leading_pair(pivot_entry.body, order)[0])
        # move pivot to (k, k)
        if i != k:
            work[i], work[k] = work[k], work[i]
            lhs[i], lhs[k] = lhs[k], lhs[i]
            for r in range(rows):
                lhs_inv[r][i], lhs_inv[r][k] = lhs_inv[r][k], lhs_inv[r][i]
        if j != k:
            for r in range(rows):
                work[r][j], work[r][k] = work[r][k], work[r][j]
            for r in range(cols):
                rhs[r][j], rhs[r][k] = rhs[r][k], rhs[r][j]
            rhs_inv[j], rhs_inv[k] = rhs_inv[k], rhs_inv[j]
        # normalize the pivot row on the left
        saved_pivot = work[k][k]
        work[k] = [pivot_inv * e for e in work[k]]
        lhs[k] = [pivot_inv * e for e in lhs[k]]
        for r in range(rows):
            lhs_inv[r][k] = lhs_inv[r][k] * saved_pivot
        # clear the pivot column with row operations
        for r in range(rows):
            if r == k:
                continue
            c = work[r][k]
            if c.is_zero_mod():
                continue
            work[r] = [er - c * ek for er, ek in zip(work[r], work[k])]
            lhs[r] = [er - c * ek for er, ek in zip(lhs[r], lhs[k])]
            for rr in range(rows):
                lhs_inv[rr][k] = lhs_inv[rr][k] + lhs_inv[rr][r] * c
        # clear the pivot row with column operations
        for s in range(cols):
            if s == k:
                continue
            c = work[k][s]
            if c.is_zero_mod():
                continue
            for r in range(rows):
                work[r][s] = work[r][s] - work[r][k] * c
            for r in range(cols):
                rhs[r][s] = rhs[r][s] - rhs[r][k] * c
            rhs_inv[k] = [ek + c * es for ek, es in zip(rhs_inv[k], rhs_inv[s])]
        k += 1

    result = EliminationResult(
        rank=len(pivots),
        pivots=tuple(pivots),
        pivot_words=tuple(pivot_words),
        lhs=NovikovMatrix(lhs),
        lhs_inv=NovikovMatrix(lhs_inv),
        rhs=NovikovMatrix(rhs),
        rhs_inv=NovikovMatrix(rhs_inv),
        margin=margin,
        cutoff=m.cutoff,
    )
    _verify_elimination(m, result)
    return result


def _verify_elimination(m: NovikovMatrix, res: EliminationResult) -> None:
    reduced = res.lhs * m * res.rhs
    if not reduced.is_diagonal_block_mod(res.rank):
        raise EngineError("elimination verification failed: L m R is not the claimed form")
    for a, b in ((res.lhs, res.lhs_inv), (res.rhs, res.rhs_inv)):
        if not (a * b).is_identity_mod() or not (b * a).is_identity_mod():
            raise EngineError("elimination verification failed: transform inverses do not check")

"""Finite quotients with sections, coset decomposition, and subgroup presentations.

A finite quotient beta: G -> Q is given by an explicit multiplication table
(index 0 is the identity), generator images, and a set-theoretic section s
with s(1) = 1.  Kernel presentations come from Reidemeister-Schreier
rewriting over an internal shortlex transversal.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import ValidationError
from .presentation import Abelianization, GroupElement, GroupPresentation, shortlex_words
from .words import EMPTY, Word, free_reduce, gen_index, invert_word

DEFAULT_MAX_Q = 64


def max_quotient_order() -> int:
    """Configured bound on |Q|, from NOVIKOV_MAX_Q (default 64)."""
    raw = os.environ.get("NOVIKOV_MAX_Q", "")
    if not raw:
        return DEFAULT_MAX_Q
    try:
        bound = int(raw)
    except ValueError as exc:
        raise ValidationError(f"NOVIKOV_MAX_Q must be an integer, got {raw!r}") from exc
    if bound < 1:
        raise ValidationError(f"NOVIKOV_MAX_Q must be positive, got {bound}")
    return bound


def _validate_table(table: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Check the multiplication table defines a group with identity 0; return inverses."""
    n = len(table)
    if n == 0:
        raise ValidationError("empty multiplication table")
    for row in table:
        if len(row) != n or any(not (0 <= e < n) for e in row):
            raise ValidationError("multiplication table is not a square array over 0..|Q|-1")
    for q in range(n):
        if table[0][q] != q or table[q][0] != q:
            raise ValidationError("table index 0 is not a two-sided identity")
    for q in range(n):
        if sorted(table[q]) != list(range(n)) or sorted(table[p][q] for p in range(n)) != list(range(n)):
            raise ValidationError(f"table row/column {q} is not a permutation")
    for a in range(n):
        ra = table[a]
        for b in range(n):
            rab = table[ra[b]]
            rb = table[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise ValidationError(f"table is not associative at ({a},{b},{c})")
    inv = [0] * n
    for q in range(n):
        p = table[q].index(0)
        if table[p][q] != 0:
            raise ValidationError(f"element {q} has no two-sided inverse")
        inv[q] = p
    return tuple(inv)


class FiniteQuotient:
    """A surjection beta: G -> Q with multiplication table, images, and section."""

    def __init__(
        self,
        group: GroupPresentation,
        table: tuple[tuple[int, ...], ...] | list,
        images: tuple[int, ...] | list,
        section: dict[int, Word] | None = None,
        kernel_name: str = "H",
    ) -> None:
        if group.engine is None:
            raise ValidationError("quotient requires a group with a normal-form engine")
        self.group = group
        self.table = tuple(tuple(row) for row in table)
        self._inv = _validate_table(self.table)
        bound = max_quotient_order()
        if self.order > bound:
            raise ValidationError(f"|Q| = {self.order} exceeds configured bound {bound}")
        self.images = tuple(images)
        if len(self.images) != group.n_gens or any(not (0 <= g < self.order) for g in self.images):
            raise ValidationError("generator image list does not match the presentation")
        for rel in group.relators:
            if self.beta(rel) != 0:
                raise ValidationError(
                    f"images do not define a homomorphism: relator "
                    f"{group.format_word(rel)} maps to {self.beta(rel)}"
                )
        self.kernel_name = kernel_name
        if section is None:
            self.section = self._default_section()
        else:
            sec = [EMPTY] * self.order
            for q, w in section.items():
                sec[q] = tuple(w)
            if sec[0] != EMPTY:
                raise ValidationError("section must map the identity to the empty word")
            for q, w in enumerate(sec):
                if self.beta(w) != q:
                    raise ValidationError(f"section({q}) is not a preimage of {q}")
            self.section = tuple(sec)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, p: int, q: int) -> int:
        return self.table[p][q]

    def inv(self, q: int) -> int:
        return self._inv[q]

    def beta_letter(self, letter: int) -> int:
        img = self.images[gen_index(letter)]
        return img if letter > 0 else self._inv[img]

    def beta(self, word: Word) -> int:
        q = 0
        for lt in word:
            q = self.table[q][self.beta_letter(lt)]
        return q

    def _default_section(self) -> tuple[Word, ...]:
        # BFS over the Cayley graph of Q in shortlex word order: the first word
        # reaching a class is its shortlex-minimal preimage.
        found: dict[int, Word] = {0: EMPTY}
        queue: list[tuple[Word, int]] = [(EMPTY, 0)]
        letters = [s * (j + 1) for j in range(self.group.n_gens) for s in (1, -1)]
        while queue and len(found) < self.order:
            word, state = queue.pop(0)
            for lt in letters:
                nxt = self.table[state][self.beta_letter(lt)]
                if nxt not in found:
                    found[nxt] = word + (lt,)
                    queue.append((word + (lt,), nxt))
        if len(found) < self.order:
            raise ValidationError("generator images do not generate Q")
        return tuple(found[q] for q in range(self.order))

    def section_power(self, q: int) -> Word:
        """s(q)^|Q|, an element of ker beta by Lagrange."""
        word = self.section[q] * self.order
        if self.beta(word) != 0:
            raise ValidationError("section power left the kernel; quotient data corrupt")
        return word

    def coset_decompose(self, g: GroupElement | Word) -> tuple[GroupElement, int]:
        """Write g = h * s(q) with beta(h) = 1; h is returned in normal form."""
        word = g.word if isinstance(g, GroupElement) else tuple(g)
        q = self.beta(word)
        h = self.group.normal_form(word + invert_word(self.section[q]))
        return h, q


class SubgroupPresentation:
    """Presentation of H = ker beta with translation maps to and from G.

    Schreier generators are the pairs gamma(q, x) = t(q) x t(q beta(x))^{-1}
    over an internal prefix-closed shortlex transversal; pairs whose word is
    trivial in G are killed.  tau rewrites kernel words of G into H-words,
    include embeds H-words back into G.
    """

    def __init__(self, group: GroupPresentation, quotient: FiniteQuotient) -> None:
        self.group = group
        self.quotient = quotient
        n = quotient.order
        self.transversal = self._schreier_transversal()
        # gen_of[(q, j)] -> H generator index, or None when killed
        self.gen_of: dict[tuple[int, int], int | None] = {}
        names: list[str] = []
        inclusion: list[Word] = []
        pairs: list[tuple[int, int]] = []
        for q in range(n):
            for j in range(group.n_gens):
                target = quotient.mul(q, quotient.beta_letter(j + 1))
                raw = self.transversal[q] + (j + 1,) + invert_word(self.transversal[target])
                nf = group.nf_word(raw)
                if nf == EMPTY:
                    self.gen_of[(q, j)] = None
                else:
                    self.gen_of[(q, j)] = len(names)
                    names.append(f"{group.generators[j]}_{q}")
                    inclusion.append(nf)
                    pairs.append((q, j))
        self.pairs = tuple(pairs)
        self.inclusion = tuple(inclusion)
        relators = []
        for q in range(n):
            for rel in group.relators:
                image = self._rewrite(rel, q)
                if image != EMPTY:
                    relators.append(image)
        if quotient.order == 1:
            self.presentation = group
        else:
            self.presentation = GroupPresentation(tuple(names), tuple(relators), engine=None)

    def _schreier_transversal(self) -> tuple[Word, ...]:
        # Prefix-closed shortlex transversal, independent of the user section.
        found: dict[int, Word] = {0: EMPTY}
        for word in shortlex_words(self.group.n_gens):
            if len(found) == self.quotient.order:
                break
            if free_reduce(word) != word:
                continue
            q = self.quotient.beta(word)
            if q not in found:
                found[q] = word
        return tuple(found[q] for q in range(self.quotient.order))

    def _rewrite(self, word: Word, start: int = 0) -> Word:
        """Reidemeister-Schreier rewriting of a G-word read from coset `start`."""
        out: list[int] = []
        state = start
        for lt in word:
            j = gen_index(lt)
            if lt > 0:
                idx = self.gen_of[(state, j)]
                if idx is not None:
                    out.append(idx + 1)
                state = self.quotient.mul(state, self.quotient.beta_letter(lt))
            else:
                state = self.quotient.mul(state, self.quotient.beta_letter(lt))
                idx = self.gen_of[(state, j)]
                if idx is not None:
                    out.append(-(idx + 1))
        return free_reduce(tuple(out))

    def contains(self, g_word: Word) -> bool:
        return self.quotient.beta(g_word) == 0

    def tau(self, g_word: Word) -> Word:
        """Rewrite a kernel word of G as a word over the H generators."""
        if not self.contains(g_word):
            raise ValidationError("tau applied to a word outside the kernel")
        if self.quotient.order == 1:
            return tuple(g_word)
        return self._rewrite(g_word, 0)

    def include(self, h_word: Word) -> Word:
        """Embed an H-word into G, in normal form."""
        if self.quotient.order == 1:
            return self.group.nf_word(h_word)
        out: list[int] = []
        for lt in h_word:
            piece = self.inclusion[gen_index(lt)]
            out.extend(piece if lt > 0 else invert_word(piece))
        return self.group.nf_word(tuple(out))

    def abelianization(self) -> Abelianization:
        return self.presentation.abelianization()

    def alpha(self, h_word: Word) -> tuple[int, ...]:
        return self.presentation.alpha(h_word)


def subgroup_presentation(p: GroupPresentation, quot: FiniteQuotient) -> SubgroupPresentation:
    """Reidemeister-Schreier presentation of ker(beta) with translation maps."""
    if quot.group is not p:
        raise ValidationError("quotient was built for a different presentation")
    if quot.order > max_quotient_order():
        raise ValidationError(f"|Q| = {quot.order} exceeds configured bound {max_quotient_order()}")
    return SubgroupPresentation(p, quot)

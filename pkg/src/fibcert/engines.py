"""Normal-form engines: RAAG traces and shortlex rewriting systems.

RaagEngine computes the leftmost-least lexicographic normal form of a
trace group (right-angled Artin group) by greedy left insertion with
cancellation.  RewritingEngine runs a user-supplied rewriting system whose
rules must each be strictly shortlex-decreasing; at construction it checks
local confluence on all critical pairs up to a configured overlap length
(12 by default) and refuses the system otherwise.  Knuth-Bendix completion
is deliberately not performed; systems are taken as given.
"""

from __future__ import annotations

from .errors import EngineError
from .words import Word, free_reduce, letter_order, shortlex_key, validate_word

DEFAULT_MAX_OVERLAP = 12
DEFAULT_STEP_BUDGET = 200_000


class RaagEngine:
    """Leftmost-least normal forms for a RAAG on n generators.

    edges holds unordered pairs of 0-based generator indices whose
    generators commute.  Letters of the same generator always commute.
    """

    variant = "raag"

    def __init__(self, n_gens: int, edges):
        self.n_gens = n_gens
        adj = [set() for _ in range(n_gens)]
        norm_edges = set()
        for e in edges:
            i, j = sorted(e)
            if i == j:
                raise EngineError("a commutation edge must join distinct generators")
            if not (0 <= i < n_gens and 0 <= j < n_gens):
                raise EngineError("commutation edge outside the generator set")
            adj[i].add(j)
            adj[j].add(i)
            norm_edges.add((i, j))
        self.adjacency = adj
        self.edges = frozenset(norm_edges)
        self._edgeless = not norm_edges
        self._complete = all(len(adj[i]) == n_gens - 1 for i in range(n_gens))

    def commutes(self, a: int, b: int) -> bool:
        """Whether letters a, b commute (same generator or joined by an edge)."""
        i, j = abs(a) - 1, abs(b) - 1
        return i == j or j in self.adjacency[i]

    def normal_form(self, word: Word) -> Word:
        validate_word(word, self.n_gens)
        # the two extreme graphs admit linear-time forms that agree with the
        # greedy insertion: free reduction, and per-generator net exponents
        if self._edgeless:
            return free_reduce(word)
        if self._complete:
            counts = [0] * self.n_gens
            for lt in word:
                counts[abs(lt) - 1] += 1 if lt > 0 else -1
            out: list[int] = []
            for g, e in enumerate(counts):
                out.extend([g + 1 if e > 0 else -(g + 1)] * abs(e))
            return tuple(out)
        out = []
        for lt in word:
            self._insert(out, lt)
        return tuple(out)

    def _insert(self, out: list[int], lt: int) -> None:
        # Walk left through the commuting suffix; cancel on meeting the
        # inverse letter, otherwise insert at the lex-least legal position.
        barrier = len(out)
        for i in range(len(out) - 1, -1, -1):
            if not self.commutes(out[i], lt):
                break
            if out[i] == -lt:
                del out[i]
                return
            barrier = i
        pos = len(out)
        for i in range(barrier, len(out)):
            if letter_order(out[i]) > letter_order(lt):
                pos = i
                break
        out.insert(pos, lt)


class RewritingEngine:
    """A finite rewriting system with strictly shortlex-decreasing rules.

    Free reduction (x x^-1 -> 1) is built in.  Rewriting applies the
    leftmost redex each step, preferring free reduction, then rules in
    their given order; each step strictly decreases the shortlex key of
    the whole word, so rewriting terminates, with a step budget guarding
    against oversized inputs.
    """

    variant = "rewriting"

    def __init__(
        self,
        n_gens: int,
        rules,
        max_overlap: int = DEFAULT_MAX_OVERLAP,
        step_budget: int = DEFAULT_STEP_BUDGET,
        check_confluence: bool = True,
    ):
        self.n_gens = n_gens
        self.step_budget = step_budget
        self.max_overlap = max_overlap
        clean: list[tuple[Word, Word]] = []
        for lhs, rhs in rules:
            lhs, rhs = tuple(lhs), tuple(rhs)
            validate_word(lhs, n_gens)
            validate_word(rhs, n_gens)
            if not lhs:
                raise EngineError("rewriting rule with empty left side")
            if shortlex_key(lhs) <= shortlex_key(rhs):
                raise EngineError(
                    f"rule is not shortlex-decreasing: {lhs} -> {rhs}"
                )
            clean.append((lhs, rhs))
        free_rules = []
        for g in range(1, n_gens + 1):
            free_rules.append(((g, -g), ()))
            free_rules.append(((-g, g), ()))
        self.rules: list[tuple[Word, Word]] = free_rules + clean
        if check_confluence:
            self._check_local_confluence()

    def normal_form(self, word: Word) -> Word:
        validate_word(word, self.n_gens)
        current = list(free_reduce(word))
        steps = 0
        while True:
            redex = self._leftmost_redex(current)
            if redex is None:
                return tuple(current)
            steps += 1
            if steps > self.step_budget:
                raise EngineError(
                    f"rewriting exceeded the step budget ({self.step_budget})"
                )
            start, (lhs, rhs) = redex
            current[start : start + len(lhs)] = list(rhs)

    def _leftmost_redex(self, current: list[int]):
        n = len(current)
        for start in range(n):
            for rule in self.rules:
                lhs = rule[0]
                if len(lhs) <= n - start and tuple(current[start : start + len(lhs)]) == lhs:
                    return start, rule
        return None

    def _check_local_confluence(self) -> None:
        """Resolve every critical pair whose overlap word has length at most
        max_overlap; raise EngineError with a counterexample otherwise."""
        for l1, r1 in self.rules:
            for l2, r2 in self.rules:
                for word, a, b in _critical_pairs(l1, r1, l2, r2):
                    if len(word) > self.max_overlap:
                        continue
                    if self.normal_form(a) != self.normal_form(b):
                        raise EngineError(
                            "rewriting system is not locally confluent: "
                            f"overlap {word} rewrites to both {a} and {b}"
                        )


def _critical_pairs(l1: Word, r1: Word, l2: Word, r2: Word):
    """Yield (overlap word, one-step result via rule 1, via rule 2)."""
    # Proper suffix of l1 equals proper prefix of l2.
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            word = l1 + l2[k:]
            a = r1 + l2[k:]
            b = l1[:-k] + r2
            yield word, a, b
    # l2 occurs inside l1 (strict containment).
    if len(l2) < len(l1) or (len(l2) == len(l1) and l1 != l2):
        for i in range(len(l1) - len(l2) + 1):
            if l1[i : i + len(l2)] == l2:
                word = l1
                a = r1
                b = l1[:i] + r2 + l1[i + len(l2) :]
                yield word, a, b

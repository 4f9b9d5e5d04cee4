"""Words over a generating set, as tuples of signed letters.

Generator i (0-based) is the letter i + 1; its inverse is -(i + 1).  The
empty tuple is the identity.  Shortlex order fixes the letter sequence
g0 < g0^-1 < g1 < g1^-1 < ... so that every total order used elsewhere
(rewriting orientation, default sections, serialization) is derived from
the declared generator order.
"""

from __future__ import annotations

import re

from .errors import ParseError

Word = tuple[int, ...]

EMPTY: Word = ()

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_POWER_RE = re.compile(r"\^(-?\d+)")


def letter(gen_index: int, sign: int = 1) -> int:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if gen_index < 0:
        raise ValueError("generator index must be nonnegative")
    return sign * (gen_index + 1)


def gen_index(lt: int) -> int:
    return abs(lt) - 1


def letter_order(lt: int) -> int:
    """Position of the letter in the fixed order g0 < g0^-1 < g1 < ..."""
    return 2 * (abs(lt) - 1) + (0 if lt > 0 else 1)


def shortlex_key(word: Word) -> tuple:
    return (len(word), tuple(letter_order(lt) for lt in word))


def invert_word(word: Word) -> Word:
    return tuple(-lt for lt in reversed(word))


def free_reduce(word: Word) -> Word:
    out: list[int] = []
    for lt in word:
        if out and out[-1] == -lt:
            out.pop()
        else:
            out.append(lt)
    return tuple(out)


def exponent_vector(word: Word, n_gens: int) -> tuple[int, ...]:
    vec = [0] * n_gens
    for lt in word:
        vec[gen_index(lt)] += 1 if lt > 0 else -1
    return tuple(vec)


def parse_word(text: str, gen_names: tuple[str, ...]) -> Word:
    """Parse a word like "t a^-1 b" or the dense form "ta^-1b".

    Tokens are generator names with an optional integer power suffix
    written as ^k.  Within a whitespace-free run, names are matched
    greedily longest-first so single-letter alphabets also accept "abab".
    """
    text = text.strip()
    if text == "1":
        return EMPTY
    by_length = sorted(gen_names, key=len, reverse=True)
    word: list[int] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        name = next((g for g in by_length if text.startswith(g, pos)), None)
        if name is None:
            raise ParseError(f"unknown generator at {text[pos:]!r}")
        pos += len(name)
        power = 1
        m = _POWER_RE.match(text, pos)
        if m:
            power = int(m.group(1))
            pos = m.end()
        idx = gen_names.index(name)
        lt = letter(idx, 1 if power >= 0 else -1)
        word.extend([lt] * abs(power))
    return tuple(word)


def format_word(word: Word, gen_names: tuple[str, ...]) -> str:
    """Inverse of parse_word, with runs collapsed into powers."""
    if not word:
        return "1"
    parts: list[str] = []
    i = 0
    while i < len(word):
        lt = word[i]
        j = i
        while j < len(word) and word[j] == lt:
            j += 1
        count = j - i
        name = gen_names[gen_index(lt)]
        power = count if lt > 0 else -count
        parts.append(name if power == 1 else f"{name}^{power}")
        i = j
    return " ".join(parts)


def validate_word(word: Word, n_gens: int) -> None:
    for lt in word:
        if not isinstance(lt, int) or lt == 0 or abs(lt) > n_gens:
            raise ParseError(f"letter {lt!r} outside the generator alphabet")

"""Z2-graded spaces and the word basis of the reduced symmetric coalgebra.

A word is an exponent tuple over the basis ``e1..em, f1..fn`` of ``W``
(even letters first).  Odd exponents are 0 or 1.  When a word has to be
read as a sequence of letters it is expanded in this canonical order, so
``e1^2f3`` is the sequence ``e1 e1 f3``.  Positions in unshuffles are
0-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import SpaceError

Word = tuple  # exponent tuple, length m + n


@dataclass(frozen=True)
class GradedSpace:
    even_dim: int
    odd_dim: int

    def __post_init__(self):
        if self.even_dim < 0 or self.odd_dim < 0 or self.even_dim + self.odd_dim < 1:
            raise SpaceError(f"invalid dimension {self.even_dim}|{self.odd_dim}")

    @classmethod
    def parse(cls, text: str) -> "GradedSpace":
        m = re.fullmatch(r"\s*(\d+)\s*\|\s*(\d+)\s*", text)
        if not m:
            raise SpaceError(f"cannot parse space {text!r}; expected 'm|n'", code="E_PARSE")
        return cls(int(m.group(1)), int(m.group(2)))

    def __str__(self):
        return f"{self.even_dim}|{self.odd_dim}"

    @property
    def dim(self) -> int:
        return self.even_dim + self.odd_dim

    @property
    def parities(self) -> tuple[int, ...]:
        return (0,) * self.even_dim + (1,) * self.odd_dim

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f"e{k}" for k in range(1, self.even_dim + 1)) + tuple(
            f"f{k}" for k in range(1, self.odd_dim + 1)
        )

    def letter_parity(self, j: int) -> int:
        return 0 if j < self.even_dim else 1

    @property
    def max_weight(self) -> int | None:
        """Largest weight with nonzero words; ``None`` when unbounded."""
        return self.odd_dim if self.even_dim == 0 else None

    def letter(self, j: int) -> Word:
        if not 0 <= j < self.dim:
            raise SpaceError(f"basis index {j + 1} out of range for {self}")
        return tuple(1 if k == j else 0 for k in range(self.dim))


def word_weight(word: Word) -> int:
    return sum(word)


def word_parity(space: GradedSpace, word: Word) -> int:
    return sum(word[space.even_dim:]) & 1


def word_letters(word: Word) -> tuple[int, ...]:
    out = []
    for j, e in enumerate(word):
        out.extend([j] * e)
    return tuple(out)


@lru_cache(maxsize=None)
def _sort_letters(parities: tuple[int, ...], letters: tuple[int, ...]):
    """Canonical word of a letter sequence and the Koszul sign of sorting."""
    n_letters = len(parities)
    exps = [0] * n_letters
    for j in letters:
        exps[j] += 1
        if parities[j] and exps[j] > 1:
            return None
    inv = 0
    odd_seen = []
    for j in letters:
        if parities[j]:
            inv += sum(1 for k in odd_seen if k > j)
            odd_seen.append(j)
    return (-1 if inv & 1 else 1), tuple(exps)


def letters_to_word(space: GradedSpace, letters: Sequence[int]):
    """``(sign, word)`` for the product of the letters, ``None`` if zero."""
    return _sort_letters(space.parities, tuple(letters))


def multiply_words(space: GradedSpace, a: Word, b: Word):
    return letters_to_word(space, word_letters(a) + word_letters(b))


def koszul_sign(permutation: Sequence[int], parities: Sequence[int]) -> int:
    """Sign ``e`` with ``w[p(0)]...w[p(n-1)] = e * w[0]...w[n-1]``."""
    n = len(permutation)
    if len(parities) != n or sorted(permutation) != list(range(n)):
        raise SpaceError(f"{list(permutation)} is not a permutation of 0..{len(parities) - 1}")
    inv = 0
    for a in range(n):
        pa = permutation[a]
        if not parities[pa]:
            continue
        for b in range(a + 1, n):
            pb = permutation[b]
            if pb < pa and parities[pb]:
                inv += 1
    return -1 if inv & 1 else 1


@dataclass(frozen=True)
class Unshuffle:
    left: tuple[int, ...]
    right: tuple[int, ...]
    sign: int


@lru_cache(maxsize=None)
def _unshuffles(k: int, parities: tuple[int, ...]) -> tuple[Unshuffle, ...]:
    total = len(parities)
    out = []
    for left in combinations(range(total), k):
        chosen = set(left)
        right = tuple(j for j in range(total) if j not in chosen)
        out.append(Unshuffle(left, right, koszul_sign(left + right, parities)))
    return tuple(out)


def unshuffles(k: int, total: int, letter_parities: Sequence[int]) -> list[Unshuffle]:
    if not 1 <= k <= total:
        raise SpaceError(f"unshuffle size {k} out of range 1..{total}")
    if len(letter_parities) != total:
        raise SpaceError("letter parities do not match the number of letters")
    return list(_unshuffles(k, tuple(letter_parities)))


def weight_basis(space: GradedSpace, weight: int) -> list[Word]:
    """All words of the given weight, ordered lexicographically by letters."""
    if weight < 1:
        raise SpaceError("weight must be at least 1")
    return list(_weight_basis(space, weight))


@lru_cache(maxsize=None)
def _weight_basis(space: GradedSpace, weight: int) -> tuple[Word, ...]:
    out = []
    n = space.dim
    from itertools import combinations_with_replacement

    for combo in combinations_with_replacement(range(n), weight):
        res = letters_to_word(space, combo)
        if res is not None:
            out.append(res[1])
    return tuple(out)


def weight_dimension(space: GradedSpace, weight: int) -> int:
    """Closed form for pure spaces, enumeration otherwise."""
    if space.even_dim == 0:
        return comb(space.odd_dim, weight)
    if space.odd_dim == 0:
        return comb(space.even_dim + weight - 1, weight)
    return len(_weight_basis(space, weight))


def coproduct(space: GradedSpace, word: Word) -> dict[tuple[Word, Word], int]:
    """Reduced coproduct: sum over unshuffles with both sides nonempty."""
    letters = word_letters(word)
    n = len(letters)
    pars = tuple(space.letter_parity(j) for j in letters)
    out: dict = {}
    for k in range(1, n):
        for sh in _unshuffles(k, pars):
            a = letters_to_word(space, [letters[i] for i in sh.left])
            b = letters_to_word(space, [letters[i] for i in sh.right])
            # subsequences of a canonical sequence are canonical and nonzero
            key = (a[1], b[1])
            out[key] = out.get(key, 0) + sh.sign
    return {k: v for k, v in out.items() if v}


_WORD_RE = re.compile(r"([ef])(\d+)(?:\^(\d+))?")


def parse_word(space: GradedSpace, text: str) -> Word:
    """Parse ``f1f2`` / ``e1^2f3`` or an exponent string like ``110``."""
    text = text.strip()
    if text.isdigit() and len(text) == space.dim:
        exps = tuple(int(c) for c in text)
        _check_word(space, exps, text)
        return exps
    pos = 0
    letters = []
    while pos < len(text):
        m = _WORD_RE.match(text, pos)
        if not m:
            raise SpaceError(f"cannot parse word {text!r}", code="E_PARSE")
        kind, idx, power = m.group(1), int(m.group(2)), int(m.group(3) or 1)
        bound = space.even_dim if kind == "e" else space.odd_dim
        if not 1 <= idx <= bound:
            raise SpaceError(f"letter {kind}{idx} not in space {space}", code="E_PARSE")
        j = idx - 1 if kind == "e" else space.even_dim + idx - 1
        letters.extend([j] * power)
        pos = m.end()
    if not letters:
        raise SpaceError("empty word", code="E_PARSE")
    res = letters_to_word(space, sorted(letters))
    if res is None:
        raise SpaceError(f"word {text!r} repeats an odd letter", code="E_PARSE")
    return res[1]


def _check_word(space: GradedSpace, exps: Word, text: str):
    if len(exps) != space.dim or sum(exps) < 1:
        raise SpaceError(f"invalid word {text!r} for space {space}", code="E_PARSE")
    for j, e in enumerate(exps):
        if space.letter_parity(j) and e > 1:
            raise SpaceError(f"word {text!r} repeats an odd letter", code="E_PARSE")


def format_word(space: GradedSpace, word: Word) -> str:
    parts = []
    for j, e in enumerate(word):
        if e:
            parts.append(space.names[j] + (f"^{e}" if e > 1 else ""))
    return "".join(parts)


def exponent_string(word: Word) -> str:
    """``110``-style index used in elementary map names (exponents <= 9)."""
    if any(e > 9 for e in word):
        raise SpaceError("exponent too large for compact notation")
    return "".join(str(e) for e in word)

"""Elements of a finitely generated free group.

A group word is stored in reduced syllable form: a tuple of
(letter index, nonzero exponent) pairs with no two consecutive syllables
sharing a letter.  Reduction happens on construction, so equal group
elements always compare equal.

The map ``tau`` sends a Lyndon word to an iterated commutator through the
standard factorization; together with p-th power maps these produce the
canonical generating family of each layer of the lower p-central series
(see ``gr_generators``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .words import Alphabet, Word, is_lyndon, lyndon_words, standard_factorization

Syllable = tuple[int, int]


def _reduce(syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    out: list[Syllable] = []
    for letter, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == letter:
            merged = out[-1][1] + exp
            out.pop()
            if merged != 0:
                out.append((letter, merged))
        else:
            out.append((letter, exp))
    return tuple(out)


@dataclass(frozen=True)
class GroupWord:
    """A reduced word in the free group on an alphabet."""

    alphabet: Alphabet
    syllables: tuple[Syllable, ...]

    def __post_init__(self):
        m = len(self.alphabet)
        reduced = _reduce(self.syllables)
        if reduced != self.syllables:
            object.__setattr__(self, "syllables", reduced)
        if any(not (0 <= l < m) for l, _ in self.syllables):
            raise ValueError("letter index out of range")

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "GroupWord":
        return cls(alphabet, ())

    @classmethod
    def generator(cls, alphabet: Alphabet, letter: str, exp: int = 1) -> "GroupWord":
        return cls(alphabet, ((alphabet.index(letter), exp),))

    @classmethod
    def from_word(cls, w: Word) -> "GroupWord":
        """Embed a plain word letter by letter (all exponents +1)."""
        return cls(w.alphabet, tuple((i, 1) for i in w.indices))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if self.alphabet != other.alphabet:
            raise ValueError("cannot multiply words over different alphabets")
        return GroupWord(self.alphabet, self.syllables + other.syllables)

    def inverse(self) -> "GroupWord":
        return GroupWord(
            self.alphabet, tuple((l, -e) for l, e in reversed(self.syllables))
        )

    def __invert__(self) -> "GroupWord":
        return self.inverse()

    def __pow__(self, k: int) -> "GroupWord":
        if len(self.syllables) == 1:
            letter, exp = self.syllables[0]
            return GroupWord(self.alphabet, ((letter, exp * k),))
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = GroupWord.identity(self.alphabet)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return not self.syllables

    def length(self) -> int:
        """Total letter count of the reduced word."""
        return sum(abs(e) for _, e in self.syllables)

    def __str__(self) -> str:
        return format_group_word(self)

    def __repr__(self) -> str:
        return f"GroupWord({format_group_word(self)!r})"


def multiply(g: GroupWord, h: GroupWord) -> GroupWord:
    return g * h


def inverse(g: GroupWord) -> GroupWord:
    return g.inverse()


def power(g: GroupWord, k: int) -> GroupWord:
    return g**k


def commutator(g: GroupWord, h: GroupWord) -> GroupWord:
    """[g, h] = g^-1 h^-1 g h."""
    return g.inverse() * h.inverse() * g * h


def tau(w: Word) -> GroupWord:
    """The iterated commutator attached to a Lyndon word.

    A single letter maps to itself; a longer word splits through its
    standard factorization w = w'w'' and maps to [tau(w'), tau(w'')].
    """
    if not is_lyndon(w):
        raise ValueError(f"{w!r} is not a Lyndon word")
    if len(w) == 1:
        return GroupWord(w.alphabet, ((w.indices[0], 1),))
    left, right = standard_factorization(w)
    return commutator(tau(left), tau(right))


def gr_generators(
    n: int, p: int, alphabet: Alphabet
) -> list[tuple[Word, GroupWord]]:
    """Canonical generators of the n-th layer of the lower p-central series.

    Returns pairs (w, tau(w)^(p^(n-|w|))) for Lyndon words w of length at
    most n, in preceq order.  These generate the quotient of the n-th term
    by the (n+1)-st.
    """
    if n < 1:
        raise ValueError("layer index must be positive")
    if p < 2:
        raise ValueError("p must be at least 2")
    out = []
    for w in lyndon_words(alphabet, n):
        out.append((w, tau(w) ** (p ** (n - len(w)))))
    return out


def format_group_word(g: GroupWord) -> str:
    """Serialize as space-separated tokens with caret exponents."""
    if not g.syllables:
        return "1"
    parts = []
    for letter, exp in g.syllables:
        name = g.alphabet.letters[letter]
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return " ".join(parts)


def _tokenize(text: str) -> Iterator[str]:
    # Insert spaces around brackets so "[x,y]" and "[ x , y ]" read the same.
    for ch in "[],":
        text = text.replace(ch, f" {ch} ")
    yield from text.split()


def parse_group_word(alphabet: Alphabet, text: str) -> GroupWord:
    """Parse "x^-1 y x y^3", "[x,y]^2", "1", and nestings thereof.

    Tokens are letters with optional caret exponents; square brackets with a
    comma build commutators and may be nested and carry exponents.
    """
    tokens = list(_tokenize(text))
    if tokens == ["1"]:
        return GroupWord.identity(alphabet)
    pos = 0

    def parse_sequence(stop: set[str]) -> GroupWord:
        nonlocal pos
        result = GroupWord.identity(alphabet)
        while pos < len(tokens) and tokens[pos] not in stop:
            result = result * parse_factor()
        return result

    def parse_factor() -> GroupWord:
        nonlocal pos
        token = tokens[pos]
        if token == "[":
            pos += 1
            left = parse_sequence({","})
            if pos >= len(tokens) or tokens[pos] != ",":
                raise ValueError("commutator bracket needs a comma")
            pos += 1
            right = parse_sequence({"]"})
            if pos >= len(tokens) or tokens[pos] != "]":
                raise ValueError("unclosed commutator bracket")
            pos += 1
            base = commutator(left, right)
            return base ** _trailing_exponent()
        if token in {"]", ","}:
            raise ValueError(f"unexpected {token!r}")
        pos += 1
        name, caret, exp_text = token.partition("^")
        if name == "1" and not caret:
            return GroupWord.identity(alphabet)
        if name not in alphabet:
            raise ValueError(f"unknown letter {name!r}")
        exp = 1
        if caret:
            try:
                exp = int(exp_text)
            except ValueError:
                raise ValueError(f"bad exponent in {token!r}") from None
        return GroupWord.generator(alphabet, name, exp)

    def _trailing_exponent() -> int:
        nonlocal pos
        if pos < len(tokens) and tokens[pos].startswith("^"):
            text = tokens[pos][1:]
            pos += 1
            try:
                return int(text)
            except ValueError:
                raise ValueError(f"bad exponent {text!r}") from None
        return 1

    result = parse_sequence(set())
    if pos != len(tokens):
        raise ValueError("trailing tokens in group word")
    return result


def group_word_to_pairs(g: GroupWord) -> list[list]:
    """JSON form: a list of [letter, exponent] pairs."""
    return [[g.alphabet.letters[l], e] for l, e in g.syllables]


def group_word_from_pairs(alphabet: Alphabet, pairs: Iterable) -> GroupWord:
    return GroupWord(
        alphabet, tuple((alphabet.index(l), int(e)) for l, e in pairs)
    )

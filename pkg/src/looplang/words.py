"""Alphabets with formal inverses and words over them.

A word over X-hat is a plain tuple of :class:`SignedLetter`.  Positive words
are simply words with no barred letters; there is no separate type for them.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import SpecError

RESERVED = frozenset("#`'")


class SignedLetter(NamedTuple):
    base: int
    bar: bool = False

    def inverse(self) -> "SignedLetter":
        return SignedLetter(self.base, not self.bar)


Word = tuple  # tuple[SignedLetter, ...]


class WordSign(enum.Enum):
    EMPTY = "empty"
    POSITIVE = "positive"
    NEGATIVE = "negative"
    MIXED = "mixed"


@dataclass(frozen=True)
class Alphabet:
    """An ordered finite set of generator names.

    The bar of letter ``a`` is rendered ``a'``; a word renders as the
    concatenation of its letters, space separated when any name is longer
    than one character.
    """

    letters: tuple

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise SpecError("alphabet must be non-empty")
        if len(set(letters)) != len(letters):
            raise SpecError(f"duplicate letter names in {list(letters)}")
        for name in letters:
            if not isinstance(name, str) or not name:
                raise SpecError(f"letter names must be non-empty strings, got {name!r}")
            if any(ch.isspace() or ch in RESERVED for ch in name) or name == "ε":
                raise SpecError(f"letter name {name!r} contains a reserved character")

    def __len__(self):
        return len(self.letters)

    def index(self, name: str) -> int:
        try:
            return self.letters.index(name)
        except ValueError:
            raise SpecError(f"unknown letter {name!r}") from None

    def positive(self) -> tuple:
        """X as signed letters, in alphabet order."""
        return tuple(SignedLetter(i, False) for i in range(len(self.letters)))

    def hat(self) -> tuple:
        """X-hat in canonical order ``a, a', b, b', ...``."""
        out = []
        for i in range(len(self.letters)):
            out.append(SignedLetter(i, False))
            out.append(SignedLetter(i, True))
        return tuple(out)

    def letter(self, name: str, bar: bool = False) -> SignedLetter:
        return SignedLetter(self.index(name), bar)

    def word(self, names: Sequence[str]) -> tuple:
        """Positive word from a sequence of letter names."""
        return tuple(SignedLetter(self.index(n), False) for n in names)

    def render_letter(self, s: SignedLetter) -> str:
        return self.letters[s.base] + ("'" if s.bar else "")

    def render(self, w) -> str:
        if len(w) == 0:
            return "ε"
        sep = " " if any(len(n) > 1 for n in self.letters) else ""
        return sep.join(self.render_letter(s) for s in w)

    def parse(self, text: str) -> tuple:
        """Parse the rendering format; whitespace between letters is optional.

        Letter names are matched greedily, longest name first.
        """
        text = text.strip()
        if text in ("", "ε"):
            return ()
        names = sorted(self.letters, key=len, reverse=True)
        pattern = re.compile("|".join(re.escape(n) for n in names))
        out = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = pattern.match(text, pos)
            if m is None:
                raise SpecError(f"cannot parse word {text!r} at column {pos + 1}")
            pos = m.end()
            bar = pos < len(text) and text[pos] == "'"
            if bar:
                pos += 1
            out.append(SignedLetter(self.letters.index(m.group()), bar))
        return tuple(out)


def involute(w) -> tuple:
    """Reverse the word and flip every sign."""
    return tuple(SignedLetter(s.base, not s.bar) for s in reversed(w))


def sign_classify(w) -> WordSign:
    if not w:
        return WordSign.EMPTY
    bars = {s.bar for s in w}
    if bars == {False}:
        return WordSign.POSITIVE
    if bars == {True}:
        return WordSign.NEGATIVE
    return WordSign.MIXED


def is_positive(w) -> bool:
    return all(not s.bar for s in w)


@dataclass(frozen=True)
class ZigZagFactorization:
    """Blocks ``u_0, v_1, ..., u_{n-1}, v_n`` of positive words.

    The source word is ``u_0 v_1' u_1 v_2' ... u_{n-1} v_n'`` where ``v'``
    denotes :func:`involute`.
    """

    u: tuple
    v: tuple

    def __post_init__(self):
        if len(self.u) != len(self.v) or not self.u:
            raise ValueError("need n >= 1 and len(u) == len(v) == n")
        for block in self.u + self.v:
            if not is_positive(block):
                raise ValueError("zig-zag blocks must be positive words")

    @property
    def n(self) -> int:
        return len(self.v)


def zigzag_factor(w) -> ZigZagFactorization:
    """Greedy maximal-run factorization."""
    w = tuple(w)
    runs = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j].bar == w[i].bar:
            j += 1
        runs.append(w[i:j])
        i = j
    if not runs or runs[0][0].bar:
        runs.insert(0, ())
    if len(runs) % 2:
        runs.append(())
    u = tuple(runs[0::2])
    v = tuple(involute(r) for r in runs[1::2])
    return ZigZagFactorization(u, v)


def zigzag_recompose(f: ZigZagFactorization) -> tuple:
    out = []
    for ui, vi in zip(f.u, f.v):
        out.extend(ui)
        out.extend(involute(vi))
    return tuple(out)


def shortlex_words(letters, max_len: int):
    """All words over ``letters`` up to ``max_len``, in shortlex order."""
    layer = [()]
    yield ()
    for _ in range(max_len):
        layer = [w + (x,) for w in layer for x in letters]
        yield from layer

"""
Braid core module for braidcheck
Braid words, the permutation homomorphism, strand deletion, rotation and word surgery

Conventions shared by every module:
- A letter k encodes sigma_|k|^sign(k); sigma_i is the strand at position i crossing OVER
  the strand at position i+1.
- Words are read left-to-right, which is top-to-bottom in a diagram.
- Strands and generators are indexed from 1.
"""

import logging
import re
from typing import FrozenSet, Iterable, List, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

logger = logging.getLogger(__name__)

WORD_PATTERN = re.compile(r"^\s*(\d+)\s*:(.*)$", re.DOTALL)


class BraidError(ValueError):
    """Base class for all braid domain errors"""


class WordFormatError(BraidError):
    """Malformed braid word text or letters"""


class StrandMismatchError(BraidError):
    """Braids with incompatible strand counts"""


class StrandRangeError(BraidError):
    """Strand labels, offsets or widths out of range"""


def sign(k: int) -> int:
    return 1 if k > 0 else -1


class BraidWord(BaseModel):
    """A word in the Artin generators of B_n"""

    model_config = ConfigDict(frozen=True)

    strands: int = Field(..., ge=1)
    letters: Tuple[int, ...] = ()

    @field_validator("letters", mode="before")
    @classmethod
    def coerce_letters(cls, v):
        return tuple(v)

    @model_validator(mode="after")
    def check_letters(self) -> "BraidWord":
        for k in self.letters:
            if k == 0:
                raise ValueError("Letter 0 is not a generator")
            if abs(k) >= self.strands:
                raise ValueError(f"Letter {k} out of range for {self.strands} strands")
        return self

    @classmethod
    def of(cls, strands: int, letters: Iterable[int]) -> "BraidWord":
        """Build a word from letters already known to be in range"""
        return cls.model_construct(strands=strands, letters=tuple(letters))

    @classmethod
    def identity(cls, strands: int) -> "BraidWord":
        return cls.of(strands, ())

    @classmethod
    def from_text(cls, text: str) -> "BraidWord":
        """Parse the "n: k1 k2 ... km" text form"""
        match = WORD_PATTERN.match(text)
        if not match:
            raise WordFormatError(f"Malformed braid word {text!r}: expected 'n: k1 k2 ...'")
        body = match.group(2).split()
        try:
            letters = [int(token) for token in body]
        except ValueError:
            raise WordFormatError(f"Malformed braid word {text!r}: letters must be integers")
        try:
            return cls(strands=int(match.group(1)), letters=letters)
        except ValidationError as e:
            detail = "; ".join(err["msg"] for err in e.errors())
            raise WordFormatError(f"Invalid braid word {text!r}: {detail}")

    def __str__(self) -> str:
        return f"{self.strands}: " + " ".join(str(k) for k in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def plain(self) -> str:
        """Human readable rendering, e.g. s2 s1^-1"""
        if not self.letters:
            return f"e (B{self.strands})"
        return " ".join(f"s{abs(k)}" if k > 0 else f"s{abs(k)}^-1" for k in self.letters)


class Permutation(BaseModel):
    """Image of a braid under the canonical epimorphism B_n -> S_n

    images[i] is the final position of the strand that starts at position i+1.
    """

    model_config = ConfigDict(frozen=True)

    images: Tuple[int, ...]

    @field_validator("images")
    @classmethod
    def check_bijection(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if sorted(v) != list(range(1, len(v) + 1)):
            raise ValueError(f"{v} is not a permutation of 1..{len(v)}")
        return v

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls.model_construct(images=tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(images=tuple(images))

    @property
    def size(self) -> int:
        return len(self.images)

    def then(self, other: "Permutation") -> "Permutation":
        """Apply self, then other"""
        return Permutation.model_construct(images=tuple(other.images[p - 1] for p in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, p in enumerate(self.images, start=1):
            inv[p - 1] = i
        return Permutation.model_construct(images=tuple(inv))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Disjoint cycles, each starting at its smallest label, sorted by that label"""
        seen = set()
        result = []
        for start in range(1, self.size + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.images[start - 1]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt - 1]
            result.append(tuple(cycle))
        return result

    def cycle_type(self) -> Tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def __str__(self) -> str:
        moved = [c for c in self.cycles() if len(c) > 1]
        if not moved:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in moved)


class StrandSet(BaseModel):
    """Strands named by their initial positions"""

    model_config = ConfigDict(frozen=True)

    members: FrozenSet[int]

    @field_validator("members")
    @classmethod
    def check_positive(cls, v: FrozenSet[int]) -> FrozenSet[int]:
        if any(m < 1 for m in v):
            raise ValueError("Strand labels start at 1")
        return v


StrandsLike = Union[StrandSet, Iterable[int]]


def _members(dead: StrandsLike) -> FrozenSet[int]:
    if isinstance(dead, StrandSet):
        return dead.members
    return frozenset(dead)


def _same_strands(*words: BraidWord) -> int:
    n = words[0].strands
    for w in words[1:]:
        if w.strands != n:
            raise StrandMismatchError(f"Strand counts differ: {n} vs {w.strands}")
    return n


def concat(*words: BraidWord) -> BraidWord:
    """Product of words in reading order"""
    if not words:
        raise BraidError("concat needs at least one word")
    n = _same_strands(*words)
    return BraidWord.of(n, (k for w in words for k in w.letters))


def power(w: BraidWord, exponent: int) -> BraidWord:
    base = w if exponent >= 0 else inverse(w)
    return BraidWord.of(w.strands, base.letters * abs(exponent))


def generator(strands: int, k: int) -> BraidWord:
    """The single-letter word sigma_|k|^sign(k)"""
    return BraidWord(strands=strands, letters=(k,))


def perm(w: BraidWord) -> Permutation:
    """Image in S_n: track which strand occupies each position"""
    at = list(range(1, w.strands + 1))
    for k in w.letters:
        i = abs(k) - 1
        at[i], at[i + 1] = at[i + 1], at[i]
    images = [0] * w.strands
    for position, strand in enumerate(at, start=1):
        images[strand - 1] = position
    return Permutation.model_construct(images=tuple(images))


def inverse(w: BraidWord) -> BraidWord:
    return BraidWord.of(w.strands, (-k for k in reversed(w.letters)))


def rotate180(w: BraidWord) -> BraidWord:
    """Rotate the diagram by half a turn in its plane"""
    n = w.strands
    return BraidWord.of(n, (sign(k) * (n - abs(k)) for k in reversed(w.letters)))


def reflect(w: BraidWord) -> BraidWord:
    """Left-right mirror: sigma_i -> sigma_{n-i}, keeping reading order"""
    n = w.strands
    return BraidWord.of(n, (sign(k) * (n - abs(k)) for k in w.letters))


def free_reduce(w: BraidWord) -> BraidWord:
    stack: List[int] = []
    for k in w.letters:
        if stack and stack[-1] == -k:
            stack.pop()
        else:
            stack.append(k)
    return BraidWord.of(w.strands, stack)


def delete_strands(w: BraidWord, dead: StrandsLike) -> BraidWord:
    """Sub-braid on the surviving strands, freely reduced

    Dropped letters still swap positions so interleaved dead strands are tracked correctly.
    """
    members = _members(dead)
    n = w.strands
    if any(m < 1 or m > n for m in members):
        raise StrandRangeError(f"Strands {sorted(members)} out of range 1..{n}")
    if len(members) >= n:
        raise StrandRangeError("Cannot delete every strand")

    at = list(range(1, n + 1))
    out: List[int] = []
    for k in w.letters:
        i = abs(k) - 1
        left, right = at[i], at[i + 1]
        if left not in members and right not in members:
            index = sum(1 for s in at[:i] if s not in members) + 1
            if out and out[-1] == -sign(k) * index:
                out.pop()
            else:
                out.append(sign(k) * index)
        at[i], at[i + 1] = right, left
    return BraidWord.of(n - len(members), out)


def push_forward(w: BraidWord, strands: StrandsLike) -> FrozenSet[int]:
    """Positions at the bottom of w of the strands starting at the given positions"""
    images = perm(w).images
    return frozenset(images[s - 1] for s in _members(strands))


def embed(w: BraidWord, total: int, offset: int) -> BraidWord:
    """Place w on strands offset..offset+n-1 of B_total"""
    if offset < 1 or offset + w.strands - 1 > total:
        raise StrandRangeError(
            f"Cannot embed a {w.strands}-strand word at offset {offset} in {total} strands"
        )
    shift = offset - 1
    return BraidWord.of(total, (k + shift if k > 0 else k - shift for k in w.letters))


def exponent_sum(w: BraidWord) -> int:
    return sum(sign(k) for k in w.letters)


def is_pure(w: BraidWord) -> bool:
    return perm(w) == Permutation.identity(w.strands)


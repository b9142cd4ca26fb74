"""
Garside module for braidcheck
Decides the word problem in B_n through the left-greedy normal form

A braid is written Delta^p s_1 ... s_k where Delta is the half twist and every s_i is a
positive permutation braid other than the identity and Delta. Each pair (s_i, s_{i+1}) is
left-weighted: the starting set of s_{i+1} lies inside the finishing set of s_i.

Permutation braids are handled through their permutations. Internally a permutation is a
tuple of 0-based images (images[i] is the final position of the strand starting at i), so
every table below is a plain dict keyed by small tuples.
"""

import logging
from functools import lru_cache
from typing import FrozenSet, Hashable, List, Tuple

from pydantic import BaseModel, ConfigDict, Field

from braid_core import BraidWord, StrandMismatchError, exponent_sum, perm

logger = logging.getLogger(__name__)

Simple = Tuple[int, ...]


@lru_cache(maxsize=None)
def _identity(n: int) -> Simple:
    return tuple(range(n))


@lru_cache(maxsize=None)
def _delta(n: int) -> Simple:
    return tuple(range(n - 1, -1, -1))


@lru_cache(maxsize=None)
def _starting_set(p: Simple) -> FrozenSet[int]:
    """Generators that left-divide the permutation braid: strands starting at i, i+1 cross"""
    return frozenset(i for i in range(len(p) - 1) if p[i] > p[i + 1])


@lru_cache(maxsize=None)
def _finishing_set(p: Simple) -> FrozenSet[int]:
    """Generators that right-divide the permutation braid: strands ending at i, i+1 cross"""
    inv = [0] * len(p)
    for i, q in enumerate(p):
        inv[q] = i
    return frozenset(i for i in range(len(p) - 1) if inv[i] > inv[i + 1])


def _times_generator(p: Simple, i: int) -> Simple:
    """p followed by sigma_{i+1}"""
    return tuple(i + 1 if q == i else i if q == i + 1 else q for q in p)


def _strip_generator(p: Simple, i: int) -> Simple:
    """sigma_{i+1}^-1 followed by p"""
    q = list(p)
    q[i], q[i + 1] = q[i + 1], q[i]
    return tuple(q)


@lru_cache(maxsize=None)
def _tau(p: Simple) -> Simple:
    """Conjugation by Delta"""
    n = len(p)
    return tuple(n - 1 - p[n - 1 - i] for i in range(n))


@lru_cache(maxsize=None)
def _letter_simple(n: int, k: int) -> Simple:
    """The simple factor a letter contributes; negative letters contribute Delta sigma^-1"""
    i = abs(k) - 1
    base = _identity(n) if k > 0 else _delta(n)
    return _times_generator(base, i)


@lru_cache(maxsize=1 << 20)
def _renormalise(a: Simple, b: Simple) -> Tuple[Simple, Simple]:
    """Make (a, b) left-weighted by moving generators from the front of b onto a"""
    while True:
        diff = _starting_set(b) - _finishing_set(a)
        if not diff:
            return a, b
        s = min(diff)
        a = _times_generator(a, s)
        b = _strip_generator(b, s)


def _append(factors: List[Simple], x: Simple) -> None:
    factors.append(x)
    j = len(factors) - 2
    while j >= 0:
        a, b = _renormalise(factors[j], factors[j + 1])
        if a == factors[j]:
            break
        factors[j], factors[j + 1] = a, b
        j -= 1


@lru_cache(maxsize=1 << 16)
def _normalise(n: int, letters: Tuple[int, ...]) -> Tuple[int, Tuple[Simple, ...]]:
    delta, identity = _delta(n), _identity(n)
    power = 0
    factors: List[Simple] = []
    for k in letters:
        if k < 0:
            # F sigma^-1 = Delta^-1 tau(F) (Delta sigma^-1)
            factors = [_tau(f) for f in factors]
            power -= 1
        _append(factors, _letter_simple(n, k))
        lead = 0
        while lead < len(factors) and factors[lead] == delta:
            lead += 1
        if lead:
            power += lead
            del factors[:lead]
        while factors and factors[-1] == identity:
            factors.pop()
    return power, tuple(factors)


def simple_word(p: Simple) -> List[int]:
    """Shortlex positive word (1-based letters) of a permutation braid"""
    word = []
    while True:
        start = _starting_set(p)
        if not start:
            return word
        s = min(start)
        word.append(s + 1)
        p = _strip_generator(p, s)


class NormalForm(BaseModel):
    """Left-greedy Garside normal form; factors are permutations with 1-based images"""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    strands: int = Field(..., ge=1)
    delta_power: int = Field(..., alias="delta")
    factors: Tuple[Tuple[int, ...], ...] = ()

    @property
    def infimum(self) -> int:
        return self.delta_power

    @property
    def supremum(self) -> int:
        return self.delta_power + len(self.factors)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def is_trivial(self) -> bool:
        return self.delta_power == 0 and not self.factors

    def to_word(self) -> BraidWord:
        """Delta^p followed by the shortlex words of the factors"""
        delta_word = simple_word(_delta(self.strands))
        if self.delta_power >= 0:
            letters = delta_word * self.delta_power
        else:
            letters = [-k for k in reversed(delta_word)] * -self.delta_power
        for f in self.factors:
            letters += simple_word(tuple(x - 1 for x in f))
        return BraidWord.of(self.strands, letters)

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True)


def delta(n: int) -> BraidWord:
    """The half twist as a positive word"""
    return BraidWord.of(n, simple_word(_delta(n)))


def normal_form(w: BraidWord) -> NormalForm:
    power, factors = _normalise(w.strands, w.letters)
    return NormalForm(
        strands=w.strands,
        delta=power,
        factors=tuple(tuple(x + 1 for x in f) for f in factors),
    )


def canonical_key(w: BraidWord) -> Hashable:
    """Comparable token, equal for two words exactly when they are the same braid"""
    power, factors = _normalise(w.strands, w.letters)
    return (w.strands, power, factors)


def equals(u: BraidWord, v: BraidWord) -> bool:
    if u.strands != v.strands:
        raise StrandMismatchError(f"Cannot compare braids on {u.strands} and {v.strands} strands")
    if u.letters == v.letters:
        return True
    if exponent_sum(u) != exponent_sum(v) or perm(u) != perm(v):
        return False
    return canonical_key(u) == canonical_key(v)


def is_trivial(w: BraidWord) -> bool:
    if not w.letters:
        return True
    if exponent_sum(w) != 0:
        return False
    power, factors = _normalise(w.strands, w.letters)
    return power == 0 and not factors


def cache_info() -> dict:
    """Hit rates of the renormalisation and word caches"""
    return {
        "renormalise": _renormalise.cache_info()._asdict(),
        "normalise": _normalise.cache_info()._asdict(),
    }

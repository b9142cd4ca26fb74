"""
Cabling module for braidcheck
Strand doubling and the four derived six-strand braids Lb, Rb, L'b, R'b

Each strand of a braid can be replaced by a ribbon of parallel strands. A crossing of
ribbons of widths P and Q becomes a P*Q letter block transposition of the same sign.
"""

import logging
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from braid_core import BraidWord, StrandMismatchError, StrandRangeError, concat, embed, rotate180, sign
from garside import equals
from models import DeriveReport

logger = logging.getLogger(__name__)

L_WIDTHS = (2, 2, 1, 1)
R_WIDTHS = (1, 1, 2, 2)
LP_WIDTHS = (1, 2, 1, 2)
RP_WIDTHS = (2, 1, 2, 1)


class CableWidths(BaseModel):
    """One positive width per cable, left to right"""

    model_config = ConfigDict(frozen=True)

    widths: Tuple[int, ...]

    @field_validator("widths")
    @classmethod
    def check_widths(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if not v or any(x < 1 for x in v):
            raise ValueError("Cable widths must be positive")
        return v

    @property
    def total(self) -> int:
        return sum(self.widths)


def _as_widths(widths) -> Tuple[int, ...]:
    if isinstance(widths, CableWidths):
        return widths.widths
    widths = tuple(widths)
    if not widths or any(x < 1 for x in widths):
        raise StrandRangeError(f"Cable widths must be positive, got {widths}")
    return widths


def block_transposition(start: int, left: int, right: int, k_sign: int) -> List[int]:
    """Letters crossing a block of `left` strands at `start` with the `right` strands after it"""
    letters = []
    for p in range(left, 0, -1):
        first = start + p - 1
        letters.extend(k_sign * j for j in range(first, first + right))
    return letters


def cable(w: BraidWord, widths) -> BraidWord:
    current = list(_as_widths(widths))
    if len(current) != w.strands:
        raise StrandRangeError(f"Expected {w.strands} cable widths, got {len(current)}")
    letters: List[int] = []
    for k in w.letters:
        i = abs(k) - 1
        start = 1 + sum(current[:i])
        letters.extend(block_transposition(start, current[i], current[i + 1], sign(k)))
        current[i], current[i + 1] = current[i + 1], current[i]
    return BraidWord.of(sum(current), letters)


def _four_strands(b: BraidWord) -> None:
    if b.strands != 4:
        raise StrandMismatchError(f"Derived braids need a 4-strand braid, got {b.strands}")


def derive_L(b: BraidWord) -> BraidWord:
    _four_strands(b)
    return concat(embed(b, 6, 1), cable(b, L_WIDTHS))


def derive_R(b: BraidWord) -> BraidWord:
    _four_strands(b)
    return concat(embed(b, 6, 3), cable(b, R_WIDTHS))


def derive_Lp(b: BraidWord) -> BraidWord:
    # second copy acts on strands (2,3,5,6), which sit at positions 3..6 after the cabled swap
    _four_strands(b)
    return concat(cable(b, LP_WIDTHS), embed(b, 6, 3))


def derive_Rp(b: BraidWord) -> BraidWord:
    # second copy acts on strands (1,2,4,5), at positions 1..4
    _four_strands(b)
    return concat(cable(b, RP_WIDTHS), embed(b, 6, 1))


def rotation_dual_Lp(b: BraidWord) -> BraidWord:
    """rotate180(L(rotate180(b)))

    Equals L'b whenever perm(b) is (2 3): the rotated cable then has top widths (1,2,1,2),
    the widths L'b uses. Other permutations pull (1,1,2,2) back to other widths, so for s1
    the two differ.
    """
    return rotate180(derive_L(rotate180(b)))


def internal_associativity(b: BraidWord) -> bool:
    return equals(derive_L(b), derive_R(b))


def external_associativity(b: BraidWord) -> bool:
    return equals(derive_Lp(b), derive_Rp(b))


def derive_all(b: BraidWord) -> DeriveReport:
    L, R, Lp, Rp = derive_L(b), derive_R(b), derive_Lp(b), derive_Rp(b)
    logger.debug(f"Derived braids of {b} have lengths {len(L)}, {len(R)}, {len(Lp)}, {len(Rp)}")
    return DeriveReport(
        word=str(b),
        L=str(L),
        R=str(R),
        Lp=str(Lp),
        Rp=str(Rp),
        internal_assoc=equals(L, R),
        external_assoc=equals(Lp, Rp),
    )

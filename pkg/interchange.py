"""
Interchange module for braidcheck
Decides whether a four-strand braid underlies a unital interchange and classifies it

A candidate braid has permutation (2 3) and becomes trivial when any of the strand pairs
{1,2}, {3,4}, {1,3}, {2,4} is deleted. It is interchanging when moreover Lb = Rb
(internal associativity) and L'b = R'b (external associativity) hold in B6. Every
interchanging braid equals one of

    b(n, +/-) = (s2 s1 s3 s2)^(+/-n) s2^(+/-1) (s1 s3)^(-/+n)
"""

import logging
import os
from typing import List, Optional, Tuple, Union

from dotenv import load_dotenv

from braid_core import (
    BraidError,
    BraidWord,
    Permutation,
    StrandMismatchError,
    concat,
    delete_strands,
    exponent_sum,
    generator,
    perm,
    power,
    rotate180,
)
from cabling import cable, external_associativity, internal_associativity
from garside import equals, is_trivial
from models import (
    ClassificationResult,
    EquivalenceClass,
    InnerOuterProfile,
    InterchangeReport,
    RefusalReason,
    ScreenVerdict,
    Sign,
)

load_dotenv()
logger = logging.getLogger(__name__)

FAMILY_BOUND = int(os.getenv("BRAIDCHECK_FAMILY_BOUND", "3"))

UNIT_PAIRS: Tuple[Tuple[int, int], ...] = ((1, 2), (3, 4), (1, 3), (2, 4))
H_LETTERS = (2, 1, 3, 2)
K_LETTERS = (1, 3)
CANDIDATE_PERMUTATION = Permutation(images=(1, 3, 2, 4))

SignLike = Union[Sign, str, int]


class NotInFamilyError(BraidError):
    """Raised when a refusal is given where a family member is required"""


def _four_strands(b: BraidWord) -> None:
    if b.strands != 4:
        raise StrandMismatchError(f"Interchange checks need a 4-strand braid, got {b.strands}")


def family(n: int, sign: SignLike) -> BraidWord:
    """The literal word (s2 s1 s3 s2)^(+/-n) s2^(+/-1) (s1 s3)^(-/+n)"""
    if n < 0:
        raise BraidError(f"Family index must be nonnegative, got {n}")
    s = Sign.coerce(sign).unit
    letters = [s * k for k in H_LETTERS] * n + [2 * s] + [-s * k for k in K_LETTERS] * n
    return BraidWord.of(4, letters)


def h_power(n: int) -> BraidWord:
    """(s2 s1 s3 s2)^n"""
    return power(BraidWord.of(4, H_LETTERS), n)


def k_power(n: int) -> BraidWord:
    """(s1 s3)^n"""
    return power(BraidWord.of(4, K_LETTERS), n)


def double_coset_identity(n: int, sign: SignLike) -> bool:
    """b(n, sign) also reads (s1 s3)^(-/+n) s2^(+/-1) (s2 s1 s3 s2)^(+/-n)"""
    s = Sign.coerce(sign).unit
    other = concat(k_power(-s * n), generator(4, 2 * s), h_power(s * n))
    return equals(family(n, sign), other)


def op_tower(h: int, a: int, c: int) -> BraidWord:
    """(s2 s1 s3 s2)^h s2 s1^a s3^c: the composition braid of an iterated-opposite product"""
    return concat(
        h_power(h),
        generator(4, 2),
        power(generator(4, 1), a),
        power(generator(4, 3), c),
    )


def unit_failures(b: BraidWord) -> List[Tuple[int, int]]:
    return [pair for pair in UNIT_PAIRS if not is_trivial(delete_strands(b, pair))]


def is_candidate(b: BraidWord) -> InterchangeReport:
    _four_strands(b)
    permutation_ok = perm(b) == CANDIDATE_PERMUTATION
    failures = unit_failures(b)
    return InterchangeReport(
        candidate=permutation_ok and not failures,
        permutation_ok=permutation_ok,
        unit_failures=failures,
    )


def is_interchanging(b: BraidWord) -> InterchangeReport:
    report = is_candidate(b)
    internal = internal_associativity(b)
    external = external_associativity(b)
    if report.candidate and internal != external:
        logger.info(f"{b}: internal associativity {internal}, external {external}")
    return report.model_copy(
        update={
            "internal_assoc": internal,
            "external_assoc": external,
            "interchanging": report.candidate and internal and external,
        }
    )


def pattern_ok(inner: int, outer: int) -> bool:
    """Inner exponent odd, the two exponents neighbours, and of the same handedness"""
    if inner % 2 == 0 or abs(inner - outer) != 1:
        return False
    return outer == 0 or (outer > 0) == (inner > 0)


def inner_outer_profile(b: BraidWord) -> InnerOuterProfile:
    _four_strands(b)
    # B2 is infinite cyclic, so the exponent sum names the sub-braid
    inner = exponent_sum(delete_strands(b, (1, 4)))
    outer = exponent_sum(delete_strands(b, (2, 3)))
    return InnerOuterProfile(inner=inner, outer=outer, pattern_ok=pattern_ok(inner, outer))


def profile_family(profile: InnerOuterProfile) -> Optional[Tuple[int, Sign]]:
    """The only (n, sign) whose family member has this profile"""
    if not profile.pattern_ok:
        return None
    inner, outer = abs(profile.inner), abs(profile.outer)
    n = outer if inner > outer else inner
    return n, Sign.coerce(profile.inner)


def joyal_street_exponent(b: BraidWord) -> int:
    """Exponent of the braiding recovered from the interchange on A, B placed at I A B I / B I I A"""
    profile = inner_outer_profile(b)
    return profile.inner - profile.outer


def classify(b: BraidWord, report: Optional[InterchangeReport] = None) -> ClassificationResult:
    """Place b in the family, or say which condition it violates

    A precomputed full InterchangeReport lets associativity failures be named as such.
    """
    _four_strands(b)
    screen = report if report is not None else is_candidate(b)
    word = str(b)
    if not screen.permutation_ok:
        return ClassificationResult(
            word=word, in_family=False, reason=RefusalReason.BAD_PERMUTATION
        )
    if screen.unit_failures:
        return ClassificationResult(word=word, in_family=False, reason=RefusalReason.UNIT_FAILURE)

    profile = inner_outer_profile(b)
    located = profile_family(profile)
    if located is None:
        return ClassificationResult(
            word=word, in_family=False, reason=RefusalReason.PROFILE_MISMATCH, profile=profile
        )
    if report is not None and report.internal_assoc is not None and not report.interchanging:
        return ClassificationResult(
            word=word, in_family=False, reason=RefusalReason.ASSOCIATIVITY_FAILURE, profile=profile
        )

    n, sign = located
    if equals(b, family(n, sign)):
        return ClassificationResult(word=word, in_family=True, n=n, sign=sign, profile=profile)

    logger.warning(
        f"{b} passes the candidate and profile screens but is not b({n},{sign.value}); "
        "if it is also interchanging this contradicts the classification"
    )
    return ClassificationResult(
        word=word, in_family=False, reason=RefusalReason.PROFILE_MISMATCH, profile=profile
    )


def equivalence_class(result: ClassificationResult) -> EquivalenceClass:
    """Plus for the class of b(0,+), Minus for the class of b(0,-)"""
    if not result.in_family:
        raise NotInFamilyError(f"{result.word} is not in the family: {result.label}")
    plus = (result.sign is Sign.PLUS) == (result.n % 2 == 0)
    return EquivalenceClass.PLUS if plus else EquivalenceClass.MINUS


def _generator_power(sub: BraidWord, index: int) -> Optional[int]:
    """m when sub equals sigma_index^m, else None"""
    m = exponent_sum(sub)
    if equals(sub, power(generator(sub.strands, index), m)):
        return m
    return None


def obstruction_screens(b: BraidWord) -> List[ScreenVerdict]:
    """Three shortcut tests that can refute interchanging without any B6 work"""
    _four_strands(b)
    candidate = is_candidate(b).candidate
    drop_second = is_trivial(delete_strands(b, (2,)))
    drop_third = is_trivial(delete_strands(b, (3,)))

    if candidate and drop_second and drop_third:
        passed = equals(b, generator(4, 2)) or equals(b, generator(4, -2))
        screen_a = ScreenVerdict(
            screen="A", applicable=True, passed=passed,
            detail="deleting strand 2 or 3 is trivial; interchanging only for s2 or its inverse",
        )
    else:
        screen_a = ScreenVerdict(screen="A", applicable=False)

    if candidate and is_trivial(delete_strands(b, (2, 3))):
        screen_b = ScreenVerdict(
            screen="B", applicable=True, passed=drop_second and drop_third,
            detail="outer sub-braid trivial; single inner deletions must be trivial too",
        )
    else:
        screen_b = ScreenVerdict(screen="B", applicable=False)

    # the middle strands sit at B3 positions 1,2 without strand 1 and 2,3 without strand 4
    without_first = _generator_power(delete_strands(b, (1,)), 1)
    without_fourth = _generator_power(delete_strands(b, (4,)), 2)
    if candidate and without_first is not None and without_fourth is not None:
        screen_c = ScreenVerdict(
            screen="C", applicable=True, passed=abs(without_first) == 1,
            detail=f"end-strand deletions are powers {without_first} of the middle crossing",
        )
    else:
        screen_c = ScreenVerdict(screen="C", applicable=False)

    return [screen_a, screen_b, screen_c]


def screens_refute(b: BraidWord) -> bool:
    return any(v.applicable and not v.passed for v in obstruction_screens(b))


def _odd(k: int) -> None:
    if k % 2 == 0:
        raise BraidError(f"Hexagon and obstruction checks need an odd power, got {k}")


def hexagon_check(k: int) -> bool:
    """First hexagon for c^k: (c^k)_{A,B(x)C} against (1 (x) c^k)(c^k (x) 1) in B3"""
    legs, cabled = hexagon_words(k)
    return equals(legs, cabled)


def hexagon_check_mirror(k: int) -> bool:
    """Second hexagon for c^k: (c^k)_{A(x)B,C} against (c^k (x) 1)(1 (x) c^k)"""
    _odd(k)
    legs = concat(power(generator(3, 2), k), power(generator(3, 1), k))
    return equals(legs, cable(power(generator(2, 1), k), (2, 1)))


def hexagon_words(k: int) -> Tuple[BraidWord, BraidWord]:
    """The two sides compared by hexagon_check"""
    _odd(k)
    legs = concat(power(generator(3, 1), k), power(generator(3, 2), k))
    return legs, cable(power(generator(2, 1), k), (1, 2))


def family_self_check(bound: int = FAMILY_BOUND) -> List[dict]:
    """Interchanging, rotation and double coset checks for every b(n, sign) with n <= bound"""
    rows = []
    for n in range(bound + 1):
        for sign in Sign:
            b = family(n, sign)
            rows.append(
                {
                    "n": n,
                    "sign": sign.value,
                    "word": str(b),
                    "interchanging": is_interchanging(b).interchanging,
                    "rotation_invariant": equals(rotate180(b), b),
                    "double_coset": double_coset_identity(n, sign),
                }
            )
    logger.info(f"Checked {len(rows)} family members up to n={bound}")
    return rows

"""
Links module for braidcheck
Closures of braids, their components and pairwise linking numbers

These invariants are unchanged by conjugation, so differing values certify that two braids
are not conjugate. Nothing here ever claims that two braids are conjugate.
"""

import logging
from collections import Counter
from typing import Dict, Tuple

from braid_core import BraidError, BraidWord, StrandMismatchError, exponent_sum, perm, power, sign
from models import CertificateReport, CertificateVerdict, LinkingPair, LinkSummary

logger = logging.getLogger(__name__)

K_LETTERS = (1, 3)
H_LETTERS = (2, 1, 3, 2)


class StrandTrackingError(BraidError):
    """An odd tally of crossings between two closure components"""


def closure_summary(b: BraidWord) -> LinkSummary:
    cycles = perm(b).cycles()
    component_of: Dict[int, int] = {}
    for index, cycle in enumerate(cycles):
        for strand in cycle:
            component_of[strand] = index

    self_tally = [0] * len(cycles)
    pair_tally: Dict[Tuple[int, int], int] = {}
    at = list(range(1, b.strands + 1))
    for k in b.letters:
        i = abs(k) - 1
        first, second = component_of[at[i]], component_of[at[i + 1]]
        if first == second:
            self_tally[first] += sign(k)
        else:
            key = (min(first, second), max(first, second))
            pair_tally[key] = pair_tally.get(key, 0) + sign(k)
        at[i], at[i + 1] = at[i + 1], at[i]

    pairs = []
    for a in range(len(cycles)):
        for c in range(a + 1, len(cycles)):
            tally = pair_tally.get((a, c), 0)
            if tally % 2:
                logger.error(f"Odd crossing tally {tally} between components {a} and {c} of {b}")
                raise StrandTrackingError(f"Odd crossing tally between components {a} and {c}")
            pairs.append(LinkingPair(first=a, second=c, linking_number=tally // 2))

    return LinkSummary(
        components=[list(c) for c in cycles],
        pairwise_lk=pairs,
        writhe_per_component=self_tally,
    )


def conjugacy_certificate(u: BraidWord, v: BraidWord) -> CertificateReport:
    """DistinctClosures when some conjugation invariant differs, else Inconclusive"""
    if u.strands != v.strands:
        raise StrandMismatchError(f"Cannot compare closures on {u.strands} and {v.strands} strands")
    reasons = []
    if exponent_sum(u) != exponent_sum(v):
        reasons.append(f"exponent sums {exponent_sum(u)} and {exponent_sum(v)}")
    first, second = closure_summary(u), closure_summary(v)
    if first.cycle_type() != second.cycle_type():
        reasons.append(f"component cycle types {first.cycle_type()} and {second.cycle_type()}")
    if Counter(first.linking_multiset()) != Counter(second.linking_multiset()):
        reasons.append(
            f"linking numbers {first.linking_multiset()} and {second.linking_multiset()}"
        )
    verdict = CertificateVerdict.DISTINCT_CLOSURES if reasons else CertificateVerdict.INCONCLUSIVE
    return CertificateReport(verdict=verdict, reasons=reasons)


def braiding_obstruction_report(k: int) -> CertificateReport:
    """Compare the closures of (s1 s3)^k and (s2 s1 s3 s2)^k

    A braiding on the category of enriched categories built from c^k would need
    b (s1 s3)^k = (s2 s1 s3 s2)^k b for its middle-four interchange b.
    """
    if k % 2 == 0:
        raise BraidError(f"Braiding obstruction needs an odd power, got {k}")
    left = power(BraidWord.of(4, K_LETTERS), k)
    right = power(BraidWord.of(4, H_LETTERS), k)
    return conjugacy_certificate(left, right)


def braiding_obstruction(k: int) -> bool:
    """True when the two closures differ, so no such b exists"""
    report = braiding_obstruction_report(k)
    logger.info(f"Braiding obstruction for k={k}: {report.verdict.value} ({'; '.join(report.reasons)})")
    return report.verdict is CertificateVerdict.DISTINCT_CLOSURES

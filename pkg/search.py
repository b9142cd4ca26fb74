"""
Search module for braidcheck
Exhaustive enumeration of short B4 words and sampling of the double coset H s2 K'

The enumeration is an experiment about the classification, not an assumption of it:
anything interchanging that does not classify into the family is reported as an anomaly.
"""

import logging
import multiprocessing as mp
import os
import time
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from dotenv import load_dotenv

from braid_core import BraidError, BraidWord, exponent_sum, perm
from cabling import internal_associativity
from garside import cache_info, canonical_key, normal_form
from interchange import (
    CANDIDATE_PERMUTATION,
    classify,
    inner_outer_profile,
    is_interchanging,
    op_tower,
    screens_refute,
    unit_failures,
)
from models import CosetReport, CosetSample, InterchangingClass, SearchConfig, SearchReport
from utils import to_json, write_json_lines

load_dotenv()
logger = logging.getLogger(__name__)

MAX_LEN_CAP = int(os.getenv("BRAIDCHECK_MAX_LEN_CAP", "9"))
DEFAULT_WORKERS = int(os.getenv("BRAIDCHECK_WORKERS", "1"))
GENERATORS = (1, -1, 2, -2, 3, -3)
PREFIX_DEPTH = 2

Letters = Tuple[int, ...]
ShardTask = Tuple[Letters, int, bool]


class SearchCapError(BraidError):
    """max_len beyond the configured cap"""


def shortlex(letters: Letters) -> Tuple[int, Letters]:
    return len(letters), letters


def reduced_extensions(prefix: Letters, max_len: int) -> Iterator[Letters]:
    """prefix and every freely reduced extension of it up to max_len letters"""
    yield prefix
    if len(prefix) >= max_len:
        return
    last = prefix[-1] if prefix else 0
    for k in GENERATORS:
        if k != -last:
            yield from reduced_extensions(prefix + (k,), max_len)


def shard_tasks(max_len: int, screens: bool) -> List[ShardTask]:
    """Prefix shards covering every freely reduced word of length <= max_len exactly once"""
    depth = min(PREFIX_DEPTH, max_len)
    tasks: List[ShardTask] = []
    for word in reduced_extensions((), depth):
        if len(word) < depth:
            tasks.append((word, len(word), screens))
        else:
            tasks.append((word, max_len, screens))
    return tasks


def scan_shard(task: ShardTask) -> Tuple[int, int, Dict[object, Letters]]:
    """Candidates of one shard, deduplicated by canonical key with a shortlex-least witness"""
    prefix, max_len, screens = task
    enumerated = candidates = 0
    classes: Dict[object, Letters] = {}
    for letters in reduced_extensions(prefix, max_len):
        enumerated += 1
        b = BraidWord.of(4, letters)
        if perm(b) != CANDIDATE_PERMUTATION or unit_failures(b):
            continue
        candidates += 1
        if screens and (not inner_outer_profile(b).pattern_ok or screens_refute(b)):
            continue
        key = canonical_key(b)
        known = classes.get(key)
        if known is None or shortlex(letters) < shortlex(known):
            classes[key] = letters
    return enumerated, candidates, classes


def check_class(task: Tuple[Letters, bool]) -> Tuple[Letters, object, bool]:
    """B6 checks for one class; unscreened runs also test the screens against the verdict"""
    letters, screened = task
    b = BraidWord.of(4, letters)
    report = is_interchanging(b)
    refuted = not screened and report.interchanging and screens_refute(b)
    return letters, report, refuted


def parallel_map(func: Callable, items: Sequence, workers: int) -> List:
    """Map in a process pool; results come back in input order"""
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with mp.Pool(workers) as pool:
        return pool.map(func, items)


def run_search(cfg: SearchConfig) -> SearchReport:
    if cfg.max_len > MAX_LEN_CAP:
        raise SearchCapError(f"max_len {cfg.max_len} exceeds the cap {MAX_LEN_CAP}")

    started = time.perf_counter()
    tasks = shard_tasks(cfg.max_len, cfg.screens_enabled)
    logger.info(f"Enumerating B4 words up to length {cfg.max_len} in {len(tasks)} shards")

    enumerated = candidates = 0
    merged: Dict[object, Letters] = {}
    for shard_enumerated, shard_candidates, classes in parallel_map(scan_shard, tasks, cfg.workers):
        enumerated += shard_enumerated
        candidates += shard_candidates
        for key, letters in classes.items():
            known = merged.get(key)
            if known is None or shortlex(letters) < shortlex(known):
                merged[key] = letters

    witnesses = sorted(merged.values(), key=shortlex)
    logger.info(f"{enumerated} words, {candidates} candidates, {len(witnesses)} classes to check in B6")

    report = SearchReport(
        max_len=cfg.max_len,
        screens_enabled=cfg.screens_enabled,
        words_enumerated=enumerated,
        candidates=candidates,
        candidate_classes=len(witnesses),
    )
    for letters, check, refuted in parallel_map(check_class, [(w, cfg.screens_enabled) for w in witnesses], cfg.workers):
        if not check.interchanging:
            continue
        b = BraidWord.of(4, letters)
        if refuted:
            logger.warning(f"{b} is interchanging but an obstruction screen rules it out")
            report.screen_violations.append(str(b))
        result = classify(b, check)
        if not result.in_family:
            logger.warning(f"Anomaly: {b} is interchanging but classifies as {result.label}")
            report.anomalies.append(str(b))
        report.interchanging.append(
            InterchangingClass(
                normal_form=normal_form(b),
                witness=str(b),
                word_length=len(letters),
                exponent_sum=exponent_sum(b),
                classification=result,
            )
        )

    logger.info(
        f"Search up to length {cfg.max_len} found {len(report.interchanging)} interchanging classes "
        f"and {len(report.anomalies)} anomalies in {time.perf_counter() - started:.2f}s"
    )
    logger.debug(f"Normal form caches: {cache_info()}")
    if cfg.output_path:
        write_report(report, cfg.output_path)
    return report


def report_records(report: SearchReport) -> List[object]:
    """One record per interchanging class, then the summary object"""
    summary = report.model_dump(mode="json", by_alias=True, exclude={"interchanging"})
    summary["interchanging_classes"] = len(report.interchanging)
    return [*report.interchanging, {"summary": summary}]


def report_lines(report: SearchReport) -> List[str]:
    return [to_json(record) for record in report_records(report)]


def write_report(report: SearchReport, path: str) -> None:
    count = write_json_lines(path, report_records(report))
    logger.info(f"Wrote {count} records to {path}")


def _coset_sample(box: Tuple[int, int, int]) -> CosetSample:
    h, a, c = box
    b = op_tower(h, a, c)
    return CosetSample(
        h=h, a=a, c=c, word=str(b),
        internal_assoc=internal_associativity(b),
        unit_failures=unit_failures(b),
    )


def coset_property_sample(
    max_h: int,
    max_k: int,
    workers: int = DEFAULT_WORKERS,
    output_path: Optional[str] = None,
) -> CosetReport:
    """Check Lb = Rb on (s2 s1 s3 s2)^h s2 s1^a s3^c over |h| <= max_h, |a|, |c| <= max_k"""
    if max_h < 0 or max_k < 0:
        raise BraidError("Sampling bounds must be nonnegative")
    boxes = [
        (h, a, c)
        for h in range(-max_h, max_h + 1)
        for a in range(-max_k, max_k + 1)
        for c in range(-max_k, max_k + 1)
    ]
    samples = parallel_map(_coset_sample, boxes, workers)
    report = CosetReport(max_h=max_h, max_k=max_k, sampled=len(samples), samples=samples)
    for sample in samples:
        if not sample.internal_assoc:
            logger.warning(f"Lb != Rb for the coset word h={sample.h}, a={sample.a}, c={sample.c}")
            report.violations.append(sample)
        elif sample.unit_failures:
            logger.info(f"Lb = Rb for {sample.word} although units fail at {sample.unit_failures}")
    logger.info(f"Sampled {report.sampled} coset words, {len(report.violations)} violations")
    if output_path:
        write_json_lines(output_path, [*samples, {"summary": report.model_dump(mode="json", exclude={"samples"})}])
    return report

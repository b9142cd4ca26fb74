from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from garside import NormalForm

# Braid words appear in every model in their "n: k1 k2 ..." text form.


class Sign(str, Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def unit(self) -> int:
        return 1 if self is Sign.PLUS else -1

    @classmethod
    def coerce(cls, value) -> "Sign":
        """Accept a Sign, '+'/'-' or a nonzero integer"""
        if isinstance(value, Sign):
            return value
        if isinstance(value, int) and not isinstance(value, bool) and value != 0:
            return cls.PLUS if value > 0 else cls.MINUS
        if value in ("+", "-"):
            return cls(value)
        raise ValueError(f"Not a sign: {value!r}")


class RefusalReason(str, Enum):
    BAD_PERMUTATION = "BadPermutation"
    UNIT_FAILURE = "UnitFailure"
    PROFILE_MISMATCH = "ProfileMismatch"
    ASSOCIATIVITY_FAILURE = "AssociativityFailure"


class EquivalenceClass(str, Enum):
    PLUS = "Plus"
    MINUS = "Minus"


class CertificateVerdict(str, Enum):
    DISTINCT_CLOSURES = "DistinctClosures"
    INCONCLUSIVE = "Inconclusive"


# Cabling models
class DeriveReport(BaseModel):
    """The four derived six-strand braids and their equality verdicts"""
    word: str
    L: str
    R: str
    Lp: str
    Rp: str
    internal_assoc: bool
    external_assoc: bool


# Interchange models
class InterchangeReport(BaseModel):
    """Outcome of the candidate screen and, when requested, the B6 associativity checks"""
    candidate: bool
    permutation_ok: bool
    unit_failures: List[Tuple[int, int]] = Field(default_factory=list)
    internal_assoc: Optional[bool] = None
    external_assoc: Optional[bool] = None
    interchanging: bool = False

    @model_validator(mode="after")
    def check_interchanging(self) -> "InterchangeReport":
        expected = bool(self.candidate and self.internal_assoc and self.external_assoc)
        if self.interchanging != expected:
            raise ValueError("interchanging must equal candidate and both associativity checks")
        return self


class InnerOuterProfile(BaseModel):
    """Exponents of the sub-braids left by deleting strands {1,4} (inner) and {2,3} (outer)"""
    inner: int
    outer: int
    pattern_ok: bool


class ClassificationResult(BaseModel):
    """Either a place (n, sign) in the family or a refusal with its reason"""
    word: str
    in_family: bool
    n: Optional[int] = Field(None, ge=0)
    sign: Optional[Sign] = None
    reason: Optional[RefusalReason] = None
    profile: Optional[InnerOuterProfile] = None

    @model_validator(mode="after")
    def check_outcome(self) -> "ClassificationResult":
        if self.in_family:
            if self.n is None or self.sign is None or self.reason is not None:
                raise ValueError("An in-family result needs n and sign and no reason")
        elif self.reason is None:
            raise ValueError("A refusal needs a reason")
        return self

    @property
    def label(self) -> str:
        if self.in_family:
            return f"InFamily({self.n},{self.sign.value})"
        return f"NotInterchanging({self.reason.value})"


class ScreenVerdict(BaseModel):
    """One obstruction screen: NotApplicable, or Applicable with pass/fail"""
    screen: str = Field(..., pattern="^[ABC]$")
    applicable: bool
    passed: Optional[bool] = None
    detail: str = ""

    @model_validator(mode="after")
    def check_passed(self) -> "ScreenVerdict":
        if self.applicable != (self.passed is not None):
            raise ValueError("passed is set exactly when the screen applies")
        return self

    @property
    def label(self) -> str:
        if not self.applicable:
            return f"Screen{self.screen} NotApplicable"
        return f"Screen{self.screen} Applicable({'pass' if self.passed else 'fail'})"


# Link models
class LinkingPair(BaseModel):
    """Linking number between two closure components (indices into components)"""
    first: int
    second: int
    linking_number: int


class LinkSummary(BaseModel):
    """Components of the closure, pairwise linking numbers and self-crossing tallies"""
    components: List[List[int]]
    pairwise_lk: List[LinkingPair] = Field(default_factory=list)
    writhe_per_component: List[int] = Field(default_factory=list)

    def linking_multiset(self) -> List[int]:
        return sorted(pair.linking_number for pair in self.pairwise_lk)

    def cycle_type(self) -> List[int]:
        return sorted((len(c) for c in self.components), reverse=True)


class CertificateReport(BaseModel):
    """Non-conjugacy certificate; reasons lists every invariant that differs"""
    verdict: CertificateVerdict
    reasons: List[str] = Field(default_factory=list)


# Search models
class SearchConfig(BaseModel):
    """Bounds and switches for the exhaustive B4 enumeration"""
    max_len: int = Field(..., ge=1)
    screens_enabled: bool = True
    workers: int = Field(1, ge=1)
    output_path: Optional[str] = None

    @property
    def generators(self) -> Tuple[int, ...]:
        return (1, -1, 2, -2, 3, -3)


class InterchangingClass(BaseModel):
    """One interchanging braid class found by the search"""
    normal_form: NormalForm
    witness: str
    word_length: int
    exponent_sum: int
    classification: ClassificationResult


class SearchReport(BaseModel):
    """Summary of one exhaustive run; anomalies empty means consistent with the classification"""
    max_len: int
    screens_enabled: bool
    words_enumerated: int = 0
    candidates: int = 0
    candidate_classes: int = 0
    interchanging: List[InterchangingClass] = Field(default_factory=list)
    anomalies: List[str] = Field(default_factory=list)
    # filled by unscreened runs only; screened runs drop refuted braids before checking
    screen_violations: List[str] = Field(default_factory=list)

    def family_members(self) -> List[Tuple[int, str]]:
        return sorted(
            (c.classification.n, c.classification.sign.value)
            for c in self.interchanging
            if c.classification.in_family
        )


class CosetSample(BaseModel):
    """One sampled word (s2 s1 s3 s2)^h s2 s1^a s3^c"""
    h: int
    a: int
    c: int
    word: str
    internal_assoc: bool
    unit_failures: List[Tuple[int, int]] = Field(default_factory=list)


class CosetReport(BaseModel):
    """Lb = Rb over a box of the double coset"""
    max_h: int = Field(..., ge=0)
    max_k: int = Field(..., ge=0)
    sampled: int = Field(0, ge=0)
    violations: List[CosetSample] = Field(default_factory=list)
    samples: List[CosetSample] = Field(default_factory=list)

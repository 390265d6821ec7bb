from pydantic import BaseModel, Field
from typing import Any, Dict, List, Literal, Optional, Tuple

from app.config import settings


class Verdict(BaseModel):
    """A yes/no answer with the evidence behind a 'no' (or a 'yes', for searches)"""
    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds


class IsoWitness(BaseModel):
    mapping: Tuple[int, ...]
    kind: Literal["isomorphism", "anti-isomorphism"] = "isomorphism"


class PeriodWitness(BaseModel):
    element: str
    index: int
    period: int


class Budgets(BaseModel):
    max_elements: int = Field(default=100_000, ge=1)
    max_length: int = Field(default=12, ge=1)

    @classmethod
    def from_settings(cls, **overrides) -> "Budgets":
        values = {"max_elements": settings.MAX_ELEMENTS, "max_length": settings.MAX_LENGTH}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class Exhausted(BaseModel):
    """Partial census of an enumeration that ran out of budget"""
    elements_found: int
    frontier_size: int
    max_elements: int
    max_length: int
    reason: Literal["max_elements", "max_length"]


class KnownInfinite(BaseModel):
    witness: PeriodWitness
    reason: str = "not aperiodic"


class FreenessResult(BaseModel):
    ok: bool
    words_checked: int
    max_len: int
    collision: Optional[Tuple[str, str]] = None


class HomomorphismFailure(BaseModel):
    s: str
    t: str
    sequence: List[str]


class ClassificationReport(BaseModel):
    size: int
    band: bool
    aperiodic: bool
    monoid: bool
    relative_identities: bool
    regular: bool
    lrr_faithful: bool
    s_squared_band: bool
    canonical_injective: bool
    canonical_homomorphism: bool
    self_automaton: bool
    self_dual: Optional[bool] = None
    c_self_automaton: Optional[bool] = None
    sigma_size: Optional[int] = None
    sigma_status: Literal["finite", "infinite", "exhausted", "skipped"] = "skipped"
    square_d_classes: bool
    maximal_d_singletons: bool

    band_witness: Optional[str] = None
    kernel_pairs: List[Tuple[str, str]] = []
    homomorphism_counterexample: Optional[HomomorphismFailure] = None
    period_witness: Optional[PeriodWitness] = None
    anti_isomorphism: Optional[Dict[str, str]] = None


CENSUS_COLUMNS = (
    "file", "n", "band", "aperiodic", "monoid", "lrr_faithful", "s2_band",
    "self_dual", "self_automaton", "c_self_automaton", "sigma_size",
)


class CensusRow(BaseModel):
    file: str
    n: int
    band: bool
    aperiodic: bool
    monoid: bool
    lrr_faithful: bool
    s2_band: bool
    self_dual: Optional[bool] = None
    self_automaton: bool
    c_self_automaton: Optional[bool] = None
    sigma_size: Optional[str] = None

    @classmethod
    def from_report(cls, file: str, report: ClassificationReport) -> "CensusRow":
        if report.sigma_status == "finite":
            sigma_size = str(report.sigma_size)
        elif report.sigma_status == "infinite":
            sigma_size = "inf"
        else:
            sigma_size = None
        return cls(
            file=file,
            n=report.size,
            band=report.band,
            aperiodic=report.aperiodic,
            monoid=report.monoid,
            lrr_faithful=report.lrr_faithful,
            s2_band=report.s_squared_band,
            self_dual=report.self_dual,
            self_automaton=report.self_automaton,
            c_self_automaton=report.c_self_automaton,
            sigma_size=sigma_size,
        )

    def csv_fields(self) -> List[str]:
        def cell(value) -> str:
            if value is None:
                return "?"
            if isinstance(value, bool):
                return "true" if value else "false"
            return str(value)
        return [cell(getattr(self, column)) for column in CENSUS_COLUMNS]

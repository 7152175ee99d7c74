import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from app.algebra.mpoly import MPoly
from app.groebner.bounds import DegreeBounds, EliminantReport
from app.groebner.buchberger import GroebnerBasis
from app.groebner.zerodim import ZeroDimCertificate
from app.logdiff.models import HypothesisReport, OdeProblem
from app.oracle.verify import VerificationResult


@dataclass
class OracleOutcome:
    ran: bool = False
    skipped_reason: Optional[str] = None
    x0: Optional[str] = None
    order: Optional[int] = None
    slack: Optional[int] = None
    l1: Optional[VerificationResult] = None
    l2: Optional[VerificationResult] = None
    eliminants: Dict[int, VerificationResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if not self.ran:
            return True
        checks = [self.l1, self.l2, *self.eliminants.values()]
        return all(c.passed for c in checks if c is not None)


@dataclass
class SolveState:
    """Everything one solve run produces, phase by phase."""
    problem: OdeProblem
    hypotheses: Optional[HypothesisReport] = None
    system: List[MPoly] = field(default_factory=list)
    # k of each system entry, P_{m+k}
    equation_labels: List[int] = field(default_factory=list)
    leading_forms: List[MPoly] = field(default_factory=list)
    leading_certificate: Optional[ZeroDimCertificate] = None
    groebner: Optional[GroebnerBasis] = None
    groebner_verified: Optional[bool] = None
    certificate: Optional[ZeroDimCertificate] = None
    bounds: Optional[DegreeBounds] = None
    eliminants: List[EliminantReport] = field(default_factory=list)
    necessary_equations: Optional[List[int]] = None
    weight_bound_ok: Optional[bool] = None
    unit_ideal: bool = False
    oracle: OracleOutcome = field(default_factory=OracleOutcome)
    event_log: List[str] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)
    start_time: float = field(default_factory=time.time)
    end_time: Optional[float] = None

    def mark_end(self):
        self.end_time = time.time()

"""Report records, configuration constants, and serialization.

Every inequality check produces a BoundReport.  Pass/fail for bounds with
rational exponents is decided in exact integer arithmetic (raise both sides
to the exponent's denominator), so an asserted pass can never be a rounding
artifact; the float `rhs` stored in the record is display-only.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

VERSION = "0.1.0"


class BoundViolation(RuntimeError):
    """A check the theory guarantees came out false; carries the report."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"asserted bound failed: {report.id} "
                         f"(lhs={report.lhs}, rhs={report.rhs})")


@dataclass(frozen=True)
class Constants:
    """Named stand-ins for the implicit constants in the soft bounds.

    Hard (theorem-exact) inequalities are always asserted; constant-bearing
    ones are recorded with pass flags unless `strict` upgrades them to
    assertions.
    """

    c1: Fraction = Fraction(1, 16)      # graph-decomposition size guarantee
    c2: Fraction = Fraction(65536)      # graph-decomposition sumset guarantee
    c_comb: Fraction = Fraction(1)      # combined-cover budget multiplier
    c_tech: Fraction = Fraction(1)      # uniform-case budget multiplier
    c_main: Fraction = Fraction(1)      # dichotomy bound multiplier
    C: Fraction = Fraction(4)           # partition branch-count multiplier
    strict: bool = False

    def to_dict(self) -> dict:
        return {
            "c1": str(self.c1),
            "c2": str(self.c2),
            "c_comb": str(self.c_comb),
            "c_tech": str(self.c_tech),
            "c_main": str(self.c_main),
            "C": str(self.C),
            "strict": self.strict,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Constants":
        kwargs = {}
        for key in ("c1", "c2", "c_comb", "c_tech", "c_main", "C"):
            if key in data:
                kwargs[key] = Fraction(data[key])
        if "strict" in data:
            kwargs["strict"] = bool(data["strict"])
        return cls(**kwargs)


DEFAULT_CONSTANTS = Constants()


@dataclass
class BoundReport:
    """One verified inequality instance."""

    id: str
    lhs: int
    rhs: float
    ratio: float
    passed: bool
    K: Fraction | None = None
    family: str = ""
    params: str = ""
    size: int = 0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "family": self.family,
            "params": self.params,
            "size": self.size,
            "K": None if self.K is None else str(self.K),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "pass": self.passed,
            "details": self.details,
        }


def leq_power(lhs: int, base: Fraction, exponent: Fraction, scale: int = 1) -> bool:
    """Exact test of lhs <= base**exponent * scale for positive base/scale.

    Raising both sides to the exponent's denominator keeps everything in
    integers, so the answer is exact however irrational the power looks in
    floating point.
    """
    if lhs <= 0:
        return True
    base = Fraction(base)
    exponent = Fraction(exponent)
    if base <= 0 or scale <= 0:
        raise ValueError("base and scale must be positive")
    if exponent < 0:
        raise ValueError("negative exponents not supported")
    p, q = exponent.numerator, exponent.denominator
    return lhs**q * base.denominator**p <= base.numerator**p * scale**q


def power_float(base: Fraction, exponent: Fraction, scale: int = 1) -> float:
    """Display value of base**exponent * scale (double precision)."""
    base = Fraction(base)
    if base <= 0:
        return 0.0
    ln = math.log(base.numerator) - math.log(base.denominator)
    return math.exp(float(exponent) * ln) * scale


def ratio_float(lhs: int, rhs: float) -> float:
    if rhs == 0:
        return math.inf if lhs else 0.0
    return lhs / rhs


def make_power_report(ident: str, lhs: int, base: Fraction, exponent: Fraction,
                      scale: int, K: Fraction | None = None, **meta) -> BoundReport:
    """BoundReport for lhs <= base**exponent * scale, decided exactly."""
    rhs = power_float(base, exponent, scale)
    passed = leq_power(lhs, base, exponent, scale)
    rep = BoundReport(id=ident, lhs=lhs, rhs=rhs, ratio=ratio_float(lhs, rhs),
                      passed=passed, K=K, **meta)
    rep.details["exponent"] = f"{Fraction(exponent)}"
    return rep


def make_exact_report(ident: str, lhs: int, rhs: Fraction,
                      K: Fraction | None = None, **meta) -> BoundReport:
    """BoundReport for lhs <= rhs with an exact rational right side."""
    rhs = Fraction(rhs)
    return BoundReport(id=ident, lhs=lhs, rhs=float(rhs),
                       ratio=ratio_float(lhs, float(rhs)),
                       passed=lhs <= rhs, K=K, **meta)


def make_lower_report(ident: str, lhs: int, rhs, K: Fraction | None = None,
                      **meta) -> BoundReport:
    """BoundReport for the lower bound lhs >= rhs (rhs rational or float)."""
    exact = isinstance(rhs, (int, Fraction))
    passed = (Fraction(lhs) >= rhs) if exact else (lhs >= rhs)
    rep = BoundReport(id=ident, lhs=lhs, rhs=float(rhs),
                      ratio=ratio_float(lhs, float(rhs)), passed=passed,
                      K=K, **meta)
    rep.details["direction"] = ">="
    return rep


def assert_report(report: BoundReport) -> BoundReport:
    if not report.passed:
        raise BoundViolation(report)
    return report


# ---------------------------------------------------------------------------
# serialization

CSV_COLUMNS = ["id", "family", "params", "size", "K", "lhs", "rhs", "ratio", "pass"]


def sort_reports(reports) -> list[BoundReport]:
    return sorted(reports, key=lambda r: (r.id, r.family, r.params, r.size))


def reports_to_json(reports, config: dict) -> str:
    doc = {
        "version": VERSION,
        "config": config,
        "reports": [r.to_dict() for r in sort_reports(reports)],
    }
    return json.dumps(doc, indent=2, sort_keys=False, default=str) + "\n"


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in sort_reports(reports):
        writer.writerow([
            r.id, r.family, r.params, r.size,
            "" if r.K is None else str(r.K),
            r.lhs, repr(r.rhs), repr(r.ratio), r.passed,
        ])
    return buf.getvalue()

"""Verification report record shared by the transplant and inequality checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Outcome of checking one identity or inequality instance.

    deficit is rhs - lhs in the statement's orientation (>= 0 expected for
    inequalities, ~0 for identities and extremals); error_budget is the
    combined quadrature error the deficit is judged against.
    """

    family: str
    label: str
    params: dict
    lhs: float
    rhs: float
    ratio: float
    deficit: float
    error_budget: float
    passed: bool
    notes: str = ""

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "label": self.label,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "deficit": self.deficit,
            "error_budget": self.error_budget,
            "pass": self.passed,
            "notes": self.notes,
        }

"""Verification reports: named checks with counterexample witnesses."""

from dataclasses import dataclass, field
from typing import Iterable, List, Optional


@dataclass
class Check:
    """One named identity check.

    Attributes:
        name: Stable identifier, e.g. 'qybe' or 'antipode_left'
        passed: Whether every residual vanished
        witness: Where it failed (index tuple, monomial text or basis label)
        residual: Canonical text of the nonzero residual at the witness
    """
    name: str
    passed: bool
    witness: Optional[str] = None
    residual: Optional[str] = None

    def to_dict(self) -> dict:
        out = {'name': self.name, 'status': 'pass' if self.passed else 'fail'}
        if not self.passed:
            out['witness'] = {'at': self.witness, 'residual': self.residual}
        return out


@dataclass
class VerificationReport:
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(self, name: str, passed: bool, witness=None, residual: Optional[str] = None) -> Check:
        if not passed and witness is None:
            witness = '?'
        check = Check(name, passed, None if passed else str(witness), None if passed else residual)
        self.checks.append(check)
        return check

    def record(self, name: str, failure) -> Check:
        """Add a check from a (witness, residual) failure tuple, or None on success."""
        if failure is None:
            return self.add(name, True)
        witness, residual = failure
        return self.add(name, False, witness, residual)

    def extend(self, other: 'VerificationReport', prefix: str = '') -> 'VerificationReport':
        for check in other.checks:
            self.checks.append(Check(f"{prefix}{check.name}", check.passed, check.witness, check.residual))
        return self

    def check(self, name: str) -> Check:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def failures(self) -> Iterable[Check]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> dict:
        return {'passed': self.passed, 'checks': [check.to_dict() for check in self.checks]}

"""Small report containers shared by the verification helpers."""

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    witness: object = None

    def as_dict(self):
        return {"name": self.name, "pass": self.passed, "witness": self.witness}


@dataclass
class Report:
    """Named checks plus free-form data.

    ``require`` records a check and raises TheoremViolated when it fails and
    ``strict`` is set; otherwise failures are only collected.
    """

    name: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    strict: bool = True

    def require(self, name, passed, witness=None):
        from .errors import TheoremViolated

        self.checks.append(Check(name, bool(passed), None if passed else witness))
        if not passed and self.strict:
            raise TheoremViolated(name, witness)
        return bool(passed)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def as_dict(self):
        return {"name": self.name, "pass": self.passed, "checks": [c.as_dict() for c in self.checks], "data": self.data}

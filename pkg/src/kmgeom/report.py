"""Residual reports: named max-abs residuals with a shared pass/fail tolerance."""

from dataclasses import dataclass, field


DEFAULT_TOL = 1e-9


@dataclass
class ResidualReport:
    """A table of named non-negative residuals checked against one tolerance.

    Validity is purely a function of the residuals and ``tol``; entries are
    max-abs deviations of tensor identities evaluated over the model basis.
    """

    tol: float = DEFAULT_TOL
    entries: dict[str, float] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    def add(self, name: str, residual: float, note: str | None = None) -> None:
        self.entries[name] = float(abs(residual))
        if note:
            self.notes[name] = note

    def merge(self, other: "ResidualReport", prefix: str = "") -> None:
        for name, value in other.entries.items():
            self.entries[prefix + name] = value
        for name, note in other.notes.items():
            self.notes[prefix + name] = note

    @property
    def valid(self) -> bool:
        return all(v <= self.tol for v in self.entries.values())

    @property
    def worst(self) -> tuple[str, float]:
        if not self.entries:
            return ("", 0.0)
        name = max(self.entries, key=self.entries.get)
        return (name, self.entries[name])

    def failures(self) -> dict[str, float]:
        return {k: v for k, v in self.entries.items() if v > self.tol}

    def to_dict(self) -> dict:
        out = {"tol": self.tol, "valid": self.valid, "residuals": dict(self.entries)}
        if self.notes:
            out["notes"] = dict(self.notes)
        return out

    def __getitem__(self, name: str) -> float:
        return self.entries[name]

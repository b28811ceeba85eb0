"""Violation reports returned by every checker.

A report never raises on a violated identity; it records the first few
offending instances (in deterministic iteration order) and a total count.
"""

from dataclasses import dataclass, field

MAX_VIOLATIONS = 10

# kinds: "axiom" for defining conditions, "derived" for consequences that a
# correct implementation can never violate once the axioms pass.
KINDS = ("axiom", "derived", "construction", "result")


@dataclass(frozen=True)
class Violation:
    identity: str
    where: tuple
    detail: str = ""

    def as_dict(self):
        return {"identity": self.identity, "where": list(self.where), "detail": self.detail}

    def __str__(self):
        loc = ", ".join(str(w) for w in self.where)
        s = f"{self.identity} at ({loc})"
        return f"{s}: {self.detail}" if self.detail else s


@dataclass
class Report:
    name: str
    kind: str = "axiom"
    checked: int = 0
    count: int = 0
    violations: list = field(default_factory=list)
    identities: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    max_violations: int = MAX_VIOLATIONS

    @property
    def ok(self):
        return self.count == 0

    def tick(self, k=1):
        self.checked += k

    def fail(self, identity, where=(), detail=""):
        self.count += 1
        if len(self.violations) < self.max_violations:
            self.violations.append(Violation(identity, tuple(where), detail))

    def expect(self, cond, identity, where=(), detail=""):
        self.tick()
        if not cond:
            self.fail(identity, where, detail() if callable(detail) else detail)
        return cond

    def merge(self, other):
        self.checked += other.checked
        self.count += other.count
        room = self.max_violations - len(self.violations)
        self.violations.extend(other.violations[:max(room, 0)])
        for ident in other.identities:
            if ident not in self.identities:
                self.identities.append(ident)
        return self

    def summary(self):
        status = "ok" if self.ok else f"{self.count} violation(s)"
        return f"{self.name}: {status} ({self.checked} checks)"

    def as_dict(self):
        out = {
            "name": self.name,
            "kind": self.kind,
            "ok": self.ok,
            "checked": self.checked,
            "violations": self.count,
            "first": [v.as_dict() for v in self.violations],
        }
        if self.identities:
            out["identities"] = list(self.identities)
        if self.notes:
            out["notes"] = dict(self.notes)
        return out

    def lines(self):
        yield self.summary()
        for ident in self.identities:
            yield f"  verified: {ident}" if self.ok else f"  identity: {ident}"
        for k, v in self.notes.items():
            yield f"  {k}: {v}"
        for v in self.violations:
            yield f"  ! {v}"
        if self.count > len(self.violations):
            yield f"  ! ... {self.count - len(self.violations)} more"

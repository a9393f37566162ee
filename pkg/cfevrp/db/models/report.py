"""Validation report model."""

from typing import Optional

from pydantic import BaseModel, Field

# Constraint families checked by the validator: the 25 numbered families plus job covering.
FAMILIES: tuple[str, ...] = tuple(str(eq) for eq in range(1, 26)) + ("cover",)


class Witness(BaseModel):
    """First counterexample found for a family."""

    vehicle: Optional[str] = None
    node: Optional[str] = None
    task: Optional[str] = None
    time: Optional[int] = None


class FamilyResult(BaseModel):
    """Outcome of one constraint family."""

    passed: bool = True
    message: str = ""
    witness: Optional[Witness] = None


class ValidationReport(BaseModel):
    """Per-family verdict of an independently re-checked schedule."""

    overall: bool
    families: dict[str, FamilyResult]
    warnings: list[str] = Field(default_factory=list)
    cost: int = 0
    charge_extrema: dict[str, tuple[int, int]] = Field(default_factory=dict)

    @property
    def failed(self) -> list[str]:
        return [name for name, result in self.families.items() if not result.passed]

    def render(self) -> str:
        """Human-readable table, one family per line."""
        lines = [f"{'family':<8} {'result':<6} witness"]
        for name, result in self.families.items():
            verdict = "pass" if result.passed else "FAIL"
            detail = ""
            if not result.passed:
                detail = result.message
                if result.witness is not None:
                    fields = result.witness.model_dump(exclude_none=True)
                    detail += " " + " ".join(f"{k}={v}" for k, v in fields.items())
            lines.append(f"{name:<8} {verdict:<6} {detail}".rstrip())
        for warning in self.warnings:
            lines.append(f"warning: {warning}")
        lines.append(f"cost: {self.cost}")
        lines.append(f"overall: {'pass' if self.overall else 'FAIL'}")
        return "\n".join(lines)

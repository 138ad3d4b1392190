"""Per-candidate and per-family assessments: Lefschetz defect bounds, toricity, product structure."""

from __future__ import annotations

from dataclasses import dataclass

from ..construct import ConstructionCandidate
from ..invariants import minus_K_cubed
from .golden import facts


@dataclass(frozen=True)
class DefectReport:
    lower: int
    upper: int
    resolved: int | None
    justification: str

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("empty defect interval")
        if self.resolved is not None and not self.lower <= self.resolved <= self.upper:
            raise ValueError(f"resolved defect {self.resolved} outside [{self.lower}, {self.upper}]")


class DefectError(ValueError):
    pass


def defect_bounds(delta_Z: int, rho_X: int) -> tuple[int, int]:
    """Bounds on the defect of the output from the defect of the base.

    The output always has defect at least 2. For a base of defect at most 2
    the output has defect at most 3; for larger base defect the output
    defect is delta_Z or delta_Z + 1. It never exceeds rho_X - 1.
    """
    lower = 2
    upper = 3 if delta_Z <= 2 else delta_Z + 1
    return lower, min(upper, rho_X - 1)


def defect_assess(f) -> DefectReport:
    deltas = {c.record.delta for c in f.provenance}
    if None in deltas:
        raise DefectError(f"a base of family {f.label()} carries no defect value")
    lower, upper = max(defect_bounds(d, f.rho) for d in deltas)
    fact = facts()["defect"].get(str(f.rho))
    cited = "lower bound from the construction; upper bound from the base defect"
    if lower == upper:
        return DefectReport(lower, upper, lower, cited)
    if fact is not None and (fact["scope"] == "all" or f.expected_anchor is not None):
        return DefectReport(lower, upper, fact["resolved"], f"recorded fact: {fact['fact']}")
    return DefectReport(lower, upper, None, cited + "; no recorded fact decides between the bounds")


def toric_assess(c: ConstructionCandidate) -> bool:
    Z = c.record
    return Z.toric is not None and c.A.coords in {tuple(t) for t in Z.toric}


def _restrict(v, idx):
    return tuple(v[i] for i in idx)


def _pulled_back(v, f) -> bool:
    return not any(v[i] for i in f.w_indices)


def threefold_family(surface_id: str, degree: int) -> str | None:
    return facts()["threefold_families"].get(surface_id, {}).get(str(degree))


def product_assess(c: ConstructionCandidate, catalog=None) -> str | None:
    """Product description when A and D both come from one factor of the base.

    Returned as ``W x (#tag)`` when the factor construction is a known
    3-fold, ``W x S`` when it is a surface, else ``W x C(Z0;A0,D0)``.
    """
    Z = c.record
    for f in Z.products:
        if not (_pulled_back(c.A.coords, f) and _pulled_back(c.D.coords, f)):
            continue
        A0, D0 = _restrict(c.A.coords, f.z0_indices), _restrict(c.D.coords, f.z0_indices)
        factor = None
        curves = facts()["curve_constructions"]
        if f.z0 in curves:
            factor = curves[f.z0]
        elif catalog is not None and f.z0 in catalog:
            S = catalog[f.z0]
            if S.dim == 2:
                tag = threefold_family(S.id, minus_K_cubed(S, S.cls(A0), S.cls(D0)))
                factor = f"(#{tag})" if tag else None
        if factor is None:
            factor = f"C({f.z0};{','.join(map(str, A0))};{','.join(map(str, D0))})"
        return f"{f.w}x{factor}"
    return None


def product_factors(desc: str | None) -> tuple[str, ...]:
    """Order-free form of a product description, for comparisons."""
    if not desc:
        return ()
    return tuple(sorted(p.strip("()#") for p in desc.split("x")))


__all__ = ["DefectError", "DefectReport", "defect_assess", "defect_bounds", "product_assess", "product_factors",
           "threefold_family", "toric_assess"]

"""Formula-versus-oracle verification harness.

Runs every closed-form construction applicable to an instance, recomputes
the same generic initial ideal definitionally through random coordinate
changes and Buchberger, and reports each comparison: exact ideal equality,
radicality, Borel-fixedness, prime-intersection round-trips, agreement of
the prime lists with independently computed minimal primes, and
coefficientwise Hilbert-series agreement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .formulas import (
    GinResult,
    gin_2minors,
    gin_maxminors_col,
    gin_maxminors_row,
    prime_containment_predicate,
)
from .gradedmatrix import (
    COLUMN,
    ROW,
    GradedLinearMatrix,
    all_two_minors,
    maximal_minor_polys,
    phi_from_kernels,
)
from .hilbert import contract_to_prefix_ring, h_phi_series, series_of_quotient
from .ideals import intersect, is_borel_fixed, is_radical, minimal_primes_squarefree
from .oracle import gin_oracle
from .rings import TermOrder

DEFAULT_VERIFY_CAP = 4


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        entry = {"name": name, "ok": bool(ok)}
        if detail:
            entry["detail"] = detail
        self.checks.append(entry)

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def to_json(self) -> dict:
        return {"checks": self.checks, "ok": self.ok}


def _structural_checks(report: VerificationReport, label: str, result: GinResult) -> None:
    report.add(f"{label}:radical", is_radical(result.gin))
    report.add(f"{label}:borel-fixed", is_borel_fixed(result.gin, char=0))
    if result.gin.is_zero():
        report.add(f"{label}:prime-intersection", not result.primes, "zero ideal, empty list")
        return
    meet = intersect([p.to_ideal() for p in result.primes])
    report.add(f"{label}:prime-intersection", meet == result.gin)
    irredundant = all(
        not (p.contains(q) or q.contains(p))
        for idx, p in enumerate(result.primes)
        for q in result.primes[idx + 1 :]
    )
    report.add(f"{label}:primes-irredundant", irredundant)
    computed = {tuple(sorted(p.variables())) for p in result.primes}
    independent = {tuple(vs) for vs in minimal_primes_squarefree(result.gin)}
    report.add(
        f"{label}:primes-match-minimal-primes",
        computed == independent,
        "" if computed == independent else f"{len(computed)} vs {len(independent)} primes",
    )


def _oracle_check(
    report: VerificationReport,
    label: str,
    result: GinResult,
    polys,
    order: TermOrder,
    seeds: Sequence[int],
    ring,
):
    oracle_side = gin_oracle(polys, order, seeds, ring=ring)
    ok = oracle_side == result.gin
    detail = ""
    if not ok:
        detail = (
            f"formula {result.gin.render_gens()} vs oracle {oracle_side.render_gens()}"
        )
    report.add(f"{label}:oracle-equality", ok, detail)
    report.add(f"{label}:oracle-borel-fixed", is_borel_fixed(oracle_side, char=0))
    return oracle_side


def run_verification(
    L: GradedLinearMatrix,
    order_kind: str = "degrevlex",
    seeds: Sequence[int] = (1, 2),
    cap: Optional[int] = None,
) -> VerificationReport:
    """Every applicable formula against the definitional oracle, one report."""
    cap = DEFAULT_VERIFY_CAP if cap is None else cap
    report = VerificationReport()
    order = TermOrder.make(L.ring, order_kind)

    if L.grading == COLUMN:
        result = gin_maxminors_col(L)
        _structural_checks(report, "max-minors-col", result)
        _oracle_check(
            report, "max-minors-col", result, maximal_minor_polys(L), order, seeds, L.ring
        )
        return report

    assert L.grading == ROW
    row_result = None
    if L.m <= L.n:
        row_result = gin_maxminors_row(L)
        _structural_checks(report, "max-minors-row", row_result)
        _oracle_check(
            report, "max-minors-row", row_result, maximal_minor_polys(L), order, seeds, L.ring
        )

    if L.m >= 2 and L.n >= 2:
        two_result = gin_2minors(L)
        _structural_checks(report, "two-minors", two_result)
        oracle_gin = _oracle_check(
            report, "two-minors", two_result, all_two_minors(L), order, seeds, L.ring
        )
        phi = phi_from_kernels(L)
        for p in two_result.primes:
            if not prime_containment_predicate(p.a, phi):
                report.add("two-minors:prime-containment", False, f"prime {p.a}")
                break
        else:
            report.add("two-minors:prime-containment", True)
        if L.m == 2 and row_result is not None:
            report.add(
                "two-minors:matches-max-minors",
                two_result.gin == row_result.gin,
            )
        closed = h_phi_series(phi, cap)
        counted = series_of_quotient(contract_to_prefix_ring(two_result.gin, phi.d), cap)
        report.add("hilbert:closed-form-vs-quotient", closed == counted)
        try:
            oracle_contracted = contract_to_prefix_ring(oracle_gin, phi.d)
        except ValueError as exc:
            report.add("hilbert:closed-form-vs-oracle", False, str(exc))
        else:
            oracle_counted = series_of_quotient(oracle_contracted, cap)
            report.add("hilbert:closed-form-vs-oracle", closed == oracle_counted)
    return report

"""Entanglement test orchestration.

A bipartition is probed for negativity of the partially transposed moment
matrix within a search budget; full multipartite entanglement is certified
when every canonical bipartition tests NPT.  Because the moment hierarchy is
only complete in the infinite-order limit, the opposite outcome is always
reported as "inconclusive", never as separability.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .matrix import MinorResult, eigen_negativity_scan, named_minor
from .transpositions import (
    Decomposition,
    TranspositionSet,
    all_decompositions,
    bipartitions_coarsening,
    canonical_bipartitions,
)

INCONCLUSIVE_NOTE = (
    "inconclusive bipartitions mean no negativity was found within the "
    "finite search budget; this never implies separability"
)

#: largest mode count for which separability classes are enumerated exhaustively
EXCLUSION_MODE_LIMIT = 6


@dataclass(frozen=True)
class SearchBudget:
    """Bounds on the negativity search: weight cap, witness size, strategy."""

    max_order: int = 2
    max_minor_size: int = 6
    strategy: str = "both"  # "eigen-scan" | "named-minors" | "both"

    def __post_init__(self):
        if self.max_order < 1:
            raise ValueError("max_order must be >= 1")
        if self.max_minor_size < 1:
            raise ValueError("max_minor_size must be >= 1")
        if self.strategy not in ("eigen-scan", "named-minors", "both"):
            raise ValueError(f"unknown strategy {self.strategy!r}")

    def as_dict(self) -> dict:
        return {
            "max_order": self.max_order,
            "max_minor_size": self.max_minor_size,
            "strategy": self.strategy,
        }


@dataclass(frozen=True)
class BipartitionOutcome:
    """Verdict for one transposition set with its best witness, if any."""

    transposition: TranspositionSet
    verdict: str  # "NPT" | "inconclusive"
    minor: MinorResult | None
    min_eigenvalue: float | None

    @property
    def npt(self) -> bool:
        return self.verdict == "NPT"

    def as_dict(self) -> dict:
        return {
            "I": sorted(self.transposition.members),
            "verdict": self.verdict,
            "minor": self.minor.as_dict() if self.minor else None,
            "min_eigenvalue": None
            if self.min_eigenvalue is None
            else float(f"{self.min_eigenvalue:.12g}"),
        }


@dataclass(frozen=True)
class CertificationReport:
    """Full-entanglement certification summary across all bipartitions."""

    modes: int
    budget: SearchBudget
    outcomes: tuple[BipartitionOutcome, ...]
    certificate: bool
    excluded: tuple[Decomposition, ...]
    note: str = INCONCLUSIVE_NOTE

    def outcome_for(self, transposed: TranspositionSet) -> BipartitionOutcome:
        wanted = transposed.canonical()
        for outcome in self.outcomes:
            if outcome.transposition == wanted:
                return outcome
        raise KeyError(f"no outcome recorded for {transposed}")

    def as_dict(self) -> dict:
        return {
            "modes": self.modes,
            "budget": self.budget.as_dict(),
            "bipartitions": [outcome.as_dict() for outcome in self.outcomes],
            "certificate": self.certificate,
            "excluded_decompositions": [str(d) for d in self.excluded],
            "note": self.note,
        }


def test_bipartition(provider, transposed, budget: SearchBudget | None = None, *,
                     tol: float = 1e-9) -> BipartitionOutcome:
    """Search one transposition set for a negative principal minor."""
    budget = budget or SearchBudget()
    transposed = (
        transposed
        if isinstance(transposed, TranspositionSet)
        else TranspositionSet.of(provider.modes, *transposed)
    )
    min_eigenvalue = None
    if budget.strategy in ("eigen-scan", "both"):
        scan = eigen_negativity_scan(
            provider,
            transposed,
            budget.max_order,
            tol=tol,
            max_minor_size=budget.max_minor_size,
        )
        min_eigenvalue = scan.min_eigenvalue
        if scan.minor is not None and scan.minor.negative:
            return BipartitionOutcome(transposed, "NPT", scan.minor, min_eigenvalue)
    if budget.strategy in ("named-minors", "both") and budget.max_minor_size >= 2:
        for pairs in _pair_combinations(provider.modes):
            result = named_minor(provider, transposed, pairs)
            if result.negative:
                return BipartitionOutcome(transposed, "NPT", result, min_eigenvalue)
    return BipartitionOutcome(transposed, "inconclusive", None, min_eigenvalue)


def _pair_combinations(modes: int):
    """All ((i,j),(k,l)) with four distinct modes, deterministic order."""
    for quad in itertools.combinations(range(1, modes + 1), 4):
        a, b, c, d = quad
        yield (a, b), (c, d)
        yield (a, c), (b, d)
        yield (a, d), (b, c)


def certify_full(provider, budget: SearchBudget | None = None, *,
                 tol: float = 1e-9) -> CertificationReport:
    """Test every canonical bipartition and grant or refuse the certificate.

    The excluded separability classes are all mode decompositions whose
    every coarsening to a bipartition tested NPT; with the certificate in
    hand that is every decomposition with at least two parts.
    """
    budget = budget or SearchBudget()
    modes = provider.modes
    outcomes = tuple(
        test_bipartition(provider, cut, budget, tol=tol)
        for cut in canonical_bipartitions(modes)
    )
    npt_cuts = {o.transposition for o in outcomes if o.npt}
    certificate = len(npt_cuts) == len(outcomes)
    excluded = []
    if modes <= EXCLUSION_MODE_LIMIT:
        for decomposition in all_decompositions(modes):
            cuts = bipartitions_coarsening(decomposition)
            if cuts and all(cut in npt_cuts for cut in cuts):
                excluded.append(decomposition)
    return CertificationReport(
        modes=modes,
        budget=budget,
        outcomes=outcomes,
        certificate=certificate,
        excluded=tuple(excluded),
    )


@dataclass(frozen=True)
class SweepPoint:
    """One evaluated minor at one grid point of a parameter sweep."""

    param: float
    nbar: float
    minor: str
    transposition: TranspositionSet
    value: float


def sweep(provider_factory, params, nbars, minors) -> list[SweepPoint]:
    """Evaluate named minors over a (parameter, noise) grid, in grid order.

    ``provider_factory(param, nbar)`` must return a moment provider;
    ``minors`` is a sequence of (name, transposition, pairs) entries as
    produced by :func:`four_mode_pair_groups`.
    """
    rows = []
    for nbar in nbars:
        for param in params:
            provider = provider_factory(param, nbar)
            for name, transposed, pairs in minors:
                result = named_minor(provider, transposed, pairs)
                rows.append(
                    SweepPoint(float(param), float(nbar), name,
                               result.transposition, result.determinant)
                )
    return rows


def sweep_to_csv(rows) -> str:
    """Render sweep rows as CSV with a fixed header and 12-digit floats."""
    lines = ["param,nbar,minor,I,value"]
    for row in rows:
        members = "+".join(str(m) for m in sorted(row.transposition.members))
        lines.append(
            f"{row.param:.12g},{row.nbar:.12g},{row.minor},{members},{row.value:.12g}"
        )
    return "\n".join(lines) + "\n"


def four_mode_pair_groups():
    """The two symmetry groups of pair minors for four modes.

    The first group (one transposed mode, or three) and the second group
    (two transposed modes aligned with the pair split) each consist of
    minors that coincide on the permutation-symmetric state.
    """
    split = ((1, 2), (3, 4))
    group1 = [
        ("d1", TranspositionSet.of(4, 1), split),
        ("d1", TranspositionSet.of(4, 2), split),
        ("d1", TranspositionSet.of(4, 3), split),
        ("d1", TranspositionSet.of(4, 1, 2, 3), split),
    ]
    group2 = [
        ("d2", TranspositionSet.of(4, 1, 2), ((1, 2), (3, 4))),
        ("d2", TranspositionSet.of(4, 1, 3), ((1, 3), (2, 4))),
        ("d2", TranspositionSet.of(4, 2, 3), ((2, 3), (1, 4))),
    ]
    return group1, group2

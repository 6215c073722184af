"""Transposition-set algebra, canonical bipartitions and mode decompositions.

A partial transposition is labelled by the subset of modes it transposes.
Composing two of them transposes the symmetric difference, and a set and its
complement always give the same test, so only the ``2^(n-1) - 1`` subsets
avoiding the highest mode need to be checked.  Decompositions (set
partitions of the modes) are the vocabulary for reporting which separability
classes a certification excludes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


@dataclass(frozen=True)
class TranspositionSet:
    """Subset of modes ``1..n`` to transpose."""

    modes: int
    members: frozenset[int]

    def __post_init__(self):
        if self.modes < 1:
            raise ValueError("mode count must be >= 1")
        object.__setattr__(self, "members", frozenset(self.members))
        if not self.members <= set(range(1, self.modes + 1)):
            raise ValueError(f"members {sorted(self.members)} not within 1..{self.modes}")

    @classmethod
    def of(cls, modes: int, *members: int) -> "TranspositionSet":
        return cls(modes, frozenset(members))

    @classmethod
    def empty(cls, modes: int) -> "TranspositionSet":
        return cls(modes, frozenset())

    def is_empty(self) -> bool:
        return not self.members

    def complement(self) -> "TranspositionSet":
        full = frozenset(range(1, self.modes + 1))
        return TranspositionSet(self.modes, full - self.members)

    def canonical(self) -> "TranspositionSet":
        """Of the pair {I, complement}, the one not containing the top mode."""
        return self.complement() if self.modes in self.members else self

    def sort_key(self):
        return (len(self.members), tuple(sorted(self.members)))

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in sorted(self.members)) + "}"


def compose(i: TranspositionSet, j: TranspositionSet) -> TranspositionSet:
    """Composition of two partial transpositions: the symmetric difference."""
    if i.modes != j.modes:
        raise ValueError(f"mode-count mismatch: {i.modes} vs {j.modes}")
    return TranspositionSet(i.modes, i.members ^ j.members)


def canonical_bipartitions(n: int) -> list[TranspositionSet]:
    """All nontrivial transposition tests for ``n`` modes, one per {I, complement} pair.

    Representatives are the nonempty subsets of ``{1..n-1}``; there are
    ``2^(n-1) - 1`` of them, ordered by size then lexicographically.
    """
    if n < 2:
        raise ValueError("bipartitions need at least two modes")
    out = []
    for size in range(1, n):
        for combo in combinations(range(1, n), size):
            out.append(TranspositionSet(n, frozenset(combo)))
    return out


@dataclass(frozen=True)
class Decomposition:
    """Partition of the modes ``1..n`` into disjoint nonempty parts."""

    modes: int
    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        parts = tuple(sorted((frozenset(p) for p in self.parts), key=min))
        object.__setattr__(self, "parts", parts)
        if not parts or any(not p for p in parts):
            raise ValueError("parts must be nonempty")
        seen: set[int] = set()
        for p in parts:
            if seen & p:
                raise ValueError("parts must be disjoint")
            seen |= p
        if seen != set(range(1, self.modes + 1)):
            raise ValueError(f"parts must cover 1..{self.modes}")

    @classmethod
    def of(cls, modes: int, *parts) -> "Decomposition":
        return cls(modes, tuple(frozenset(p) for p in parts))

    @classmethod
    def finest(cls, modes: int) -> "Decomposition":
        return cls(modes, tuple(frozenset({i}) for i in range(1, modes + 1)))

    def sort_key(self):
        return (len(self.parts), tuple(tuple(sorted(p)) for p in self.parts))

    def __str__(self) -> str:
        return "{" + "|".join(",".join(str(i) for i in sorted(p)) for p in self.parts) + "}"


def refines(sigma: Decomposition, pi: Decomposition) -> bool:
    """True when every part of ``sigma`` lies inside some part of ``pi``."""
    if sigma.modes != pi.modes:
        raise ValueError(f"mode-count mismatch: {sigma.modes} vs {pi.modes}")
    return all(any(s <= p for p in pi.parts) for s in sigma.parts)


def bipartitions_coarsening(pi: Decomposition) -> list[TranspositionSet]:
    """Canonical bipartitions obtained by merging the parts of ``pi`` into two groups.

    A state separable over ``pi`` satisfies every one of these bipartite
    separability conditions, so refuting all of them refutes
    ``pi``-separability.
    """
    p = len(pi.parts)
    if p < 2:
        raise ValueError("decomposition must have at least two parts")
    out = []
    for size in range(1, p):
        for combo in combinations(range(p), size):
            group = frozenset().union(*(pi.parts[i] for i in combo))
            cand = TranspositionSet(pi.modes, group).canonical()
            if cand not in out:
                out.append(cand)
    return sorted(out, key=TranspositionSet.sort_key)


def all_decompositions(n: int, min_parts: int = 2) -> list[Decomposition]:
    """Every decomposition of ``1..n`` with at least ``min_parts`` parts."""

    def partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for part in partitions(rest):
            for i in range(len(part)):
                yield part[:i] + [[first] + part[i]] + part[i + 1:]
            yield [[first]] + part

    out = [
        Decomposition(n, tuple(frozenset(p) for p in parts))
        for parts in partitions(list(range(1, n + 1)))
        if len(parts) >= min_parts
    ]
    return sorted(out, key=Decomposition.sort_key)

"""Graded antilexicographical multi-indices and monomial numbering.

A multi-index is a plain tuple of nonnegative integers.  The graded
antilexicographical ("gralex") order compares total weight first and, on a
tie, the last differing coordinate.  Normally ordered monomials over ``n``
modes are identified with multi-indices of dimension ``2n`` through the
packing ``(l_1, k_1, ..., l_n, k_n)`` (``k_i`` creation exponent, ``l_i``
annihilation exponent of mode ``i``), which makes position 1 the identity,
position 2 the single annihilator of mode 1, position 3 its creator, and so
on.  Positions are 1-based throughout.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

MultiIndex = tuple[int, ...]


def weight(u: MultiIndex) -> int:
    """Total degree of a multi-index."""
    return sum(u)


def _check_entries(u) -> None:
    if len(u) < 1:
        raise ValueError("multi-index must have dimension >= 1")
    if any((not isinstance(x, int)) or x < 0 for x in u):
        raise ValueError(f"multi-index entries must be nonnegative integers: {u}")


def compare_gralex(u: MultiIndex, v: MultiIndex) -> int:
    """Compare two multi-indices in gralex order; returns -1, 0 or +1.

    ``u`` precedes ``v`` when its weight is smaller, or on equal weight when
    the last nonzero entry of ``v - u`` is positive.
    """
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    wu, wv = sum(u), sum(v)
    if wu != wv:
        return -1 if wu < wv else 1
    for a, b in zip(reversed(u), reversed(v)):
        if a != b:
            return -1 if b > a else 1
    return 0


def next_multiindex(u: MultiIndex) -> MultiIndex:
    """Successor of ``u`` in gralex order.

    Locates the first nonzero entry ``u_i``; if only the last entry is
    nonzero (or all are zero) the weight increases and everything moves back
    to the first coordinate, otherwise one unit is carried from ``u_i`` to
    ``u_{i+1}``.
    """
    _check_entries(u)
    d = len(u)
    i = next((j for j, x in enumerate(u) if x != 0), d - 1)
    if i == d - 1:
        return (u[-1] + 1,) + (0,) * (d - 1)
    return (u[i] - 1,) + (0,) * i + (u[i + 1] + 1,) + u[i + 2:]


# Enumerated prefixes of the gralex sequence, keyed by dimension.  Lists only
# grow (append-only), so concurrent readers are safe under the GIL.
_SEQUENCES: dict[int, list[MultiIndex]] = {}


def nth_multiindex(d: int, n: int) -> MultiIndex:
    """The ``n``-th multi-index of dimension ``d`` (1-based), by iteration."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if n < 1:
        raise ValueError("position must be >= 1")
    seq = _SEQUENCES.setdefault(d, [(0,) * d])
    while len(seq) < n:
        seq.append(next_multiindex(seq[-1]))
    return seq[n - 1]


def nth_multiindex_closed2(n: int) -> MultiIndex:
    """Closed form for the ``n``-th two-dimensional multi-index.

    Uses ``N = ceil((sqrt(8n+1)-3)/2)`` evaluated in exact integer
    arithmetic: ``8n+1`` is tested for being a perfect square so triangular
    boundaries never suffer floating-point rounding.
    """
    if n < 1:
        raise ValueError("position must be >= 1")
    m = 8 * n + 1
    s = math.isqrt(m)
    if s * s == m:
        # 8n+1 odd => s odd => (s - 3) even.
        big_n = (s - 3) // 2
    else:
        # smallest N with (2N+3)^2 >= m
        big_n = max(0, (s - 3) // 2)
        while (2 * big_n + 3) ** 2 < m:
            big_n += 1
    return (
        (big_n + 1) * (big_n + 2) // 2 - n,
        n - big_n * (big_n + 1) // 2 - 1,
    )


def count_up_to_weight(d: int, w: int) -> int:
    """Number of ``d``-dimensional multi-indices with weight <= ``w``."""
    if w < 0:
        return 0
    return math.comb(w + d, d)


_TOKEN_RE = re.compile(r"(ad|a)(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class MonomialIndex:
    """Normally ordered monomial over ``n`` modes.

    ``pairs[i] = (k, l)`` holds the creation exponent ``k`` and annihilation
    exponent ``l`` of mode ``i+1``; the monomial is the product of
    ``ad_i^k a_i^l`` over all modes.
    """

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.pairs) < 1:
            raise ValueError("monomial needs at least one mode")
        for k, l in self.pairs:
            if k < 0 or l < 0:
                raise ValueError(f"exponents must be nonnegative: {self.pairs}")

    @property
    def modes(self) -> int:
        return len(self.pairs)

    @property
    def weight(self) -> int:
        return sum(k + l for k, l in self.pairs)

    @property
    def creation(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.pairs)

    @property
    def annihilation(self) -> tuple[int, ...]:
        return tuple(l for _, l in self.pairs)

    def is_identity(self) -> bool:
        return all(k == 0 and l == 0 for k, l in self.pairs)

    def conjugate(self) -> "MonomialIndex":
        """Swap creation and annihilation exponents (Hermitian partner key)."""
        return MonomialIndex(tuple((l, k) for k, l in self.pairs))

    def pack(self) -> MultiIndex:
        """Interleave to the 2n-dimensional multi-index (l1, k1, ..., ln, kn)."""
        out = []
        for k, l in self.pairs:
            out.append(l)
            out.append(k)
        return tuple(out)

    @classmethod
    def unpack(cls, u: MultiIndex) -> "MonomialIndex":
        if len(u) % 2 != 0:
            raise ValueError("packed multi-index must have even dimension")
        return cls(tuple((u[2 * i + 1], u[2 * i]) for i in range(len(u) // 2)))

    @classmethod
    def identity(cls, modes: int) -> "MonomialIndex":
        return cls(((0, 0),) * modes)

    @classmethod
    def from_ops(cls, modes: int, creation=(), annihilation=()) -> "MonomialIndex":
        """Build from lists of mode numbers, one entry per operator factor."""
        k = [0] * modes
        l = [0] * modes
        for i in creation:
            if not 1 <= i <= modes:
                raise ValueError(f"mode {i} out of range 1..{modes}")
            k[i - 1] += 1
        for i in annihilation:
            if not 1 <= i <= modes:
                raise ValueError(f"mode {i} out of range 1..{modes}")
            l[i - 1] += 1
        return cls(tuple(zip(k, l)))

    @classmethod
    def parse(cls, text: str, modes: int | None = None) -> "MonomialIndex":
        """Parse the token form, e.g. ``"ad3^2 a1 a4"`` (``ad`` = creation).

        The mode count defaults to the largest mode mentioned; repeated
        tokens accumulate.
        """
        tokens = text.split()
        if tokens == ["1"] or not tokens:
            if modes is None:
                raise ValueError("identity monomial needs an explicit mode count")
            return cls.identity(modes)
        ops = []
        for tok in tokens:
            m = _TOKEN_RE.match(tok)
            if m is None:
                raise ValueError(f"bad monomial token: {tok!r}")
            kind, mode, exp = m.group(1), int(m.group(2)), int(m.group(3) or 1)
            if mode < 1:
                raise ValueError(f"mode numbers start at 1: {tok!r}")
            ops.append((kind, mode, exp))
        n = modes if modes is not None else max(mode for _, mode, _ in ops)
        k = [0] * n
        l = [0] * n
        for kind, mode, exp in ops:
            if mode > n:
                raise ValueError(f"mode {mode} exceeds mode count {n}")
            if kind == "ad":
                k[mode - 1] += exp
            else:
                l[mode - 1] += exp
        return cls(tuple(zip(k, l)))

    def __str__(self) -> str:
        """Canonical token form: creators by mode, then annihilators."""
        parts = []
        for i, (k, _) in enumerate(self.pairs, start=1):
            if k:
                parts.append(f"ad{i}" + (f"^{k}" if k > 1 else ""))
        for i, (_, l) in enumerate(self.pairs, start=1):
            if l:
                parts.append(f"a{i}" + (f"^{l}" if l > 1 else ""))
        return " ".join(parts) if parts else "1"


def monomial_at(modes: int, position: int) -> MonomialIndex:
    """Monomial at a 1-based position of the ordered moment sequence."""
    if modes < 1:
        raise ValueError("mode count must be >= 1")
    return MonomialIndex.unpack(nth_multiindex(2 * modes, position))


def position_of(m: MonomialIndex) -> int:
    """1-based position of a monomial: weight-block offset plus in-block rank."""
    u = m.pack()
    d = len(u)
    w = sum(u)
    rank = 0
    rem = w
    # Count same-weight indices that precede u: fix coordinates from the top
    # down, summing over smaller values at each coordinate.
    for coord in range(d - 1, 0, -1):
        for t in range(u[coord]):
            rank += math.comb(rem - t + coord - 1, coord - 1)
        rem -= u[coord]
    return count_up_to_weight(d, w - 1) + rank + 1

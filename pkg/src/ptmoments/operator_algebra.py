"""Normal ordering of ladder-operator products and the transposition rearrangement.

A matrix entry of the moment problem is the expectation of a product
``ad^l a^k ad^p a^q`` per mode, with ``(k, l)`` taken from the row monomial
and ``(p, q)`` from the column monomial.  Reducing each factor with the
bosonic identity

    a^k ad^p = sum_j j! C(k,j) C(p,j) ad^(p-j) a^(k-j)

turns every entry into a finite integer-coefficient combination of normally
ordered moments.  Partially transposing a mode rearranges the four exponents
of its factor to ``ad^q a^p ad^k a^l`` before the reduction; the expansion
coefficients stay exact integers until evaluation.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial
from types import MappingProxyType

from .errors import ExponentLimitError
from .multiindex import MonomialIndex

# Expansion coefficients are j!*C(k,j)*C(p,j); refuse exponents whose
# factorial growth would dwarf double precision instead of overflowing.
MAX_EXPONENT = 8


class MomentExpression:
    """Finite linear combination of normally ordered moment keys.

    ``terms`` maps each :class:`MonomialIndex` key to its (integer or
    complex) coefficient; zero coefficients are dropped.  Instances are
    immutable and shared by the expression cache.
    """

    __slots__ = ("modes", "terms")

    def __init__(self, modes: int, terms):
        cleaned = {m: c for m, c in dict(terms).items() if c != 0}
        for m in cleaned:
            if m.modes != modes:
                raise ValueError(f"term {m} has {m.modes} modes, expected {modes}")
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "terms", MappingProxyType(cleaned))

    def __setattr__(self, name, value):
        raise AttributeError("MomentExpression is immutable")

    def __eq__(self, other):
        if not isinstance(other, MomentExpression):
            return NotImplemented
        return self.modes == other.modes and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash((self.modes, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        body = " + ".join(f"{c}*<{m}>" for m, c in self.sorted_terms())
        return f"MomentExpression({body or '0'})"

    def sorted_terms(self):
        """Terms ordered by the moment sequence position (deterministic)."""
        from .multiindex import position_of

        return sorted(self.terms.items(), key=lambda item: position_of(item[0]))

    def evaluate(self, provider) -> complex:
        """Sum of coefficient times ``provider.moment(key)`` over all terms."""
        return sum(c * provider.moment(m) for m, c in self.sorted_terms())

    def max_weight(self) -> int:
        return max((m.weight for m in self.terms), default=0)


def _check_exponents(exps, max_exponent):
    limit = MAX_EXPONENT if max_exponent is None else max_exponent
    for e in exps:
        if e < 0:
            raise ValueError("exponents must be nonnegative")
        if e > limit:
            raise ExponentLimitError(
                f"exponent {e} exceeds the configured maximum {limit}"
            )


@lru_cache(maxsize=None)
def normal_order_single_mode(l: int, k: int, p: int, q: int,
                             max_exponent: int | None = None) -> dict:
    """Normally ordered expansion of ``ad^l a^k ad^p a^q`` for one mode.

    Returns a mapping ``{(k', l'): coefficient}`` with
    ``k' = l + p - j``, ``l' = k + q - j`` and coefficient
    ``j! C(k,j) C(p,j)`` for ``j = 0..min(k, p)``.
    """
    _check_exponents((l, k, p, q), max_exponent)
    out = {}
    for j in range(min(k, p) + 1):
        out[(l + p - j, k + q - j)] = factorial(j) * comb(k, j) * comb(p, j)
    return out


def entry_expression(row: MonomialIndex, col: MonomialIndex,
                     max_exponent: int | None = None) -> MomentExpression:
    """Moment expression for an untransposed matrix entry."""
    return entry_expression_pt(row, col, frozenset(), max_exponent)


def entry_expression_pt(row: MonomialIndex, col: MonomialIndex, transposed,
                        max_exponent: int | None = None) -> MomentExpression:
    """Moment expression for an entry of the partially transposed problem.

    ``transposed`` collects the 1-based modes whose exponent quadruple is
    rearranged from ``ad^l a^k ad^p a^q`` to ``ad^q a^p ad^k a^l``.
    """
    if row.modes != col.modes:
        raise ValueError(f"mode-count mismatch: {row.modes} vs {col.modes}")
    members = getattr(transposed, "members", transposed)
    subset = frozenset(members)
    if not subset <= set(range(1, row.modes + 1)):
        raise ValueError(f"transposed modes {sorted(subset)} not within 1..{row.modes}")
    return _entry_expression_cached(row, col, subset, max_exponent)


@lru_cache(maxsize=None)
def _entry_expression_cached(row, col, subset, max_exponent):
    n = row.modes
    # Start from the scalar 1 and take the tensor product mode by mode.
    terms: dict[tuple, complex] = {(): 1}
    for i in range(n):
        k, l = row.pairs[i]
        p, q = col.pairs[i]
        if (i + 1) in subset:
            factor = normal_order_single_mode(q, p, k, l, max_exponent)
        else:
            factor = normal_order_single_mode(l, k, p, q, max_exponent)
        terms = {
            prefix + (pair,): coeff * c
            for prefix, coeff in terms.items()
            for pair, c in factor.items()
        }
    return MomentExpression(n, {MonomialIndex(pairs): c for pairs, c in terms.items()})

"""Sources of normally ordered moments ``<ad^k a^l>`` of concrete states.

Providers are immutable after construction and cache every computed moment,
so they can be shared read-only across concurrent evaluations.  Besides the
analytic states (coherent products, two-mode squeezed vacuum, the noisy
W-type superposition of sign-flipped coherent states) there is a brute-force
truncated-Fock oracle used throughout the tests to cross-validate every
other source, and a JSON table format for measured or externally calculated
moments.
"""

from __future__ import annotations

import json
import math
import string
from dataclasses import dataclass

import numpy as np

from .errors import MomentDataError, TruncationError, UnresolvedMomentsError
from .multiindex import MonomialIndex, count_up_to_weight, monomial_at, position_of

# A moment key carries the same data as a monomial label: per-mode creation
# and annihilation exponents.
MomentKey = MonomialIndex

HERMITICITY_TOL = 1e-9


class MomentProvider:
    """Base class: subclasses implement ``_compute(key)``."""

    label = "moments"

    def __init__(self, modes: int):
        if modes < 1:
            raise ValueError("mode count must be >= 1")
        self.modes = modes
        self._cache: dict[MomentKey, complex] = {}

    def moment(self, key: MomentKey) -> complex:
        """Normally ordered moment for ``key``; identity is always 1."""
        if key.modes != self.modes:
            raise ValueError(f"key has {key.modes} modes, provider has {self.modes}")
        value = self._cache.get(key)
        if value is None:
            value = self._cache[key] = complex(self._compute(key))
        return value

    def _compute(self, key: MomentKey) -> complex:
        raise NotImplementedError


class CoherentProductMoments(MomentProvider):
    """Separable product of coherent states |gamma_1> ... |gamma_n>."""

    def __init__(self, gammas):
        gammas = tuple(complex(g) for g in gammas)
        super().__init__(len(gammas))
        self.gammas = gammas
        self.label = "coherent(" + ",".join(_fmt_complex(g) for g in gammas) + ")"

    def _compute(self, key):
        value = 1.0 + 0.0j
        for g, (k, l) in zip(self.gammas, key.pairs):
            value *= g.conjugate() ** k * g ** l
        return value


class TmsvMoments(MomentProvider):
    """Two-mode squeezed vacuum with squeezing parameter ``r``.

    Moments are summed over the Schmidt series sech(r) sum_n tanh(r)^n |nn>;
    photon-number difference conservation makes every odd-weight moment
    vanish and the series converge geometrically.
    """

    def __init__(self, r: float):
        super().__init__(2)
        self.r = float(r)
        self.label = f"tmsv(r={self.r:g})"

    def _compute(self, key):
        (k1, l1), (k2, l2) = key.pairs
        delta = k1 - l1
        if delta != k2 - l2:
            return 0.0
        t = math.tanh(self.r)
        if t == 0.0:
            return 1.0 if key.is_identity() else 0.0
        sech2 = 1.0 - t * t
        total = 0.0
        n = max(l1, l2)
        while True:
            m = n + delta
            term = (
                sech2
                * t ** (n + m)
                * math.sqrt(
                    _falling(m, k1) * _falling(m, k2) * _falling(n, l1) * _falling(n, l2)
                )
            )
            total += term
            n += 1
            if n > max(l1, l2) + 5 and abs(term) < 1e-18 * (abs(total) + 1.0):
                break
            if n > 100000:  # pragma: no cover - geometric series never gets here
                raise ArithmeticError("two-mode squeezing series failed to converge")
        return total


def _falling(m: int, k: int) -> float:
    """Falling factorial m (m-1) ... (m-k+1)."""
    out = 1.0
    for j in range(k):
        out *= m - j
    return out


@dataclass(frozen=True)
class WStateParams:
    """Amplitudes and per-mode thermal noise of the sign-flip superposition state."""

    alphas: tuple[complex, ...]
    nbars: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(complex(a) for a in self.alphas))
        object.__setattr__(self, "nbars", tuple(float(x) for x in self.nbars))
        if len(self.alphas) != len(self.nbars):
            raise ValueError("alphas and nbars must have the same length")
        if len(self.alphas) < 1:
            raise ValueError("at least one mode required")
        if any(x < 0 for x in self.nbars):
            raise MomentDataError("mean thermal photon numbers must be >= 0")

    @property
    def modes(self) -> int:
        return len(self.alphas)

    @classmethod
    def symmetric(cls, modes: int, alpha, nbar: float = 0.0) -> "WStateParams":
        return cls((complex(alpha),) * modes, (float(nbar),) * modes)


class WStateMoments(MomentProvider):
    """Noisy superposition sum_i |a_1, ..., -a_i, ..., a_n> under Gaussian noise.

    Each of the n^2 bra/ket cross terms factorizes over modes into a
    one-mode Gaussian integral of a polynomial, evaluated in closed form for
    zero noise and by Gauss-Hermite quadrature otherwise (the quadrature is
    exact for the polynomial degrees that occur).  Normalization is fixed by
    dividing out the identity moment.
    """

    def __init__(self, params: WStateParams, quad_points: int | None = None):
        super().__init__(params.modes)
        self.params = params
        self.quad_points = quad_points
        self._factor_cache: dict[tuple, complex] = {}
        a0 = params.alphas[0]
        sym = all(a == a0 for a in params.alphas) and all(
            x == params.nbars[0] for x in params.nbars
        )
        if sym:
            self.label = (
                f"wstate(n={params.modes}, alpha={_fmt_complex(a0)}, "
                f"nbar={params.nbars[0]:g})"
            )
        else:
            self.label = (
                "wstate(alphas="
                + ",".join(_fmt_complex(a) for a in params.alphas)
                + ", nbars="
                + ",".join(f"{x:g}" for x in params.nbars)
                + ")"
            )

    def _compute(self, key):
        norm = self._unnormalized(MonomialIndex.identity(self.modes))
        return self._unnormalized(key) / norm

    def _unnormalized(self, key):
        n = self.modes
        total = 0.0 + 0.0j
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                sign = (-1) ** (key.creation[j - 1] + key.annihilation[i - 1])
                term = complex(sign)
                for m in range(1, n + 1):
                    k, l = key.pairs[m - 1]
                    overlap = i != j and m in (i, j)
                    term *= self._mode_factor(m, k, l, overlap)
                total += term
        return total

    def _mode_factor(self, mode: int, k: int, l: int, overlap: bool) -> complex:
        cache_key = (mode, k, l, overlap)
        value = self._factor_cache.get(cache_key)
        if value is None:
            alpha = self.params.alphas[mode - 1]
            nbar = self.params.nbars[mode - 1]
            value = _gaussian_moment(alpha, nbar, k, l, overlap, self.quad_points)
            self._factor_cache[cache_key] = value
        return value


def _gaussian_moment(alpha: complex, nbar: float, k: int, l: int,
                     overlap: bool, quad_points: int | None) -> complex:
    """Integral of conj(b)^k b^l (times exp(-2|b|^2) if ``overlap``) under the
    Gaussian kernel of mean ``alpha`` and variance ``nbar`` per quadrature axis."""
    sigma = 2.0 if overlap else 0.0
    if nbar == 0.0:
        value = alpha.conjugate() ** k * alpha ** l
        if overlap:
            value *= math.exp(-2.0 * abs(alpha) ** 2)
        return value
    c = 1.0 / nbar + sigma
    points = quad_points if quad_points is not None else (k + l) // 2 + 3
    nodes, weights = _hermgauss(points)
    scale = 1.0 / math.sqrt(c)
    prefactor = 1.0 / (math.pi * nbar * c)
    for a in (alpha.real, alpha.imag):
        prefactor *= math.exp(-sigma * a * a / (c * nbar))
    mu_x = alpha.real / (nbar * c)
    mu_y = alpha.imag / (nbar * c)
    xs = mu_x + scale * nodes
    ys = mu_y + scale * nodes
    beta = xs[:, None] + 1j * ys[None, :]
    poly = np.conj(beta) ** k * beta ** l
    value = weights @ poly @ weights
    return prefactor * complex(value)


_HERMGAUSS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _hermgauss(points: int):
    got = _HERMGAUSS_CACHE.get(points)
    if got is None:
        got = _HERMGAUSS_CACHE[points] = np.polynomial.hermite.hermgauss(points)
    return got


def destroy(cutoff: int) -> np.ndarray:
    """Annihilation operator on a Fock space truncated to ``cutoff`` levels."""
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    a = np.zeros((cutoff, cutoff), dtype=complex)
    for m in range(1, cutoff):
        a[m - 1, m] = math.sqrt(m)
    return a


class FockStateMoments(MomentProvider):
    """Brute-force moments of an explicit truncated-Fock state.

    ``state`` is either a ket vector or a density matrix over the product
    space with ``cutoffs[i]`` levels per mode.  Moments are computed by
    direct matrix algebra, so this provider is the independent oracle for
    everything else; accuracy is limited only by the truncation tail.
    """

    def __init__(self, state, cutoffs, label: str = "fock-oracle"):
        cutoffs = (cutoffs,) if isinstance(cutoffs, int) else tuple(int(c) for c in cutoffs)
        if any(c < 1 for c in cutoffs):
            raise MomentDataError("cutoffs must be >= 1")
        super().__init__(len(cutoffs))
        self.cutoffs = cutoffs
        self.label = label
        dim = math.prod(cutoffs)
        state = np.asarray(state, dtype=complex)
        if state.shape == (dim,):
            norm = np.linalg.norm(state)
            if abs(norm - 1.0) > 1e-10:
                raise MomentDataError(f"state vector norm {norm!r} is not 1 within 1e-10")
            self._vector = state / norm
            self._rho = None
        elif state.shape == (dim, dim):
            if np.max(np.abs(state - state.conj().T)) > 1e-10:
                raise MomentDataError("density matrix is not Hermitian within 1e-10")
            trace = complex(np.trace(state))
            if abs(trace - 1.0) > 1e-10:
                raise MomentDataError(f"density matrix trace {trace!r} is not 1 within 1e-10")
            self._vector = None
            self._rho = state
        else:
            raise MomentDataError(
                f"state shape {state.shape} does not match cutoffs {cutoffs}"
            )
        self._ladders = [destroy(c) for c in cutoffs]

    def tail_estimate(self) -> float:
        """Total population of the top two Fock layers of any mode."""
        if self._vector is not None:
            pops = np.abs(self._vector.reshape(self.cutoffs)) ** 2
        else:
            pops = np.real(np.diagonal(self._rho)).reshape(self.cutoffs)
        total = 0.0
        for axis, c in enumerate(self.cutoffs):
            sl = [slice(None)] * self.modes
            sl[axis] = slice(max(c - 2, 0), c)
            total += float(np.sum(pops[tuple(sl)]))
            # avoid double counting below by zeroing what was summed
            pops = pops.copy()
            pops[tuple(sl)] = 0.0
        return total

    def _compute(self, key):
        for (k, l), c in zip(key.pairs, self.cutoffs):
            if k >= c or l >= c:
                raise TruncationError(
                    f"exponent pair ({k},{l}) needs cutoff > {max(k, l)}, have {c}"
                )
        if self._vector is not None:
            tensor = self._vector.reshape(self.cutoffs)
            ket = tensor
            bra = tensor
            for axis, (a, (k, l)) in enumerate(zip(self._ladders, key.pairs)):
                ket = _apply_mode(ket, np.linalg.matrix_power(a, l), axis)
                bra = _apply_mode(bra, np.linalg.matrix_power(a, k), axis)
            return complex(np.vdot(bra, ket))
        ops = [
            np.linalg.matrix_power(a, k).conj().T @ np.linalg.matrix_power(a, l)
            for a, (k, l) in zip(self._ladders, key.pairs)
        ]
        return _trace_with_product(self._rho, self.cutoffs, ops)


def _apply_mode(tensor: np.ndarray, mat: np.ndarray, axis: int) -> np.ndarray:
    out = np.tensordot(mat, tensor, axes=([1], [axis]))
    return np.moveaxis(out, 0, axis)


def _trace_with_product(rho: np.ndarray, cutoffs, ops) -> complex:
    """trace(rho (op_1 x ... x op_n)) without forming the Kronecker product."""
    n = len(cutoffs)
    letters = string.ascii_lowercase
    rows, cols = letters[:n], letters[n:2 * n]
    subscripts = [rows + cols] + [cols[i] + rows[i] for i in range(n)]
    return complex(np.einsum(",".join(subscripts) + "->", rho.reshape(cutoffs * 2), *ops))


def partial_transpose(state, cutoffs, transposed) -> np.ndarray:
    """Density matrix of the state with the given modes transposed.

    Accepts a ket vector or a density matrix; transposition acts in the Fock
    basis by swapping the corresponding row and column tensor axes.
    """
    cutoffs = (cutoffs,) if isinstance(cutoffs, int) else tuple(int(c) for c in cutoffs)
    n = len(cutoffs)
    members = getattr(transposed, "members", transposed)
    subset = set(members)
    if not subset <= set(range(1, n + 1)):
        raise ValueError(f"transposed modes {sorted(subset)} not within 1..{n}")
    state = np.asarray(state, dtype=complex)
    dim = math.prod(cutoffs)
    rho = np.outer(state, state.conj()) if state.shape == (dim,) else state
    if rho.shape != (dim, dim):
        raise MomentDataError(f"state shape {state.shape} does not match cutoffs {cutoffs}")
    tensor = rho.reshape(cutoffs * 2)
    axes = list(range(2 * n))
    for i in subset:
        axes[i - 1], axes[n + i - 1] = axes[n + i - 1], axes[i - 1]
    return tensor.transpose(axes).reshape(dim, dim)


def auto_cutoff(populations, tol: float = 1e-12, cap: int = 40, min_cutoff: int = 5) -> int:
    """Smallest truncation whose top two layers hold less than ``tol`` population."""
    pops = list(populations)
    for c in range(min_cutoff, min(len(pops), cap) + 1):
        if pops[c - 1] + pops[c - 2] < tol:
            return c
    return cap


def _poisson_populations(mean: float, cap: int = 41):
    out = [math.exp(-mean)]
    for m in range(1, cap):
        out.append(out[-1] * mean / m)
    return out


def fock_coherent_state(gammas, cutoffs=None):
    """Coherent product-state ket; returns ``(vector, cutoffs)``."""
    gammas = [complex(g) for g in gammas]
    if cutoffs is None:
        cutoffs = tuple(auto_cutoff(_poisson_populations(abs(g) ** 2)) for g in gammas)
    else:
        cutoffs = (cutoffs,) * len(gammas) if isinstance(cutoffs, int) else tuple(cutoffs)
    vec = np.ones(1, dtype=complex)
    for g, c in zip(gammas, cutoffs):
        vec = np.kron(vec, _coherent_vector(g, c))
    return vec / np.linalg.norm(vec), cutoffs


def _coherent_vector(gamma: complex, cutoff: int) -> np.ndarray:
    amps = np.zeros(cutoff, dtype=complex)
    amps[0] = 1.0
    for m in range(1, cutoff):
        amps[m] = amps[m - 1] * gamma / math.sqrt(m)
    return amps * math.exp(-abs(gamma) ** 2 / 2.0)


def fock_tmsv_state(r: float, cutoff: int | None = None):
    """Two-mode squeezed vacuum ket in the truncated space; ``(vector, cutoffs)``."""
    t = math.tanh(r)
    if cutoff is None:
        sech2 = 1.0 - t * t
        cutoff = auto_cutoff([sech2 * t ** (2 * m) for m in range(41)])
    vec = np.zeros((cutoff, cutoff), dtype=complex)
    for m in range(cutoff):
        vec[m, m] = t ** m
    vec = vec.reshape(-1)
    return vec / np.linalg.norm(vec), (cutoff, cutoff)


def fock_wstate(alphas, cutoffs=None):
    """Noiseless sign-flip superposition ket; ``(vector, cutoffs)``."""
    alphas = [complex(a) for a in alphas]
    n = len(alphas)
    if cutoffs is None:
        cutoffs = tuple(auto_cutoff(_poisson_populations(abs(a) ** 2)) for a in alphas)
    elif isinstance(cutoffs, int):
        cutoffs = (cutoffs,) * n
    else:
        cutoffs = tuple(cutoffs)
    vec = np.zeros(math.prod(cutoffs), dtype=complex)
    for i in range(n):
        branch = np.ones(1, dtype=complex)
        for m, (a, c) in enumerate(zip(alphas, cutoffs)):
            amp = -a if m == i else a
            branch = np.kron(branch, _coherent_vector(amp, c))
        vec += branch
    return vec / np.linalg.norm(vec), cutoffs


@dataclass
class MomentTable:
    """Validated moment data: mode count, tolerance and key/value entries."""

    modes: int
    tolerance: float
    entries: dict[MomentKey, complex]

    @property
    def max_order(self) -> int:
        return max((key.weight for key in self.entries), default=0)


class TableMoments(MomentProvider):
    """Provider view of a :class:`MomentTable`; missing keys raise."""

    def __init__(self, table: MomentTable, label: str = "table"):
        super().__init__(table.modes)
        self.table = table
        self.label = label

    def _compute(self, key):
        try:
            return self.table.entries[key]
        except KeyError:
            raise UnresolvedMomentsError([key]) from None


def load_moment_table(source) -> MomentTable:
    """Parse and validate the JSON moment-table format.

    The document is ``{"modes": n, "tolerance": t, "entries": [...]}`` with
    each entry ``{"k": [...], "l": [...], "re": x, "im": y}``.  The identity
    entry must be present with value 1 within tolerance; Hermitian partners
    are checked against each other and filled in by conjugation when absent.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise MomentDataError(f"moment table is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MomentDataError("moment table must be a JSON object")
    unknown = set(doc) - {"modes", "tolerance", "entries"}
    if unknown:
        raise MomentDataError(f"unknown moment-table keys: {sorted(unknown)}")
    modes = doc.get("modes")
    if not isinstance(modes, int) or modes < 1:
        raise MomentDataError("'modes' must be a positive integer")
    tolerance = doc.get("tolerance", HERMITICITY_TOL)
    if not isinstance(tolerance, (int, float)) or tolerance < 0:
        raise MomentDataError("'tolerance' must be a nonnegative number")
    raw = doc.get("entries")
    if not isinstance(raw, list):
        raise MomentDataError("'entries' must be a list")
    entries: dict[MomentKey, complex] = {}
    for item in raw:
        if not isinstance(item, dict):
            raise MomentDataError("each entry must be an object")
        bad = set(item) - {"k", "l", "re", "im"}
        if bad:
            raise MomentDataError(f"unknown entry keys: {sorted(bad)}")
        k, l = item.get("k"), item.get("l")
        if not _exponent_list(k, modes) or not _exponent_list(l, modes):
            raise MomentDataError(
                f"'k' and 'l' must be lists of {modes} nonnegative integers: {item}"
            )
        value = complex(float(item.get("re", 0.0)), float(item.get("im", 0.0)))
        key = MonomialIndex(tuple(zip(k, l)))
        if key in entries:
            raise MomentDataError(f"duplicate entry for key {key}")
        entries[key] = value
    identity = MonomialIndex.identity(modes)
    if identity not in entries:
        raise MomentDataError("normalization entry (identity moment) is missing")
    if abs(entries[identity] - 1.0) > tolerance:
        raise MomentDataError(
            f"identity moment must be 1 within tolerance, got {entries[identity]}"
        )
    for key in list(entries):
        partner = key.conjugate()
        if partner in entries:
            if abs(entries[partner] - entries[key].conjugate()) > tolerance:
                raise MomentDataError(
                    f"Hermitian consistency violated for {key} / {partner}"
                )
        else:
            entries[partner] = entries[key].conjugate()
    return MomentTable(modes=modes, tolerance=float(tolerance), entries=entries)


def _exponent_list(value, modes: int) -> bool:
    return (
        isinstance(value, list)
        and len(value) == modes
        and all(isinstance(x, int) and x >= 0 for x in value)
    )


def moment_table_to_json(table: MomentTable) -> str:
    """Serialize deterministically: entries in moment-sequence order, 12 significant digits."""
    items = sorted(table.entries.items(), key=lambda kv: position_of(kv[0]))
    entries = [
        {
            "k": list(key.creation),
            "l": list(key.annihilation),
            "re": _round12(value.real),
            "im": _round12(value.imag),
        }
        for key, value in items
    ]
    doc = {"modes": table.modes, "tolerance": table.tolerance, "entries": entries}
    return json.dumps(doc, indent=2)


def table_from_provider(provider: MomentProvider, order: int,
                        tolerance: float = HERMITICITY_TOL) -> MomentTable:
    """Tabulate every moment of weight up to ``order`` from a provider."""
    entries = {}
    for pos in range(1, count_up_to_weight(2 * provider.modes, order) + 1):
        key = monomial_at(provider.modes, pos)
        entries[key] = provider.moment(key)
    return MomentTable(modes=provider.modes, tolerance=tolerance, entries=entries)


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


def _fmt_complex(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:g}"
    return f"{z.real:g}{z.imag:+g}i"

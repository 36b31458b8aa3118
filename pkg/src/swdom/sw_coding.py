"""Typical sets and side-information encoders for pair sources.

Sequences over an alphabet of size k are identified with their rank in
lexicographic order (index 0 is the most significant digit), which keeps the
exhaustive machinery in flat numpy arrays.  All sequence probabilities are
accumulated in the log2 domain; whenever an exact error or a set mass is
needed, per-side-information partial sums are exponentiated and reduced with
math.fsum so the result does not drift with enumeration order.

Exhaustive paths refuse to enumerate more than ENUMERATION_CAP joint
outcomes (|X|^n * |Y|^n); beyond that only the Monte Carlo estimator is
available.  Typicality membership compares log2-probabilities with a 1e-9
absolute tolerance.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .source_model import SourceFamily, entropy_profile

__all__ = [
    "ENUMERATION_CAP",
    "LOG_TOL",
    "EnumerationTooLargeError",
    "ImpossibleInjectionError",
    "TypicalSet",
    "Codebook",
    "DependentEncoder",
    "MonteCarloError",
    "SweepRow",
    "build_typical_set_y",
    "build_typical_set_xy",
    "slice_a_y",
    "heavy_slice_set",
    "construct_achievability_encoder",
    "exact_error",
    "optimal_error",
    "monte_carlo_error",
    "threshold_sweep",
]

ENUMERATION_CAP = 1 << 26
LOG_TOL = 1e-9

# Below this many joint outcomes the dense (|X|^n, |Y|^n) log-prob matrix is
# built in one shot; above it (but under the cap) a leaner per-y loop is used.
_FULL_MATRIX_CAP = 1 << 24


class EnumerationTooLargeError(RuntimeError):
    """Raised when an exhaustive path would exceed the enumeration cap."""


class ImpossibleInjectionError(ValueError):
    """Raised when a codebook cannot be mapped injectively into X^n."""


def _rank_to_digits(rank: int, base: int, n: int) -> tuple[int, ...]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = rank % base
        rank //= base
    return tuple(out)


def _digits_to_rank(digits, base: int) -> int:
    rank = 0
    for d in digits:
        d = int(d)
        if not 0 <= d < base:
            raise ValueError(f"symbol {d} outside alphabet of size {base}")
        rank = rank * base + d
    return rank


def _log_joint_mats(family: SourceFamily) -> list[np.ndarray]:
    with np.errstate(divide="ignore"):
        return [np.log2(comp.pmf) for comp in family.components]


def _log_y_vecs(family: SourceFamily) -> list[np.ndarray]:
    with np.errstate(divide="ignore"):
        return [np.log2(comp.marginal_y()) for comp in family.components]


def _expand_log_vector(cols) -> np.ndarray:
    v = np.zeros(1)
    for c in cols:
        v = (v[:, None] + c[None, :]).ravel()
    return v


def _joint_log_matrix(family: SourceFamily) -> np.ndarray:
    mats = _log_joint_mats(family)
    m = mats[0]
    for L in mats[1:]:
        a, b = m.shape
        kx, ky = L.shape
        m = (m[:, None, :, None] + L[None, :, None, :]).reshape(a * kx, b * ky)
    return m


def _column_for_y(mats, y_digits) -> np.ndarray:
    return _expand_log_vector([L[:, d] for L, d in zip(mats, y_digits)])


def _iter_joint_columns(family: SourceFamily):
    """Yield (y_rank, log2-prob vector over all x ranks) in y-rank order."""
    mats = _log_joint_mats(family)
    ky = family.alphabet_y_size
    n = family.n
    for y_rank in range(ky**n):
        yield y_rank, _column_for_y(mats, _rank_to_digits(y_rank, ky, n))


def _compensated_mass(log_probs: np.ndarray) -> float:
    if log_probs.size == 0:
        return 0.0
    chunks = max(1, -(-log_probs.size // 4096))
    return math.fsum(float(np.exp2(c).sum()) for c in np.array_split(log_probs, chunks))


def _check_sandwich(count: int, mass: float, n: int, target: float, epsilon: float) -> None:
    # The count bounds are only guaranteed once the set captures 1 - eps of
    # the mass; below that the lower bound is vacuous.  A relative 1e-6 slack
    # absorbs the 1e-9 membership tolerance at the window edges.
    if mass < 1.0 - epsilon - 1e-12:
        return
    lower = (1.0 - epsilon) * 2.0 ** (n * (target - epsilon))
    upper = 2.0 ** (n * (target + epsilon))
    if count < lower * (1.0 - 1e-6) or count > upper * (1.0 + 1e-6):
        raise RuntimeError(
            f"typical-set count {count} escapes the sandwich [{lower:.6g}, {upper:.6g}] "
            f"despite mass {mass:.6g} >= 1 - eps"
        )


class TypicalSet:
    """An exhaustively enumerated typical set.

    kind "y" holds V-sequences whose marginal probability lies in
    [2^(-n(H+eps)), 2^(-n(H-eps))]; kind "xy" holds (U, V) pairs under the
    same window around the joint entropy.  Members are stored as rank
    arrays (pairs sorted by y-rank, then x-rank) together with their
    log2-probabilities.
    """

    def __init__(self, kind, n, epsilon, target_entropy, total_mass,
                 x_alphabet_size, y_alphabet_size, y_ranks, x_ranks, log_probs,
                 window):
        self.kind = kind
        self.n = n
        self.epsilon = epsilon
        self.target_entropy = target_entropy
        self.total_mass = total_mass
        self.x_alphabet_size = x_alphabet_size
        self.y_alphabet_size = y_alphabet_size
        self._y_ranks = y_ranks
        self._x_ranks = x_ranks
        self._log_probs = log_probs
        self.window = window

    @property
    def member_count(self) -> int:
        return int(self._y_ranks.size)

    def y_rank_array(self) -> np.ndarray:
        return self._y_ranks

    def members(self):
        """Yield (sequence, log2 prob) for kind "y", ((x_seq, y_seq), log2 prob)
        for kind "xy"."""
        ky = self.y_alphabet_size
        if self.kind == "y":
            for r, lp in zip(self._y_ranks.tolist(), self._log_probs.tolist()):
                yield _rank_to_digits(r, ky, self.n), lp
        else:
            kx = self.x_alphabet_size
            for xr, yr, lp in zip(self._x_ranks.tolist(), self._y_ranks.tolist(),
                                  self._log_probs.tolist()):
                yield (_rank_to_digits(xr, kx, self.n), _rank_to_digits(yr, ky, self.n)), lp

    def contains_y(self, y_seq) -> bool:
        if self.kind != "y":
            raise ValueError("contains_y applies to kind 'y' sets")
        r = _digits_to_rank(y_seq, self.y_alphabet_size)
        i = int(np.searchsorted(self._y_ranks, r))
        return i < self._y_ranks.size and int(self._y_ranks[i]) == r

    def contains_pair(self, x_seq, y_seq) -> bool:
        if self.kind != "xy":
            raise ValueError("contains_pair applies to kind 'xy' sets")
        xr = _digits_to_rank(x_seq, self.x_alphabet_size)
        yr = _digits_to_rank(y_seq, self.y_alphabet_size)
        lo, hi = self._y_slice_bounds(yr)
        i = lo + int(np.searchsorted(self._x_ranks[lo:hi], xr))
        return i < hi and int(self._x_ranks[i]) == xr

    def _y_slice_bounds(self, y_rank: int) -> tuple[int, int]:
        lo = int(np.searchsorted(self._y_ranks, y_rank, side="left"))
        hi = int(np.searchsorted(self._y_ranks, y_rank, side="right"))
        return lo, hi

    def slice_x_ranks(self, y_rank: int) -> np.ndarray:
        """Ascending x-ranks paired with the given y in a kind "xy" set."""
        if self.kind != "xy":
            raise ValueError("slices apply to kind 'xy' sets")
        lo, hi = self._y_slice_bounds(y_rank)
        return self._x_ranks[lo:hi]

    def slice_counts(self) -> np.ndarray:
        """Per-y-rank member counts of a kind "xy" set (length |Y|^n)."""
        if self.kind != "xy":
            raise ValueError("slices apply to kind 'xy' sets")
        return np.bincount(self._y_ranks, minlength=self.y_alphabet_size**self.n)


def build_typical_set_y(family: SourceFamily, epsilon: float,
                        cap: int = ENUMERATION_CAP) -> TypicalSet:
    """Enumerate the typical V-sequences around the averaged H_Y."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    n, ky = family.n, family.alphabet_y_size
    total = ky**n
    if total > cap:
        raise EnumerationTooLargeError(f"|Y|^n = {total} exceeds the cap {cap}")
    target = entropy_profile(family).avg_hy
    lo = -n * (target + epsilon) - LOG_TOL
    hi = -n * (target - epsilon) + LOG_TOL
    lp = _expand_log_vector(_log_y_vecs(family))
    mask = (lp >= lo) & (lp <= hi)
    ranks = np.nonzero(mask)[0].astype(np.int64)
    member_lp = lp[mask]
    mass = _compensated_mass(member_lp)
    _check_sandwich(ranks.size, mass, n, target, epsilon)
    return TypicalSet("y", n, epsilon, target, mass, family.alphabet_x_size, ky,
                      ranks, None, member_lp, (lo, hi))


def build_typical_set_xy(family: SourceFamily, epsilon: float,
                         cap: int = ENUMERATION_CAP) -> TypicalSet:
    """Enumerate the jointly typical (U, V) pairs around the averaged H_XY."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    n = family.n
    kx, ky = family.alphabet_x_size, family.alphabet_y_size
    pairs = (kx**n) * (ky**n)
    if pairs > cap:
        raise EnumerationTooLargeError(f"(|X||Y|)^n = {pairs} exceeds the cap {cap}")
    target = entropy_profile(family).avg_hxy
    lo = -n * (target + epsilon) - LOG_TOL
    hi = -n * (target - epsilon) + LOG_TOL

    per_y_mass: list[float] = []
    if pairs <= _FULL_MATRIX_CAP:
        m = _joint_log_matrix(family)
        mask = (m >= lo) & (m <= hi)
        xr, yr = np.nonzero(mask)
        lp = m[xr, yr]
        order = np.lexsort((xr, yr))
        xr = xr[order].astype(np.int64)
        yr = yr[order].astype(np.int64)
        lp = lp[order]
        if lp.size:
            sums = np.bincount(yr, weights=np.exp2(lp), minlength=ky**n)
            per_y_mass = [float(s) for s in sums if s > 0.0]
    else:
        xs, ys, lps = [], [], []
        for y_rank, col in _iter_joint_columns(family):
            mask = (col >= lo) & (col <= hi)
            hits = np.nonzero(mask)[0]
            if hits.size:
                xs.append(hits.astype(np.int64))
                ys.append(np.full(hits.size, y_rank, dtype=np.int64))
                lps.append(col[hits])
                per_y_mass.append(float(np.exp2(col[hits]).sum()))
        if xs:
            xr = np.concatenate(xs)
            yr = np.concatenate(ys)
            lp = np.concatenate(lps)
        else:
            xr = yr = np.empty(0, dtype=np.int64)
            lp = np.empty(0)
    mass = math.fsum(per_y_mass)
    _check_sandwich(xr.size, mass, n, target, epsilon)
    return TypicalSet("xy", n, epsilon, target, mass, kx, ky, yr, xr, lp, (lo, hi))


def slice_a_y(exy: TypicalSet, y_seq) -> list[tuple[int, ...]]:
    """X-sequences jointly typical with the given y, in lexicographic order."""
    yr = _digits_to_rank(y_seq, exy.y_alphabet_size)
    kx = exy.x_alphabet_size
    return [_rank_to_digits(int(r), kx, exy.n) for r in exy.slice_x_ranks(yr)]


def _heavy_slice_ranks(exy: TypicalSet, ey: TypicalSet,
                       family: SourceFamily, epsilon: float) -> set[int]:
    profile = entropy_profile(family)
    threshold = 2.0 ** (family.n * (profile.avg_hxy - profile.avg_hy + 5.0 * epsilon))
    counts = exy.slice_counts()
    return {int(r) for r in ey.y_rank_array() if counts[int(r)] >= threshold * (1.0 - 1e-12)}


def heavy_slice_set(exy: TypicalSet, ey: TypicalSet, family: SourceFamily,
                    epsilon: float) -> set[tuple[int, ...]]:
    """Typical y whose slice reaches 2^(n(H_XY - H_Y + 5 eps)) members.

    The count bound #B_Y <= 2^(n(H_Y - 3 eps)) is an asymptotic statement;
    at small n a violation is reported as a warning, not an error.
    """
    if exy.kind != "xy" or ey.kind != "y":
        raise ValueError("pass the joint set first and the marginal set second")
    if exy.n != ey.n or exy.n != family.n:
        raise ValueError("sets and family disagree on n")
    if abs(exy.epsilon - epsilon) > 1e-12 or abs(ey.epsilon - epsilon) > 1e-12:
        raise ValueError("sets were built with a different epsilon")
    ranks = _heavy_slice_ranks(exy, ey, family, epsilon)
    bound = 2.0 ** (family.n * (entropy_profile(family).avg_hy - 3.0 * epsilon))
    if len(ranks) > bound * (1.0 + 1e-12):
        warnings.warn(
            f"heavy-slice set has {len(ranks)} members, above the asymptotic "
            f"bound {bound:.6g} at this n",
            UserWarning,
            stacklevel=2,
        )
    ky = ey.y_alphabet_size
    return {_rank_to_digits(r, ky, ey.n) for r in sorted(ranks)}


@dataclass(frozen=True)
class Codebook:
    """The canonical rate-R codebook: the first 2^ceil(nR) binary n-strings
    in lexicographic order.  Codeword j is just the n-bit expansion of j."""

    n: int
    codeword_count: int
    rate: float | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 1 <= self.codeword_count <= 2**self.n:
            raise ValueError(
                f"codeword count {self.codeword_count} outside [1, 2^{self.n}]"
            )

    @classmethod
    def from_rate(cls, n: int, rate: float) -> "Codebook":
        if not 0.0 < rate <= 1.0:
            raise ValueError("rate must lie in (0, 1]")
        # 1e-9 guards against float noise pushing an integral n*rate over the
        # next integer.
        exponent = math.ceil(n * rate - 1e-9)
        return cls(n=n, codeword_count=2**exponent, rate=rate)

    @classmethod
    def from_size(cls, n: int, size: int) -> "Codebook":
        return cls(n=n, codeword_count=int(size))

    def codeword(self, j: int) -> tuple[int, ...]:
        if not 0 <= j < self.codeword_count:
            raise ValueError("codeword index out of range")
        return _rank_to_digits(j, 2, self.n)


class DependentEncoder:
    """A family {f_y} of injective maps from a codebook into X^n.

    Only y-sequences with a tailored map are stored; every other y falls back
    to the canonical injection, codeword j -> the X-sequence of rank j.
    in_domain_y records the typical y (outside the heavy-slice set) whose maps
    were built from their slices.
    """

    def __init__(self, n, x_alphabet_size, y_alphabet_size, codebook,
                 maps: dict[int, np.ndarray], in_domain_y: frozenset[int]):
        self.n = n
        self.x_alphabet_size = x_alphabet_size
        self.y_alphabet_size = y_alphabet_size
        self.codebook = codebook
        self._maps = maps
        self.in_domain_y = in_domain_y
        self._canonical = np.arange(codebook.codeword_count, dtype=np.int64)

    def images(self, y_rank: int) -> np.ndarray:
        """X-sequence ranks hit by the codebook under f_y (position j = f_y of
        codeword j)."""
        return self._maps.get(int(y_rank), self._canonical)

    def encode(self, codeword_index: int, y_seq) -> tuple[int, ...]:
        if not 0 <= codeword_index < self.codebook.codeword_count:
            raise ValueError("codeword index out of range")
        yr = _digits_to_rank(y_seq, self.y_alphabet_size)
        rank = int(self.images(yr)[codeword_index])
        return _rank_to_digits(rank, self.x_alphabet_size, self.n)

    def tailored_y_ranks(self) -> tuple[int, ...]:
        return tuple(sorted(self._maps))

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "x_alphabet_size": self.x_alphabet_size,
            "y_alphabet_size": self.y_alphabet_size,
            "codeword_count": self.codebook.codeword_count,
            "rate": self.codebook.rate,
            "in_domain_y": sorted(self.in_domain_y),
            "maps": {str(r): [int(v) for v in img] for r, img in sorted(self._maps.items())},
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "DependentEncoder":
        cb = Codebook(n=int(doc["n"]), codeword_count=int(doc["codeword_count"]),
                      rate=doc.get("rate"))
        maps = {int(r): np.asarray(img, dtype=np.int64) for r, img in doc["maps"].items()}
        return cls(int(doc["n"]), int(doc["x_alphabet_size"]), int(doc["y_alphabet_size"]),
                   cb, maps, frozenset(int(r) for r in doc["in_domain_y"]))


def _pad_images(slice_ranks: np.ndarray, count: int, space: int) -> np.ndarray:
    used = set(slice_ranks.tolist())
    out = slice_ranks.tolist()
    r = 0
    while len(out) < count:
        if r >= space:
            raise ImpossibleInjectionError("ran out of X-sequences while padding")
        if r not in used:
            out.append(r)
        r += 1
    return np.asarray(out, dtype=np.int64)


def construct_achievability_encoder(family: SourceFamily, epsilon: float,
                                    rate: float | None = None,
                                    codebook: Codebook | None = None,
                                    cap: int = ENUMERATION_CAP) -> DependentEncoder:
    """Build the slice-covering encoder family.

    For each typical y outside the heavy-slice set, f_y enumerates that y's
    jointly typical slice in lexicographic order and pads with the
    lexicographically first unused X-sequences when the slice is smaller than
    the codebook; slices larger than the codebook are covered as far as the
    first codeword_count members.  Every other y uses the canonical
    injection.
    """
    if (rate is None) == (codebook is None):
        raise ValueError("pass exactly one of rate or codebook")
    if codebook is None:
        codebook = Codebook.from_rate(family.n, rate)
    if codebook.n != family.n:
        raise ValueError("codebook length does not match the family")
    n = family.n
    kx, ky = family.alphabet_x_size, family.alphabet_y_size
    space = kx**n
    count = codebook.codeword_count
    if count > space:
        raise ImpossibleInjectionError(
            f"codebook of {count} codewords cannot inject into |X|^n = {space}"
        )

    profile = entropy_profile(family)
    eff_rate = math.log2(count) / n
    threshold = profile.avg_hxy - profile.avg_hy + 5.0 * epsilon
    if eff_rate <= threshold + 1e-12:
        warnings.warn(
            f"effective rate {eff_rate:.4f} is not above H_XY - H_Y + 5*eps = "
            f"{threshold:.4f}; the reliability guarantee does not apply",
            UserWarning,
            stacklevel=2,
        )

    ey = build_typical_set_y(family, epsilon, cap=cap)
    exy = build_typical_set_xy(family, epsilon, cap=cap)
    heavy = _heavy_slice_ranks(exy, ey, family, epsilon)

    maps: dict[int, np.ndarray] = {}
    good: list[int] = []
    for yr in ey.y_rank_array().tolist():
        if yr in heavy:
            continue
        good.append(yr)
        a = exy.slice_x_ranks(yr)
        if a.size >= count:
            maps[yr] = a[:count].astype(np.int64)
        else:
            maps[yr] = _pad_images(a, count, space)
    return DependentEncoder(n, kx, ky, codebook, maps, frozenset(good))


def _check_encoder_family(encoder: DependentEncoder, family: SourceFamily) -> None:
    if (encoder.n != family.n
            or encoder.x_alphabet_size != family.alphabet_x_size
            or encoder.y_alphabet_size != family.alphabet_y_size):
        raise ValueError("encoder and family disagree on n or alphabets")


def exact_error(encoder: DependentEncoder, family: SourceFamily,
                cap: int = ENUMERATION_CAP) -> float:
    """P(U not in f_V(codebook)) by exhaustive summation."""
    _check_encoder_family(encoder, family)
    n = family.n
    kx, ky = family.alphabet_x_size, family.alphabet_y_size
    pairs = (kx**n) * (ky**n)
    if pairs > cap:
        raise EnumerationTooLargeError(
            f"{pairs} joint outcomes exceed the cap {cap}; use monte_carlo_error"
        )
    covered: list[float] = []
    if pairs <= _FULL_MATRIX_CAP:
        m = _joint_log_matrix(family)
        for yr in range(ky**n):
            covered.append(float(np.exp2(m[encoder.images(yr), yr]).sum()))
    else:
        for yr, col in _iter_joint_columns(family):
            covered.append(float(np.exp2(col[encoder.images(yr)]).sum()))
    return min(1.0, max(0.0, 1.0 - math.fsum(covered)))


def optimal_error(family: SourceFamily, rate: float | None = None,
                  codebook_size: int | None = None,
                  cap: int = ENUMERATION_CAP) -> float:
    """The smallest error any encoder family can reach at this codebook size.

    For each y the best injective f_y covers the codeword_count most probable
    X-sequences given y, so the optimum is 1 minus the summed per-y top masses.
    """
    if (rate is None) == (codebook_size is None):
        raise ValueError("pass exactly one of rate or codebook_size")
    if codebook_size is None:
        cb = Codebook.from_rate(family.n, rate)
    else:
        cb = Codebook.from_size(family.n, codebook_size)
    n = family.n
    kx, ky = family.alphabet_x_size, family.alphabet_y_size
    space = kx**n
    count = cb.codeword_count
    if count > space:
        raise ImpossibleInjectionError(
            f"codebook of {count} codewords cannot inject into |X|^n = {space}"
        )
    pairs = space * (ky**n)
    if pairs > cap:
        raise EnumerationTooLargeError(
            f"{pairs} joint outcomes exceed the cap {cap}"
        )

    def top_mass(col: np.ndarray) -> float:
        if count >= col.size:
            return float(np.exp2(col).sum())
        part = np.partition(col, col.size - count)[col.size - count:]
        return float(np.exp2(part).sum())

    covered: list[float] = []
    if pairs <= _FULL_MATRIX_CAP:
        m = _joint_log_matrix(family)
        for yr in range(ky**n):
            covered.append(top_mass(m[:, yr]))
    else:
        for _, col in _iter_joint_columns(family):
            covered.append(top_mass(col))
    return min(1.0, max(0.0, 1.0 - math.fsum(covered)))


@dataclass(frozen=True)
class MonteCarloError:
    """Sampled error estimate with its Wilson 95% interval."""

    estimate: float
    ci_low: float
    ci_high: float
    trials: int

    @property
    def half_width(self) -> float:
        return (self.ci_high - self.ci_low) / 2.0


def monte_carlo_error(encoder: DependentEncoder, family: SourceFamily,
                      trials: int, seed) -> MonteCarloError:
    """Estimate the encoder error from seeded source draws."""
    _check_encoder_family(encoder, family)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if seed is None:
        raise ValueError("an explicit seed is required")
    rng = np.random.default_rng(seed)
    n = family.n
    kx, ky = family.alphabet_x_size, family.alphabet_y_size
    xs = np.empty((n, trials), dtype=np.int64)
    ys = np.empty((n, trials), dtype=np.int64)
    for i, comp in enumerate(family.components):
        flat = comp.pmf.ravel()
        draws = rng.choice(flat.size, size=trials, p=flat)
        xs[i] = draws // ky
        ys[i] = draws % ky

    count = encoder.codebook.codeword_count
    image_sets: dict[int, frozenset[int]] = {}
    failures = 0
    for t in range(trials):
        u_rank = 0
        v_rank = 0
        for i in range(n):
            u_rank = u_rank * kx + int(xs[i, t])
            v_rank = v_rank * ky + int(ys[i, t])
        if v_rank in encoder._maps:
            members = image_sets.get(v_rank)
            if members is None:
                members = frozenset(encoder._maps[v_rank].tolist())
                image_sets[v_rank] = members
            ok = u_rank in members
        else:
            ok = u_rank < count
        if not ok:
            failures += 1

    phat = failures / trials
    z = 1.959963984540054
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return MonteCarloError(estimate=phat,
                           ci_low=max(0.0, center - half),
                           ci_high=min(1.0, center + half),
                           trials=trials)


@dataclass(frozen=True)
class SweepRow:
    rate: float
    n: int
    epsilon: float
    error_constructed: float
    error_optimal: float
    ci_low: float
    ci_high: float


def threshold_sweep(family: SourceFamily, epsilon: float, rates, trials: int, seed,
                    cap: int = ENUMERATION_CAP,
                    mc_threshold: int = _FULL_MATRIX_CAP) -> list[SweepRow]:
    """Constructed and optimal errors across a rate grid.

    Rates whose joint outcome count stays under mc_threshold are summed
    exactly (the interval degenerates to the point estimate); larger
    problems fall back to Monte Carlo for the constructed encoder, with the
    optimal column reported as NaN because it has no sampling estimator.
    """
    rates = list(rates)
    if not rates:
        raise ValueError("rate grid must be non-empty")
    if seed is None:
        raise ValueError("an explicit seed is required")
    n = family.n
    pairs = (family.alphabet_x_size**n) * (family.alphabet_y_size**n)
    rows: list[SweepRow] = []
    for i, rate in enumerate(rates):
        enc = construct_achievability_encoder(family, epsilon, rate=rate, cap=cap)
        if pairs <= mc_threshold:
            err = exact_error(enc, family, cap=cap)
            opt = optimal_error(family, rate=rate, cap=cap)
            lo = hi = err
        else:
            mc = monte_carlo_error(enc, family, trials,
                                   np.random.SeedSequence([int(seed), i]))
            err, lo, hi = mc.estimate, mc.ci_low, mc.ci_high
            opt = math.nan
        rows.append(SweepRow(rate=float(rate), n=n, epsilon=float(epsilon),
                             error_constructed=err, error_optimal=opt,
                             ci_low=lo, ci_high=hi))
    return rows

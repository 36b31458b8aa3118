"""Nonstationary finite-alphabet pair sources.

A source is an ordered family of per-index joint distributions over a shared
pair of alphabets: index i of the pair sequence (U, V) is drawn from component
i, independently across indices.  Entropies are in bits throughout, and the
family-level entropy figures are the arithmetic means of the per-index values
at the family's own length.

Probabilities of whole sequences are handled in the log2 domain; a sequence
touching a zero-mass cell gets log-probability -inf.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "JointDistribution",
    "SourceFamily",
    "EntropyProfile",
    "DependencyGraph",
    "entropy",
    "marginals_and_conditional",
    "entropy_profile",
    "sample_sequence",
    "sequence_log_prob",
    "sequence_log_prob_x",
    "sequence_log_prob_y",
    "storage_savings",
    "build_dependency_graph",
    "family_to_dict",
    "family_from_dict",
    "save_family",
    "load_family",
    "load_numeric_csv",
]

_PMF_SUM_TOL = 1e-12


class JointDistribution:
    """A single joint pmf over X x Y, stored as a (|X|, |Y|) matrix.

    Entries must be non-negative and sum to 1 within 1e-12.  The matrix is
    frozen after construction.
    """

    def __init__(self, pmf):
        arr = np.array(pmf, dtype=float)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("pmf must be a 2-D matrix with non-empty alphabets")
        if np.any(arr < 0):
            raise ValueError("pmf entries must be non-negative")
        total = math.fsum(arr.ravel().tolist())
        if abs(total - 1.0) > _PMF_SUM_TOL:
            raise ValueError(f"pmf sums to {total!r}, not 1 within {_PMF_SUM_TOL}")
        arr.setflags(write=False)
        self.pmf = arr
        self.alphabet_x_size = arr.shape[0]
        self.alphabet_y_size = arr.shape[1]

    def marginal_x(self) -> np.ndarray:
        return self.pmf.sum(axis=1)

    def marginal_y(self) -> np.ndarray:
        return self.pmf.sum(axis=0)

    @classmethod
    def uniform(cls, kx: int, ky: int) -> "JointDistribution":
        return cls(np.full((kx, ky), 1.0 / (kx * ky)))

    @classmethod
    def binary_symmetric(cls, crossover: float) -> "JointDistribution":
        """Uniform binary X observed through a symmetric channel: Y differs
        from X with the given crossover probability."""
        if not 0.0 <= crossover <= 1.0:
            raise ValueError("crossover must lie in [0, 1]")
        same = (1.0 - crossover) / 2.0
        diff = crossover / 2.0
        return cls([[same, diff], [diff, same]])

    @classmethod
    def independent(cls, px, py) -> "JointDistribution":
        return cls(np.outer(np.asarray(px, float), np.asarray(py, float)))


class SourceFamily:
    """Ordered list of JointDistribution components sharing alphabets.

    epsilon1/epsilon2 are declared mass bounds: every joint cell and every
    Y-marginal entry is supposed to lie in [epsilon1, epsilon2].  They are
    checked, and a violation produces a warning rather than an error, so
    families with structural zeros can still be built and analysed.  When the
    bounds are omitted they are set to the observed min/max.
    """

    def __init__(self, components, epsilon1: float | None = None, epsilon2: float | None = None):
        components = list(components)
        if not components:
            raise ValueError("a family needs at least one component")
        kx = components[0].alphabet_x_size
        ky = components[0].alphabet_y_size
        for i, comp in enumerate(components):
            if not isinstance(comp, JointDistribution):
                raise TypeError(f"component {i} is not a JointDistribution")
            if comp.alphabet_x_size != kx or comp.alphabet_y_size != ky:
                raise ValueError(f"component {i} does not share the family alphabets")
        self.components = tuple(components)
        self.alphabet_x_size = kx
        self.alphabet_y_size = ky

        cells = [float(v) for comp in components for v in comp.pmf.ravel()]
        ymarg = [float(v) for comp in components for v in comp.marginal_y()]
        observed_lo = min(min(cells), min(ymarg))
        observed_hi = max(max(cells), max(ymarg))
        if epsilon1 is None:
            epsilon1 = observed_lo
        if epsilon2 is None:
            epsilon2 = observed_hi
        if epsilon1 > epsilon2:
            raise ValueError("epsilon1 must not exceed epsilon2")
        if observed_lo < epsilon1 - 1e-15 or observed_hi > epsilon2 + 1e-15:
            warnings.warn(
                "declared mass bounds [%g, %g] are violated by the components "
                "(observed range [%g, %g])" % (epsilon1, epsilon2, observed_lo, observed_hi),
                UserWarning,
                stacklevel=2,
            )
        self.epsilon1 = float(epsilon1)
        self.epsilon2 = float(epsilon2)

    @property
    def n(self) -> int:
        return len(self.components)

    @classmethod
    def iid(cls, dist: JointDistribution, n: int, **kw) -> "SourceFamily":
        if n < 1:
            raise ValueError("n must be at least 1")
        return cls([dist] * n, **kw)


@dataclass(frozen=True)
class EntropyProfile:
    """Per-index and averaged entropies (bits) of a family."""

    per_index_hxy: tuple[float, ...]
    per_index_hy: tuple[float, ...]
    per_index_hx: tuple[float, ...]
    avg_hxy: float
    avg_hy: float
    avg_hx: float

    def __post_init__(self):
        n = len(self.per_index_hxy)
        if len(self.per_index_hy) != n or len(self.per_index_hx) != n:
            raise ValueError("per-index lists must share one length")
        for avg, seq in (
            (self.avg_hxy, self.per_index_hxy),
            (self.avg_hy, self.per_index_hy),
            (self.avg_hx, self.per_index_hx),
        ):
            if abs(avg - math.fsum(seq) / n) > 1e-12:
                raise ValueError("average does not match the per-index mean")
        if not (-1e-9 <= self.avg_hy <= self.avg_hxy + 1e-9):
            raise ValueError("expected 0 <= H_Y <= H_XY")
        if self.avg_hxy > self.avg_hx + self.avg_hy + 1e-9:
            raise ValueError("expected H_XY <= H_X + H_Y")


@dataclass(frozen=True)
class DependencyGraph:
    """Undirected feature-dependence graph from pairwise correlation."""

    feature_count: int
    edges: frozenset
    constant_features: tuple[int, ...]

    def __post_init__(self):
        for u, v in self.edges:
            if u == v or not (0 <= u < self.feature_count and 0 <= v < self.feature_count):
                raise ValueError(f"bad edge ({u}, {v})")


def _entropy_of_vector(p: np.ndarray) -> float:
    terms = []
    for v in p:
        v = float(v)
        if v > 0.0:
            terms.append(v * math.log2(v))
    return -math.fsum(terms)


def entropy(dist) -> float:
    """Shannon entropy in bits of a JointDistribution or a pmf vector.

    0 * log 0 is 0.  Vectors must be non-negative and sum to 1 (within 1e-9
    to absorb float noise in caller-built pmfs).
    """
    if isinstance(dist, JointDistribution):
        return _entropy_of_vector(dist.pmf.ravel())
    p = np.asarray(dist, dtype=float).ravel()
    if p.size == 0:
        raise ValueError("empty pmf")
    if np.any(p < 0):
        raise ValueError("pmf entries must be non-negative")
    total = math.fsum(p.tolist())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"pmf sums to {total!r}, not 1")
    return _entropy_of_vector(p)


def marginals_and_conditional(dist: JointDistribution):
    """(p_X, p_Y, p_{X|Y}) for one joint.

    The conditional is a (|X|, |Y|) matrix whose column y is p(x | y).
    Columns with zero Y-marginal are flagged with a warning and filled
    with NaN.
    """
    px = dist.marginal_x()
    py = dist.marginal_y()
    cond = np.full_like(dist.pmf, np.nan)
    zero_cols = [y for y in range(dist.alphabet_y_size) if py[y] == 0.0]
    if zero_cols:
        warnings.warn(
            f"Y symbols {zero_cols} have zero marginal mass; conditional columns are NaN",
            UserWarning,
            stacklevel=2,
        )
    for y in range(dist.alphabet_y_size):
        if py[y] > 0.0:
            cond[:, y] = dist.pmf[:, y] / py[y]
    return px, py, cond


def entropy_profile(family: SourceFamily) -> EntropyProfile:
    hxy = tuple(entropy(comp) for comp in family.components)
    hy = tuple(_entropy_of_vector(comp.marginal_y()) for comp in family.components)
    hx = tuple(_entropy_of_vector(comp.marginal_x()) for comp in family.components)
    n = family.n
    return EntropyProfile(
        per_index_hxy=hxy,
        per_index_hy=hy,
        per_index_hx=hx,
        avg_hxy=math.fsum(hxy) / n,
        avg_hy=math.fsum(hy) / n,
        avg_hx=math.fsum(hx) / n,
    )


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        raise ValueError("an explicit seed is required")
    return np.random.default_rng(seed)


def sample_sequence(family: SourceFamily, seed):
    """Draw one (u, v) pair sequence; index i comes from component i."""
    rng = _as_rng(seed)
    ky = family.alphabet_y_size
    u: list[int] = []
    v: list[int] = []
    for comp in family.components:
        flat = comp.pmf.ravel()
        idx = int(rng.choice(flat.size, p=flat))
        u.append(idx // ky)
        v.append(idx % ky)
    return tuple(u), tuple(v)


def _check_symbols(family: SourceFamily, seq, size: int, name: str) -> None:
    if len(seq) != family.n:
        raise ValueError(f"{name} has length {len(seq)}, family has n={family.n}")
    for i, s in enumerate(seq):
        if not 0 <= int(s) < size:
            raise ValueError(f"{name}[{i}] = {s} outside the alphabet")


def sequence_log_prob(family: SourceFamily, u, v) -> float:
    """log2 P(U = u, V = v); -inf when any index hits a zero cell."""
    _check_symbols(family, u, family.alphabet_x_size, "u")
    _check_symbols(family, v, family.alphabet_y_size, "v")
    terms = []
    for comp, a, b in zip(family.components, u, v):
        p = float(comp.pmf[int(a), int(b)])
        if p == 0.0:
            return -math.inf
        terms.append(math.log2(p))
    return math.fsum(terms)


def sequence_log_prob_x(family: SourceFamily, u) -> float:
    """log2 of the U-marginal sequence probability."""
    _check_symbols(family, u, family.alphabet_x_size, "u")
    terms = []
    for comp, a in zip(family.components, u):
        p = float(comp.marginal_x()[int(a)])
        if p == 0.0:
            return -math.inf
        terms.append(math.log2(p))
    return math.fsum(terms)


def sequence_log_prob_y(family: SourceFamily, v) -> float:
    """log2 of the V-marginal sequence probability."""
    _check_symbols(family, v, family.alphabet_y_size, "v")
    terms = []
    for comp, b in zip(family.components, v):
        p = float(comp.marginal_y()[int(b)])
        if p == 0.0:
            return -math.inf
        terms.append(math.log2(p))
    return math.fsum(terms)


def storage_savings(profile: EntropyProfile) -> float:
    """Fraction of the raw X storage saved by encoding against known Y:
    1 - (H_XY - H_Y) / H_X."""
    if profile.avg_hx <= 0.0:
        raise ValueError("H_X must be positive to define savings")
    return 1.0 - (profile.avg_hxy - profile.avg_hy) / profile.avg_hx


def build_dependency_graph(table, corr_threshold: float) -> DependencyGraph:
    """Feature-dependence graph: edge (i, j) iff |Pearson corr| >= threshold.

    Constant columns carry no edges and are reported on the result.
    """
    arr = np.asarray(table, dtype=float)
    if arr.ndim != 2:
        raise ValueError("table must be 2-D (rows x features)")
    if arr.shape[0] < 2:
        raise ValueError("need at least two rows to correlate")
    if not 0.0 < corr_threshold < 1.0:
        raise ValueError("corr_threshold must lie strictly inside (0, 1)")
    m = arr.shape[1]
    stds = arr.std(axis=0)
    constant = tuple(int(j) for j in range(m) if stds[j] == 0.0)
    active = [j for j in range(m) if stds[j] != 0.0]
    edges: set[tuple[int, int]] = set()
    if len(active) >= 2:
        corr = np.corrcoef(arr[:, active], rowvar=False)
        for a in range(len(active)):
            for b in range(a + 1, len(active)):
                if abs(corr[a, b]) >= corr_threshold:
                    edges.add((active[a], active[b]))
    return DependencyGraph(feature_count=m, edges=frozenset(edges), constant_features=constant)


def family_to_dict(family: SourceFamily) -> dict:
    return {
        "alphabet_x_size": family.alphabet_x_size,
        "alphabet_y_size": family.alphabet_y_size,
        "epsilon1": family.epsilon1,
        "epsilon2": family.epsilon2,
        "pmfs": [[float(v) for v in comp.pmf.ravel()] for comp in family.components],
    }


def family_from_dict(doc: dict) -> SourceFamily:
    try:
        kx = int(doc["alphabet_x_size"])
        ky = int(doc["alphabet_y_size"])
        pmfs = doc["pmfs"]
    except KeyError as exc:
        raise ValueError(f"family document is missing {exc.args[0]!r}") from exc
    comps = []
    for i, flat in enumerate(pmfs):
        flat = np.asarray(flat, dtype=float)
        if flat.size != kx * ky:
            raise ValueError(f"pmf {i} has {flat.size} entries, expected {kx * ky}")
        comps.append(JointDistribution(flat.reshape(kx, ky)))
    return SourceFamily(comps, epsilon1=doc.get("epsilon1"), epsilon2=doc.get("epsilon2"))


def save_family(family: SourceFamily, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(family_to_dict(family), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_family(path) -> SourceFamily:
    with open(path, "r", encoding="utf-8") as fh:
        return family_from_dict(json.load(fh))


def load_numeric_csv(path):
    """Read a headered CSV of numeric columns: (header, rows-by-cols array)."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError("empty CSV")
        rows = []
        for rowno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ValueError(f"row {rowno} has {len(row)} cells, header has {len(header)}")
            try:
                rows.append([float(c) for c in row])
            except ValueError as exc:
                raise ValueError(f"row {rowno}: non-numeric cell") from exc
    if not rows:
        raise ValueError("CSV has a header but no data rows")
    return header, np.asarray(rows, dtype=float)

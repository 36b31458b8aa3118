"""Fractional neighbourhood domination: certificates, randomized construction,
shrinking, bounds, and the concentration experiment.

A set S is theta-dominating when every vertex v has at least
ceil(theta * deg(v)) of its neighbours inside S (for directed graphs the
out-neighbours; v itself never counts).  The randomized construction keeps a
Bernoulli(theta + eta) membership vector and, while some vertex is starved,
resamples the neighbourhood of the lowest-index starved vertex.  Termination
is not guaranteed for every input, so the loop is bounded by max_rounds and
raises NonterminationError with the partial state attached.
"""

from __future__ import annotations

import csv
import itertools
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .graph_core import gen_gnp, three_far_set

__all__ = [
    "DominationCertificate",
    "NonterminationError",
    "LowerBound",
    "ConcentrationRow",
    "ConcentrationReport",
    "required_in_neighbourhood",
    "is_theta_dominating",
    "check_sufficient_condition",
    "lll_construct",
    "greedy_shrink",
    "brute_force_min",
    "lower_bound_certificate",
    "concentration_experiment",
]


def required_in_neighbourhood(theta: float, degree: int) -> int:
    """ceil(theta * degree) with a guard against float noise on exact
    multiples (0.3 * 10 must demand 3 selected neighbours, not 4)."""
    if degree == 0:
        return 0
    return math.ceil(theta * degree - 1e-9)


def _check_theta(theta: float) -> None:
    if not 0.0 < theta <= 1.0:
        raise ValueError(f"theta must lie in (0, 1], got {theta}")


@dataclass(frozen=True)
class DominationCertificate:
    """Per-vertex record of a domination check.

    required[v] and achieved[v] are the demanded and attained numbers of
    selected neighbours of v; the certificate is feasible when achieved
    covers required everywhere.
    """

    selected: tuple[int, ...]
    theta: float
    required: tuple[int, ...]
    achieved: tuple[int, ...]
    feasible: bool

    @property
    def size(self) -> int:
        return len(self.selected)

    def slack(self, v: int) -> int:
        return self.achieved[v] - self.required[v]

    def violated_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, (r, a) in enumerate(zip(self.required, self.achieved))
                     if a < r)

    def to_json_dict(self) -> dict:
        return {
            "set": list(self.selected),
            "feasible": self.feasible,
            "per_vertex": [[r, a] for r, a in zip(self.required, self.achieved)],
        }


def is_theta_dominating(graph, theta: float, selected) -> DominationCertificate:
    """Check a vertex set against the domination demands of every vertex.

    Raises ValueError for theta outside (0, 1] or members outside the graph.
    """
    _check_theta(theta)
    n = graph.vertex_count
    members = sorted(set(int(v) for v in selected))
    if members and (members[0] < 0 or members[-1] >= n):
        raise ValueError("selected vertices outside the graph")
    mask = np.zeros(n, dtype=bool)
    mask[members] = True
    required = []
    achieved = []
    for v in range(n):
        nbrs = graph.neighbors_of(v)
        required.append(required_in_neighbourhood(theta, len(nbrs)))
        achieved.append(int(mask[nbrs].sum()))
    feasible = all(a >= r for r, a in zip(required, achieved))
    return DominationCertificate(selected=tuple(members), theta=theta,
                                 required=tuple(required), achieved=tuple(achieved),
                                 feasible=feasible)


def check_sufficient_condition(theta: float, eta: float, delta: int, big_delta: int,
                               slack: float = 1e-4) -> tuple[bool, dict]:
    """Test the degree condition under which the resampling loop is expected
    to terminate quickly and land under the (theta + 2*eta)n size bound.

    With z = eta^2 (theta + eta) / 4 and alpha = exp(-z * delta), both
    4 * big_delta^2 * alpha <= 1 and exp(-z) + 2*alpha < 1 - slack must hold.
    Returns the verdict and the evaluated quantities.
    """
    _check_theta(theta)
    if eta <= 0.0 or theta + eta > 1.0 + 1e-12:
        raise ValueError("eta must be positive with theta + eta <= 1")
    if delta < 1 or big_delta < delta:
        raise ValueError("need 1 <= delta <= big_delta")
    if slack < 0.0:
        raise ValueError("slack must be non-negative")
    z = eta * eta * (theta + eta) / 4.0
    alpha = math.exp(-z * delta)
    packing_lhs = 4.0 * big_delta * big_delta * alpha
    selection_lhs = math.exp(-z) + 2.0 * alpha
    packing_ok = packing_lhs <= 1.0
    selection_ok = selection_lhs < 1.0 - slack
    details = {
        "x": theta + eta,
        "z": z,
        "alpha": alpha,
        "packing_lhs": packing_lhs,
        "packing_ok": packing_ok,
        "selection_lhs": selection_lhs,
        "selection_ok": selection_ok,
        "slack": slack,
    }
    return packing_ok and selection_ok, details


class NonterminationError(RuntimeError):
    """The resampling loop hit max_rounds.  Carries the last membership state
    as a (infeasible) certificate and the number of rounds spent."""

    def __init__(self, certificate: DominationCertificate, rounds: int):
        super().__init__(f"resampling did not terminate within {rounds} rounds")
        self.certificate = certificate
        self.rounds = rounds


def lll_construct(graph, theta: float, eta: float, seed,
                  max_rounds: int | None = None) -> DominationCertificate:
    """Build a theta-dominating set by resampling starved neighbourhoods.

    Vertices enter the set independently with probability theta + eta; while
    some vertex has fewer selected neighbours than it requires, the
    neighbourhood of the lowest-index such vertex is redrawn, one fresh
    Bernoulli draw per neighbour in ascending order.  max_rounds defaults to
    1000 * vertex_count.
    """
    _check_theta(theta)
    if eta <= 0.0 or theta + eta > 1.0 + 1e-12:
        raise ValueError("eta must be positive with theta + eta <= 1")
    if seed is None:
        raise ValueError("an explicit seed is required")
    n = graph.vertex_count
    if max_rounds is None:
        max_rounds = 1000 * max(1, n)
    x = theta + eta
    rng = np.random.default_rng(seed)

    member = rng.random(n) < x
    required = np.empty(n, dtype=np.int64)
    counts = np.empty(n, dtype=np.int64)
    for v in range(n):
        nbrs = graph.neighbors_of(v)
        required[v] = required_in_neighbourhood(theta, len(nbrs))
        counts[v] = int(member[nbrs].sum())
    violated = {v for v in range(n) if counts[v] < required[v]}

    rounds = 0
    while violated:
        rounds += 1
        if rounds > max_rounds:
            partial = is_theta_dominating(graph, theta, np.nonzero(member)[0])
            raise NonterminationError(partial, rounds - 1)
        v = min(violated)
        for u in graph.neighbors_of(v):
            u = int(u)
            fresh = bool(rng.random() < x)
            if fresh == member[u]:
                continue
            member[u] = fresh
            step = 1 if fresh else -1
            for w in graph.influence_of(u):
                w = int(w)
                counts[w] += step
                if counts[w] < required[w]:
                    violated.add(w)
                else:
                    violated.discard(w)

    cert = is_theta_dominating(graph, theta, np.nonzero(member)[0])
    if not cert.feasible:
        raise RuntimeError("internal error: resampling ended on an infeasible set")
    return cert


def greedy_shrink(graph, theta: float, selected) -> DominationCertificate:
    """Drop redundant vertices from a feasible set, largest slack first.

    A member is removable when every vertex it serves keeps a strict surplus
    of selected neighbours; among removable members the one with the largest
    own slack (achieved - required) goes first, ties to the lowest index.
    Raises ValueError if the input set is not feasible to begin with.
    """
    if isinstance(selected, DominationCertificate):
        selected = selected.selected
    cert = is_theta_dominating(graph, theta, selected)
    if not cert.feasible:
        raise ValueError("greedy_shrink needs a feasible starting set")
    members = set(cert.selected)
    required = list(cert.required)
    achieved = list(cert.achieved)

    while True:
        best = None
        best_slack = -1
        for v in sorted(members):
            if all(achieved[int(w)] > required[int(w)] for w in graph.influence_of(v)):
                s = achieved[v] - required[v]
                if s > best_slack:
                    best, best_slack = v, s
        if best is None:
            break
        members.discard(best)
        for w in graph.influence_of(best):
            achieved[int(w)] -= 1

    out = is_theta_dominating(graph, theta, members)
    if not out.feasible:
        raise RuntimeError("internal error: shrinking broke feasibility")
    return out


def brute_force_min(graph, theta: float) -> tuple[int, tuple[int, ...]]:
    """Exhaustive minimum theta-dominating set; only for vertex_count <= 20.

    Returns the minimum size and its lexicographically least witness.
    """
    _check_theta(theta)
    n = graph.vertex_count
    if n > 20:
        raise ValueError("brute force is limited to 20 vertices")
    nbr_mask = []
    required = []
    for v in range(n):
        nbrs = graph.neighbors_of(v)
        m = 0
        for u in nbrs:
            m |= 1 << int(u)
        nbr_mask.append(m)
        required.append(required_in_neighbourhood(theta, len(nbrs)))
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if all((nbr_mask[v] & mask).bit_count() >= required[v] for v in range(n)):
                return size, combo
    raise RuntimeError("internal error: the full vertex set must dominate")


@dataclass(frozen=True)
class LowerBound:
    """Two lower bounds on the minimum size, with the 3-far witness set.

    sum_form adds up the demands of a greedily chosen set of vertices at
    pairwise distance >= 3 (their neighbourhoods are disjoint, so the demands
    stack); closed_form is the coarser theta * delta * n / (2 * Delta^2).
    """

    sum_form: int
    closed_form: float
    witness: tuple[int, ...]


def lower_bound_certificate(graph, theta: float) -> LowerBound:
    _check_theta(theta)
    n = graph.vertex_count
    degrees = [graph.degree_of(v) for v in range(n)]
    dmax = max(degrees, default=0)
    if dmax == 0:
        return LowerBound(sum_form=0, closed_form=0.0, witness=())
    dmin = min(degrees)
    witness = three_far_set(graph)
    sum_form = sum(required_in_neighbourhood(theta, degrees[v]) for v in witness)
    closed_form = theta * dmin * n / (2.0 * dmax * dmax)
    return LowerBound(sum_form=sum_form, closed_form=closed_form, witness=witness)


@dataclass(frozen=True)
class ConcentrationRow:
    trial: int
    lll_size: int
    final_size: int
    feasible: bool
    within_bound: bool
    subsets_tested: int
    subsets_infeasible: int


_ROW_FIELDS = ("trial", "lll_size", "final_size", "feasible", "within_bound",
               "subsets_tested", "subsets_infeasible")


@dataclass(frozen=True)
class ConcentrationReport:
    """Outcome of repeated construct-and-shrink runs on fresh random graphs."""

    n: int
    p: float
    theta: float
    eta: float
    zeta: float
    seed: int
    size_bound: float
    subset_size: int
    rows: tuple[ConcentrationRow, ...]

    @property
    def fraction_within_bound(self) -> float | None:
        if not self.rows:
            return None
        return sum(r.within_bound for r in self.rows) / len(self.rows)

    @property
    def subset_infeasible_rate(self) -> float | None:
        tested = sum(r.subsets_tested for r in self.rows)
        if tested == 0:
            return None
        return sum(r.subsets_infeasible for r in self.rows) / tested

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(_ROW_FIELDS)
            for r in self.rows:
                writer.writerow([r.trial, r.lll_size, r.final_size,
                                 int(r.feasible), int(r.within_bound),
                                 r.subsets_tested, r.subsets_infeasible])

    def summary_dict(self) -> dict:
        sizes = [r.final_size for r in self.rows]
        return {
            "n": self.n,
            "p": self.p,
            "theta": self.theta,
            "eta": self.eta,
            "zeta": self.zeta,
            "seed": self.seed,
            "trials": len(self.rows),
            "size_bound": self.size_bound,
            "subset_size": self.subset_size,
            "mean_final_size": (sum(sizes) / len(sizes)) if sizes else None,
            "max_final_size": max(sizes) if sizes else None,
            "fraction_within_bound": self.fraction_within_bound,
            "subset_infeasible_rate": self.subset_infeasible_rate,
        }


def concentration_experiment(n: int, p: float, theta: float, eta: float, zeta: float,
                             trials: int, seed, subsets_per_trial: int = 5,
                             max_rounds: int | None = None) -> ConcentrationReport:
    """Construct, shrink, and probe random graphs for size concentration.

    Each trial draws a fresh G(n, p), runs the resampling construction plus
    the greedy shrink, records whether the final size stays under
    (theta + 2*eta) * n, and tests subsets_per_trial uniform random vertex
    subsets of size floor(zeta * n) for feasibility (almost all should fail
    when zeta < theta).
    """
    _check_theta(theta)
    if eta <= 0.0 or theta + eta > 1.0 + 1e-12:
        raise ValueError("eta must be positive with theta + eta <= 1")
    if not 0.0 < zeta < theta:
        raise ValueError("zeta must lie strictly between 0 and theta")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if n < 1 or trials < 0 or subsets_per_trial < 0:
        raise ValueError("n must be >= 1 and counts non-negative")
    if seed is None:
        raise ValueError("an explicit seed is required")
    if n > 1 and p < math.log2(n) / n:
        warnings.warn(
            f"p = {p} is below log2(n)/n = {math.log2(n) / n:.4g}; graphs this "
            "sparse fall outside the regime where the size bound is expected",
            UserWarning,
            stacklevel=2,
        )

    size_bound = (theta + 2.0 * eta) * n
    subset_size = int(zeta * n)
    rows = []
    for trial, child in enumerate(np.random.SeedSequence(seed).spawn(trials)):
        graph_ss, lll_ss, subset_ss = child.spawn(3)
        graph = gen_gnp(n, p, graph_ss)
        built = lll_construct(graph, theta, eta, lll_ss, max_rounds=max_rounds)
        shrunk = greedy_shrink(graph, theta, built)
        infeasible = 0
        if subsets_per_trial > 0 and subset_size > 0:
            rng = np.random.default_rng(subset_ss)
            for _ in range(subsets_per_trial):
                probe = rng.choice(n, size=subset_size, replace=False)
                if not is_theta_dominating(graph, theta, probe).feasible:
                    infeasible += 1
            tested = subsets_per_trial
        else:
            tested = 0
        rows.append(ConcentrationRow(
            trial=trial,
            lll_size=built.size,
            final_size=shrunk.size,
            feasible=shrunk.feasible,
            within_bound=shrunk.size <= size_bound + 1e-9,
            subsets_tested=tested,
            subsets_infeasible=infeasible,
        ))
    return ConcentrationReport(n=n, p=p, theta=theta, eta=eta, zeta=zeta,
                               seed=int(seed), size_bound=size_bound,
                               subset_size=subset_size, rows=tuple(rows))

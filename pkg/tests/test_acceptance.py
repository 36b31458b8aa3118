"""End-to-end acceptance checks, one test per criterion.

Frozen reference constants are computed independently of the library
(binary entropy values by hand, tail bounds from the closed-form
inequality, brute-force enumerations written inline) so these tests do not
merely restate the implementation.
"""

import csv
import itertools
import json
import math
import warnings

import numpy as np
import pytest

from swdom import (
    Graph,
    JointDistribution,
    SourceFamily,
    brute_force_min,
    build_typical_set_xy,
    build_typical_set_y,
    check_sufficient_condition,
    choose_k,
    concentration_experiment,
    construct_achievability_encoder,
    entropy_profile,
    exact_error,
    gen_gnp,
    greedy_shrink,
    lll_construct,
    optimal_error,
    save_family,
    storage_savings,
    undersample_majority,
)
from swdom.cli import main
from swdom.undersample import Dataset

H_BSC_011 = 0.499915958164528  # binary entropy of 0.11, evaluated by hand
BSC = JointDistribution.binary_symmetric(0.11)


def quiet(fn, *args, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return fn(*args, **kw)


# --------------------------------------------------------------------------
# 1. Typical sets for the memoryless 0.11-crossover pair source at n=10,
#    eps=0.25: each set must hold 1 - eps of the mass with a member count
#    inside [(1 - eps) 2^(n(H - eps)), 2^(n(H + eps))].


def test_criterion_01a_marginal_typical_set_window():
    fam = SourceFamily.iid(BSC, 10)
    ey = build_typical_set_y(fam, 0.25)
    lower = 0.75 * 2 ** (10 * (1.0 - 0.25))
    upper = 2 ** (10 * (1.0 + 0.25))
    assert lower <= ey.member_count <= upper
    assert ey.total_mass >= 0.75


def test_criterion_01b_joint_typical_set_window():
    fam = SourceFamily.iid(BSC, 10)
    exy = build_typical_set_xy(fam, 0.25)
    lower = 0.75 * 2 ** (10 * (H_BSC_011 + 1.0 - 0.25))
    upper = 2 ** (10 * (H_BSC_011 + 1.0 + 0.25))
    assert lower <= exy.member_count <= upper
    assert exy.total_mass >= 0.75


# --------------------------------------------------------------------------
# 2. Error behaviour across the entropy-gap threshold at n=10: a gap of at
#    least 0.5 between a rate far below and a rate far above, and (for the
#    constructed encoder at rate 0.9) errors that do not grow with n.


def test_criterion_02a_error_gap_across_threshold():
    fam = SourceFamily.iid(BSC, 10)
    opt_low = optimal_error(fam, rate=0.1)
    opt_high = optimal_error(fam, rate=0.9)
    assert opt_low - opt_high >= 0.5
    con_low = exact_error(quiet(construct_achievability_encoder, fam, 0.05, rate=0.1), fam)
    con_high = exact_error(quiet(construct_achievability_encoder, fam, 0.05, rate=0.9), fam)
    assert con_low - con_high >= 0.5


def test_criterion_02b_constructed_error_monotone_in_n():
    errors = []
    for n in (4, 8, 12):
        fam = SourceFamily.iid(BSC, n)
        enc = quiet(construct_achievability_encoder, fam, 0.1, rate=0.9)
        errors.append(exact_error(enc, fam))
    assert errors[0] >= errors[1] - 1e-12
    assert errors[1] >= errors[2] - 1e-12, (
        f"error grew from {errors[1]} to {errors[2]} between n=8 and n=12"
    )


# --------------------------------------------------------------------------
# 3. The reported optimum equals a literal enumeration over every injective
#    encoder family on a small instance.


def test_criterion_03_optimal_error_matches_brute_force():
    dist = JointDistribution(np.array([[0.35, 0.10], [0.15, 0.40]]))
    fam = SourceFamily.iid(dist, 2)
    joint = np.kron(dist.pmf, dist.pmf)  # rank-major on both axes
    y_seqs = range(4)
    for count in (1, 2):
        best = 1.0
        injections = list(itertools.permutations(range(4), count))
        for choice in itertools.product(injections, repeat=4):
            covered = sum(joint[x, y] for y in y_seqs for x in choice[y])
            best = min(best, 1.0 - covered)
        got = optimal_error(fam, codebook_size=count)
        assert got == pytest.approx(best, abs=1e-12)


# --------------------------------------------------------------------------
# 4. Construct-and-shrink never reports a set smaller than the true minimum,
#    and stays feasible, across 200 seeded random graphs small enough to
#    verify exhaustively.


def test_criterion_04_construction_never_beats_minimum():
    assert brute_force_min(Graph.cycle(5), 0.5)[0] == 3
    assert brute_force_min(Graph.complete(4), 0.5)[0] == 3

    rng = np.random.default_rng(123)
    thetas = (0.3, 0.5, 0.8)
    for i in range(200):
        n = int(rng.integers(4, 13))
        p = float(rng.uniform(0.2, 0.9))
        g = gen_gnp(n, p, seed=int(rng.integers(1 << 30)))
        theta = thetas[i % 3]
        built = lll_construct(g, theta, 0.1, seed=1000 + i)
        shrunk = greedy_shrink(g, theta, built)
        minimum, _ = brute_force_min(g, theta)
        assert shrunk.feasible
        assert shrunk.size >= minimum
        assert shrunk.size <= built.size


# --------------------------------------------------------------------------
# 5. Concentration experiment at n=400, p=0.15, theta=0.3, eta=0.1,
#    zeta=0.15 over 20 trials: every final set is feasible and at most
#    (theta + 2 eta) n = 200, and at least 95% of the random probe subsets
#    (size 60) fail to dominate.


def test_criterion_05_concentration_experiment():
    report = concentration_experiment(n=400, p=0.15, theta=0.3, eta=0.1,
                                      zeta=0.15, trials=20, seed=20240816)
    assert report.size_bound == pytest.approx(200.0)
    assert report.subset_size == 60
    assert len(report.rows) == 20
    for row in report.rows:
        assert row.feasible
        assert row.within_bound
        assert row.final_size <= 200
    assert report.fraction_within_bound == 1.0
    assert report.subset_infeasible_rate >= 0.95


# --------------------------------------------------------------------------
# 6. The degree-based sufficient condition: rejected at delta = Delta = 100,
#    accepted at delta = Delta = 25000 (theta=0.3, eta=0.1).


def test_criterion_06_sufficient_condition_examples():
    ok, details = check_sufficient_condition(0.3, 0.1, 100, 100)
    assert not ok
    ok, details = check_sufficient_condition(0.3, 0.1, 25000, 25000)
    assert ok
    assert details["packing_lhs"] <= 1.0
    assert details["selection_lhs"] < 1.0


# --------------------------------------------------------------------------
# 7. Undersampling a 1000-vs-300 two-Gaussian dataset with the default
#    k = 30 at theta=0.3: a feasible certificate, at least ceil(0.3 * 30) = 9
#    retained neighbours for every majority point, at most
#    (theta + 2 eta) * 1000 = 500 retained majority rows, and a
#    deterministic rerun.


def two_gaussian_dataset():
    rng = np.random.default_rng(77)
    pts = np.vstack([rng.normal(0.0, 1.0, (1000, 2)),
                     rng.normal(4.0, 1.0, (300, 2))])
    labels = ("neg",) * 1000 + ("pos",) * 300
    return Dataset(points=pts, labels=labels, feature_names=("f0", "f1"))


def test_criterion_07_undersampling_guarantees():
    ds = two_gaussian_dataset()
    assert choose_k(1000) == 30
    result = undersample_majority(ds, 0.3, 0.1, seed=5)
    assert result.k == 30
    assert result.certificate.feasible
    assert min(result.certificate.achieved) >= 9
    assert len(result.retained_majority) <= 500
    assert len(result.minority) == 300
    again = undersample_majority(ds, 0.3, 0.1, seed=5)
    assert again.retained_majority == result.retained_majority


# --------------------------------------------------------------------------
# 8. Storage savings: zero when the sides are independent, one when they
#    are identical, and 0.5 (within 1e-3) for the 0.11-crossover source.


def test_criterion_08_storage_savings():
    independent = SourceFamily.iid(
        JointDistribution.independent([0.5, 0.5], [0.3, 0.7]), 6)
    assert storage_savings(entropy_profile(independent)) == pytest.approx(0.0, abs=1e-12)
    identical = SourceFamily.iid(
        JointDistribution(np.array([[0.5, 0.0], [0.0, 0.5]])), 6)
    assert storage_savings(entropy_profile(identical)) == pytest.approx(1.0, abs=1e-12)
    paired = SourceFamily.iid(BSC, 6)
    assert abs(storage_savings(entropy_profile(paired)) - 0.5) <= 1e-3


# --------------------------------------------------------------------------
# 9. The initial random selection concentrates: over 100000 seeded draws of
#    a Bernoulli(0.3) vector of length 200, the fraction with
#    |size - 60| >= gamma * 60 stays under 2 exp(-gamma^2 * 60 / 4) plus
#    three standard errors, for gamma in {0.1, 0.25, 0.5}.


def test_criterion_09_selection_size_concentration():
    trials, n, x = 100000, 200, 0.3
    rng = np.random.default_rng(99)
    sizes = (rng.random((trials, n)) < x).sum(axis=1)
    mean = x * n
    for gamma in (0.1, 0.25, 0.5):
        bound = 2.0 * math.exp(-gamma * gamma * mean / 4.0)
        empirical = float(np.mean(np.abs(sizes - mean) >= gamma * mean))
        slack = 3.0 * math.sqrt(0.25 / trials)
        assert empirical <= bound + slack, (gamma, empirical, bound)


# --------------------------------------------------------------------------
# 10. Rerunning every subcommand with the same arguments reproduces the
#     delimited outputs byte for byte.


def test_criterion_10_cli_outputs_reproducible(tmp_path):
    fam = SourceFamily.iid(BSC, 6)
    fam_path = tmp_path / "fam.json"
    save_family(fam, fam_path)

    rng = np.random.default_rng(8)
    for name, rows in (("train.csv", (70, 20)), ("test.csv", (25, 8))):
        with open(tmp_path / name, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["a", "b", "label"])
            for p in rng.normal(0.0, 1.0, (rows[0], 2)):
                w.writerow([repr(float(p[0])), repr(float(p[1])), "neg"])
            for p in rng.normal(4.0, 1.0, (rows[1], 2)):
                w.writerow([repr(float(p[0])), repr(float(p[1])), "pos"])

    commands = {
        "sweep": ["sw-sweep", "--family", str(fam_path), "--epsilon", "0.25",
                  "--rates", "0.2,0.6,1.0"],
        "find": ["dom-find", "--gnp-n", "30", "--gnp-p", "0.4", "--seed", "4"],
        "exp": ["dom-experiment", "--n", "40", "--p", "0.3", "--trials", "2"],
        "under": ["undersample", "--data", str(tmp_path / "train.csv"),
                  "--label-column", "label", "--k", "8",
                  "--evaluate", str(tmp_path / "test.csv")],
        "eval": ["evaluate", "--train", str(tmp_path / "train.csv"),
                 "--test", str(tmp_path / "test.csv"), "--k-eval", "3"],
    }
    for key, argv in commands.items():
        out_a = tmp_path / f"{key}_a"
        out_b = tmp_path / f"{key}_b"
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            assert main(argv + ["--out-dir", str(out_a)]) == 0
            assert main(argv + ["--out-dir", str(out_b)]) == 0
        produced = sorted(p.name for p in out_a.iterdir()
                          if p.suffix in (".csv", ".json"))
        assert produced, key
        for name in produced:
            assert (out_a / name).read_bytes() == (out_b / name).read_bytes(), (
                f"{key}: {name} differs between reruns"
            )
        # and the JSON is well formed
        for name in produced:
            if name.endswith(".json"):
                with open(out_a / name) as fh:
                    json.load(fh)

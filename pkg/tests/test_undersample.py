import numpy as np
import pytest

from swdom import (
    Dataset,
    KnnGraph,
    choose_k,
    distance_matrix,
    evaluate_knn_classifier,
    knn_graph,
    load_dataset,
    required_in_neighbourhood,
    save_dataset,
    undersample_majority,
)


def blob_dataset(seed=0, n_major=60, n_minor=20):
    rng = np.random.default_rng(seed)
    pts = np.vstack([rng.normal(0.0, 1.0, (n_major, 2)),
                     rng.normal(4.0, 1.0, (n_minor, 2))])
    labels = ("big",) * n_major + ("small",) * n_minor
    return Dataset(points=pts, labels=labels, feature_names=("f0", "f1"))


def test_dataset_validation():
    with pytest.raises(ValueError):
        Dataset(points=np.ones((2, 2)), labels=("a",), feature_names=("u", "v"))
    with pytest.raises(ValueError):
        Dataset(points=np.array([[1.0, np.nan]]), labels=("a",),
                feature_names=("u", "v"))
    with pytest.raises(ValueError):
        Dataset(points=np.ones((1, 2)), labels=("a",), feature_names=("u", "u"))
    with pytest.raises(ValueError):
        Dataset(points=np.ones((1, 2)), labels=("a",), feature_names=("u", "label"))


def test_dataset_majority_breaks_ties_lexicographically():
    ds = Dataset(points=np.zeros((4, 1)), labels=("b", "a", "b", "a"),
                 feature_names=("f",))
    assert ds.majority_label == "a"
    assert ds.majority_indices().tolist() == [1, 3]
    assert ds.minority_indices().tolist() == [0, 2]
    assert ds.class_counts() == {"a": 2, "b": 2}


def test_dataset_take_preserves_labels():
    ds = blob_dataset()
    sub = ds.take([0, 61, 2])
    assert sub.labels == ("big", "small", "big")
    assert np.allclose(sub.points[1], ds.points[61])


def test_dataset_round_trip(tmp_path):
    ds = blob_dataset(seed=3, n_major=10, n_minor=5)
    path = tmp_path / "d.csv"
    save_dataset(ds, path)
    back = load_dataset(path, "label")
    assert back.labels == ds.labels
    assert back.feature_names == ds.feature_names
    assert np.array_equal(back.points, ds.points)  # repr() floats are exact


def test_load_dataset_errors(tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("x,y,label\n1.0,2.0,a\n")
    with pytest.raises(ValueError, match="no column named 'cls'"):
        load_dataset(path, "cls")
    path.write_text("x,y,label\n1.0,two,a\n")
    with pytest.raises(ValueError, match="line 2.*'y'"):
        load_dataset(path, "label")
    path.write_text("x,y,label\n1.0,2.0,\n")
    with pytest.raises(ValueError, match="missing label"):
        load_dataset(path, "label")
    path.write_text("label\na\n")
    with pytest.raises(ValueError, match="no feature columns"):
        load_dataset(path, "label")
    path.write_text("")
    with pytest.raises(ValueError, match="empty"):
        load_dataset(path, "label")


def test_distance_matrix_euclidean_squared():
    a = np.array([[0.0, 0.0], [3.0, 4.0]])
    d = distance_matrix(a, a, "euclidean")
    assert d[0, 1] == pytest.approx(25.0)  # squared by design
    assert d[0, 0] == 0.0


def test_distance_matrix_manhattan_and_cosine():
    a = np.array([[1.0, 0.0], [0.0, 2.0]])
    d = distance_matrix(a, a, "manhattan")
    assert d[0, 1] == pytest.approx(3.0)
    c = distance_matrix(a, a, "cosine")
    assert c[0, 1] == pytest.approx(1.0)  # orthogonal
    assert c[0, 0] == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        distance_matrix(np.array([[0.0, 0.0]]), a, "cosine")
    with pytest.raises(ValueError):
        distance_matrix(a, a, "chebyshev")


def test_knn_graph_collinear_points():
    pts = np.array([[0.0], [1.0], [3.0]])
    g = knn_graph(pts, 1)
    assert g.neighbors_of(0).tolist() == [1]
    assert g.neighbors_of(1).tolist() == [0]
    assert g.neighbors_of(2).tolist() == [1]
    assert g.influence_of(1).tolist() == [0, 2]
    assert g.degree_of(2) == 1
    assert g.vertex_count == 3


def test_knn_graph_breaks_distance_ties_by_index():
    pts = np.array([[0.0], [1.0], [2.0]])
    g = knn_graph(pts, 1)
    # point 1 is equidistant from 0 and 2; the lower index wins
    assert g.neighbors_of(1).tolist() == [0]


def test_knn_graph_k_bounds():
    pts = np.zeros((4, 2))
    with pytest.raises(ValueError):
        KnnGraph(pts, 0)
    with pytest.raises(ValueError):
        KnnGraph(pts, 4)


def test_choose_k_values():
    assert choose_k(1000) == 30
    assert choose_k(1024) == 30
    assert choose_k(8, m_const=1.0) == 3
    assert choose_k(2) == 1  # capped at n - 1
    with pytest.raises(ValueError):
        choose_k(1)
    with pytest.raises(ValueError):
        choose_k(100, m_const=0.0)


def test_undersample_majority_contract():
    ds = blob_dataset()
    res = undersample_majority(ds, 0.3, 0.1, seed=11, k=8)
    major = set(ds.majority_indices().tolist())
    assert set(res.retained_majority) <= major
    assert res.minority == tuple(ds.minority_indices().tolist())
    assert res.certificate.feasible
    assert res.k == 8
    # every majority vertex keeps at least ceil(theta * k) retained neighbours
    need = required_in_neighbourhood(0.3, 8)
    assert min(res.certificate.achieved) >= need
    sub = res.subset(ds)
    assert len(sub) == len(res.retained_majority) + len(res.minority)
    assert sub.class_counts()["small"] == 20


def test_undersample_majority_is_deterministic():
    ds = blob_dataset()
    a = undersample_majority(ds, 0.3, 0.1, seed=11, k=8)
    b = undersample_majority(ds, 0.3, 0.1, seed=11, k=8)
    assert a.retained_majority == b.retained_majority
    c = undersample_majority(ds, 0.3, 0.1, seed=12, k=8)
    assert c.certificate.feasible


def test_undersample_majority_default_k():
    ds = blob_dataset()
    res = undersample_majority(ds, 0.3, 0.1, seed=5)
    assert res.k == choose_k(60)


def test_undersample_majority_needs_two_classes():
    ds = Dataset(points=np.zeros((3, 1)), labels=("a", "a", "a"),
                 feature_names=("f",))
    with pytest.raises(ValueError):
        undersample_majority(ds, 0.3, 0.1, seed=1)


def test_evaluate_nearest_neighbour():
    train = Dataset(points=np.array([[0.0], [10.0]]), labels=("a", "b"),
                    feature_names=("f",))
    test = Dataset(points=np.array([[1.0], [9.0]]), labels=("a", "b"),
                   feature_names=("f",))
    rep = evaluate_knn_classifier(train, test, 1)
    assert rep.per_class_recall == {"a": 1.0, "b": 1.0}
    assert rep.accuracy == 1.0
    assert rep.balanced_accuracy == 1.0
    assert rep.test_counts == {"a": 1, "b": 1}


def test_evaluate_tie_falls_to_nearest():
    train = Dataset(points=np.array([[0.0], [2.0]]), labels=("a", "b"),
                    feature_names=("f",))
    probe = Dataset(points=np.array([[1.0]]), labels=("a",),
                    feature_names=("f",))
    rep = evaluate_knn_classifier(train, probe, 2)
    # both labels get one vote; the index-0 neighbour is first in the
    # stable ordering, so "a" wins
    assert rep.per_class_recall == {"a": 1.0}


def test_evaluate_balanced_vs_raw_accuracy():
    train = Dataset(points=np.array([[0.0], [10.0]]), labels=("a", "b"),
                    feature_names=("f",))
    test = Dataset(points=np.array([[0.1], [0.2], [0.3], [9.9]]),
                   labels=("a", "a", "a", "a"), feature_names=("f",))
    rep = evaluate_knn_classifier(train, test, 1)
    assert rep.per_class_recall == {"a": 0.75}
    assert rep.accuracy == 0.75
    assert rep.balanced_accuracy == 0.75
    doc = rep.to_json_dict()
    assert set(doc) == {"per_class_recall", "balanced_accuracy", "accuracy",
                        "test_counts", "k", "metric"}


def test_evaluate_validation():
    train = Dataset(points=np.zeros((2, 1)), labels=("a", "b"),
                    feature_names=("f",))
    other = Dataset(points=np.zeros((2, 1)), labels=("a", "b"),
                    feature_names=("g",))
    with pytest.raises(ValueError):
        evaluate_knn_classifier(train, other, 1)
    with pytest.raises(ValueError):
        evaluate_knn_classifier(train, train, 3)

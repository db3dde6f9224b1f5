import math

import numpy as np
import pytest

import forte


def _rng(seed):
    return np.random.default_rng(seed)


def test_detect_separates_shifted_gaussians():
    rng = _rng(0)
    ident = rng.normal(size=(240, 8)).astype(np.float32)
    ood = rng.normal(loc=4.0, size=(80, 8)).astype(np.float32)
    report = forte.detect(
        [ident], [ood], k=3, estimator="gmm", components=1, seeds=[0, 1, 2]
    )
    assert report["estimator"] == "gmm"
    assert report["k"] == 3
    assert report["auroc"]["mean"] > 0.95
    assert report["n_id"] == 80  # evaluated held-out third
    assert report["n_ood"] == 80


def test_detect_is_deterministic():
    rng = _rng(1)
    ident = rng.normal(size=(120, 4)).astype(np.float32)
    ood = rng.normal(loc=3.0, size=(40, 4)).astype(np.float32)
    a = forte.detect([ident], [ood], k=2, seeds=[0, 1])
    b = forte.detect([ident], [ood], k=2, seeds=[0, 1])
    assert a == b


def test_prdc_features_shape_and_labels():
    rng = _rng(2)
    refs = rng.normal(size=(60, 5)).astype(np.float32)
    test = rng.normal(size=(20, 5)).astype(np.float32)
    values, labels = forte.prdc_features([test], [refs], k=3, labels=["enc"])
    assert values.shape == (20, 4)
    assert labels == ["enc.precision", "enc.recall", "enc.density", "enc.coverage"]
    assert np.all(values >= 0.0)
    assert np.all(values[:, 0] <= 1.0)  # precision is an indicator


def test_auroc_and_fpr():
    assert forte.auroc([1.0, 2.0, 3.0], [4.0, 5.0]) == 1.0
    assert forte.auroc([1.0, 2.0], [1.0, 2.0]) == 0.5
    assert forte.fpr_at_tpr([1.0, 2.0, 3.0], [10.0, 11.0], target_tpr=0.95) == 0.0


def test_expected_prdc_closed_forms():
    p, r, d, c = forte.expected_prdc(5, 1000)
    assert math.isclose(p, 1.0 - math.exp(-5.0), rel_tol=1e-9)
    assert math.isclose(r, 0.005, rel_tol=1e-9)
    assert d == 1.0
    assert c == 1.0


def test_simulate_passes_in_the_valid_regime():
    report = forte.simulate(k=3, n_train=600, n_test=200, dim=4, seeds=[0, 1, 2])
    assert report["all_pass"] is True
    assert len(report["per_seed"]) == 3
    for entry in report["per_seed"]:
        assert entry["coverage"] == 1.0


def test_sample_gaussian_moments_and_determinism():
    a = forte.sample_gaussian(2000, 6, mean=1.0, sigma=0.5, seed=7)
    b = forte.sample_gaussian(2000, 6, mean=1.0, sigma=0.5, seed=7)
    assert a.shape == (2000, 6)
    assert np.array_equal(a, b)
    assert abs(float(a.mean()) - 1.0) < 0.02
    assert abs(float(a.std()) - 0.5) < 0.02


def test_lof_and_isolation_forest():
    rng = _rng(3)
    refs = rng.normal(size=(200, 3)).astype(np.float32)
    near = rng.normal(size=(20, 3)).astype(np.float32)
    far = rng.normal(loc=8.0, size=(20, 3)).astype(np.float32)
    assert float(np.mean(forte.lof(refs, far, k=5))) > float(
        np.mean(forte.lof(refs, near, k=5))
    )
    si = forte.isolation_forest(refs, far, n_trees=50, subsample=128, seed=1)
    sn = forte.isolation_forest(refs, near, n_trees=50, subsample=128, seed=1)
    assert float(np.mean(si)) > float(np.mean(sn))
    assert np.all((si > 0.0) & (si < 1.0))


def test_errors_map_to_python_exceptions():
    rng = _rng(4)
    refs = rng.normal(size=(10, 2)).astype(np.float32)
    with pytest.raises(ValueError):
        forte.lof(refs, refs, k=10)  # k must be < n
    bad = refs.copy()
    bad[0, 0] = np.nan
    with pytest.raises(ValueError):
        forte.detect([bad], [refs], k=2)

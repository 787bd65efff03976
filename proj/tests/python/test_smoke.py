import numpy as np
import pytest

import prwalk


def straight_gap(ridge):
    mask = np.zeros((40, 80), dtype=np.uint8)
    mask[19:22, 2:40] = 1
    mask[19:22, 50:70] = 1
    prob = mask * 0.9
    prob[19:22, 40:50] = ridge
    return mask, prob


def test_prw_bridges_a_confident_gap():
    mask, prob = straight_gap(0.5)
    out, report = prwalk.prw(mask, prob, roi_side=40)
    assert out.dtype == bool and out.shape == mask.shape
    assert np.all(out[mask == 1])
    assert report["totals"]["stamped_pixels"] > 0
    assert prwalk.label_components(out)[1] == 1
    assert report["rois"][0]["status"] == "connected"


def test_alpha_zero_changes_nothing():
    mask, prob = straight_gap(0.5)
    out, report = prwalk.prw(mask, prob, alpha=0.0, roi_side=40)
    assert np.array_equal(out, mask.astype(bool))
    assert report["totals"]["stamped_pixels"] == 0


def test_low_confidence_gap_is_left_open():
    mask, prob = straight_gap(0.05)
    out, _ = prwalk.prw(mask, prob, roi_side=40)
    assert prwalk.label_components(out)[1] == 2


def test_baseline_report_tag():
    mask, prob = straight_gap(0.5)
    _, report = prwalk.baseline(mask, prob, roi_side=40)
    assert report["method"] == "directional_baseline"


def test_components_and_skeleton():
    m = np.array([[1, 0], [0, 1]])
    assert prwalk.label_components(m, 8)[1] == 1
    assert prwalk.label_components(m, 4)[1] == 2
    bar = np.zeros((7, 60), dtype=np.uint8)
    bar[2:5, 5:55] = 1
    s = prwalk.skeletonize(bar)
    assert s[3].sum() >= 45 and s.sum() == s[3].sum()
    with pytest.raises(ValueError):
        prwalk.label_components(m, 6)


def test_dice():
    assert prwalk.dice_loss([[0.5, 0.5]], [[1, 0]]) == pytest.approx(0.2, abs=1e-15)
    g = (np.random.default_rng(0).random((8, 8)) > 0.5).astype(np.uint8)
    assert prwalk.dice_loss(g.astype(float), g) == 0.0
    assert np.allclose(prwalk.dice_grad(g.astype(float), g), 0.0)
    with pytest.raises(ValueError):
        prwalk.dice_loss(np.zeros((2, 2)), np.zeros((3, 3)))


def test_metrics():
    truth = np.array([[1, 0], [0, 1]])
    assert prwalk.confusion(truth, truth) == {"tp": 2, "fp": 0, "tn": 2, "fn": 0}
    assert prwalk.auc(truth.astype(float), truth) == 1.0
    assert 0.0 < prwalk.otsu_threshold(np.array([[0.1, 0.9], [0.1, 0.9]])) < 0.9


def test_receptive_fields():
    assert prwalk.receptive_field() == (17, None)
    assert prwalk.receptive_field("cascade", 4, True) == (65, 65)
    assert prwalk.receptive_field("parallel", 1, True) == (11, 11)


def test_fixture_round_trip():
    truth, broken, prob = prwalk.make_fixture(seed=3, side=128, branches=2, gaps=1)
    assert truth.shape == broken.shape == prob.shape == (128, 128)
    assert not np.any(broken & ~truth)
    assert prwalk.label_components(broken)[1] == 2
    with pytest.raises(ValueError):
        prwalk.make_fixture(side=40, branches=1, gaps=8)

"""Reconnect fractured vessel masks with probability regularized walks."""

import json

from . import _prwalk
from ._prwalk import (
    SynthConfigError,
    auc,
    confusion,
    dice_grad,
    dice_loss,
    label_components,
    make_fixture,
    otsu_threshold,
    receptive_field,
    skeletonize,
)

__all__ = [
    "SynthConfigError",
    "auc",
    "baseline",
    "confusion",
    "dice_grad",
    "dice_loss",
    "label_components",
    "make_fixture",
    "otsu_threshold",
    "prw",
    "receptive_field",
    "skeletonize",
]


def prw(mask, prob, alpha=0.2, roi_side=100, eps_nn=0.1, reverse_walkers=False):
    """Reconnected mask and the per-ROI report as a dict."""
    out, report = _prwalk.prw(mask, prob, alpha, roi_side, eps_nn, reverse_walkers)
    return out, json.loads(report)


def baseline(mask, prob, alpha=0.2, roi_side=100, eps_nn=0.1):
    """Same pipeline with walkers that ignore the probability map."""
    out, report = _prwalk.baseline(mask, prob, alpha, roi_side, eps_nn)
    return out, json.loads(report)

import math
import os
import sys

import pytest

sys.path.insert(0, os.environ.get("BADCODES_PYMOD_DIR", ""))

bc = pytest.importorskip("_badcodes")


def test_design_rates():
    assert bc.EdgeDistribution.regular(3, 6).design_rate() == pytest.approx(0.5)
    assert bc.relay_design_distribution().design_rate() == pytest.approx(0.5056, abs=5e-4)
    assert bc.interference_design_distribution().design_rate() == pytest.approx(0.3243, abs=5e-4)


def test_de_bec_point():
    r = bc.de_bec(bc.relay_design_distribution(), 0.5, 5000)
    assert r.final_bit_erasure == pytest.approx(0.3016, abs=2e-3)


def test_sim_de_headline():
    r = bc.sim_de(bc.relay_design_distribution(), 0.5, 0.82, 0.212)
    assert r.final_erasure <= 2e-5


def test_benchmarks():
    p = bc.RelayParams(0.5, 0.82, 0.9)
    assert bc.r_df(p) == 0.5
    assert bc.r_cf(p) == pytest.approx(0.49867, abs=1e-4)
    ip = bc.InterferenceParams(0.839, 1.075)
    assert bc.r_mud(ip) == pytest.approx(0.3237, abs=5e-4)
    assert bc.r_sud(ip) == pytest.approx(0.308, abs=5e-4)
    assert bc.shannon_limit_biawgn(0.5) == pytest.approx(1.044, abs=2e-3)


def test_threshold_and_entropy():
    assert bc.de_threshold(bc.EdgeDistribution.regular(3, 6)) == pytest.approx(0.4294, abs=2.5e-3)
    assert bc.binary_entropy(0.5) == pytest.approx(1.0)
    assert bc.achievable_rate_from_epsilon(0.5056, 1.54e-5) == pytest.approx(0.5053, abs=1e-4)


def test_campaign_small():
    ed = bc.EdgeDistribution.regular(3, 6)
    out = bc.run_relay_campaign(ed, 300, bc.RelayParams(0.5, 0.6, 0.9, 0.2), -1, 4, 7, 1)
    assert out["degradedness_violations"] == 0
    assert 0.0 <= out["mean_destination_erasure"] <= 1.0


def test_soft_ic_de_coarse():
    out = bc.soft_ic_de(
        bc.interference_design_distribution(),
        bc.InterferenceParams(0.839, 1.075),
        max_iters=250,
        l_max=30.0,
        half_bins=512,
    )
    assert out["primary_ber"] <= 1e-4
    assert out["interference_ber"] == pytest.approx(0.062, abs=8e-3)

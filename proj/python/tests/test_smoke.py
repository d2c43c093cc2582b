import numpy as np
import pytest

import framemult as fm


def test_fixture_listing():
    ids = {f["id"] for f in fm.fixtures()}
    assert {"exnew", "exdual", "recycled"} <= ids


def test_certify_fires_frame_perturbation():
    cert = fm.certify("exnew", dim=12)
    assert cert["rule"] == "mpos"
    assert cert["residual"] < 1e-10
    lo, hi = cert["sandwich"]
    inv = fm.inverse("exnew", dim=12)
    sv = np.linalg.svd(inv, compute_uv=False)
    assert lo * (1 - 1e-9) <= sv.min() and sv.max() <= hi * (1 + 1e-9)


def test_inverse_matches_numpy():
    m = fm.dense("weighted_not_signed", dim=10)
    inv = fm.inverse("weighted_not_signed", dim=10)
    assert np.allclose(inv, np.linalg.inv(m), atol=1e-9)


def test_none_fired_reports_misses():
    cert = fm.certify("harmonic_dual", dim=16)
    assert cert["rule"] == "none_fired"
    assert cert["certified_noninvertible"]
    assert len(cert["nearest_misses"]) == 7
    assert fm.inverse("harmonic_dual", dim=16) is None


def test_parameters_and_order():
    cert = fm.certify("exdual", dim=32, order=["p4"], k=0.3)
    assert cert["rule"] == "p4"
    assert cert["constants"]["mu"] == pytest.approx(0.18, rel=1e-9)


def test_explicit_spec_apply():
    spec = {
        "m": {"kind": "explicit", "values": [[2, 0], [3, 0]]},
        "phi": {"kind": "generator", "name": "onb", "dim": 2},
        "psi": {"kind": "generator", "name": "onb", "dim": 2},
    }
    y = fm.apply(spec, [1.0, 1j])
    assert np.allclose(y, [2.0, 3j])
    b = fm.bounds(spec)
    assert b["norm_bound"] == pytest.approx(3.0)


def test_diagnose_sweep():
    assert fm.diagnose(fm.fixture("recycled"))["verdict"] == "violated"
    assert fm.diagnose(fm.fixture("exnew"))["verdict"] == "necessary_conditions_hold"


def test_errors_carry_code_and_pointer():
    with pytest.raises(fm.Error) as e:
        fm.certify({"m": {"kind": "explicit", "values": ["x"]}, "phi": {}, "psi": {}})
    code, _, pointer = e.value.args
    assert code == "SchemaError"
    assert pointer.startswith("/")
    with pytest.raises(fm.Error) as e:
        fm.certify("no-such")
    assert e.value.args[0] != "SchemaError" or e.value.args[2]


def test_emit_round_trip():
    doc = fm.emit("exdual", dim=8, k=0.2)
    assert doc["fixture"]["params"]["k"] == pytest.approx(0.2)
    doc.pop("fixture")
    doc.pop("expected")
    assert np.array_equal(fm.dense(doc), fm.dense("exdual", dim=8, k=0.2))

import json
import subprocess
import sys

import numpy as np
import pytest

from supertwirl.cli import dumps, main
from supertwirl.channels import matrix_from_json, random_channel
from supertwirl.linalg import unitarity_check

from conftest import AMP_DAMP_01_ETA


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    data = json.loads(out.out) if out.out else None
    return code, data, out.err


def test_twirl_depolarizing_supermap(capsys):
    code, data, _ = run(capsys, "twirl", "--channel", "depolarizing:0.9", "--method", "supermap")
    assert code == 0
    assert data["eta"] == pytest.approx(0.9, abs=1e-12)
    assert data["residual"] < 1e-10
    assert data["depolarizing_form"] is True


def test_twirl_identity_oracle(capsys):
    code, data, _ = run(capsys, "twirl", "--channel", "identity", "--method", "oracle-G")
    assert code == 0
    np.testing.assert_allclose(matrix_from_json(data["ptm"]), np.eye(4), atol=1e-12)


@pytest.mark.parametrize("method", ["supermap", "oracle-G", "oracle-clifford"])
def test_twirl_amp_damp(capsys, method):
    code, data, _ = run(capsys, "twirl", "--channel", "amp_damp:0.1", "--method", method)
    assert code == 0
    assert data["eta"] == pytest.approx(AMP_DAMP_01_ETA, abs=1e-10)


def test_twirl_bad_spec(capsys):
    code, _, err = run(capsys, "twirl", "--channel", "nonsense:zz")
    assert code == 2 and "cannot parse" in err
    code, _, _ = run(capsys, "twirl", "--channel", "depolarizing:1.5")
    assert code == 2


def test_twirl_non_cptp_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"dim": 2, "kraus": [[[[1, 0], [0, 0]], [[0, 0], [2, 0]]]]}))
    code, _, err = run(capsys, "twirl", "--channel", str(path))
    assert code == 3


def test_twirl_channel_file(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(random_channel(5, 2).to_json()))
    code, data, _ = run(capsys, "twirl", "--channel", str(path), "--method", "supermap")
    assert code == 0 and data["depolarizing_form"]


def test_verify_passes(capsys):
    code, data, _ = run(capsys, "verify", "--seeds", "100", "--tol", "1e-10")
    assert code == 0
    assert data["passed"] is True
    assert data["max_eta_difference"] <= 1e-10
    assert data["worst"]["distance"] <= 1e-10


def test_verify_impossible_tolerance(capsys):
    code, data, err = run(capsys, "verify", "--seeds", "1", "--tol", "1e-30")
    assert code == 1
    assert data["failing_seeds"] == [0]
    assert "seeds [0]" in err


def test_estimate_exact(capsys):
    code, data, _ = run(capsys, "estimate", "--target", "depolarizing:0.8", "--shots", "0")
    assert code == 0
    assert data["mode"] == "exact"
    assert data["eta"] == pytest.approx(0.8, abs=1e-12)


def test_estimate_identity_sampled(capsys):
    code, data, _ = run(capsys, "estimate", "--target", "identity", "--shots", "1000", "--seed", "7")
    assert code == 0
    assert data["eta"] == 1.0 and data["plan"]["n_total"] == 4000


def test_estimate_spam_robust(capsys):
    code, data, _ = run(
        capsys, "estimate", "--target", "amp_damp:0.1", "--prep", "dephasing:0.05",
        "--meas", "dephasing:0.05", "--shots", "0",
    )
    assert code == 0
    assert data["eta"] == pytest.approx(AMP_DAMP_01_ETA, abs=1e-10)


def test_estimate_degenerate(capsys):
    code, _, _ = run(capsys, "estimate", "--target", "identity", "--prep", "depolarizing:0")
    assert code == 4


@pytest.mark.parametrize(
    "args, n",
    [
        (("--epsilon", "1e-3", "--alpha", "0.95", "--mode", "paper"), 372220),
        (("--epsilon", "1e-3", "--alpha", "0.95", "--mode", "rigorous"), 1844440),
        (("--epsilon", "0.5", "--alpha", "0.5", "--mode", "rigorous"), 3),
    ],
)
def test_plan(capsys, args, n):
    code, data, _ = run(capsys, "plan", *args)
    assert code == 0
    assert data["n_per_experiment"] == n and data["n_total"] == 4 * n


def test_plan_out_of_range(capsys):
    code, _, _ = run(capsys, "plan", "--epsilon", "0.1", "--alpha", "1.5")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["plan", "--epsilon", "0.1"])
    assert exc.value.code == 2


def test_export_w(capsys, tmp_path):
    path = tmp_path / "w.json"
    code, _, _ = run(capsys, "export-w", "--out", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["profile"] == [2, 4, 3]
    w = matrix_from_json(data["matrix"])
    assert w.shape == (24, 24) and unitarity_check(w, 1e-12)


def test_rb_curve(capsys):
    code, data, _ = run(capsys, "rb-curve", "--channel", "depolarizing:0.9", "--m-max", "4")
    assert code == 0
    np.testing.assert_allclose(data["p"], [(1 + 0.9 ** (m + 1)) / 2 for m in range(1, 5)], atol=1e-12)


def test_output_deterministic(capsys):
    outs = []
    for _ in range(2):
        main(["estimate", "--target", "amp_damp:0.2", "--shots", "300", "--seed", "11"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_dumps_seventeen_digits():
    assert dumps(0.1) == "0.10000000000000001"
    assert json.loads(dumps({"a": [1, 0.5, None, True]})) == {"a": [1, 0.5, None, True]}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "supertwirl", "plan", "--epsilon", "0.1", "--alpha", "0.95"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["n_per_experiment"] == 185

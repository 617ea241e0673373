import io
import json
import subprocess
import sys

import numpy as np
import pytest

from wassfs import cli
from wassfs.csvio import load_csv, write_csv
from wassfs.data import LabeledDataset
from wassfs.evaluation import evaluate_subset, rsd, train_test_split
from wassfs.exceptions import (
    CellParseError, ClassCountError, DatasetError, InputFileError, LabelColumnError,
)
from wassfs.selection import SelectionConfig, twd
from wassfs.synthetic import SyntheticSpec, gen_synthetic

FOUR_ROWS = "x,class,y\n1.0,a,2.0\n1.5,b,0.5\n2.0,a,1.0\n0.0,b,3.0\n"


@pytest.fixture
def four_csv(tmp_path):
    p = tmp_path / "four.csv"
    p.write_text(FOUR_ROWS)
    return p


# csv loading

def test_load_four_rows(four_csv):
    ds = load_csv(four_csv, "class")
    assert (ds.n_samples, ds.n_features, ds.n_classes) == (4, 2, 2)
    assert ds.feature_names == ("x", "y")
    np.testing.assert_array_equal(ds.labels, [0, 1, 0, 1])


def test_label_by_name_equals_by_index(four_csv):
    a, b = load_csv(four_csv, "class"), load_csv(four_csv, "1")
    np.testing.assert_array_equal(a.values, b.values)
    np.testing.assert_array_equal(a.labels, b.labels)
    assert a.class_names == b.class_names


def test_default_label_column_is_last(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("a,b\n1,x\n2,y\n")
    ds = load_csv(p)
    assert ds.class_names == ("x", "y") and ds.n_features == 1


def test_no_header(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("1,2,0\n3,4,1\n")
    ds = load_csv(p, has_header=False)
    assert ds.n_samples == 2 and ds.feature_names is None


def test_bad_cell_names_row(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("x,label\n1,a\nfoo,b\n2,a\n")
    with pytest.raises(CellParseError, match="row 3"):
        load_csv(p)


def test_empty_cell_rejected(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("x,y,label\n1,2,a\n3,,b\n")
    with pytest.raises(CellParseError, match="row 3"):
        load_csv(p)


def test_missing_file(tmp_path):
    with pytest.raises(InputFileError):
        load_csv(tmp_path / "nope.csv")


def test_absent_label_column(four_csv):
    with pytest.raises(LabelColumnError):
        load_csv(four_csv, "target")
    with pytest.raises(LabelColumnError):
        load_csv(four_csv, "7")


def test_single_class(tmp_path):
    p = tmp_path / "one.csv"
    p.write_text("x,label\n1,a\n2,a\n")
    with pytest.raises(ClassCountError):
        load_csv(p)


def test_numeric_labels_sort_numerically(tmp_path):
    p = tmp_path / "n.csv"
    p.write_text("x,label\n1,10\n2,9\n3,2\n")
    assert load_csv(p).class_names == ("2", "9", "10")


def test_csv_round_trip():
    ds = gen_synthetic(SyntheticSpec(n_per_class=5, n_features=3, seed=4))
    buf = io.StringIO()
    write_csv(ds, buf)
    back = load_csv_text(buf.getvalue())
    np.testing.assert_array_equal(back.values, ds.values)
    np.testing.assert_array_equal(back.labels, ds.labels)


def load_csv_text(text):
    old = sys.stdin
    sys.stdin = io.StringIO(text)
    try:
        return load_csv("-")
    finally:
        sys.stdin = old


# synthetic data

def test_synthetic_is_seeded():
    spec = SyntheticSpec(n_per_class=20, n_features=6, seed=11)
    a, b = gen_synthetic(spec), gen_synthetic(spec)
    assert a.values.tobytes() == b.values.tobytes()
    assert gen_synthetic(SyntheticSpec(n_per_class=20, n_features=6, seed=12)).values.tobytes() != a.values.tobytes()


def test_synthetic_class_means():
    ds = gen_synthetic(SyntheticSpec(n_per_class=4000, n_features=3, informative=(1,), shift=2.0, seed=1))
    for k in range(3):
        rows = ds.values[ds.labels == k]
        assert rows[:, 1].mean() == pytest.approx(2.0 * k, abs=0.1)
        assert rows[:, 0].mean() == pytest.approx(0.0, abs=0.1)


def test_synthetic_noise_inflates_variance():
    ds = gen_synthetic(SyntheticSpec(n_per_class=4000, n_features=2, informative=(0,), noise_sigma=1.0, seed=1))
    assert ds.values[:, 1].var() == pytest.approx(2.0, rel=0.05)


def test_zero_shift_scores_are_indistinguishable():
    ds = gen_synthetic(SyntheticSpec(n_per_class=100, n_features=10, shift=0.0, seed=5))
    scores = np.array(twd(ds, SelectionConfig(m=1)).scores)
    # with no signal the informative slots are not systematically on top
    assert scores.max() < 3 * np.median(scores)
    assert scores[[0, 1]].mean() < scores.max()


def test_spec_from_json_requires_seed():
    with pytest.raises(ValueError):
        SyntheticSpec.from_json('{"n_features": 4}')
    assert SyntheticSpec.from_json('{"seed": 3, "informative": [2]}').informative == (2,)


# evaluation

def test_train_equals_test_is_perfect():
    ds = gen_synthetic(SyntheticSpec(n_per_class=30, n_features=4, seed=2))
    assert evaluate_subset(ds, ds, [0, 2, 3]) == 1.0


def test_shuffled_labels_near_chance():
    ds = gen_synthetic(SyntheticSpec(n_per_class=400, n_features=3, seed=8))
    rng = np.random.default_rng(8)
    shuffled = LabeledDataset(ds.values, rng.permutation(ds.labels), ds.class_names)
    train, test = train_test_split(shuffled, 0.5, seed=8)
    assert evaluate_subset(train, test, [0, 1]) == pytest.approx(1 / 3, abs=0.1)


def test_separated_single_feature():
    values = np.array([[0.0], [0.1], [5.0], [5.2]])
    ds = LabeledDataset(values, np.array([0, 0, 1, 1]), ("a", "b"))
    test = LabeledDataset(np.array([[0.05], [4.9]]), np.array([0, 1]), ("a", "b"))
    assert evaluate_subset(ds, test, [0]) == 1.0


def test_nn_ties_go_to_lowest_training_row():
    train = LabeledDataset(np.array([[0.0], [2.0]]), np.array([1, 0]), ("a", "b"))
    test = LabeledDataset(np.array([[1.0], [1.0]]), np.array([1, 0]), ("a", "b"))
    assert evaluate_subset(train, test, [0]) == 0.5


def test_empty_subset_rejected():
    ds = gen_synthetic(SyntheticSpec(n_per_class=5, n_features=2, seed=0))
    with pytest.raises(DatasetError):
        evaluate_subset(ds, ds, [])


def test_split_is_stratified_and_seeded():
    ds = gen_synthetic(SyntheticSpec(n_per_class=10, n_features=2, seed=0))
    tr, te = train_test_split(ds, 0.3, seed=1)
    assert tr.n_samples + te.n_samples == 30
    assert np.bincount(te.labels).tolist() == [3, 3, 3]
    tr2, te2 = train_test_split(ds, 0.3, seed=1)
    assert te.values.tobytes() == te2.values.tobytes()


def test_rsd_values():
    assert rsd([0.8, 1.0]) == pytest.approx(0.15713, abs=1e-4)
    assert rsd([0.9, 0.9, 0.9]) == 0.0
    with pytest.raises(ValueError):
        rsd([0.9])
    with pytest.raises(ValueError):
        rsd([0.0, 0.0])


# command line

@pytest.fixture
def synth_csv(tmp_path):
    p = tmp_path / "s.csv"
    assert cli.main(["synth", "--n-per-class", "20", "--features", "6", "--seed", "3", "--out", str(p)]) == 0
    return p


def _report(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out


def test_select_twd_report(synth_csv, capsys):
    code, out = _report(capsys, ["select", "--input", str(synth_csv), "--label-col", "label", "-m", "2"])
    assert code == 0
    rep = json.loads(out.out)
    assert sorted(rep["selected"]) == [0, 1]
    assert rep["selected_names"] == [f"f{i}" for i in rep["selected"]]
    assert rep["config"]["estimator"]["kind"] == "exact-1d-w1"
    assert len(rep["scores"]) == 6
    assert "twd: selected" in out.err


def test_report_is_reproducible(synth_csv, capsys):
    argv = ["select", "--input", str(synth_csv), "--method", "fawd", "-m", "2",
            "--test-frac", "0.25", "--split-seed", "0"]
    reps = []
    for _ in range(2):
        code, out = _report(capsys, argv)
        assert code == 0
        rep = json.loads(out.out)
        rep.pop("wall_time_s")
        reps.append(json.dumps(rep, sort_keys=True))
    assert reps[0] == reps[1]
    assert json.loads(reps[0])["evaluation"]["accuracy"] > 0.8


def test_flag_mapping(synth_csv, capsys):
    code, out = _report(capsys, [
        "select", "--input", str(synth_csv), "--method", "fawd", "--estimator", "sinkhorn",
        "--epsilon", "0.05", "--group-size", "2", "-m", "3",
    ])
    assert code == 0
    rep = json.loads(out.out)
    assert rep["config"]["group_size"] == 2
    assert rep["config"]["estimator"]["kind"] == "sinkhorn-w1"
    assert rep["config"]["estimator"]["sinkhorn"]["epsilon"] == 0.05
    assert len(rep["selected"]) == 3 and len(rep["trace"]) == 2


def test_mmd_estimator(synth_csv, capsys):
    code, out = _report(capsys, ["select", "--input", str(synth_csv), "--estimator", "mmd", "-m", "2"])
    assert code == 0
    assert json.loads(out.out)["config"]["estimator"]["kind"] == "mmd-gaussian"


def test_out_file(synth_csv, tmp_path, capsys):
    dest = tmp_path / "r.json"
    assert cli.main(["select", "--input", str(synth_csv), "-m", "1", "--out", str(dest)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(dest.read_text())["method"] == "twd"


def test_no_standardize_keeps_shape(synth_csv, capsys):
    _, a = _report(capsys, ["select", "--input", str(synth_csv), "-m", "3"])
    _, b = _report(capsys, ["select", "--input", str(synth_csv), "-m", "3", "--no-standardize"])
    ra, rb = json.loads(a.out), json.loads(b.out)
    assert set(ra) == set(rb) and len(ra["selected"]) == len(rb["selected"])
    assert rb["config"]["standardize"] is False


@pytest.mark.parametrize("argv", [
    ["select", "-m", "2", "--method", "lasso"],
    ["select", "--test-frac", "0.2", "-m", "2"],
    ["select", "-m", "0"],
    ["synth"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_runtime_errors_exit_1(tmp_path, synth_csv, capsys):
    assert cli.main(["select", "--input", str(tmp_path / "missing.csv"), "-m", "1"]) == 1
    assert "error:" in capsys.readouterr().err
    assert cli.main(["select", "--input", str(synth_csv), "-m", "50"]) == 1
    assert cli.main(["select", "--input", str(synth_csv), "--label-col", "nope", "-m", "1"]) == 1


def test_synth_pipeline_subprocess(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"n_per_class": 15, "n_features": 6, "seed": 2}))
    synth = subprocess.run(
        [sys.executable, "-m", "wassfs", "synth", "--spec", str(spec)],
        capture_output=True, text=True, check=True,
    )
    sel = subprocess.run(
        [sys.executable, "-m", "wassfs", "select", "--method", "bewd", "-m", "5", "--no-standardize"],
        input=synth.stdout, capture_output=True, text=True,
    )
    assert sel.returncode == 0, sel.stderr
    rep = json.loads(sel.stdout)
    assert rep["method"] == "bewd" and len(rep["selected"]) == 5
    assert rep["dataset"]["n_samples"] == 45

import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from singquad.cli import dump_datafile, main
from singquad.core import SampleSet, make_grid
from singquad.corrections import corrected_composite
from singquad.oracle import paper_test_function
from singquad.rules import rule_weights


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, doc, name="data.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


INDICATOR = {
    "grid": {"a": 0, "c": 1, "m": 10},
    "values": [0, 0, 0] + [5] * 8,
    "singularities": [{"x": 0.3, "jumps": [5, 0]}],
}


def test_integrate_indicator(tmp_path, monkeypatch):
    path = write(tmp_path, INDICATOR)
    # x* = 0.3 sits on node 3 up to one ulp, so the default tolerance rejects it
    code, _, err = run("integrate", path)
    assert code == 4 and "node 3" in err
    monkeypatch.setenv("SINGQUAD_SEED_TOL", "0")
    code, out, _ = run("integrate", path)
    assert code == 0
    vals = dict(line.split() for line in out.splitlines())
    assert float(vals["corrected"]) == pytest.approx(3.5, abs=1e-14)
    assert float(vals["classical"]) == 3.75


def test_integrate_no_correction_csv(tmp_path):
    code, out, _ = run("integrate", write(tmp_path, INDICATOR), "--no-correction", "--format", "csv")
    assert code == 0 and out == "classical\n3.75\n"


def test_integrate_exit_codes(tmp_path, monkeypatch):
    monkeypatch.setenv("SINGQUAD_SEED_TOL", "0")
    short = dict(INDICATOR, singularities=[{"x": 0.3, "jumps": [5]}])
    assert run("integrate", write(tmp_path, short))[0] == 5
    assert run("integrate", write(tmp_path, INDICATOR), "--degree", "3")[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code, _, err = run("integrate", str(bad))
    assert code == 2 and "invalid JSON" in err
    assert run("integrate", write(tmp_path, {"values": []}))[0] == 2
    assert run("integrate", write(tmp_path, dict(INDICATOR, values=[1, 2])))[0] == 2
    assert run("integrate", str(tmp_path / "missing.json"))[0] == 2
    assert run("integrate")[0] == 2


def test_bad_tolerance_env(tmp_path, monkeypatch):
    monkeypatch.setenv("SINGQUAD_SEED_TOL", "abc")
    code, _, err = run("integrate", write(tmp_path, INDICATOR))
    assert code == 2 and "SINGQUAD_SEED_TOL" in err


def test_correct():
    assert run("correct", "0.5", "--a", "0", "--c", "1", "--m", "1", "--singularity", "0.4:1,0") == (0, "0.6\n", "")
    assert run("correct", "0.5", "--a", "0", "--c", "1", "--m", "1")[1] == "0.5\n"
    assert run("correct", "0.5", "--a", "0", "--h", "0.5", "--m", "2", "--singularity", "0.5:1,0")[0] == 4
    assert run("correct", "0.5", "--a", "0", "--m", "2")[0] == 2


def test_refine_simple_csv(tmp_path):
    out_path = tmp_path / "r.csv"
    code, out, _ = run("refine", "--mode", "simple", "--degree", "1", "--out", str(out_path))
    assert code == 0 and out == ""
    lines = out_path.read_text().splitlines()
    assert lines[0] == "level,n,h,error_classical,order_classical,error_corrected,order_corrected"
    assert float(lines[1].split(",")[5]) == pytest.approx(8.73231e-02, rel=5e-6)


def test_refine_single_level_has_empty_orders():
    code, out, _ = run("refine", "--levels", "1")
    row = out.splitlines()[1].split(",")
    assert code == 0 and row[4] == "" and row[6] == ""


def test_refine_composite_fixed_singularity():
    code, out, _ = run("refine", "--mode", "composite", "--degree", "3", "--fixed-xstar", "0.4")
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert code == 0
    assert float(rows[0][5]) == pytest.approx(1.74854e-05, rel=5e-6)
    assert float(rows[6][6]) == pytest.approx(4.0, abs=0.05)


def test_refine_plain_and_plot_data(tmp_path):
    code, out, _ = run("refine", "--levels", "3", "--format", "plain", "--plot-data", str(tmp_path / "p"))
    assert code == 0 and out.splitlines()[0].split()[0] == "level"
    assert (tmp_path / "p_corrected.dat").exists()
    assert run("refine", "--fixed-xstar", "0.4")[0] == 2


def test_constants():
    code, out, _ = run("constants", "--degree", "1", "--s", "1")
    assert code == 0 and out.splitlines()[0] == "C1 -0.16666666666666666 -1/6"
    code, out, _ = run("constants", "--degree", "2", "--s", "2")
    assert out.splitlines()[0] == "C1 0.0 0"
    assert run("constants", "--degree", "2", "--s", "3")[0] == 2
    assert run("constants", "--degree", "2", "--s", "x")[0] == 2


def test_errata():
    code, out, _ = run("errata")
    assert code == 0 and out.count("MISMATCH") == 2


@given(
    n=st.sampled_from([1, 2, 3, 4]),
    panels=st.integers(1, 6),
    b=st.floats(0.01, 0.99),
)
@settings(max_examples=25, deadline=None)
def test_integrate_round_trip_is_bitwise(tmp_path_factory, n, panels, b):
    g = make_grid(0, 1, n * panels)
    pf = paper_test_function(0, b, 1)
    samples = SampleSet(g, pf.sample(g.nodes()))
    spec = pf.singularity(n)
    try:
        expect = corrected_composite(rule_weights(n), samples, [spec])
    except ValueError:
        return
    path = tmp_path_factory.mktemp("rt") / "d.json"
    dump_datafile(path, samples, [spec])
    code, out, _ = run("integrate", str(path), "--degree", str(n))
    assert code == 0
    assert float(dict(line.split() for line in out.splitlines())["corrected"]) == expect


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "singquad.cli", "constants", "--degree", "2", "--s", "5"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2 and "--s must lie in" in proc.stderr

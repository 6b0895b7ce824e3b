import io
import json
import subprocess
import sys

import pytest

from implicit_series.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), out, err)
    return status, out.getvalue(), err.getvalue()


def coefficient_values(text):
    return [line.split(" : ")[1] for line in text.splitlines()]


def test_catalan():
    status, out, err = call("solve", "--G", "w + z^2", "--order", "5")
    assert status == 0 and err == ""
    assert coefficient_values(out) == ["1/1", "1/1", "2/1", "5/1", "14/1"]
    assert out.splitlines()[0] == "w^[1] z^0 : 1/1"


def test_invert_trees():
    status, out, _ = call("invert", "--f", "z*exp(-z)", "--order", "5")
    assert status == 0
    assert coefficient_values(out) == ["1/1", "1/1", "3/2", "8/3", "125/24"]


def test_invert_compose():
    status, out, _ = call("invert", "--f", "z - z^2", "--H", "z^2", "--order", "4")
    assert status == 0
    assert coefficient_values(out) == ["1/1", "2/1", "5/1"]


def test_condition_error():
    status, out, err = call("solve", "--G", "2*z + w", "--variant", "finite")
    assert status == 1 and out == ""
    assert err.startswith("E_CONDITION: ") and "normalize" in err
    assert err.count("\n") == 1


def test_parse_error_is_usage():
    status, _, err = call("solve", "--G", "z^(-1)")
    assert status == 2 and err.startswith("E_PARSE: 1:3:")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["solve"],
        ["solve", "--G", "w", "--F", "z - w", "--gamma", "1"],
        ["solve", "--F", "z - w"],
        ["solve", "--G", "w", "--variant", "newton"],
        ["solve", "--G", "w", "--order", "-1"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv):
    status, _, err = call(*argv)
    assert status == 2
    assert err.startswith("E_USAGE: ") and err.count("\n") == 1


def test_gamma_route():
    status, out, _ = call("solve", "--F", "z - w - z^2", "--gamma", "1", "--order", "5")
    assert status == 0 and coefficient_values(out) == ["1/1", "1/1", "2/1", "5/1", "14/1"]


@pytest.mark.parametrize("variant", ["finite", "integer", "recurrence"])
def test_variants_print_identical_text(variant):
    reference = call("solve", "--G", "w + z^2 - 2*z^3*w", "--order", "6")[1]
    assert call("solve", "--G", "w + z^2 - 2*z^3*w", "--order", "6", "--variant", variant)[1] == reference


def test_contraction():
    status, out, _ = call("solve", "--G", "z/2 + w + z^2", "--variant", "contraction", "--order", "3")
    assert status == 0 and coefficient_values(out) == ["2/1", "8/1", "64/1"]


def test_contraction_divergent():
    status, _, err = call("solve", "--G", "z + w", "--variant", "contraction")
    assert status == 1 and err.startswith("E_CONDITION")


def test_H_output():
    status, out, _ = call("solve", "--G", "w + z^2", "--H", "1/(1 - z)", "--order", "3")
    assert status == 0
    assert out.splitlines()[0] == "w^[0] z^0 : 1/1"


def test_multivariable_csv():
    status, out, _ = call("solve", "--G", "u + v*z^2", "--vars", "u,v", "--order", "3", "--format", "csv")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "z,u,v,num,den"
    assert "0,1,0,1,1" in lines and "0,2,1,1,1" in lines


def test_records_format():
    status, out, _ = call("solve", "--G", "w + z^2", "--order", "2", "--format", "records")
    records = [json.loads(line) for line in out.splitlines()]
    assert records[0] == {"vars": ["w"], "zOrder": 0, "wOrder": 2}
    assert records[2] == {"z": 0, "w": [2], "num": "1", "den": "1"}


def test_deterministic_output():
    args = ("solve", "--G", "u + v*z^2 + z^3*u", "--vars", "u,v", "--order", "5")
    assert call(*args)[1] == call(*args)[1]


def test_universal_table():
    status, out, _ = call("universal", "--ell", "1", "--vertices", "3", "--check")
    assert status == 0
    assert out.splitlines() == ["1; [1]; 1", "1; [1,1]; 1", "1; [1,2]; 1", "1; [2,0,1]; 1"]


def test_universal_cap():
    status, _, err = call("universal", "--vertices", "9", "--check")
    assert status == 1 and err.startswith("E_RESOURCE")
    # the table alone has no cap
    assert call("universal", "--vertices", "9")[0] == 0


def test_analytic_rows():
    status, out, _ = call("analytic", "--G", "w + z*(1 - exp(-z))", "--zorder", "30", "--at", "0.1", "0.2")
    assert status == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 2
    for row in rows:
        assert row["margin"] > 0
        assert abs(row["phi"][0] - row["contour"][0]) < 1e-10


def test_analytic_failure():
    status, _, err = call("analytic", "--G", "2*z + w", "--at", "0.1")
    assert status == 1 and err.startswith("E_CONDITION")


def test_reproduce():
    status, out, _ = call("reproduce", "--order", "8", "--length", "10")
    assert status == 0
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "implicit_series", "solve", "--G", "w", "--order", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "w^[1] z^0 : 1/1\n"

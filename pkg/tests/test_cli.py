"""CLI surface: exit codes, CSV schema, reproducibility."""

import math

import pytest

from sirnet.cli import main
from sirnet.model import (
    Aloha,
    Fading,
    FadingCase,
    NetworkModel,
    PowerLaw,
    SingleInterferer,
    format_model,
)


def run(tmp_path, *argv):
    out = tmp_path / "out.csv"
    code = main([*argv, "--out", str(out)])
    return code, out.read_text() if out.exists() else ""


def data_rows(text):
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    header = lines[0].split(",")
    return header, [dict(zip(header, ln.split(","))) for ln in lines[1:]]


def test_contention_known_values(tmp_path):
    code, text = run(tmp_path, "contention", "--class", "ppp2", "--alpha", "4", "--theta", "1")
    assert code == 0
    assert text.startswith("# sirnet csv v1\n")
    header, rows = data_rows(text)
    assert header == ["class", "case", "alpha", "delta", "theta", "xi",
                      "gamma", "sigma", "method", "note"]
    assert float(rows[0]["gamma"]) == pytest.approx(math.pi ** 2 / 2, rel=1e-9)

    code, text = run(tmp_path, "contention", "--class", "exp2", "--delta", "1",
                     "--theta", "1")
    _, rows = data_rows(text)
    assert float(rows[0]["gamma"]) == pytest.approx(math.pi ** 3 / 6, rel=1e-9)

    code, text = run(tmp_path, "contention", "--class", "single", "--xi", "1",
                     "--case", "1/0")
    _, rows = data_rows(text)
    assert float(rows[0]["gamma"]) == pytest.approx(1 - math.exp(-1.0), rel=1e-9)


def test_contention_theta_db_grid(tmp_path):
    code, text = run(tmp_path, "contention", "--class", "ppp2", "--alpha", "4",
                     "--theta-db", "0:10:20")
    assert code == 0
    _, rows = data_rows(text)
    assert [float(r["theta"]) for r in rows] == pytest.approx([1.0, 10.0, 100.0])
    # gamma scales as theta^(1/2) at alpha = 4
    assert float(rows[2]["gamma"]) / float(rows[0]["gamma"]) == pytest.approx(10.0, rel=1e-9)


def test_contention_table_has_conjectured_note(tmp_path):
    code, text = run(tmp_path, "contention", "--table3", "--theta", "1")
    assert code == 0
    _, rows = data_rows(text)
    d3 = [r for r in rows if r["class"] == "ppp3"]
    assert d3 and all(r["note"] == "conjectured" for r in d3)


def test_outage_schema_and_validate(tmp_path):
    code, text = run(tmp_path, "outage", "--class", "line1", "--alpha", "2",
                     "--theta", "1", "--p", "0.2", "--validate",
                     "--trials", "20000", "--seed", "7")
    assert code == 0
    assert "# seed = 7, trials = 20000" in text.splitlines()[0]
    header, rows = data_rows(text)
    assert header == ["class", "case", "alpha", "theta", "p", "m", "value",
                      "lower", "upper", "method", "mc_estimate", "mc_stderr", "z"]
    row = rows[0]
    assert row["method"] == "closed-form"
    assert abs(float(row["z"])) < 4.0
    assert float(row["lower"]) <= float(row["value"]) <= float(row["upper"])


def test_outage_tdma_bounds_only(tmp_path):
    code, text = run(tmp_path, "outage", "--class", "line1", "--alpha", "3",
                     "--theta", "1", "--m", "2")
    assert code == 0
    _, rows = data_rows(text)
    assert rows[0]["method"] == "bounds"
    assert rows[0]["value"] == ""
    assert float(rows[0]["lower"]) < float(rows[0]["upper"])


def test_outage_config_file(tmp_path):
    model = NetworkModel(SingleInterferer(1.2), PowerLaw(4.0),
                         FadingCase(Fading.rayleigh(), Fading.rayleigh()))
    cfgfile = tmp_path / "model.cfg"
    cfgfile.write_text(format_model(model, Aloha(0.5)))
    code, text = run(tmp_path, "outage", "--config", str(cfgfile),
                     "--theta", "1", "--p", "0.5")
    assert code == 0
    _, rows = data_rows(text)
    xi = 1.2 ** 4
    assert float(rows[0]["value"]) == pytest.approx(1 - 0.5 / (1 + xi), rel=1e-9)


def test_throughput_rate_example(tmp_path):
    code, text = run(tmp_path, "throughput", "--rate", "--alpha", "4", "--d", "2")
    assert code == 0
    _, rows = data_rows(text)
    assert float(rows[0]["theta_opt"]) == pytest.approx(3.9215536, rel=1e-5)


def test_throughput_gamma_sweep(tmp_path):
    code, text = run(tmp_path, "throughput", "--gamma", "0.5,2", "--duplex", "full")
    assert code == 0
    _, rows = data_rows(text)
    assert float(rows[0]["p_opt"]) == 1.0
    assert float(rows[1]["p_opt"]) == 0.5


def test_capacity_commands(tmp_path):
    code, text = run(tmp_path, "capacity", "--alpha", "4", "--p", "0.1")
    assert code == 0
    _, rows = data_rows(text)
    assert rows[0]["method"] == "closed-form"
    assert float(rows[0]["lower"]) < float(rows[0]["capacity"])

    code, text = run(tmp_path, "capacity", "--tdma", "--alpha", "2", "--m", "1:3")
    assert code == 0
    _, rows = data_rows(text)
    assert len(rows) == 3
    caps = [float(r["capacity"]) for r in rows]
    assert caps == sorted(caps)


def test_samples_header(tmp_path):
    model = NetworkModel(SingleInterferer(1.0), PowerLaw(4.0),
                         FadingCase(Fading.rayleigh(), Fading.rayleigh()))
    cfgfile = tmp_path / "model.cfg"
    cfgfile.write_text(format_model(model, None))
    code, text = run(tmp_path, "samples", "--config", str(cfgfile),
                     "--trials", "50", "--seed", "3")
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("# config-hash = ")
    assert len(lines[0].split(" = ")[1]) == 64
    assert "sir" in lines
    values = [float(v) for v in lines[lines.index("sir") + 1:]]
    assert len(values) == 50
    assert all(v > 0 for v in values)


def test_validate_quick_reproducible(tmp_path):
    args = ["validate", "--quick", "--seed", "7", "--class", "single"]
    _, first = run(tmp_path, *args)
    code, second = run(tmp_path, *args)
    assert code == 0
    assert first == second
    assert first.rstrip().endswith("# result = pass")


def test_exit_code_usage_error(tmp_path, capsys):
    assert main(["contention", "--class", "line1", "--alpha", "3", "--theta", "5",
                 "--out", str(tmp_path / "x.csv")]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["samples", "--config", str(tmp_path / "missing.cfg"),
                 "--out", str(tmp_path / "y.csv")]) == 2


def test_exit_code_bad_argument():
    with pytest.raises(SystemExit) as exc:
        main(["contention", "--class", "hexgrid"])
    assert exc.value.code == 2

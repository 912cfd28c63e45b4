import io
import json

import pandas as pd
import pytest
from scipy.stats import spearmanr

from src.arithmetic.modulus import ResiduePair
from src.cli.density import main as density_main
from src.cli.empirical import main as empirical_main
from src.cli.output import render
from src.cli.table import build_table, first_prime_powers, main as table_main
from src.cli.top_races import nonsquare_representatives, scan_moduli, scan_top_races, main as top_main
from src.cli.zeros import main as zeros_main
from src.pipeline import RacePipeline
from src.variance.bias import delta_discriminant


def test_density_symmetric_race(capsys):
    """Test the density command on two squares modulo 9"""
    assert density_main(["--q", "9", "--a", "4", "--b", "1"]) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert frame.loc[0, "value"] == 0.5
    assert frame.loc[0, "method"] == "symmetric"
    assert frame.loc[0, "delta"] == 0.5


def test_density_json_output(tmp_path):
    """Test JSON output to a file"""
    output = tmp_path / "out" / "density.json"
    code = density_main(["--q", "9", "--a", "4", "--b", "1", "--output-format", "json", "--output-file", str(output)])
    assert code == 0
    rows = json.loads(output.read_text(encoding="utf-8"))
    assert rows[0]["value"] == 0.5
    assert rows[0]["order"] is None


def test_density_errors():
    """Test exit codes for bad input"""
    # same residue class
    assert density_main(["--q", "5", "--a", "2", "--b", "7"]) == 1
    # missing residues
    with pytest.raises(SystemExit) as info:
        density_main(["--q", "5", "--a", "2"])
    assert info.value.code == 2


def test_render_formats():
    """Test the CSV delta column and lossless JSON"""
    records = [{"q": 3, "a": 2, "b": 1, "value": 0.99906250001, "lower": 0.9990624, "upper": 0.9990626}]
    csv_text = render(records, "csv")
    assert csv_text.splitlines()[0] == "q,a,b,delta,value,lower,upper"
    assert "0.999063" in csv_text.splitlines()[1]

    rows = json.loads(render(records, "json"))
    assert rows[0]["value"] == 0.99906250001
    with pytest.raises(ValueError):
        render(records, "xml")


def test_scan_helpers():
    """Test the modulus list and nonsquare representatives"""
    moduli = scan_moduli(30)
    assert 6 not in moduli and 10 not in moduli
    assert moduli[:4] == [3, 4, 5, 7]
    assert 1320 in moduli
    assert nonsquare_representatives(5) == [(2, 3)]
    assert all(a <= a_inv for a, a_inv in nonsquare_representatives(24))


def test_scan_top_races():
    """Test the ranked scan on the smallest moduli"""
    rows = scan_top_races([3, 4], threshold=0.99, config={"zero_height": 100.0})
    assert [(r["q"], r["a"]) for r in rows] == [(3, 2), (4, 3)]
    assert rows[0]["value"] > rows[1]["value"]

    assert scan_top_races([3, 4], threshold=0.9999, config={"zero_height": 100.0}) == []
    # published ceilings skip these moduli without computing
    assert scan_top_races([997, 1009], threshold=0.9) == []


def test_long_scans_need_opt_in():
    """Test that long scans are refused without --allow-long"""
    with pytest.raises(SystemExit) as info:
        top_main(["--q-max", "1000"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        table_main(["--table", "9"])


def test_tables():
    """Test table helpers"""
    assert first_prime_powers(101, 7) == [7, 29, 433, 512]
    with pytest.raises(ValueError):
        build_table(10)


@pytest.mark.slow
def test_residue_class_table_order(tmp_path):
    """Test that the q = 163 table opens with -1 and the small primes"""
    pipeline = RacePipeline(zeros_dir=str(tmp_path), zero_height=100.0)
    frame = build_table(3, pipeline, method="erf")
    assert frame["value"].is_monotonic_increasing

    # Each row stands for the inverse pair {a, a^-1}
    leading = [{a, a_inv} for a, a_inv in zip(frame["a"][:10], frame["a_inv"][:10])]
    for expected, classes in zip([162, 3, 2, 5, 7, 11, 13, 17, 19, 23], leading):
        assert expected in classes


@pytest.mark.slow
def test_bias_functional_orders_table_6(tmp_path):
    """Test that a larger Delta(420;a,1) means a smaller density"""
    pipeline = RacePipeline(zeros_dir=str(tmp_path), zero_height=100.0)
    frame = build_table(6, pipeline, method="series")
    assert len(frame) == 52

    bias = [delta_discriminant(420, ResiduePair.of(420, int(a), 1)).total for a in frame["a"]]
    correlation, _ = spearmanr(bias, frame["value"])
    assert correlation < -0.9


def test_empirical_command(tmp_path):
    """Test the empirical log-density command"""
    output = tmp_path / "race.json"
    code = empirical_main([
        "logdensity", "--q", "4", "--a", "3", "--b", "1", "--X", "1e5", "--npoints", "500",
        "--output-format", "json", "--output-file", str(output)
    ])
    assert code == 0
    rows = json.loads(output.read_text(encoding="utf-8"))
    assert rows[0]["value"] >= 0.9
    assert rows[0]["value"] + rows[0]["ties"] + rows[0]["losses"] == pytest.approx(1.0)

    with pytest.raises(SystemExit):
        empirical_main(["logdensity", "--q", "4"])


def test_zeros_command(tmp_path, capsys):
    """Test finding and saving zeros from the command line"""
    directory = tmp_path / "zeros"
    assert zeros_main(["find", "--q", "4", "--height", "100", "--zeros-dir", str(directory)]) == 0
    assert (directory / "q4.chi3.txt").exists()

    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert frame.loc[0, "first"] == pytest.approx(6.020948904697597, abs=1e-6)

    assert zeros_main(["find", "--q", "4", "--chi", "1", "--height", "100", "--zeros-dir", str(directory)]) == 1

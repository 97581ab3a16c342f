import csv
import json

import numpy as np
import pytest

from symdiv import (
    distortion,
    l1_box_diversity,
    phi_row,
    random_points,
    split_values,
    symmetric_diversity,
)
from symdiv.cli import main, sweep_rows
from symdiv.io import (
    FormatError,
    diversity_from_json,
    diversity_to_json,
    points_from_json,
    points_to_json,
    read_coords_csv,
    read_json,
    write_json,
)
from symdiv.points import l1_values


def _write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def profile_file(tmp_path, f, name="profile.json"):
    return _write(tmp_path / name, {"n": len(f), "f": list(f)})


def diversity_file(tmp_path, div, name="div.json"):
    return _write(tmp_path / name, diversity_to_json(div))


BAD_TRIANGLE = {
    "n": 3,
    "values": [
        {"set": [0, 1], "value": 1},
        {"set": [1, 2], "value": 1},
        {"set": [0, 2], "value": 3},
        {"set": [0, 1, 2], "value": 3},
    ],
}


# file formats ------------------------------------------------------------------


def test_diversity_json_round_trip(tmp_path):
    div = l1_box_diversity(random_points(4, 2, 0))
    path = diversity_file(tmp_path, div)
    assert read_json(path, "diversity") == div


def test_diversity_json_rejects_bad_documents():
    with pytest.raises(FormatError):
        diversity_from_json({"n": 2})
    with pytest.raises(FormatError):
        diversity_from_json({"n": 2, "values": [{"set": [0, 1], "value": 1}] * 2})
    with pytest.raises(FormatError):
        diversity_from_json({"n": 2, "values": [{"set": [0], "value": 0}]})
    with pytest.raises(FormatError):
        diversity_from_json({"n": 2, "values": [{"set": [0, 5], "value": 1}]})


def test_points_json_round_trip():
    p = random_points(3, 2, 0)
    assert np.array_equal(points_from_json(points_to_json(p)).points, p.points)
    with pytest.raises(FormatError):
        points_from_json({"dim": 3, "points": [[0, 1]]})


# check ---------------------------------------------------------------------------


def test_check_exit_codes(tmp_path, capsys):
    good = diversity_file(tmp_path, l1_box_diversity(random_points(4, 2, 1)))
    assert main(["check", "--input", good]) == 0
    assert main(["check", "--input", good, "--exhaustive"]) == 0
    bad = _write(tmp_path / "bad.json", BAD_TRIANGLE)
    assert main(["check", "--input", bad]) == 1
    assert "D2 violated: A=[0] B=[1] C=[2]" in capsys.readouterr().out
    assert main(["check", "--input", bad, "--exhaustive"]) == 1
    trunc = tmp_path / "trunc.json"
    trunc.write_text(json.dumps(BAD_TRIANGLE)[:30])
    assert main(["check", "--input", str(trunc)]) == 2
    assert main(["check", "--input", str(tmp_path / "missing.json")]) == 2


def test_check_d1_failure_is_mathematical(tmp_path):
    doc = {"n": 2, "values": [{"set": [0, 1], "value": -1}]}
    assert main(["check", "--input", _write(tmp_path / "neg.json", doc)]) == 1


# embed -----------------------------------------------------------------------------


def _embed(tmp_path, f, capsys):
    w, c = str(tmp_path / "w.json"), str(tmp_path / "c.csv")
    code = main(["embed", "--input", profile_file(tmp_path, f), "--weights", w, "--coords", c])
    out = dict(line.split(": ", 1) for line in capsys.readouterr().out.strip().splitlines())
    return code, out, w, c


def test_embed_fixture(tmp_path, capsys):
    code, out, w, c = _embed(tmp_path, [0, 1, 1, 2, 2], capsys)
    assert code == 0
    assert float(out["distortion"]) <= 40
    assert out["certified_bound"] == "40"
    weights = read_json(w, "weights")
    rep = distortion(symmetric_diversity([0, 1, 1, 2, 2]), weights)
    assert rep.distortion == pytest.approx(float(out["distortion"]), rel=1e-9)
    coords = read_coords_csv(c)
    np.testing.assert_allclose(l1_values(coords), split_values(weights), rtol=1e-9)
    with open(c) as fh:
        assert next(csv.reader(fh))[:2] == ["point", "coord_0"]


def test_embed_phi_row_is_exact(tmp_path, capsys):
    code, out, _, _ = _embed(tmp_path, phi_row(6, 2), capsys)
    assert code == 0
    assert abs(float(out["distortion"]) - 1) <= 1e-6


def test_embed_two_points(tmp_path, capsys):
    code, out, _, _ = _embed(tmp_path, [0, 2.5], capsys)
    assert code == 0 and out["splits"] == "1" and float(out["distortion"]) == 1


def test_embed_invalid_profile(tmp_path, capsys):
    code, _, _, _ = _embed(tmp_path, [0, 1, 3], capsys)
    assert code == 1
    bad = _write(tmp_path / "short.json", {"n": 3, "f": [0, 1]})
    assert main(["embed", "--input", bad, "--weights", "w", "--coords", "c"]) == 2


# optimal ---------------------------------------------------------------------------


def test_optimal(tmp_path, capsys):
    div = l1_box_diversity(random_points(5, 2, 4))
    wit = str(tmp_path / "wit.json")
    assert main(["optimal", "--input", diversity_file(tmp_path, div), "--witness", wit]) == 0
    out = capsys.readouterr().out
    assert abs(float(out.split("optimal_distortion: ")[1].split()[0]) - 1) <= 1e-6
    assert read_json(wit, "weights").n == 5
    big = symmetric_diversity([0] + [1] * 8)
    assert main(["optimal", "--input", diversity_file(tmp_path, big, "big.json"), "--witness", wit]) == 2


# tables ----------------------------------------------------------------------------


def test_tables(tmp_path):
    out = tmp_path / "phi.csv"
    assert main(["tables", "--n", "20", "--out", str(out)]) == 0
    with open(out) as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == ["n", "ell", "k", "phi", "psi_cap"]
    hit = [r for r in rows if r["ell"] == "10" and r["k"] == "19"]
    assert float(hit[0]["phi"]) == pytest.approx(1.9, abs=1e-12)
    assert all(float(r["phi"]) == 1 for r in rows if r["k"] == "1")
    assert all(float(r["phi"]) == 0 for r in rows if r["k"] == "0")
    assert len(rows) == 19 * 20
    with open(tmp_path / "phi_psi.csv") as fh:
        psi_rows = list(csv.DictReader(fh))
    assert len(psi_rows) == 19 * 20
    assert all(int(r["psi"]) == min(int(r["i"]), int(r["k"])) for r in psi_rows)
    assert main(["tables", "--n", "1", "--out", str(out)]) == 2
    assert main(["tables", "--n", "65", "--out", str(out)]) == 2


# sweep -----------------------------------------------------------------------------


def _sweep(tmp_path, *args, name="s.csv"):
    out = tmp_path / name
    assert main(["sweep", *args, "--out", str(out)]) == 0
    with open(out) as fh:
        return list(csv.DictReader(fh)), out.read_bytes()


def test_sweep_truncation_with_lp(tmp_path):
    rows, _ = _sweep(tmp_path, "--nmax", "8", "--family", "truncation", "--lp")
    assert rows
    for r in rows:
        assert float(r["measured"]) <= 40
        assert float(r["lp"]) <= float(r["measured"]) + 1e-9


def test_sweep_is_byte_deterministic(tmp_path):
    _, a = _sweep(tmp_path, "--nmax", "9", "--family", "random-subadditive", "--seed", "5", name="a.csv")
    _, b = _sweep(tmp_path, "--nmax", "9", "--family", "random-subadditive", "--seed", "5", name="b.csv")
    _, c = _sweep(tmp_path, "--nmax", "9", "--family", "random-subadditive", "--seed", "6", name="c.csv")
    assert a == b and a != c


def test_sweep_phi_rows_exact(tmp_path):
    rows, _ = _sweep(tmp_path, "--nmax", "10", "--family", "phi-rows")
    assert all(abs(float(r["measured"]) - 1) <= 1e-6 for r in rows)


@pytest.mark.parametrize("family", ["diameter", "l1", "tsp", "steiner"])
def test_sweep_point_families(tmp_path, family):
    rows, _ = _sweep(tmp_path, "--nmax", "5", "--family", family, "--count", "2", "--lp")
    for r in rows:
        assert float(r["measured"]) <= float(r["certified"])
        assert float(r["lp"]) <= float(r["measured"]) + 1e-9
        assert float(r["certified"]) == pytest.approx(40 * float(r["skewness"]))


def test_sweep_caps(tmp_path):
    out = str(tmp_path / "x.csv")
    assert main(["sweep", "--nmax", "13", "--family", "truncation", "--lp", "--out", out]) == 2
    assert main(["sweep", "--nmax", "31", "--family", "truncation", "--out", out]) == 2
    assert main(["sweep", "--nmax", "11", "--family", "steiner", "--out", out]) == 2
    with pytest.raises(SystemExit):
        main(["sweep", "--nmax", "5", "--family", "nope", "--out", out])


def test_sweep_rows_generator_rejects_unknown_family():
    from symdiv.cli import UsageError

    with pytest.raises(UsageError):
        list(sweep_rows(5, "nope", 0))


def test_write_json_trailing_newline(tmp_path):
    path = tmp_path / "x.json"
    write_json(path, {"a": 1})
    assert path.read_text().endswith("}\n")

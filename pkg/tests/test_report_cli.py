import json
from fractions import Fraction

import pytest

import _corpus
from toric_ust import cli
from toric_ust.report import analyze, diff_predictions, from_dict, to_dict

SEGRE = {"rank": 3, "generators": [list(g) for g in _corpus.SEGRE_GENERATORS], "name": "segre"}


def write(tmp_path, obj, name="cone.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name,c", _corpus.corpus()[:6] + (("segre", _corpus.segre()),),
                         ids=lambda x: x if isinstance(x, str) else "")
def test_report_round_trip(name, c):
    r = analyze(c.ambient_rank, c.generators, name, r_max=2)
    d = to_dict(r)
    assert from_dict(json.loads(json.dumps(d))) == r
    assert to_dict(from_dict(d)) == d


def test_non_full_input_is_reduced():
    r = analyze(3, [(1, 0, 0), (1, 2, 0)])
    assert r.laurent_rank == 1 and r.rank == 2 and r.input_rank == 3
    assert from_dict(to_dict(r)) == r


def test_rationals_are_exact_in_json():
    d = to_dict(analyze(3, _corpus.SEGRE_GENERATORS))
    assert d["f_signature"]["value"] == {"num": "2", "den": "3"}
    assert from_dict(d).f_signature.value == Fraction(2, 3)


def test_diff_predictions_reports_mismatch():
    r = analyze(3, _corpus.SEGRE_GENERATORS)
    assert diff_predictions({"multipliers.D": 2}, r) == []
    diff = diff_predictions({"multipliers.D": 5, "no.such.key": 1}, r)
    assert [x["key"] for x in diff] == ["multipliers.D", "no.such.key"]
    assert diff[0]["computed"] == 2 and diff[1]["computed"] is None


def test_analyze_outputs(tmp_path, capsys):
    path = write(tmp_path, SEGRE)
    code, out, _ = run(capsys, "analyze", path)
    assert code == 0 and "D = 2" in out and "f-signature: 2/3" in out
    code, out, _ = run(capsys, "analyze", path, "--json")
    assert code == 0 and "\n" not in out.strip()
    assert from_dict(json.loads(out)).multipliers.D == 2
    code, pretty, _ = run(capsys, "analyze", path, "--pretty")
    assert json.loads(pretty) == json.loads(out)


def test_verify_exit_codes(tmp_path, capsys):
    path = write(tmp_path, SEGRE)
    code, out, _ = run(capsys, "verify", path, "--rmax", "3")
    assert code == 0 and "verification: passed" in out
    code, out, _ = run(capsys, "verify", path, "--rmax", "2", "--multiplier", "1")
    assert code == 1 and "FAIL" in out and "[1, 1, -1]" in out
    code, out, _ = run(capsys, "verify", path, "--rmax", "2", "--multiplier", "1", "--json")
    d = json.loads(out)
    r = from_dict(d)
    # the face spanned by (1,0,0) and (0,1,0): z*w = xy, so w is the unit witness for z
    face = tuple(sorted(r.rays.index(v) for v in [(1, 0, 0), (0, 1, 0)]))
    checks = {tuple(x["face"]): x for x in d["verification"]["cross_checks"]}
    assert checks[face]["point"] == [1, 1, -1] and checks[face]["unit_witness"] == [0, 0, 1]


@pytest.mark.parametrize("content,needle", [
    ('{"rank": 2,\n "generators": [[1, 0], [0, 1]\n', "line 3"),
    ({"rank": 2, "generators": [[1, 0], [0, 1, 2]]}, "generator 1"),
    ({"rank": 0, "generators": [[1]]}, "rank"),
    ({"rank": 2, "generators": []}, "generators"),
    ({"rank": 2, "generators": [[1, 0.5]]}, "generator 0"),
    ({"rank": 2, "generators": [[1, 0], [-1, 0]]}, "lineality"),
    ([1, 2], "object"),
])
def test_input_errors(tmp_path, capsys, content, needle):
    code, _, err = run(capsys, "analyze", write(tmp_path, content))
    assert code == 2 and needle in err


def test_missing_file_and_bad_flags(tmp_path, capsys):
    assert run(capsys, "analyze", str(tmp_path / "absent.json"))[0] == 2
    path = write(tmp_path, SEGRE)
    assert run(capsys, "verify", path, "--rmax", "0")[0] == 2
    assert run(capsys, "verify", path, "--multiplier", "0")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "family", "veronese", "--E", "0", "--n", "2")[0] == 2
    assert run(capsys, "family", "veronese", "--E", "2")[0] == 2


def test_family_files_round_trip(tmp_path, capsys):
    out = tmp_path / "sv.json"
    code, _, _ = run(capsys, "family", "segre-veronese", "--E", "2,1", "--m", "2,2",
                     "--out", str(out))
    assert code == 0
    cone = json.loads(out.read_text())
    preds = json.loads((tmp_path / "sv.predictions.json").read_text())
    assert cone["name"] == "segre_veronese((2,1),(2,2))"
    assert preds["params"] == [[2, 1], [2, 2]]
    code, text, _ = run(capsys, "analyze", str(out), "--json")
    assert diff_predictions(preds["predicted"], json.loads(text)) == []
    code, text, _ = run(capsys, "family", "hypersurface", "--E", "3", "--n", "2", "--check")
    assert code == 0 and "prediction diff: empty" in text


def test_random_is_seeded(tmp_path, capsys):
    _, first, _ = run(capsys, "random", "--seed", "9", "--count", "4")
    _, second, _ = run(capsys, "random", "--seed", "9", "--count", "4")
    assert first == second and len(first.splitlines()) == 4
    assert run(capsys, "random", "--seed", "9", "--count", "3", "--out", str(tmp_path / "r"))[0] == 0
    files = sorted(p.name for p in (tmp_path / "r").iterdir())
    assert files == ["random-9-00.json", "random-9-01.json", "random-9-02.json"]
    for f in files:
        assert run(capsys, "analyze", str(tmp_path / "r" / f))[0] == 0

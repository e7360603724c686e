import json
from pathlib import Path


from nsdial.cli import run

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "corpus"
NEGATIVE = FIXTURES / "negative"

CORPUS_GRID = ["--nat-bound", "2", "--len-bound", "2"]


def test_translate_golden(tmp_path, capsys):
    f = tmp_path / "st.fml"
    f.write_text("(st N (var x))")
    assert run(["translate", "--u", str(f)]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "(exists-st ((y N)) (forall-st () (eq N (var y) (var x))))"


def test_check_term_golden(tmp_path, capsys):
    f = tmp_path / "t.term"
    f.write_text("(len (nil N))")
    assert run(["check-term", str(f)]) == 0
    assert capsys.readouterr().out.strip() == "zero"


def test_check_term_type_error(tmp_path, capsys):
    f = tmp_path / "bad.term"
    f.write_text("(app zero zero)")
    assert run(["check-term", str(f)]) == 2


def test_parse_error_exit_code(tmp_path):
    f = tmp_path / "bad.term"
    f.write_text("(((")
    assert run(["check-term", str(f)]) == 2


def test_verify_corrupted_bundle_exits_one(capsys):
    path = NEGATIVE / "overspill_corrupt.u.bundle"
    code = run(["verify", str(path), "--nat-bound", "2", "--len-bound", "2"])
    out = capsys.readouterr().out
    assert code == 1
    assert "counterexample" in out
    assert "(seq N zero)" in out or "zero" in out


def test_extract_emits_bundle(tmp_path, capsys):
    proof = CORPUS / "doubling.u.proof"
    assert run(["extract", "--u", str(proof)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("(bundle u ")


def test_check_proof(capsys):
    proof = CORPUS / "doubling.u.proof"
    assert run(["check-proof", "--u", str(proof)]) == 0
    assert "forall-st" in capsys.readouterr().out


def test_corpus_runs_clean(capsys):
    assert run(["corpus", "run", str(CORPUS)] + CORPUS_GRID) == 0


def _strip_wall(path: Path) -> dict:
    data = json.loads(path.read_text())
    data.pop("wall_time_s")
    return data


def test_corpus_reports_byte_identical(tmp_path, capsys):
    j = tmp_path / "report.json"
    cmd = ["--json", str(j), "corpus", "run", str(CORPUS)] + CORPUS_GRID
    assert run(cmd) == 0
    first = _strip_wall(j)
    first_bytes = json.dumps(first, sort_keys=True)
    assert run(cmd) == 0
    second = _strip_wall(j)
    assert json.dumps(second, sort_keys=True) == first_bytes


def test_translate_golden_files(capsys):
    from nsdial.sexpr import parse_formula, print_translated, read_one
    from nsdial.translate import dst_translate, u_translate

    for path in sorted(CORPUS.glob("*.fml")):
        f = parse_formula(read_one(path.read_text()))
        tr = dst_translate if ".dst." in path.name else u_translate
        got = print_translated(tr(f)) + "\n"
        want = (FIXTURES / "golden" / (path.name + ".golden")).read_text()
        assert got == want, path.name


def test_report_structure(tmp_path, capsys):
    j = tmp_path / "r.json"
    f = tmp_path / "t.term"
    f.write_text("(len (nil N))")
    run(["--json", str(j), "check-term", str(f)])
    data = json.loads(j.read_text())
    assert set(data) == {"command", "grid", "inputs", "outcome", "wall_time_s"}
    assert data["inputs"][0]["sha256"]

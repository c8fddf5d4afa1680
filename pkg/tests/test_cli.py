import json

from click.testing import CliRunner

from maxips.cli import cli
from maxips.constructions import known
from maxips.pointfile import parse_pointfile, serialize_pointset

FIG1_LEFT = "0,0;0,-3;0,3;-4,0;4,0"


def _invoke(tmp_path, *args):
    runner = CliRunner()
    cfg = tmp_path / "config.yaml"
    return runner.invoke(cli, ["--config", str(cfg), *args])


def _points_file(tmp_path, name, P):
    path = tmp_path / f"{name}.txt"
    path.write_text(serialize_pointset(P), encoding="utf-8")
    return str(path)


def test_check_maximal_rectangle(tmp_path):
    path = _points_file(tmp_path, "rect", known("min-4"))
    result = _invoke(tmp_path, "check-maximal", "--points", path)
    assert result.exit_code == 0
    assert result.output.strip() == "maximal"


def test_check_maximal_strong(tmp_path):
    path = _points_file(tmp_path, "rect", known("min-4"))
    result = _invoke(tmp_path, "check-maximal", "--points", path, "--strong")
    assert result.exit_code == 0
    assert result.output.strip() in ("strongly maximal", "not strongly maximal")


def test_check_maximal_not_maximal(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("0 0\n7 0\n0 24\n7 24\n", encoding="utf-8")
    result = _invoke(tmp_path, "check-maximal", "--points", str(path))
    assert result.exit_code == 0
    assert result.output.strip() == "not maximal"


def test_normalize_fig1(tmp_path):
    path = _points_file(tmp_path, "fig1", known("fig1-left"))
    result = _invoke(tmp_path, "normalize", "--points", path)
    assert result.exit_code == 0
    assert result.output == FIG1_LEFT + "\n"

    raw = _invoke(tmp_path, "normalize", "--points", path, "--raw")
    assert raw.output.strip() == "0,0;0,-4;0,4;-3,0;3,0"


def test_construct_crab_matches_decompose(tmp_path):
    crab = _invoke(tmp_path, "construct", "crab", "--a", "30", "--arms", "16,40,72,224")
    decomposed = _invoke(tmp_path, "construct", "decompose", "--h", "30")
    assert crab.exit_code == 0
    assert decomposed.exit_code == 0
    assert crab.output == decomposed.output


def test_construct_writes_files(tmp_path, monkeypatch):
    monkeypatch.delenv("MAXIPS_TIMESTAMPS", raising=False)
    svg = tmp_path / "rhombus.svg"
    saved = tmp_path / "rhombus.txt"
    result = _invoke(tmp_path, "construct", "rhombus", "--a", "3", "--b", "4",
                     "--svg", str(svg), "--save", str(saved))
    assert result.exit_code == 0
    assert svg.read_text(encoding="utf-8").count('class="point"') == 5
    pf = parse_pointfile(saved.read_text(encoding="utf-8"))
    assert len(pf.points) == 5
    assert pf.metadata["construction"] == "construct rhombus"
    assert "generated" not in pf.metadata


def test_construct_domain_error_exits_one(tmp_path):
    result = _invoke(tmp_path, "construct", "rect", "--a", "3", "--b", "5")
    assert result.exit_code == 1
    assert "Pythagorean" in result.output


def test_construct_known(tmp_path):
    listing = _invoke(tmp_path, "construct", "known", "--list")
    assert "m3" in listing.output.split()
    result = _invoke(tmp_path, "construct", "known", "circle-65-missing")
    assert result.exit_code == 1


def test_usage_errors_exit_two(tmp_path):
    assert _invoke(tmp_path, "no-such-command").exit_code == 2
    assert _invoke(tmp_path, "embed", "--triangle", "5,4").exit_code == 2
    assert _invoke(tmp_path, "gen-triangles", "--diameter", "0").exit_code == 2


def test_gen_triangles(tmp_path):
    result = _invoke(tmp_path, "gen-triangles", "--diameter", "25")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert "25,20,15" in lines
    assert "25,24,7" in lines


def test_embed_dedup(tmp_path):
    result = _invoke(tmp_path, "embed", "--triangle", "25,20,15", "--dedup")
    assert result.exit_code == 0
    assert len(result.output.splitlines()) == 3
    bad = _invoke(tmp_path, "embed", "--triangle", "3,2,2")
    assert bad.exit_code == 1


def test_extend_triangle(tmp_path):
    path = tmp_path / "e1.txt"
    path.write_text("0 0\n0 25\n12 16\n", encoding="utf-8")
    result = _invoke(tmp_path, "extend", "--points", str(path))
    assert result.exit_code == 0
    assert len(result.output.splitlines()) == 12


def test_extend_rectangle(tmp_path):
    path = tmp_path / "rect.txt"
    path.write_text("0 0\n7 0\n0 24\n7 24\n", encoding="utf-8")
    result = _invoke(tmp_path, "extend", "--points", str(path))
    assert "-9 12" in result.output.splitlines()
    assert "16 12" in result.output.splitlines()


def test_enumerate_e2_triangle(tmp_path):
    result = _invoke(tmp_path, "enumerate", "--triangle", "25,20,15")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert len(lines) == len(set(lines))
    assert lines
    assert all(line.count(";") >= 2 for line in lines)


def test_search_outputs_tsv(tmp_path):
    records = tmp_path / "records.jsonl"
    result = _invoke(tmp_path, "search", "--max-diameter", "10", "--records", str(records))
    assert result.exit_code == 0
    rows = [line.split("\t") for line in result.output.splitlines()]
    assert rows[0][:4] == ["4", "=", "5", "10"]
    assert rows[1][:4] == ["5", "=", "8", "10"]
    first = json.loads(records.read_text(encoding="utf-8").splitlines()[0])
    assert first["kind"] == "set"


def test_search_triangles_only(tmp_path):
    result = _invoke(tmp_path, "search", "--max-diameter", "30", "--triangles-only")
    assert result.exit_code == 0
    assert result.output == ""


def test_render(tmp_path):
    path = _points_file(tmp_path, "m4", known("m4"))
    out = tmp_path / "m4.svg"
    result = _invoke(tmp_path, "render", "--points", path, "--out", str(out),
                     "--circle", "0,20,99")
    assert result.exit_code == 0
    assert out.exists()
    bad = _invoke(tmp_path, "render", "--points", path, "--out", str(out), "--circle", "1,2")
    assert bad.exit_code == 2


def test_parse_error_exit_code(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("0 0\n0 0\n", encoding="utf-8")
    result = _invoke(tmp_path, "normalize", "--points", str(path))
    assert result.exit_code == 1
    assert "line 2" in result.output


def test_config_init_and_show(tmp_path, monkeypatch):
    monkeypatch.delenv("MAXIPS_THREADS", raising=False)
    init = _invoke(tmp_path, "config", "init")
    assert init.exit_code == 0
    assert (tmp_path / "config.yaml").exists()
    again = _invoke(tmp_path, "config", "init")
    assert again.exit_code == 1
    show = _invoke(tmp_path, "config", "show")
    assert "threads" in show.output


def test_search_late_start_marks_rows_unproven(tmp_path):
    result = _invoke(tmp_path, "search", "--max-diameter", "10", "--start", "6")
    assert result.exit_code == 0
    rows = [line.split("\t") for line in result.output.splitlines()]
    assert rows
    assert all(row[1] == "<=" and row[3] == "0" for row in rows)

import pytest
from click.testing import CliRunner

from charsum import search
from charsum.characters import CharacterSum, and_table, sum_table
from charsum.cli import main


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args, stdin=None):
        return runner.invoke(main, list(args), input=stdin)

    return invoke


def test_rank(run):
    r = run("rank", "x1x2+x3x4+x5x6", "--n", "6")
    assert r.exit_code == 0 and r.output.strip() == "3"


def test_decompose(run):
    r = run("decompose", "0", "--n", "4")
    assert r.exit_code == 0
    assert r.output.splitlines() == ["rank=0", "residual=0"]
    r = run("decompose", "x1x2", "--n", "2")
    assert r.output.splitlines() == ["rank=1", "pair=x1 | x2", "residual=0"]


def test_normal_form(run):
    r = run("normal-form", "x1x2+x1x3", "--n", "4")
    assert r.output.strip() == "x1x2"


def test_bad_form_is_usage_error(run):
    r = run("rank", "x9", "--n", "4")
    assert r.exit_code == 2 and "error:" in r.output


def test_verify_and(run):
    r = run("verify-and", "--n", "6")
    assert r.exit_code == 0
    assert "terms=8" in r.output and "verified=true" in r.output
    assert run("verify-and", "--n", "5").exit_code == 2


def test_bfs_and_small_and_capacity(run):
    r = run("bfs-and", "--n", "3")
    assert r.exit_code == 0
    weight = int(next(l for l in r.output.splitlines() if l.startswith("weight=")).split("=")[1])
    assert weight == search.bfs_min_weight(and_table(3)).weight
    assert run("bfs-and", "--n", "5").exit_code == 3


def test_sample_is_reproducible(run, tmp_path):
    out = tmp_path / "h.csv"
    a = run("sample", "--n", "6", "--w", "2", "--samples", "5000", "--seed", "4")
    r = run("sample", "--n", "6", "--w", "2", "--samples", "5000", "--seed", "4", "--workers", "3",
            "-o", str(out))
    assert a.exit_code == 0 and r.exit_code == 0
    assert out.read_text() == a.output
    assert "# seed=4" in a.output and "support,count" in a.output


def test_sample_chart(run, tmp_path):
    pytest.importorskip("matplotlib")
    chart = tmp_path / "h.svg"
    r = run("sample", "--w", "3", "--samples", "2000", "--chart", str(chart))
    assert r.exit_code == 0 and chart.read_text().lstrip().startswith("<?xml")


def test_enumerate_w3(run):
    r = run("enumerate-w3")
    assert r.exit_code == 0
    hist = search.Histogram.from_csv(r.output)
    assert round(hist.normalized()[48]) == 23319


def test_grid(run):
    r = run("grid", "--samples", "20000", "--seed", "1")
    assert r.exit_code == 0
    lines = r.output.splitlines()
    assert lines[0] == "# n=6 w=3 samples=20000 seed=1"
    assert len(lines) == 66 and all(len(l) == 65 for l in lines[1:])


def test_convert_both_ways(run, tmp_path):
    r = run("convert", "--to", "circuit", "x1x2+1 ; x2", "--n", "2")
    assert r.exit_code == 0 and "AND2" in r.output
    netlist = tmp_path / "c.net"
    netlist.write_text(r.output)
    back = run("convert", "--to", "characters", str(netlist))
    assert back.exit_code == 0
    s = CharacterSum.parse(back.output.strip(), 2)
    original = sum_table(CharacterSum.parse("x1x2+1 ; x2", 2))
    assert (sum_table(s).values == 0).tolist() == (original.values == 0).tolist()
    piped = run("convert", "--to", "characters", "-", stdin=r.output)
    assert piped.output == back.output


def test_convert_errors(run, tmp_path):
    assert run("convert", "--to", "circuit", "x1").exit_code == 2
    assert run("convert", "--to", "circuit", "x1x2", "--n", "2", "--depth", "2").exit_code == 2
    bad = tmp_path / "bad.net"
    bad.write_text("g0 = INPUT(1)\ng1 = MOD2(g0)\noutput g1\n")
    assert run("convert", "--to", "characters", str(bad)).exit_code == 2


def test_scan_pairs(run, tmp_path):
    left = sum_table(CharacterSum.parse("0 ; x1x2+1", 4))
    right = sum_table(CharacterSum.parse("x3x4+1 ; x1x2+x3x4", 4))
    pool = tmp_path / "pool.txt"
    pool.write_text(f"{left}\n{'1' * 16}\n{right}\n")
    r = run("scan-pairs", str(pool))
    assert r.exit_code == 0
    assert "0,2" in r.output.splitlines()


def test_g72(run, tmp_path):
    r = run("g72", "verify")
    assert r.exit_code == 0 and "order=72" in r.output and "s3_order=6" in r.output
    prog = tmp_path / "p.txt"
    prog.write_text("group=G72\naccept=aa\nbit=1 zero=1 one=a\nbit=2 zero=1 one=a\n")
    r = run("g72", "eval", str(prog), "11")
    assert r.exit_code == 0 and "element=aa" in r.output and "accepted=true" in r.output
    r = run("g72", "eval", str(prog), "1")
    assert r.exit_code == 2

import io
import json
import random

import pytest

from macposet import parse_poset, serialize
from macposet.cli import SCHEMA, run_command
from macposet.io import ParseError
from macposet.poset import BooleanIntervalViolation, RankMismatch, UnknownElement

from .conftest import FIXTURE_DIR, FIXTURES
from .oracles import isomorphic, random_poset

FIX_A_TEXT = "poset two-segments\nvertices 2\nface s : 1 2\nface t : 1 2\n"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def fixture_path(key):
    return FIXTURE_DIR / f"{FIXTURES[key]}.sp"


def test_parse_fix_a():
    S = parse_poset(FIX_A_TEXT)
    assert S.name == "two-segments" and S.m == 2
    assert S.f_vector() == [2, 2]


def test_parse_one_facet_rank_two():
    with pytest.raises(RankMismatch) as info:
        parse_poset("vertices 2\nface s : 1\n")
    assert info.value.face == "s"
    assert "line 2" in str(info.value)


def test_parse_isolated_vertices():
    S = parse_poset("vertices 3\n")
    assert S.rank == 1 and S.m == 3 and len(S) == 4


def test_comments_and_blank_lines():
    S = parse_poset("# header\nposet p  # trailing\n\nvertices 2\n  face e : 1 2 # edge\n")
    assert S.name == "p" and S.f_vector() == [2, 1]


@pytest.mark.parametrize("text,line,column", [
    ("vertices two\n", 1, 10),
    ("vertices 2\nfacet s : 1 2\n", 2, 1),
    ("face s : 1 2\n", 1, 1),
    ("vertices 2\nface 0 : 1 2\n", 2, 6),
    ("poset a\nvertices 1\nvertices 1\n", 3, 1),
    ("poset\n", 1, 7),
])
def test_syntax_errors(text, line, column):
    with pytest.raises(SyntaxError) as info:
        parse_poset(text)
    assert isinstance(info.value, ParseError)
    assert (info.value.line, info.value.column) == (line, column)


def test_validation_errors_name_faces():
    with pytest.raises(UnknownElement) as info:
        parse_poset("vertices 2\nface s : 1 3\n")
    assert info.value.face == "s"
    with pytest.raises(BooleanIntervalViolation):
        parse_poset("vertices 2\nface s : 1 1\n")


def test_roundtrip_fixtures(fix):
    for S in fix.values():
        again = parse_poset(serialize(S))
        assert again == S
        assert again.name == S.name


def test_roundtrip_random():
    rng = random.Random(4)
    for _ in range(30):
        S = random_poset(rng, max_elements=25)
        again = parse_poset(serialize(S))
        assert isomorphic(S, again)


def test_betti_command():
    code, out, _ = run("betti", fixture_path("C"))
    assert code == 0
    assert "betti: 1 0 0 3 4 3 0 0 1" in out


def test_hochster_command():
    code, out, _ = run("hochster-check", fixture_path("A"))
    assert code == 0 and out.startswith("PASS")


def test_bad_input_exit_code(tmp_path):
    bad = tmp_path / "bad.sp"
    bad.write_text("vertices 2\nface s : 1\n")
    code, out, err = run("validate", bad)
    assert code == 2
    assert "RankMismatch" in err and "line 2" in err
    code, _, err = run("validate", tmp_path / "missing.sp")
    assert code == 2 and "error" in err
    assert run("no-such-command")[0] == 2


def test_json_reports_deterministic(tmp_path):
    mat = tmp_path / "lam.txt"
    mat.write_text("1 0 1 1 0\n0 1 1 0 1\n1 1 0 1 1\n")
    commands = [
        ("validate", fixture_path("C")),
        ("info", fixture_path("C")),
        ("hilbert", fixture_path("A"), "--degree", 6, "--multigraded"),
        ("betti", fixture_path("C")),
        ("cohomology", fixture_path("C"), "--multigraded"),
        ("cup-table", fixture_path("C")),
        ("hochster-check", fixture_path("C"), "-v"),
        ("lsop-check", fixture_path("C"), "--matrix", mat),
        ("lsop-find", fixture_path("C"), "--seed", 3),
        ("trc", fixture_path("C")),
        ("fold", fixture_path("A")),
        ("join", fixture_path("E"), fixture_path("E")),
        ("limit-check", fixture_path("C"), "--degree", 4),
    ]
    for argv in commands:
        first = run(*argv, "--json")
        second = run(*argv, "--json")
        assert first == second, argv
        report = json.loads(first[1])
        assert report["schema"] == SCHEMA
        assert report["command"] == argv[0]
        assert report["timing"] is None
        assert first[0] in (0, 1)


def test_multigraded_json_schema():
    code, out, _ = run("cohomology", fixture_path("A"), "--multigraded", "--json")
    groups = json.loads(out)["result"]["multigraded"]
    assert [(g["a"], g["i"], g["rank"], g["torsion"]) for g in groups] == [
        ([0, 0], 0, 1, []), ([1, 1], 0, 1, [])]


def test_torsion_shown(fix):
    code, out, _ = run("cohomology", fixture_path("RP2"))
    assert "H^9 = Z/2" in out


def test_lsop_check_failure_and_shape(tmp_path):
    mat = tmp_path / "zero.txt"
    mat.write_text("0 0 0 0 0\n0 0 0 0 0\n0 0 0 0 0\n")
    code, out, _ = run("lsop-check", fixture_path("C"), "--matrix", mat)
    assert code == 1 and "rational lsop: no" in out
    mat.write_text("1 0\n0 1\n")
    assert run("lsop-check", fixture_path("C"), "--matrix", mat)[0] == 2


def test_join_and_fold_outputs_parse():
    code, out, _ = run("join", fixture_path("E"), fixture_path("E"))
    square = parse_poset(out)
    assert square.f_vector() == [4, 4]
    code, out, _ = run("fold", fixture_path("B"))
    assert parse_poset(out).f_vector() == [3, 3, 1]


def test_timing_flag():
    code, out, _ = run("betti", fixture_path("A"), "--json", "--timing")
    assert isinstance(json.loads(out)["timing"], float)


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "macposet", "betti", str(fixture_path("A"))],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "betti: 1 0 0 0 1" in proc.stdout

import json
import os

import pytest

from quivermute import files
from quivermute.cli import run
from quivermute.dot import export_dot
from quivermute.errors import ParseError
from quivermute.fixtures import a3_mesh_quiver, fixture_text, load_fixture
from quivermute.quiver import relation_block_spans

from helpers import quiver


class TestQuiverFiles:
    def test_round_trip_stable(self):
        for name in ("a3-auslander", "d4-mckay"):
            text = fixture_text(name)
            assert files.serialize(files.parse(text)) == text

    def test_d4_fixture_counts(self):
        bq = load_fixture("d4-mckay")
        assert len(bq.vertices) == 15
        assert len(bq.arrows) == 26
        assert len(bq.relations) == 13

    def test_zero_denominator_rejected(self):
        text = fixture_text("a3-auslander").replace('"coeff": "1"', '"coeff": "1/0"', 1)
        with pytest.raises(ParseError):
            files.parse(text)

    def test_unknown_field_rejected(self):
        data = json.loads(fixture_text("a3-auslander"))
        data["comment"] = "nope"
        with pytest.raises(ParseError) as err:
            files.quiver_from_dict(data)
        assert "comment" in str(err.value)

    def test_syntax_error_carries_line_and_column(self):
        with pytest.raises(ParseError) as err:
            files.parse("{\n  broken\n}")
        assert "line 2" in str(err.value)

    def test_translation_window_round_trip(self, tmp_path):
        from quivermute.extension import build_zq

        zq = build_zq(a3_mesh_quiver(), (-1, 2))
        path = tmp_path / "ambient.json"
        files.save(path, zq.quiver, zq.td)
        back = files.load(path)
        assert back.window == (-1, 2)
        assert back.translation.n == 2
        assert back.translation.tau_of("3@0") == "3@-1"
        assert files.serialize(back, back.translation) == files.serialize(zq.quiver, zq.td)


class TestDot:
    def test_single_vertex(self):
        dot = export_dot(quiver("v", []))
        assert '"v";' in dot
        assert dot.startswith("digraph")

    def test_byte_stable(self):
        bq = a3_mesh_quiver()
        assert export_dot(bq) == export_dot(bq)

    def test_slice_export_has_level_ranks(self):
        from quivermute.extension import build_zq, embed_base_slice

        zq = build_zq(a3_mesh_quiver(), (-2, 4))
        emb = embed_base_slice(zq, 0)
        dot = export_dot(emb)
        assert "rank=same" in dot
        assert '"1@0" -> "2@0"' in dot

    def test_relations_as_comments(self):
        dot = export_dot(a3_mesh_quiver())
        assert "// relation:" in dot


@pytest.fixture()
def a3_file(tmp_path):
    path = tmp_path / "a3.json"
    path.write_text(fixture_text("a3-auslander"))
    return str(path)


class TestCli:
    def test_usage_error_exit_two(self, capsys):
        assert run(["mutate"]) == 2

    def test_unknown_command_exit_two(self, capsys):
        assert run(["frobnicate"]) == 2

    def test_dualize_twice_restores_spans(self, a3_file, tmp_path, capsys):
        one = str(tmp_path / "dual.json")
        two = str(tmp_path / "dual2.json")
        assert run(["dualize", a3_file, "-o", one]) == 0
        assert run(["dualize", one, "-o", two]) == 0
        orig = files.load(a3_file)
        twice = files.load(two)
        assert relation_block_spans(orig) == relation_block_spans(twice)

    def test_mutate_not_movable_exit_one(self, a3_file, capsys):
        rc = run(["mutate", a3_file, "--slice", "level:0", "--at", "3@0", "--dir", "minus"])
        assert rc == 1
        captured = capsys.readouterr()
        assert json.loads(captured.err)["code"] == "NOT_MOVABLE"

    def test_mutate_emits_state(self, a3_file, tmp_path, capsys):
        out = str(tmp_path / "slice.json")
        rc = run(["mutate", a3_file, "--slice", "level:0", "--at", "1@0", "--dir", "plus", "-o", out])
        assert rc == 0
        state = json.loads(capsys.readouterr().out)
        assert state["subset"] == ["1@1", "2@0", "3@0", "4@0", "5@0", "6@0"]
        saved = json.loads(open(out).read())
        assert saved["subset"] == state["subset"]

    def test_slices_counts_and_dots(self, a3_file, tmp_path, capsys):
        dots = str(tmp_path / "dots")
        rc = run(["slices", a3_file, "--start", "level:0", "--emit-dot", dots])
        assert rc == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["class_count"] == 4
        assert sorted(os.listdir(dots)) == [f"class{k}.dot" for k in range(4)]

    def test_zq_check_ntq_pipeline(self, a3_file, tmp_path, capsys):
        amb = str(tmp_path / "amb.json")
        assert run(["zq", a3_file, "--window=-2..4", "-o", amb]) == 0
        assert run(["check-ntq", amb]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["conditions"] == {
            "maximal_paths_uniform": True,
            "top_blocks_one_dimensional": True,
            "pairings_non_degenerate": True,
        }

    def test_hammock_output(self, a3_file, capsys):
        # on the bare fixture quiver the detected translation is 4 -> 1,
        # 5 -> 2, 6 -> 4; the hammock into 5 spans its incoming diamond
        rc = run(["hammock", a3_file, "--vertex", "5", "--dir", "down"])
        assert rc == 0
        doc = json.loads(capsys.readouterr().out)
        assert ["5", 0, 1] in doc["entries"]
        assert ["2", 2, 1] in doc["entries"]

    def test_resolve(self, a3_file, capsys):
        rc = run(["resolve", a3_file, "--simple", "1", "--max-len", "8"])
        assert rc == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["steps"][0] == [["1", 0, 1]]

    def test_verify_napr(self, a3_file, tmp_path, capsys):
        dual = str(tmp_path / "gamma.json")
        assert run(["dualize", a3_file, "-o", dual]) == 0
        rc = run(["verify-napr", dual, "--vertex", "6", "--n", "2"])
        assert rc == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["passed"] is True

    def test_tilt(self, a3_file, capsys):
        rc = run(["tilt", a3_file, "--slice", "level:0", "--at", "6@0", "--dir", "minus"])
        assert rc == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["is_n_apr"] is True
        assert doc["new_vertex"] == "6@-1"
        assert "dual" in doc

    def test_degree_cap_env_override(self, a3_file, monkeypatch, capsys):
        monkeypatch.setenv("QUIVERMUTE_DEGREE_CAP", "1")
        rc = run(["resolve", a3_file, "--simple", "1", "--max-len", "4"])
        assert rc == 1
        captured = capsys.readouterr()
        assert json.loads(captured.err)["code"] in {"DEGREE_OVERFLOW", "INFINITE_DIMENSIONAL"}

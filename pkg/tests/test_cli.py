import json

import pytest

from fulkerson_lab.cli import (
    Certificate,
    main,
    parse_certificate,
    parse_graph_file,
    write_certificate,
    write_graph_file,
)
from fulkerson_lab.generators import flower_snark, petersen
from fulkerson_lab.cli import ParseError


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGraphFileFormat:
    def test_round_trip_is_bit_exact(self):
        for g in (petersen(), flower_snark(5)):
            text = write_graph_file(g)
            assert write_graph_file(parse_graph_file(text)) == text
            assert parse_graph_file(text) == g

    def test_comments_and_blank_lines_ignored(self):
        text = write_graph_file(petersen())
        noisy = "# a comment\n\n" + text.replace("cubic", "cubic", 1)
        assert parse_graph_file(noisy) == petersen()

    def test_truncated_file_rejected(self):
        text = write_graph_file(petersen())
        with pytest.raises(ParseError):
            parse_graph_file("\n".join(text.splitlines()[:-1]))

    def test_bad_header_rejected(self):
        with pytest.raises(ParseError):
            parse_graph_file("graph 3 3\n0 0 1\n1 1 2\n2 2 0\n")

    def test_non_cubic_rejected(self):
        with pytest.raises(ParseError):
            parse_graph_file("cubic 2 1\n0 0 1\n")


class TestCertificateFormat:
    def test_round_trip(self):
        cert = Certificate("fr-triple", ((0, 1), (2, 3), (4, 5)))
        text = write_certificate(cert)
        assert parse_certificate(text) == cert
        assert write_certificate(parse_certificate(text)) == text

    def test_ffamily_round_trip(self):
        cert = Certificate("ffamily", ((10,), (11,), (12,), ()),
                           m=(10, 11, 12, 13, 14), n=(0, 2))
        text = write_certificate(cert)
        assert parse_certificate(text) == cert
        assert write_certificate(parse_certificate(text)) == text

    def test_wrong_matching_count_rejected(self):
        with pytest.raises(ParseError):
            parse_certificate("certificate covering\nmatching 0 1\n")


class TestGen:
    def test_petersen(self, capsys):
        code, out, _ = run(capsys, "gen", "petersen")
        assert code == 0
        assert out.splitlines()[0] == "cubic 10 15"

    def test_flower_five(self, capsys):
        code, out, _ = run(capsys, "gen", "flower", "5")
        assert code == 0
        assert out.splitlines()[0] == "cubic 20 30"

    def test_flower_four_exits_two(self, capsys):
        code, _, err = run(capsys, "gen", "flower", "4")
        assert code == 2
        assert "odd" in err

    def test_unknown_family_exits_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["gen", "tractor"])
        assert exc.value.code == 2

    def test_deterministic(self, capsys):
        _, out1, _ = run(capsys, "gen", "goldberg", "3")
        _, out2, _ = run(capsys, "gen", "goldberg", "3")
        assert out1 == out2

    @pytest.mark.parametrize("args,n", [
        (("theta",), 2), (("k4",), 4), (("k33",), 6), (("cube",), 8),
        (("doubled-cycle", "6"), 6), (("ten-c5",), 10), (("goldberg", "3"), 24),
    ])
    def test_all_families(self, capsys, args, n):
        code, out, _ = run(capsys, "gen", *args)
        assert code == 0
        assert out.splitlines()[0].split()[1] == str(n)

    def test_extra_param_rejected(self, capsys):
        code, _, err = run(capsys, "gen", "petersen", "3")
        assert code == 2


@pytest.fixture
def petersen_file(tmp_path):
    path = tmp_path / "petersen.graph"
    path.write_text(write_graph_file(petersen()))
    return str(path)


class TestSearchAndVerify:
    def test_search_covering_then_verify(self, capsys, tmp_path, petersen_file):
        code, out, _ = run(capsys, "search", petersen_file, "covering")
        assert code == 0
        cert_path = tmp_path / "covering.cert"
        cert_path.write_text(out)
        code, out, _ = run(capsys, "verify", petersen_file, str(cert_path))
        assert code == 0
        assert "valid" in out

    def test_search_fr_triple_and_ffamily(self, capsys, tmp_path, petersen_file):
        for target in ("fr-triple", "ffamily"):
            code, out, _ = run(capsys, "search", petersen_file, target)
            assert code == 0
            cert_path = tmp_path / f"{target}.cert"
            cert_path.write_text(out)
            code, out, _ = run(capsys, "verify", petersen_file, str(cert_path))
            assert code == 0

    def test_search_all_triples(self, capsys, petersen_file):
        code, out, _ = run(capsys, "search", petersen_file, "fr-triple", "--all")
        assert code == 0
        assert out.count("certificate fr-triple") == 20

    def test_k4_ffamily_exits_one(self, capsys, tmp_path):
        path = tmp_path / "k4.graph"
        from fulkerson_lab.generators import k4

        path.write_text(write_graph_file(k4()))
        code, out, _ = run(capsys, "search", str(path), "ffamily")
        assert code == 1
        assert out == ""

    def test_budget_exhaustion_exits_three(self, capsys, tmp_path):
        path = tmp_path / "j5.graph"
        path.write_text(write_graph_file(flower_snark(5)))
        code, _, _ = run(capsys, "search", str(path), "ffamily", "--budget", "2")
        assert code == 3

    def test_bad_covering_exits_one_with_report(self, capsys, tmp_path, petersen_file):
        code, out, _ = run(capsys, "search", petersen_file, "covering")
        lines = out.splitlines()
        lines[2] = lines[1]  # repeat one matching
        cert_path = tmp_path / "bad.cert"
        cert_path.write_text("\n".join(lines) + "\n")
        code, out, _ = run(capsys, "verify", petersen_file, str(cert_path))
        assert code == 1
        assert "covered" in out

    def test_truncated_certificate_exits_two(self, capsys, tmp_path, petersen_file):
        cert_path = tmp_path / "trunc.cert"
        cert_path.write_text("certificate covering\nmatching 0 2 5 6 14\n")
        code, _, err = run(capsys, "verify", petersen_file, str(cert_path))
        assert code == 2
        assert "parse error" in err

    def test_search_strategy_flag(self, capsys, tmp_path):
        path = tmp_path / "j5.graph"
        path.write_text(write_graph_file(flower_snark(5)))
        code, out, _ = run(capsys, "search", str(path), "covering", "--strategy", "a1a2")
        assert code == 0
        assert out.startswith("certificate covering")

    def test_triple_with_common_edge_exits_one(self, capsys, tmp_path, petersen_file):
        code, out, _ = run(capsys, "search", petersen_file, "fr-triple")
        lines = out.splitlines()
        lines[2] = lines[1] = lines[3]  # all three matchings equal
        cert_path = tmp_path / "bad-triple.cert"
        cert_path.write_text("\n".join(lines) + "\n")
        code, out, _ = run(capsys, "verify", petersen_file, str(cert_path))
        assert code == 1
        assert "invalid certificate" in out

    def test_ffamily_export_annotations(self, capsys, tmp_path, petersen_file):
        code, out, _ = run(capsys, "search", petersen_file, "ffamily")
        cert_path = tmp_path / "fam.cert"
        cert_path.write_text(out)
        code, out, _ = run(capsys, "export", petersen_file, "--format", "json",
                           "--certificate", str(cert_path))
        assert code == 0
        notes = json.loads(out)["annotations"]
        assert set(notes.values()) <= {"m", "A", "B", "C", "D", "n"}
        assert sorted(set(notes.values())) == ["A", "B", "C", "D", "m", "n"]


class TestPipeline:
    def test_petersen_dot_petersen(self, capsys, tmp_path):
        recipe = tmp_path / "recipe.txt"
        recipe.write_text("base petersen\ndot type1 petersen\n")
        code, out, _ = run(capsys, "pipeline", str(recipe))
        assert code == 0
        assert out.splitlines()[0] == "cubic 18 27"
        assert "certificate ffamily" in out
        assert "certificate covering" in out

    def test_empty_recipe_base_only(self, capsys, tmp_path):
        recipe = tmp_path / "recipe.txt"
        recipe.write_text("base petersen\n")
        code, out, _ = run(capsys, "pipeline", str(recipe))
        assert code == 0
        assert out.splitlines()[0] == "cubic 10 15"

    def test_bad_step_exits_one_naming_step(self, capsys, tmp_path):
        recipe = tmp_path / "recipe.txt"
        recipe.write_text("base petersen\ndot type1 k4\n")
        code, _, err = run(capsys, "pipeline", str(recipe))
        assert code == 1
        assert "step 1" in err

    def test_type2_pair_inside_n_exits_one(self, capsys, tmp_path):
        from fulkerson_lab.ffamily import find_ffamily

        fam = find_ffamily(petersen()).value
        bad = min(fam.n_edges.members)
        other = next(e for e in sorted(petersen().edge_ids())
                     if e not in fam.m.members and e not in fam.n_edges.members)
        recipe = tmp_path / "recipe.txt"
        recipe.write_text(f"base petersen\ndot type2 petersen e1={bad} e2={other}\n")
        code, _, err = run(capsys, "pipeline", str(recipe))
        assert code == 1
        assert "step 1" in err

    def test_emit_intermediate(self, capsys, tmp_path):
        recipe = tmp_path / "recipe.txt"
        recipe.write_text("base petersen\ndot type1 petersen\n")
        outdir = tmp_path / "stages"
        code, _, _ = run(capsys, "pipeline", str(recipe), "--emit-intermediate", str(outdir))
        assert code == 0
        assert sorted(p.name for p in outdir.iterdir()) == ["stage0.graph", "stage1.graph"]

    def test_unparseable_recipe_exits_two(self, capsys, tmp_path):
        recipe = tmp_path / "recipe.txt"
        recipe.write_text("start petersen\n")
        code, _, err = run(capsys, "pipeline", str(recipe))
        assert code == 2


class TestExport:
    def test_dot_with_covering_annotations(self, capsys, tmp_path, petersen_file):
        code, out, _ = run(capsys, "search", petersen_file, "covering")
        cert_path = tmp_path / "c.cert"
        cert_path.write_text(out)
        code, out, _ = run(capsys, "export", petersen_file, "--format", "dot",
                           "--certificate", str(cert_path))
        assert code == 0
        assert out.startswith("graph cubic {")
        # every edge label carries its two covering members
        labels = [line.split('label="')[1].split('"')[0]
                  for line in out.splitlines() if "label=" in line]
        assert len(labels) == 15
        assert all(len(lab.split(":")[1].split(",")) == 2 for lab in labels)

    def test_json_graph_only(self, capsys, petersen_file):
        code, out, _ = run(capsys, "export", petersen_file, "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["n"] == 10 and data["m"] == 15
        assert len(data["edges"]) == 15

    def test_bad_format_exits_two(self, capsys, petersen_file):
        with pytest.raises(SystemExit) as exc:
            main(["export", petersen_file, "--format", "svg"])
        assert exc.value.code == 2

    def test_export_deterministic(self, capsys, petersen_file):
        _, out1, _ = run(capsys, "export", petersen_file, "--format", "json")
        _, out2, _ = run(capsys, "export", petersen_file, "--format", "json")
        assert out1 == out2


class TestThreadsFlag:
    def test_threads_accepted(self, capsys, petersen_file):
        code, out, _ = run(capsys, "search", petersen_file, "covering", "--threads", "4")
        assert code == 0

    def test_threads_must_be_positive(self, capsys, petersen_file):
        with pytest.raises(SystemExit) as exc:
            main(["search", petersen_file, "covering", "--threads", "0"])
        assert exc.value.code == 2

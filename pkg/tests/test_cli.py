import json

import pytest

from systolic.cli import main
from systolic.report import strip_timing


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExitCodes:
    def test_passing_check_exits_zero(self, capsys):
        code, out, err = run(
            capsys, "check", "--gen", "octahedron", "--checks", "flag,tc"
        )
        assert code == 0 and err == ""
        assert "yes" in out

    def test_required_no_exits_one(self, capsys):
        code, out, _ = run(
            capsys,
            "check",
            "--gen",
            "octahedron",
            "--checks",
            "weakly-systolic",
            "--require",
            "weakly-systolic",
        )
        assert code == 1
        assert "no" in out

    def test_unrequired_no_exits_zero(self, capsys):
        code, out, _ = run(
            capsys, "check", "--gen", "octahedron", "--checks", "weakly-systolic"
        )
        assert code == 0

    def test_unknown_generator_exits_two(self, capsys):
        code, _, err = run(capsys, "check", "--gen", "dodecahedron", "--checks", "tc")
        assert code == 2
        assert "unknown generator" in err

    def test_unknown_token_exits_two(self, capsys):
        code, _, err = run(capsys, "check", "--gen", "octahedron", "--checks", "zz")
        assert code == 2
        assert "zz" in err

    def test_missing_input_exits_two(self, capsys):
        code, _, err = run(capsys, "check", "--checks", "tc")
        assert code == 2
        assert "--gen" in err

    def test_both_inputs_exits_two(self, capsys, tmp_path):
        f = tmp_path / "x.txt"
        f.write_text("complex a\nmode flag\nvertices 1\n")
        code, _, err = run(
            capsys, "check", "--gen", "octahedron", "--input", str(f), "--checks", "tc"
        )
        assert code == 2

    def test_missing_file_exits_two(self, capsys):
        code, _, err = run(capsys, "check", "--input", "/no/such/file", "--checks", "tc")
        assert code == 2

    def test_parse_error_exits_two(self, capsys, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("complex a\nmode flag\nvertices 2\nedge 0 9\n")
        code, _, err = run(capsys, "check", "--input", str(f), "--checks", "tc")
        assert code == 2
        assert "line" in err


class TestCheckCommand:
    def test_all_tokens_on_small_complex(self, capsys):
        code, out, _ = run(
            capsys, "check", "--gen", "wheel:k=6", "--checks", "all", "--max-len", "8"
        )
        assert code == 0
        for token in ("flag", "systole", "tc", "qc", "weakly-systolic", "systolic"):
            assert token in out

    def test_json_format_parses(self, capsys):
        code, out, _ = run(
            capsys,
            "check",
            "--gen",
            "icosahedron",
            "--checks",
            "k-large,w5hat",
            "--k",
            "6",
            "--format",
            "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["config"]["target"] == "icosahedron"
        checks = {r["check"]: r for r in doc["records"]}
        assert checks["k-large"]["verdict"] == "no"
        assert checks["w5hat"]["verdict"] == "no"

    def test_window_trust_annotation(self, capsys):
        code, out, _ = run(
            capsys,
            "check",
            "--gen",
            "lattice:radius=5,margin=2",
            "--checks",
            "tc,locally-k-large",
        )
        assert code == 0
        assert "trusted-region" in out

    def test_systole_reports_value(self, capsys):
        code, out, _ = run(
            capsys,
            "check",
            "--gen",
            "cycle:n=7",
            "--checks",
            "systole",
            "--format",
            "json",
        )
        doc = json.loads(out)
        (rec,) = doc["records"]
        assert rec["detail"]["value"] == 7

    def test_composite_mode(self, capsys):
        code, out, _ = run(
            capsys,
            "check",
            "--gen",
            "hex_torus:p=4,q=4",
            "--checks",
            "weakly-systolic",
            "--mode",
            "composite",
            "--format",
            "json",
        )
        doc = json.loads(out)
        (rec,) = doc["records"]
        assert rec["verdict"] == "no"
        assert rec["detail"]["graph"]["answer"] == "no"


class TestIsometryCommand:
    def test_displacement_and_classify(self, capsys):
        code, out, _ = run(
            capsys,
            "isometry",
            "--gen",
            "octahedron",
            "--auto",
            "antipodal",
            "--do",
            "displacement,classify,min-set",
            "--format",
            "json",
        )
        assert code == 0
        doc = json.loads(out)
        by = {r["check"]: r for r in doc["records"]}
        assert by["classify[antipodal]"]["detail"]["kind"] == "hyperbolic"
        assert by["displacement[antipodal]"]["detail"]["translation_length"] == 2

    def test_power_flag(self, capsys):
        code, out, _ = run(
            capsys,
            "isometry",
            "--gen",
            "cycle:n=6",
            "--auto",
            "rotate",
            "--power",
            "6",
            "--do",
            "classify",
            "--format",
            "json",
        )
        doc = json.loads(out)
        (rec,) = doc["records"]
        assert rec["detail"]["kind"] == "elliptic"

    def test_chain_on_lattice(self, capsys):
        code, out, _ = run(
            capsys,
            "isometry",
            "--gen",
            "lattice:radius=6,margin=2",
            "--auto",
            "t1",
            "--do",
            "chain,idempotence",
        )
        assert code == 0
        assert "chain[t1]" in out and "yes" in out

    def test_unknown_auto_exits_two(self, capsys):
        code, _, err = run(
            capsys,
            "isometry",
            "--gen",
            "octahedron",
            "--auto",
            "glide",
            "--do",
            "classify",
        )
        assert code == 2
        assert "glide" in err

    def test_file_map(self, capsys, tmp_path):
        f = tmp_path / "tri.txt"
        f.write_text(
            "complex tri\nmode flag\nvertices 3\nedge 0 1\nedge 1 2\nedge 0 2\n"
            "map 0 1\nmap 1 2\nmap 2 0\n"
        )
        code, out, _ = run(
            capsys,
            "isometry",
            "--input",
            str(f),
            "--auto",
            "file",
            "--do",
            "validate,invariant-simplex",
            "--format",
            "json",
        )
        assert code == 0
        doc = json.loads(out)
        by = {r["check"]: r for r in doc["records"]}
        assert by["invariant-simplex[tri_map]"]["witness"] == [0, 1, 2]


class TestTheoremsCommand:
    def test_dichotomy_on_thick_line(self, capsys):
        code, out, _ = run(
            capsys,
            "theorems",
            "--gen",
            "thick_line:k=2,n=10",
            "--auto",
            "shift",
            "--do",
            "embedding,min-systolic,dichotomy",
            "--format",
            "json",
        )
        assert code == 0
        doc = json.loads(out)
        by = {r["check"]: r for r in doc["records"]}
        assert by["embedding[shift]"]["detail"]["max_deviation"] == 0
        assert by["dichotomy[shift]"]["detail"]["thickness"] == 2

    def test_invariant_geodesic_power(self, capsys):
        code, out, _ = run(
            capsys,
            "theorems",
            "--gen",
            "lattice:radius=8,margin=3",
            "--auto",
            "glide",
            "--power",
            "2",
            "--do",
            "invariant-geodesic",
            "--format",
            "json",
        )
        doc = json.loads(out)
        (rec,) = doc["records"]
        assert rec["verdict"] == "yes"

    def test_require_gate(self, capsys):
        # Min of the torus translation is the whole torus, which is not systolic
        code, out, _ = run(
            capsys,
            "theorems",
            "--gen",
            "hex_torus:p=4,q=4",
            "--auto",
            "translate",
            "--do",
            "min-systolic",
            "--require",
            "min-systolic",
        )
        assert code == 1

    def test_identity_rejected_for_min_theorems(self, capsys):
        code, _, err = run(
            capsys,
            "theorems",
            "--gen",
            "wheel:k=4",
            "--auto",
            "identity",
            "--do",
            "min-systolic",
        )
        assert code == 2
        assert "translation length" in err


class TestGenerateCommand:
    def test_generate_then_check_pipeline(self, capsys, tmp_path):
        f = tmp_path / "octa.txt"
        code, _, _ = run(
            capsys, "generate", "--gen", "octahedron", "--out", str(f)
        )
        assert code == 0
        code, out, _ = run(capsys, "check", "--input", str(f), "--checks", "k-large", "--k", "5")
        assert code == 0
        assert "no" in out

    def test_generate_with_map(self, capsys, tmp_path):
        f = tmp_path / "c6.txt"
        code, _, _ = run(
            capsys, "generate", "--gen", "cycle:n=6", "--auto", "rotate", "--out", str(f)
        )
        assert code == 0
        text = f.read_text()
        assert "map 0 1" in text and "map 5 0" in text

    def test_window_header_comment(self, capsys):
        code, out, _ = run(capsys, "generate", "--gen", "lattice:radius=3,margin=1")
        assert code == 0
        assert "# window basepoint=" in out


class TestDeterminism:
    BATTERY = [
        ["check", "--gen", "lattice:radius=6,margin=2", "--checks",
         "tc,qc,locally-k-large,weakly-systolic", "--format", "json"],
        ["check", "--gen", "icosahedron", "--checks", "all", "--format", "json"],
        ["isometry", "--gen", "lattice:radius=6,margin=2", "--auto", "glide",
         "--do", "all", "--format", "json"],
        ["theorems", "--gen", "thick_line:k=2,n=10", "--auto", "shift",
         "--do", "all", "--format", "json"],
    ]

    def collect(self, capsys, extra):
        outs = []
        for argv in self.BATTERY:
            code = main(argv + extra)
            out = capsys.readouterr().out
            assert code == 0
            outs.append(strip_timing(out))
        return outs

    def test_repeat_runs_byte_identical(self, capsys):
        assert self.collect(capsys, []) == self.collect(capsys, [])

    def test_jobs_never_change_output(self, capsys):
        one = self.collect(capsys, ["--jobs", "1"])
        eight = self.collect(capsys, ["--jobs", "8"])
        assert one == eight

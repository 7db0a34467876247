"""Command-line behaviour: documented outputs, determinism, exit codes."""

import json

import pytest

from etakit.cli import ParseError, load_config, main, parse_character
from etakit.grouprep import character_table


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDocumentedCommands:
    def test_eta_cyclic(self, capsys):
        code, out, _ = run_cli(capsys, "eta", "cyclic", "--l", "8",
                               "--a", "1,1", "--rho", "r0-r4")
        assert code == 0
        assert out == "-1 (order 2 mod 2Z)\n"

    def test_normal_form(self, capsys):
        code, out, _ = run_cli(capsys, "nf", "--algebra", "sd",
                               "--expr", "y*u^3")
        assert code == 0
        assert out == "y^3*u*P\n"

    def test_verify_json(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "all",
                               "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert len(data) >= 40
        assert all(entry["status"] == "pass" for entry in data)

    def test_determinism(self, capsys):
        outputs = set()
        for _ in range(2):
            _, out, _ = run_cli(capsys, "eta", "quaternion", "--k", "1",
                                "--rho", "(2-tau)^2")
            outputs.add(out)
        assert len(outputs) == 1


class TestEtaCommand:
    def test_auto_modulus_quaternion_dim7(self, capsys):
        code, out, _ = run_cli(capsys, "eta", "quaternion", "--k", "1",
                               "--rho", "2-tau")
        assert code == 0
        assert out == "13/32 (order 64 mod 2Z)\n"

    def test_explicit_modulus(self, capsys):
        _, out, _ = run_cli(capsys, "eta", "quaternion", "--k", "0",
                            "--rho", "2-tau", "--mod", "z")
        assert out == "7/8 (order 8 mod Z)\n"

    def test_bundle(self, capsys):
        _, out, _ = run_cli(capsys, "eta", "bundle", "--l", "8", "--a", "1,1",
                            "--rho", "r0-r1")
        assert out == "-7/8 (order 8 mod Z)\n"

    def test_float_oracle_mode(self, capsys):
        _, out, _ = run_cli(capsys, "eta", "bundle", "--l", "8", "--a", "1,1",
                            "--rho", "r0-r1", "--float")
        assert abs(float(out) + 0.875) < 1e-9

    def test_json_matches_text_content(self, capsys):
        _, text, _ = run_cli(capsys, "eta", "cyclic", "--l", "8", "--a", "1,1",
                             "--rho", "r0-r4")
        _, blob, _ = run_cli(capsys, "eta", "cyclic", "--l", "8", "--a", "1,1",
                             "--rho", "r0-r4", "--format", "json")
        data = json.loads(blob)
        assert data == {"value": "-1", "order": 2, "modulus": "2Z",
                        "order_mod_z": 1, "order_mod_2z": 2}
        assert text.startswith(data["value"])

    def test_computation_error_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "eta", "cyclic", "--l", "8",
                               "--a", "2,1", "--rho", "r0-r4")
        assert code == 1
        assert "NotFreeError" in err

    def test_character_grammar(self):
        t = character_table("sd16")
        chi = parse_character(t, "4 + rho*rho5 - 2*(rho+rho5)")
        assert chi.dim == 4 + 4 - 8
        assert parse_character(t, "2 - c8hat") == 2 * t.trivial() - t.irreducible("chi2")
        with pytest.raises(ParseError):
            parse_character(t, "2 - zeta")


class TestOtherCommands:
    def test_order(self, capsys):
        code, out, _ = run_cli(capsys, "order", "--value", "-1", "--mod", "2z")
        assert (code, out) == (0, "2\n")

    def test_span(self, capsys):
        _, out, _ = run_cli(capsys, "span", "--matrix", "1,0;0,1")
        assert out == "det = 1 (order 1 mod Z)\n"

    def test_restrict_default_images(self, capsys):
        _, out, _ = run_cli(capsys, "restrict", "--group", "sd16",
                            "--subgroup", "q8", "--chi", "rho2")
        assert out == "k1 + k3\n"

    def test_restrict_custom_images(self, capsys):
        _, out, _ = run_cli(capsys, "restrict", "--group", "sd16",
                            "--subgroup", "c8", "--images", "g=s",
                            "--chi", "rho")
        assert out == "r1 + r3\n"

    def test_basis(self, capsys):
        _, out, _ = run_cli(capsys, "basis", "--algebra", "d8", "--degree", "3")
        assert out == "a^3 a*d b^3 b*d\n"

    def test_sq(self, capsys):
        _, out, _ = run_cli(capsys, "sq", "--algebra", "sd", "--i", "2",
                            "--expr", "P")
        assert out == "x^2*P + y^2*P\n"

    def test_wu(self, capsys):
        _, out, _ = run_cli(capsys, "wu", "--algebra", "m8",
                            "--branch", "nonspin")
        assert out.splitlines()[1] == "v1 = t"

    def test_push(self, capsys):
        _, out, _ = run_cli(capsys, "push", "--map", "d8-to-v2", "--degree", "6")
        assert "xi(p^3*q^3) -> xi(d^3)" in out

    def test_table_kernel_row(self, capsys):
        _, out, _ = run_cli(capsys, "table", "--n", "11")
        assert out == "n=11: one-column orders [8, 16, 128, 128], two-column rank 0\n"

    def test_table_characters(self, capsys):
        _, out, _ = run_cli(capsys, "table", "--group", "q8")
        assert "tau: 2, -2, 0, 0, 0" in out

    def test_verify_failure_exit_is_one(self, capsys):
        # unknown suite is a computation error, not a usage error
        code, _, err = run_cli(capsys, "verify", "--suite", "bogus")
        assert code == 1 and "KeyError" in err

    def test_usage_error_exit_is_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["eta", "cyclic", "--l", "8", "--a", "1,1"])  # missing --rho
        assert exc.value.code == 2


class TestConfig:
    def test_empty_file_gives_defaults(self, tmp_path):
        path = tmp_path / "empty.json"
        path.write_text("")
        cfg = load_config(str(path))
        assert cfg.degree_bound == 64 and cfg.algebras == {}

    def test_missing_path_gives_defaults(self):
        assert load_config(None).root_order_cap == 64

    def test_custom_algebra_block(self, capsys, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({
            "degree_bound": 32,
            "algebras": {"ext": {
                "generators": [["e", 1], ["w", 2]],
                "relations": ["e^2"],
            }},
        }))
        code, out, _ = run_cli(capsys, "--config", str(path), "basis",
                               "--algebra", "custom:ext", "--degree", "3")
        assert code == 0
        assert out == "e*w\n"

    def test_malformed_relation_reports_position(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({
            "algebras": {"oops": {"generators": [["e", 1]],
                                  "relations": ["e^"]}},
        }))
        code, _, err = run_cli(capsys, "--config", str(path), "basis",
                               "--algebra", "custom:oops", "--degree", "1")
        assert code == 1
        assert "F2ParseError" in err and "column" in err

    def test_malformed_json_reports_position(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{ not json }")
        with pytest.raises(ParseError, match="line 1"):
            load_config(str(path))

    def test_environment_override(self, capsys, tmp_path, monkeypatch):
        path = tmp_path / "env.json"
        path.write_text(json.dumps({"degree_bound": 16}))
        monkeypatch.setenv("ETAKIT_CONFIG", str(path))
        cfg = load_config(None)
        assert cfg.degree_bound == 16

    def test_custom_steenrod_and_table(self, capsys, tmp_path):
        t = character_table("c2")
        path = tmp_path / "full.json"
        path.write_text(json.dumps({
            "algebras": {"proj": {
                "generators": [["e", 1]],
                "relations": [],
                "steenrod": {},
            }},
            "tables": {"mine": {
                "group": "c2",
                "irreducibles": [
                    {"name": name, "values": [str(v) for v in row]}
                    for name, row in zip(t.irreducible_names, t.rows)],
            }},
            "inclusions": {"c2sd": {"source": "c2", "target": "sd16",
                                    "images": {"g": "t"}}},
        }))
        cfg = load_config(str(path))
        assert "proj" in cfg.steenrod
        assert cfg.tables["mine"].irreducible_names == t.irreducible_names
        assert cfg.inclusions["c2sd"].target.name == "sd16"
        code, out, _ = run_cli(capsys, "--config", str(path), "sq",
                               "--algebra", "custom:proj", "--i", "1",
                               "--expr", "e")
        assert (code, out) == (0, "e^2\n")

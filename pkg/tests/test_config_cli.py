import json
from fractions import Fraction
from pathlib import Path

import pytest

from toricfloer import cli
from toricfloer.config import ConfigError, load_config, parse_config, scalar_from_json, scalar_to_json
from toricfloer.scalars import ExtensionField, NovikovField, PrimeField, QQ


CP1_F5 = {
    "dimension": 1,
    "normals": [[1], [-1]],
    "areas": ["1", "1"],
    "field": {"char": 5, "degree": 1},
    "mode": "monotone",
    "seed": 3,
    "pearl_bound": 2,
    "resamples": 2,
}

CP1_NOV = {
    "dimension": 1,
    "normals": [[1], [-1]],
    "areas": ["1", "2"],
    "field": "rational",
    "precision": "5",
    "mode": "novikov",
}


def write(tmp_path, doc, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return p


class TestScalarLiterals:
    def test_rational_round_trip(self):
        assert scalar_from_json(QQ, "3/4") == Fraction(3, 4)
        assert scalar_to_json(QQ, Fraction(3, 4)) == "3/4"

    def test_finite_field_codes(self):
        F = PrimeField(7)
        assert scalar_from_json(F, 12) == F.from_int(5)
        E = ExtensionField(5, 2)
        x = scalar_from_json(E, 7)  # digits (2, 1): 2 + x
        assert x.coeffs == (2, 1)
        assert scalar_to_json(E, x) == "7"

    def test_novikov_series_literal(self):
        nd = NovikovField(QQ, Fraction(5))
        x = scalar_from_json(nd, [["1/2", "2"], ["1", "-1"]])
        assert x.coeff(Fraction(1, 2)) == 2
        doc = scalar_to_json(nd, x)
        assert doc["terms"] == [["1/2", "2"], ["1", "-1"]]
        back = scalar_from_json(nd, doc)
        assert back == x


class TestConfig:
    def test_parse_monotone(self, tmp_path):
        cfg = load_config(write(tmp_path, CP1_F5))
        assert cfg.field.p == 5
        assert cfg.mode == "monotone"
        assert cfg.seed == 3

    def test_parse_toml(self, tmp_path):
        pytest.importorskip("tomllib")
        p = tmp_path / "cfg.toml"
        p.write_text(
            'dimension = 1\nnormals = [[1], [-1]]\nareas = ["1", "2"]\n'
            'field = "rational"\nprecision = "5"\nmode = "novikov"\n'
        )
        cfg = load_config(p)
        assert cfg.mode == "novikov"
        assert cfg.precision == 5

    def test_toml_degrades_clearly_without_tomllib(self, tmp_path):
        try:
            import tomllib  # noqa: F401
        except ImportError:
            p = tmp_path / "cfg.toml"
            p.write_text("dimension = 1\n")
            with pytest.raises(ConfigError, match="use JSON"):
                load_config(p)

    def test_zero_area_rejected(self, tmp_path):
        doc = dict(CP1_F5, areas=["0", "1"])
        with pytest.raises(ConfigError):
            load_config(write(tmp_path, doc))

    def test_novikov_needs_precision(self):
        with pytest.raises(ConfigError):
            parse_config(dict(CP1_NOV, precision=None))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "nope.json")

    def test_corrections_parsed(self, tmp_path):
        doc = dict(
            CP1_NOV,
            corrections=[
                {
                    "area": "3",
                    "boundary": [1],
                    "coefficient": "5",
                    "pairings": [2, 1],
                }
            ],
        )
        cfg = load_config(write(tmp_path, doc))
        assert cfg.corrections[0].area == 3
        assert cfg.corrections[0].pairings == (2, 1)


class TestCli:
    def test_report_pass_and_exit_codes(self, tmp_path, capsys):
        cfgp = write(tmp_path, CP1_F5)
        out = tmp_path / "report.json"
        code = cli.main(["report", "--config", str(cfgp), "--out", str(out)])
        assert code == 0
        rep = json.loads(out.read_text())
        assert rep["passed"] is True
        assert rep["status"] == "ok"
        assert len(rep["summands"]) == 2

    def test_report_deterministic_bytes(self, tmp_path):
        cfgp = write(tmp_path, CP1_F5)
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert cli.main(["report", "--config", str(cfgp), "--out", str(a)]) == 0
        assert cli.main(["report", "--config", str(cfgp), "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_cache_hit_identical(self, tmp_path):
        cfgp = write(tmp_path, CP1_F5)
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        cachedir = tmp_path / "cache"
        assert cli.main(["report", "--config", str(cfgp), "--cache", str(cachedir), "--out", str(a)]) == 0
        assert len(list(cachedir.iterdir())) == 1
        assert cli.main(["report", "--config", str(cfgp), "--cache", str(cachedir), "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_novikov_report(self, tmp_path):
        cfgp = write(tmp_path, CP1_NOV)
        out = tmp_path / "n.json"
        assert cli.main(["report", "--config", str(cfgp), "--out", str(out)]) == 0
        rep = json.loads(out.read_text())
        for s in rep["summands"]:
            assert s["val_vector"] == ["1/2"]
            assert s["checks"]["val_interior"]
            assert s["checks"]["z_eigenvalues_positive"]
            assert s["z_eigenvalue_valuations"] == ["3/2", "3/2"]

    def test_extend_field_exit(self, tmp_path):
        doc = {
            "dimension": 2,
            "normals": [[1, 0], [0, 1], [-1, -1]],
            "areas": ["1", "1", "1"],
            "field": {"char": 5, "degree": 1},
            "mode": "monotone",
        }
        cfgp = write(tmp_path, doc)
        out = tmp_path / "r.json"
        code = cli.main(["report", "--config", str(cfgp), "--out", str(out)])
        assert code == 1
        rep = json.loads(out.read_text())
        assert rep["status"] == "extend-field"
        assert "extend the field" in rep["error"]["message"]

    def test_bad_config_exit_2(self, tmp_path, capsys):
        doc = dict(CP1_F5, areas=["0", "1"])
        cfgp = write(tmp_path, doc)
        assert cli.main(["report", "--config", str(cfgp)]) == 2
        assert "input error" in capsys.readouterr().err

    def test_summands_subcommand(self, tmp_path):
        cfgp = write(tmp_path, CP1_F5)
        out = tmp_path / "s.json"
        assert cli.main(["summands", "--config", str(cfgp), "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert [s["xi"] for s in doc["summands"]] in ([["1"], ["4"]], [["4"], ["1"]])

    def test_potential_subcommand(self, tmp_path):
        cfgp = write(tmp_path, CP1_NOV)
        out = tmp_path / "w.json"
        assert cli.main(["potential", "--config", str(cfgp), "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["superpotential"] == [
            [[-1], {"prec": None, "terms": [["2", "1"]]}],
            [[1], {"prec": None, "terms": [["1", "1"]]}],
        ]

    def test_jacobian_subcommand(self, tmp_path):
        cfgp = write(tmp_path, CP1_F5)
        out = tmp_path / "j.json"
        assert cli.main(["jacobian", "--config", str(cfgp), "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["dimension"] == 2
        assert doc["monomial_basis"] == [[0, 0], [1, 0]]

    def test_pearl_oracle_subcommand(self, tmp_path):
        cfgp = write(tmp_path, CP1_F5)
        out = tmp_path / "p.json"
        code = cli.main(
            ["pearl-oracle", "--config", str(cfgp), "--bound", "2", "--resamples", "2", "--out", str(out)]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["passed"] is True
        assert doc["conditions"]["all_pass"] is True

    def test_seed_override_changes_report(self, tmp_path):
        cfgp = write(tmp_path, CP1_F5)
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert cli.main(["report", "--config", str(cfgp), "--seed", "1", "--out", str(a)]) == 0
        assert cli.main(["report", "--config", str(cfgp), "--seed", "1", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        assert json.loads(a.read_text())["seed"] == 1

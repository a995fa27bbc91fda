import json
import os

import pytest

from config import (AnalysisConfig, ConfigError, _load_env_file, load_config, resolve_analysis,
                    sample_lengths, validate_config)
from scalar import ONE, parse_scalar

S = parse_scalar


class TestEnvironment:
    def test_defaults(self):
        config = validate_config(load_config())
        assert config["processing"] == {"max_workers": 1, "digits": 12, "chunk_size": 250}
        assert config["logging"]["level"] == "WARNING"
        assert config["catalog"]["path"].endswith("systems.txt")

    def test_overrides(self, monkeypatch):
        monkeypatch.setenv("IETLAB_MAX_WORKERS", "4")
        monkeypatch.setenv("IETLAB_LOG_LEVEL", "debug")
        config = validate_config(load_config())
        assert config["processing"]["max_workers"] == 4
        assert config["logging"]["level"] == "DEBUG"

    def test_errors_are_aggregated(self, monkeypatch):
        monkeypatch.setenv("IETLAB_MAX_WORKERS", "0")
        monkeypatch.setenv("IETLAB_DIGITS", "many")
        monkeypatch.setenv("IETLAB_LOG_LEVEL", "loud")
        with pytest.raises(ConfigError) as info:
            validate_config(load_config())
        assert len(info.value.errors) == 3

    def test_env_file_does_not_override_environment(self, tmp_path, monkeypatch):
        monkeypatch.setattr(os, "environ", dict(os.environ))
        monkeypatch.setenv("IETLAB_DIGITS", "30")
        env_file = tmp_path / ".env"
        env_file.write_text("# local settings\nIETLAB_DIGITS=5\nIETLAB_CHUNK_SIZE = 40\n")
        _load_env_file(env_file)
        assert os.environ["IETLAB_DIGITS"] == "30"
        assert os.environ["IETLAB_CHUNK_SIZE"] == "40"


class TestConfigFile:
    def test_json(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"perm": "2 1", "lengths": "1/2, 1/2", "N": 50}))
        values = AnalysisConfig.from_file(str(path))
        assert values["lengths"] == ["1/2", " 1/2"]
        assert values["N"] == 50

    def test_key_value(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("perm = 3 2 1\nnormalize = yes\ninterval = 0, 1/10\n")
        values = AnalysisConfig.from_file(str(path))
        assert values == {"perm": "3 2 1", "normalize": True, "interval": ["0", " 1/10"]}

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text('{"perm": "2 1", "horizon": 5}')
        with pytest.raises(ConfigError, match="horizon"):
            AnalysisConfig.from_file(str(path))

    def test_json_must_be_an_object(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigError):
            AnalysisConfig.from_file(str(path))

    def test_overrides_win_unless_none(self):
        cfg = AnalysisConfig.merged({"perm": "2 1", "N": 40}, {"N": 7, "eps": None})
        assert (cfg.perm, cfg.N, cfg.eps) == ("2 1", 7, "1/100")


class TestResolve:
    def test_catalog_name(self):
        resolved = resolve_analysis(AnalysisConfig(command="analyze", perm="golden"))
        assert resolved.iet.radicand == 5
        assert resolved.provenance["name"] == "golden"
        assert resolved.eps == S("1/100")

    def test_explicit_lengths(self):
        resolved = resolve_analysis(AnalysisConfig(command="eps", perm="2 1",
                                                   lengths=["2/3", "1/3"]))
        assert resolved.iet.lengths == (S("2/3"), S("1/3"))
        assert resolved.provenance == {"catalog": None, "name": None, "permutation": "2 1"}

    def test_sum_needs_normalize(self):
        with pytest.raises(ConfigError, match="--normalize"):
            resolve_analysis(AnalysisConfig(command="eps", perm="2 1", lengths=["1", "1"]))
        resolved = resolve_analysis(AnalysisConfig(command="eps", perm="2 1", lengths=["1", "1"],
                                                   normalize=True))
        assert resolved.iet.normalized

    def test_all_errors_reported_together(self):
        cfg = AnalysisConfig(command="eps", perm="2 2", N=0, eps="-1", delta="x")
        with pytest.raises(ConfigError) as info:
            resolve_analysis(cfg)
        assert len(info.value.errors) == 4

    def test_wrongly_typed_fields(self):
        cfg = AnalysisConfig(command="eps", perm=[3, 2, 1], lengths="1/2, 1/2", eps=0.5)
        with pytest.raises(ConfigError) as info:
            resolve_analysis(cfg)
        assert info.value.errors == ["perm must be text, got [3, 2, 1]",
                                     "lengths must be a list of scalars, got '1/2, 1/2'",
                                     "eps must be text, got 0.5"]

    def test_integer_values_are_text(self):
        resolved = resolve_analysis(AnalysisConfig(command="eps", perm="2 1", lengths=[2, 1],
                                                   normalize=True, eps=1))
        assert resolved.iet.lengths == (S("2/3"), S("1/3"))
        assert resolved.eps == ONE

    def test_missing_lengths(self):
        with pytest.raises(ConfigError, match="missing lengths"):
            resolve_analysis(AnalysisConfig(command="rigidity", perm="3 2 1"))

    def test_permutation_only_needs_no_lengths(self):
        resolved = resolve_analysis(AnalysisConfig(command="perm", perm="reversal4"))
        assert resolved.iet is None
        assert resolved.perm.d == 4

    def test_catalog_command_needs_no_permutation(self):
        resolved = resolve_analysis(AnalysisConfig(command="catalog"))
        assert "fhz" in resolved.catalog

    @pytest.mark.parametrize("changes,fragment", [
        ({"seed": 3}, "--seed"),
        ({"format": "csv"}, "JSON only"),
        ({"sample": True, "lengths": ["1/2", "1/2"]}, "mutually exclusive"),
        ({"command": "tower", "interval": ["0"]}, "--interval"),
        ({"command": "perm", "scan": 9}, "--scan"),
    ])
    def test_rejected_combinations(self, changes, fragment):
        values = {"command": "analyze", "perm": "golden"}
        values.update(changes)
        with pytest.raises(ConfigError, match=fragment):
            resolve_analysis(AnalysisConfig(**values))


class TestSampling:
    def test_seeded_and_normalized(self):
        first = sample_lengths(4, 11)
        assert first == sample_lengths(4, 11)
        assert sum(first) == ONE
        assert all(v > 0 for v in first)

    def test_resolve_records_seed(self):
        cfg = AnalysisConfig(command="eps", perm="3 2 1", sample=True, seed=11)
        resolved = resolve_analysis(cfg)
        assert list(resolved.iet.lengths) == sample_lengths(3, 11)
        assert resolved.provenance["sample_seed"] == 11

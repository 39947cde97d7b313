import pytest
from pydantic import ValidationError

from src.core.config import Settings
from src.core.logging import make_sampler


def test_environment_prefix(monkeypatch):
    monkeypatch.setenv("TIHANY_MAX_N", "12")
    monkeypatch.setenv("TIHANY_SWEEP_WORKERS", "3")
    settings = Settings()
    assert settings.MAX_N == 12
    assert settings.SWEEP_WORKERS == 3


def test_caps_follow_global_limit():
    settings = Settings(MAX_N=10)
    assert settings.ORACLE_MAX_N == 10
    assert settings.FALLBACK_MAX_N == 10


@pytest.mark.parametrize(
    "overrides",
    [{"MAX_N": 0}, {"SWEEP_BATCH_SIZE": -1}, {"RANDOM_THINNING": 1.5}, {"LOG_FORMAT": "xml"}],
)
def test_invalid_values(overrides):
    with pytest.raises(ValidationError):
        Settings(**overrides)


class TestSampler:
    @staticmethod
    def record(name, level_name, level_no):
        level = type("Level", (), {"name": level_name, "no": level_no})()
        return {"name": name, "level": level}

    def test_module_threshold(self):
        keep = make_sampler(1.0, {"src.services": "WARNING"})
        assert not keep(self.record("src.services.graph_service", "INFO", 20))
        assert keep(self.record("src.services.graph_service", "ERROR", 40))
        assert keep(self.record("src.cli.commands", "INFO", 20))

    def test_sweep_debug_records_are_sampled(self):
        assert not make_sampler(0.0)(self.record("src.services.lab_service", "DEBUG", 10))
        assert make_sampler(0.0)(self.record("src.services.splitter_service", "DEBUG", 10))

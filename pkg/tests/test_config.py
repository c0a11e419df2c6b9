import pytest

from q1dh.config import Config


def test_defaults(monkeypatch):
    for name in ("Q1D_MAX_EVALS", "Q1D_TOL_ABS", "Q1D_TOL_REL", "Q1D_LOG_LEVEL", "Q1D_RUN_ID"):
        monkeypatch.delenv(name, raising=False)
    config = Config()

    assert config.max_evaluations == 1_000_000
    assert config.tolerance_absolute == 1e-12
    assert config.tolerance_relative == 1e-10
    assert config.log_level == "INFO"
    assert config.run_id is None


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("Q1D_MAX_EVALS", "5000")
    monkeypatch.setenv("Q1D_TOL_ABS", "1e-9")
    monkeypatch.setenv("Q1D_LOG_LEVEL", "debug")
    config = Config()

    assert config.max_evaluations == 5000
    assert config.log_level == "DEBUG"

    tol = config.tolerance()
    assert tol.absolute == 1e-9
    assert tol.max_evaluations == 5000


def test_tolerance_arguments_take_precedence(monkeypatch):
    monkeypatch.setenv("Q1D_TOL_ABS", "1e-9")
    tol = Config().tolerance(absolute=1e-14, relative=1e-6)

    assert tol.absolute == 1e-14
    assert tol.relative == 1e-6


@pytest.mark.parametrize(
    ("name", "value"),
    [("Q1D_MAX_EVALS", "0"), ("Q1D_TOL_REL", "-1"), ("Q1D_LOG_LEVEL", "LOUD")],
)
def test_invalid_settings(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValueError, match=name):
        Config()


def test_dump(monkeypatch):
    monkeypatch.setenv("Q1D_RUN_ID", "nightly")
    dump = Config().dump()

    assert dump["run_id"] == "nightly"
    assert set(dump) == {"max_evaluations", "tolerance_absolute", "tolerance_relative", "log_level", "run_id"}

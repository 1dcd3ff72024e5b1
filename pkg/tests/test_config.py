import pytest

from bench.cli import EXIT_CONFIG_ERROR, main
from config import Config


def test_defaults_validate():
    assert Config.validate() is True


@pytest.mark.parametrize('attribute, value', [('LOG_LEVEL', 'LOUD'), ('DEFAULT_JOBS', 0),
                                              ('DEFAULT_RUN_CONFIG', '/nonexistent/run.cfg')])
def test_invalid_environment(monkeypatch, attribute, value):
    monkeypatch.setattr(Config, attribute, value)
    with pytest.raises(ValueError):
        Config.validate()


def test_cli_refuses_invalid_environment(monkeypatch, tmp_path):
    monkeypatch.setattr(Config, 'DEFAULT_JOBS', 0)
    assert main(['samples', '--output', str(tmp_path)]) == EXIT_CONFIG_ERROR

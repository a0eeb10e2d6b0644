import pytest

from src.core.config._get_value import Invalid_config_exception
from src.core.config.load_env_config import Env_config, load_env_config, parse_env_config


def test_parse_env_config():
    env = {
        "LOG_LEVEL": "debug",
        "LOG_DIR": "logs",
        "LOG_TO_CONSOLE": "True",
        "WORKERS": "4",
    }

    cfg = parse_env_config(env)

    assert cfg.LOG_LEVEL == "DEBUG"
    assert cfg.LOG_DIR == "logs"
    assert cfg.LOG_TO_CONSOLE is True
    assert cfg.WORKERS == 4


def test_parse_env_defaults():
    assert parse_env_config({}) == Env_config(LOG_LEVEL="INFO", LOG_DIR="data/logs", LOG_TO_CONSOLE=False, WORKERS=1)


@pytest.mark.parametrize("env", [{"LOG_LEVEL": "loud"}, {"WORKERS": "0"}])
def test_parse_env_rejects(env):
    with pytest.raises(Invalid_config_exception):
        parse_env_config(env)


def test_load_env_config_reads_dotenv(tmp_path, monkeypatch):
    monkeypatch.delenv("WORKERS", raising=False)
    dotenv_path = tmp_path / ".env"
    dotenv_path.write_text("WORKERS=3\n", encoding="utf-8")

    cfg = load_env_config(str(dotenv_path))

    assert cfg.WORKERS == 3

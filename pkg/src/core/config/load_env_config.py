import os
from dataclasses import dataclass
from typing import Mapping

import dotenv

from ._get_value import check_range, get_value_or_default, parse_bool


@dataclass(frozen=True)
class Env_config:
    LOG_LEVEL: str
    LOG_DIR: str
    LOG_TO_CONSOLE: bool
    WORKERS: int

def parse_env_config(env: Mapping[str, str]) -> Env_config:
    return Env_config(
        LOG_LEVEL=check_range(
            "LOG_LEVEL", str(get_value_or_default(env, "LOG_LEVEL", "INFO")).upper(),
            lambda v: v in ("DEBUG", "INFO", "WARNING", "ERROR"), "unknown log level",
        ),
        LOG_DIR=str(get_value_or_default(env, "LOG_DIR", "data/logs")),
        LOG_TO_CONSOLE=parse_bool(get_value_or_default(env, "LOG_TO_CONSOLE", "false")),
        WORKERS=check_range(
            "WORKERS", int(get_value_or_default(env, "WORKERS", "1")),
            lambda v: v >= 1, "must be at least 1",
        ),
    )

def load_env_config(dotenv_path: str = ".env") -> Env_config:
    dotenv.load_dotenv(dotenv_path)
    return parse_env_config(os.environ)

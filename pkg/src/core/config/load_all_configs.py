import os
from pathlib import Path
from typing import Tuple

from .load_config import Config, load_config
from .load_env_config import Env_config, load_env_config

def check_file_exist(config_path: str = "config.yaml"):
    """
    检查实验配置文件是否存在 (.env 可选, 缺失时使用默认值)

    Raises:
        FileNotFoundError: 配置文件不存在
    """
    resolved = os.getenv("CONFIG_PATH", config_path)
    if not Path(resolved).exists():
        raise FileNotFoundError(f"{resolved} not exists")

def load_all_configs(
        dotenv_path: str = ".env",
        config_path: str = "config.yaml",
    ) -> Tuple[Env_config, Config]:
    """
    获取 env 与实验 config 两个配置对象

    Returns:
        env_config: 运行环境配置 (日志, 并发)
        config: 实验配置
    """
    check_file_exist(config_path)

    env_config: Env_config = load_env_config(dotenv_path)
    config: Config = load_config(os.getenv("CONFIG_PATH", config_path))

    return env_config, config

"""
向外暴露 load_all_configs, 外部文件统一使用 load_all_configs 加载环境变量和实验配置
使用 Env_config, Config 规范化管理
"""

from .load_all_configs import load_all_configs, Env_config, Config

__all__ = ["load_all_configs", "Env_config", "Config"]

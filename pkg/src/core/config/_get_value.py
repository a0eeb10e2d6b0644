"""
配置字典取值与校验.

yaml 与 .env 解析出的都是普通 Mapping; 所有 Config 字段都经由这里取值,
出错时抛出带键名的异常, main 统一映射为退出码 2.
"""
from typing import Any, Callable, Mapping

TRUE_WORDS = ("true", "1", "yes", "y", "on")
FALSE_WORDS = ("false", "0", "no", "n", "off")


class Miss_key_exception(Exception):
    """必填键缺失"""
    def __init__(self, key: str):
        self.key = key
        self.message = f"Key '{key}' is missing."
        super().__init__(self.message)

class Invalid_config_exception(Exception):
    """配置值超出允许范围"""
    def __init__(self, key: str, value: Any, reason: str):
        self.key = key
        self.value = value
        self.message = f"Invalid value {value!r} for '{key}': {reason}."
        super().__init__(self.message)

def get_value_from_dict(config: Mapping[str, Any], key: str) -> Any:
    if key not in config:
        raise Miss_key_exception(key)
    return config[key]

def get_value_or_default(config: Mapping[str, Any] | None, key: str, default: Any) -> Any:
    """可选键: 整段缺失, 键缺失或值为 null 时都返回 default"""
    if not config or config.get(key) is None:
        return default
    return config[key]

def check_range(key: str, value: Any, predicate: Callable[[Any], bool], reason: str) -> Any:
    """不满足 predicate 时抛出 Invalid_config_exception, 否则原样返回 value"""
    if not predicate(value):
        raise Invalid_config_exception(key, value, reason)
    return value

def parse_bool(value: str | bool) -> bool:
    """
    yaml 的 true/false 原样返回; 字符串按 TRUE_WORDS / FALSE_WORDS 判定,
    因此 .env 的 "1" 与 CLI 的 on/off 都能接受.

    Raises:
        ValueError: 无法判定
    """
    if isinstance(value, bool):
        return value

    word = str(value).strip().lower()
    if word in TRUE_WORDS:
        return True
    if word in FALSE_WORDS:
        return False
    raise ValueError(f"Invalid boolean value: {value}")

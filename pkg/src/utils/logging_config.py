"""
日志配置: 每个子命令一个按天轮转的日志文件.

    data/logs/garoster_solve.log            当前
    data/logs/garoster_solve_2026_10_18.log 已轮转

ProcessPoolExecutor 的 worker 不调用这里, 只通过 logging.getLogger(__name__)
写日志; 是否落盘取决于启动方式 (fork 继承父进程 handler, spawn 则丢弃).
"""
import logging
from logging.handlers import TimedRotatingFileHandler
from pathlib import Path

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s %(filename)s:%(lineno)d - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
ROTATED_SUFFIX = "%Y_%m_%d"


def log_file_name(prefix: str, command: str | None = None) -> str:
    return f"{prefix}_{command}" if command else prefix


def rotated_namer(stem: str):
    """garoster_solve.log.2026_10_18 -> garoster_solve_2026_10_18.log"""
    def namer(default_name: str) -> str:
        p = Path(default_name)
        return str(p.with_name(f"{stem}_{p.name.rsplit('.', 1)[-1]}.log"))
    return namer


def build_file_handler(log_dir: str | Path, stem: str, backup_days: int, use_utc: bool) -> TimedRotatingFileHandler:
    directory = Path(log_dir)
    directory.mkdir(parents=True, exist_ok=True)
    handler = TimedRotatingFileHandler(
        filename=str(directory / f"{stem}.log"),
        when="midnight",
        backupCount=backup_days,
        utc=use_utc,
        encoding="utf-8",
    )
    handler.suffix = ROTATED_SUFFIX
    handler.namer = rotated_namer(stem)
    return handler


def setup_logging(
    command: str | None = None,
    log_dir: str | Path = "data/logs",
    log_level: int | str = logging.INFO,
    console: bool = False,
    prefix: str = "garoster",
    backup_days: int = 30,
    use_utc: bool = True,
) -> Path:
    """
    替换 root logger 的 handler, 返回当前日志文件路径.

    console=True 时同时输出到 stderr, 适合交互式运行 gen / validate.
    """
    stem = log_file_name(prefix, command)
    formatter = logging.Formatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT)

    handlers: list[logging.Handler] = [build_file_handler(log_dir, stem, backup_days, use_utc)]
    if console:
        handlers.append(logging.StreamHandler())

    root = logging.getLogger()
    for old in list(root.handlers):
        root.removeHandler(old)
        old.close()
    root.setLevel(log_level)
    for handler in handlers:
        handler.setFormatter(formatter)
        root.addHandler(handler)

    return Path(handlers[0].baseFilename)

"""
工具模块

日志初始化、结果旁路文件路径与 JSON / 文本写出
"""

import json
import logging
from pathlib import Path
from typing import Any, Union

from config import LoggerConfig

PathLike = Union[str, Path]

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def sidecar_path(base: PathLike, suffix: str) -> Path:
    """结果文件旁的附属文件，例如 results.csv -> results.csv.trace.csv"""
    return Path(f"{base}.{suffix.lstrip('.')}")


def write_json(path: PathLike, data: Any) -> None:
    """按键排序写出，保证同一配置得到相同字节"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, ensure_ascii=False, indent=2, sort_keys=True)
        f.write("\n")


def read_json(path: PathLike) -> Any:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def save_raw_text(filename: PathLike, content: str) -> None:
    path = Path(filename)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding="utf-8")


class Logger:
    """日志管理器，命令行启动时调用一次"""

    def __init__(self, config: LoggerConfig, name: str = "risfd"):
        self.config = config
        self.name = name
        self._setup_logging()

    def _setup_logging(self):
        level = getattr(logging, self.config.log_level.upper(), logging.INFO)
        logging.basicConfig(level=level, format=LOG_FORMAT, handlers=[logging.StreamHandler()], force=True)
        self.logger = logging.getLogger(self.name)
        self.logger.debug(f"日志级别 {logging.getLevelName(level)}")

    def get_logger(self) -> logging.Logger:
        return self.logger

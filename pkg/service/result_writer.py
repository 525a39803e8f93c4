"""
结果输出

CSV 列顺序固定，浮点数保留 10 位有效数字；同样的记录总是写出相同的字节。
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Union

import pandas as pd

from core.errors import DomainError, ResultWriteError
from utils import sidecar_path, write_json

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["experiment", "scheme", "scenario", "n", "d01", "d02", "seed", "metric", "value"]
RUNTIME_COLUMN = "runtime_seconds"


@dataclass(frozen=True)
class ResultRecord:
    experiment: str
    scheme: str
    scenario: str
    n: int
    metric: str
    value: float
    d01: Optional[float] = None
    d02: Optional[float] = None
    seed: Optional[int] = None
    runtime_seconds: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise DomainError(f"指标 {self.metric} 的值不是有限数: {self.value}")

    def sort_key(self):
        return (
            self.experiment,
            self.scheme,
            self.scenario,
            self.n,
            -1.0 if self.d01 is None else self.d01,
            -1.0 if self.d02 is None else self.d02,
            -1 if self.seed is None else self.seed,
            self.metric,
        )


def sort_records(records: Iterable[ResultRecord]) -> List[ResultRecord]:
    return sorted(records, key=ResultRecord.sort_key)


def records_frame(records: Iterable[ResultRecord], include_runtime: bool = False) -> pd.DataFrame:
    columns = CSV_COLUMNS + ([RUNTIME_COLUMN] if include_runtime else [])
    rows = [{col: getattr(r, col) for col in columns} for r in records]
    frame = pd.DataFrame(rows, columns=columns)
    for col in ("n", "seed"):
        frame[col] = frame[col].astype("Int64")
    return frame


def emit_csv(records: Iterable[ResultRecord], path: Union[str, Path], include_runtime: bool = False) -> None:
    """
    写出结果 CSV

    Raises:
        ResultWriteError: 目录无法创建或文件无法写入
    """
    path = Path(path)
    frame = records_frame(records, include_runtime)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, float_format="%.10g", lineterminator="\n")
    except OSError as e:
        raise ResultWriteError(path, e)
    logger.info(f"写出 {len(frame)} 条结果: {path}")


def write_config(config_dump: dict, csv_path: Union[str, Path]) -> Path:
    """把解析后的完整配置写到 <csv>.config.json"""
    target = sidecar_path(csv_path, "config.json")
    try:
        write_json(target, config_dump)
    except OSError as e:
        raise ResultWriteError(target, e)
    return target

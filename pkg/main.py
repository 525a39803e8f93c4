"""
命令行入口

    python main.py n-sweep --scale desk --config exp.cfg --out results/n_sweep.csv
    RISFD_WORKERS=4 python main.py deploy-sweep --seed 0 --seed 1
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from config import LoggerConfig, RuntimeConfig
from core.errors import RisSimError
from service.config_loader import ExperimentKind, Scale, load_config
from service.experiment_service import ExperimentRunner
from utils import Logger, save_raw_text, sidecar_path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="risfd", description="RIS 辅助全双工 MISO 系统的 DRL 相位优化实验")
    parser.add_argument("command", choices=[k.value for k in ExperimentKind], help="实验类型")
    parser.add_argument("--config", type=Path, default=None, help="扁平键值配置文件")
    parser.add_argument("--seed", type=int, action="append", default=None, help="随机种子，可重复指定")
    parser.add_argument("--out", type=str, default=None, help="结果 CSV 路径")
    parser.add_argument("--scale", choices=[s.value for s in Scale], default=None, help="规模预设")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logger = Logger(LoggerConfig()).get_logger()
    runtime = RuntimeConfig()

    out = args.out
    if out is None and args.config is None:
        out = str(Path(runtime.output_dir) / f"{args.command}.csv")
    try:
        cfg = load_config(args.config, scale=args.scale, kind=args.command, seeds=args.seed, out=out)
    except (ValidationError, ValueError, OSError) as e:
        logger.error(f"配置无效: {e}")
        return 2

    runner = ExperimentRunner(cfg, runtime)
    try:
        records = runner.run()
    except RisSimError as e:
        logger.error(f"实验失败: {e}")
        return 1

    if cfg.kind == ExperimentKind.COMPLEXITY_SWEEP:
        table = runner.complexity_table(records)
        print(table)
        save_raw_text(sidecar_path(cfg.output.path, "md"), table + "\n")
    logger.info(f"完成: {len(records)} 条记录写入 {cfg.output.path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

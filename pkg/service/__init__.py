"""
服务模块
包含实验配置、基线、结果输出与实验编排
"""

from .config_loader import ExperimentConfig, ExperimentKind, Scale, load_config, parse_config_text
from .baselines import exhaustive_phase_search, mrt_sum_rate, random_phase_baseline
from .result_writer import ResultRecord, emit_csv, write_config
from .experiment_service import ExperimentRunner, TrainTask, run_train_task

__all__ = [
    "ExperimentConfig",
    "ExperimentKind",
    "Scale",
    "load_config",
    "parse_config_text",
    "exhaustive_phase_search",
    "mrt_sum_rate",
    "random_phase_baseline",
    "ResultRecord",
    "emit_csv",
    "write_config",
    "ExperimentRunner",
    "TrainTask",
    "run_train_task",
]

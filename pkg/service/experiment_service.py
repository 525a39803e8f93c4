"""
实验编排

把部署扫描、N 扫描、复杂度扫描与单次训练拆成互不共享状态的任务，
按 RISFD_WORKERS 在进程池中并行执行，结果按记录键排序后输出。
"""

import concurrent.futures
import logging
import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, List, Optional, Sequence

import pandas as pd

from config import RuntimeConfig
from utils import sidecar_path
from core.channel import DeploymentKind, DeploymentScheme, ScenarioId
from core.complexity import CostKind, asymptote, baseline_design, cost, design_for, is_rising, reduction
from core.drl import TrainResult, make_channel_factory, train, write_trace
from core.neural import save_params
from core.numerics import Purpose, RngStream
from .baselines import mrt_sum_rate, random_phase_baseline
from .config_loader import ExperimentConfig, ExperimentKind
from .result_writer import ResultRecord, emit_csv, sort_records, write_config

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainTask:
    """一次独立的训练任务，只依赖配置和种子"""

    cfg: ExperimentConfig
    label: str
    kind: DeploymentKind
    scenario: ScenarioId
    n: int
    seed: int
    d01: float
    d02: Optional[float]
    with_baselines: bool = True
    trace_path: Optional[str] = None


@dataclass
class TaskOutcome:
    records: List[ResultRecord]
    result: Optional[TrainResult] = None


def run_train_task(task: TrainTask, keep_result: bool = False) -> TaskOutcome:
    """执行单个任务；进程池中的工作函数"""
    started = time.perf_counter()
    cfg = task.cfg
    geometry = cfg.geometry.model_copy(update={"d01": task.d01, "d02": task.d02})
    scheme = DeploymentScheme(task.kind, task.n)
    budget = cfg.link_budget()
    rng = RngStream(task.seed)
    factory = make_channel_factory(
        rng, geometry, scheme, task.scenario, cfg.antennas, cfg.ddpg.channel_mode, cfg.channel
    )
    result = train(factory, cfg.ddpg, rng, budget, cfg.beamforming)
    if task.trace_path:
        write_trace(result.trace, task.trace_path)

    metrics = [
        ("drl_best_sum_rate", result.best_reward),
        ("drl_final_mean_sum_rate", result.trace[-1].mean_reward),
    ]
    if task.with_baselines:
        # 两个基线都在最优动作所在回合的信道上评估
        best_ch = factory(result.best_episode)
        metrics.append(
            (
                "random_sum_rate",
                random_phase_baseline(best_ch, budget, rng.derive(Purpose.BASELINE), cfg.random_trials, cfg.beamforming),
            )
        )
        metrics.append(("mrt_sum_rate", mrt_sum_rate(best_ch, result.best_theta, budget)))

    elapsed = time.perf_counter() - started
    records = [
        ResultRecord(
            experiment=cfg.kind.value,
            scheme=task.label,
            scenario=task.scenario.value,
            n=task.n,
            d01=task.d01,
            d02=task.d02 if task.kind == DeploymentKind.DISTRIBUTED else None,
            seed=task.seed,
            metric=name,
            value=float(value),
            runtime_seconds=elapsed,
        )
        for name, value in metrics
    ]
    logger.info(
        f"任务完成: {task.label} {task.scenario.value} N={task.n} seed={task.seed} "
        f"best={result.best_reward:.4f}，耗时 {elapsed:.1f}s"
    )
    return TaskOutcome(records, result if keep_result else None)


class ExperimentRunner:
    """实验运行器"""

    def __init__(self, cfg: ExperimentConfig, runtime: Optional[RuntimeConfig] = None):
        self.cfg = cfg
        self.runtime = runtime or RuntimeConfig()
        self.logger = logging.getLogger(__name__)

    def _fan_out(self, tasks: Sequence[TrainTask]) -> List[ResultRecord]:
        workers = max(1, int(self.runtime.workers))
        self.logger.info(f"共 {len(tasks)} 个训练任务，工作进程数 {workers}")
        records: List[ResultRecord] = []
        if workers == 1 or len(tasks) <= 1:
            for task in tasks:
                records.extend(run_train_task(task).records)
        else:
            with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
                for outcome in pool.map(run_train_task, tasks):
                    records.extend(outcome.records)
        return sort_records(records)

    def _trace_path(self, label: str, scenario: ScenarioId, n: int, seed: int, d01: float, d02) -> Optional[str]:
        if not self.cfg.output.write_trace:
            return None
        suffix = f"{label}.{scenario.value}.N{n}.d01-{d01:g}" + (f".d02-{d02:g}" if d02 is not None else "") + f".s{seed}"
        return str(sidecar_path(self.cfg.output.path, f"{suffix}.trace.csv"))

    def _task(self, label, kind, scenario, n, seed, d01, d02, with_baselines=True) -> TrainTask:
        return TrainTask(
            cfg=self.cfg,
            label=label,
            kind=kind,
            scenario=scenario,
            n=n,
            seed=seed,
            d01=d01,
            d02=d02,
            with_baselines=with_baselines,
            trace_path=self._trace_path(label, scenario, n, seed, d01, d02),
        )

    def run_deployment_sweep(self) -> List[ResultRecord]:
        """
        部署扫描

        单 RIS 扫描 d01；分布式分两组：d02 = 49 时扫描 d01，d01 = 1 时扫描 d02。
        """
        cfg = self.cfg
        fixed_d01 = cfg.geometry.d01
        fixed_d02 = cfg.geometry.d02 if cfg.geometry.d02 is not None else 49.0
        tasks = []
        for scenario in cfg.scenarios:
            for seed in cfg.seeds:
                for pos in cfg.positions:
                    if DeploymentKind.SINGLE in cfg.schemes:
                        tasks.append(self._task("single", DeploymentKind.SINGLE, scenario, cfg.n_total, seed, pos, None, False))
                    if DeploymentKind.DISTRIBUTED in cfg.schemes:
                        tasks.append(
                            self._task("distributed-d01", DeploymentKind.DISTRIBUTED, scenario, cfg.n_total, seed, pos, fixed_d02, False)
                        )
                        tasks.append(
                            self._task("distributed-d02", DeploymentKind.DISTRIBUTED, scenario, cfg.n_total, seed, fixed_d01, pos, False)
                        )
        return self._fan_out(tasks)

    def run_n_sweep(self) -> List[ResultRecord]:
        """N 扫描：每个 (N, 场景, 部署, 种子) 训练一次，并计算随机相位与 MRT 基线"""
        cfg = self.cfg
        d01 = cfg.geometry.d01
        d02 = cfg.geometry.d02 if cfg.geometry.d02 is not None else 49.0
        tasks = [
            self._task(kind.value, kind, scenario, n, seed, d01, d02 if kind == DeploymentKind.DISTRIBUTED else None)
            for n in cfg.n_list
            for scenario in cfg.scenarios
            for kind in cfg.schemes
            for seed in cfg.seeds
        ]
        return self._fan_out(tasks)

    def run_complexity_sweep(self) -> List[ResultRecord]:
        """复杂度扫描：纯计数，无需并行"""
        cc = self.cfg.complexity
        proposed_family, baseline_family = cc.proposed(), cc.baseline()
        records = []
        for n in cc.n_values():
            proposed = cost(design_for(n, *proposed_family.hidden))
            baseline = cost(baseline_design(n, baseline_family))
            values = {
                "C_P": proposed.params,
                "C_M": proposed.mults,
                "C_A": proposed.adds,
                "baseline_C_P": baseline.params,
                "baseline_C_M": baseline.mults,
                "baseline_C_A": baseline.adds,
            }
            for kind in CostKind:
                values[f"reduction_{kind.value}"] = reduction(proposed, baseline, kind)
            records.extend(
                ResultRecord(experiment=self.cfg.kind.value, scheme="proposed", scenario="", n=n, metric=k, value=float(v))
                for k, v in values.items()
            )
        for kind in CostKind:
            limit = asymptote(proposed_family, baseline_family, kind)
            trend = "上升" if is_rising(proposed_family, baseline_family, kind) else "下降"
            self.logger.info(f"降幅 {kind.value}: 渐近值 {limit:.4f}，随 N {trend}")
        return sort_records(records)

    def complexity_table(self, records: Sequence[ResultRecord]) -> str:
        """复杂度报告的 markdown 表格"""
        frame = pd.DataFrame([{"N": r.n, "metric": r.metric, "value": r.value} for r in records])
        if frame.empty:
            return ""
        table = frame.pivot(index="N", columns="metric", values="value")
        columns = ["C_P", "C_M", "C_A", "reduction_P", "reduction_M", "reduction_A"]
        table = table[columns].reset_index()
        for col in ("C_P", "C_M", "C_A"):
            table[col] = table[col].astype(int)
        caption = (
            f"proposed {self.cfg.complexity.proposed().describe()}；"
            f"baseline {self.cfg.complexity.baseline().describe()}；计数含目标网络副本"
        )
        return caption + "\n\n" + table.to_markdown(index=False, floatfmt=".4f")

    def train_once(self) -> TaskOutcome:
        """单次训练，写出训练轨迹，并按配置保存网络参数"""
        cfg = self.cfg
        kind = cfg.schemes[0]
        d02 = (cfg.geometry.d02 if cfg.geometry.d02 is not None else 49.0) if kind == DeploymentKind.DISTRIBUTED else None
        task = replace(
            self._task(kind.value, kind, cfg.scenarios[0], cfg.n_total, cfg.seeds[0], cfg.geometry.d01, d02),
            trace_path=str(sidecar_path(cfg.output.path, "trace.csv")),
        )
        outcome = run_train_task(task, keep_result=True)
        if cfg.output.save_checkpoints:
            nets = outcome.result.networks
            save_params(sidecar_path(cfg.output.path, "actor.txt"), nets.actor_spec, nets.actor)
            save_params(sidecar_path(cfg.output.path, "critic.txt"), nets.critic_spec, nets.critic)
        outcome.records = sort_records(outcome.records)
        return outcome

    def run(self) -> List[ResultRecord]:
        """按配置的实验类型执行并写出 CSV 与配置快照"""
        dispatch: dict[ExperimentKind, Callable[[], List[ResultRecord]]] = {
            ExperimentKind.DEPLOYMENT_SWEEP: self.run_deployment_sweep,
            ExperimentKind.N_SWEEP: self.run_n_sweep,
            ExperimentKind.COMPLEXITY_SWEEP: self.run_complexity_sweep,
            ExperimentKind.TRAIN_ONCE: lambda: self.train_once().records,
        }
        records = dispatch[self.cfg.kind]()
        out = Path(self.cfg.output.path)
        emit_csv(records, out, include_runtime=self.cfg.output.include_runtime)
        write_config(self.cfg.model_dump(mode="json"), out)
        return records

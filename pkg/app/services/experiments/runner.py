"""
Experiment runner - executes one configured experiment and writes its results
Each run writes <kind>-summary.json and <kind>-curve.csv into the output directory.
"""

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TypeVar

import numpy as np
import pandas as pd

from app.core.config import settings
from app.models.channel import Seed
from app.models.experiment import ExperimentConfig, ExperimentKind
from app.models.fading import FadingProfile
from app.services.channel import average_snr, bpsk_to_bsc, capacity_upper_bound_aen
from app.services.expansion import (
    ExpansionTransceiver,
    build_expansion_spec,
    expansion_bernoulli_param,
    level_rate_table,
    plan_levels,
    reference_rate,
    shaped_rate,
    gap_guarantee_check,
)
from app.services.fading import (
    HierarchicalDecoder,
    build_hierarchical_code,
    ergodic_capacity_bsc,
    simulate_trial,
    theoretical_rate,
)
from app.services.polar import union_bound

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass
class ExperimentResult:
    """Summary record, curve table and any extra tables of one run"""
    kind: ExperimentKind
    summary: Dict[str, Any]
    curve: pd.DataFrame
    tables: Dict[str, pd.DataFrame] = field(default_factory=dict)
    paths: List[Path] = field(default_factory=list)


def _builtin(value):
    """Convert numpy scalars and containers into JSON-serialisable builtins"""
    if isinstance(value, dict):
        return {str(k): _builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_builtin(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


class ExperimentRunner:
    """
    Runs experiments described by an ExperimentConfig

    Trials may run on a thread pool; results are collected in trial order, so
    the outputs do not depend on the number of workers.
    """

    def __init__(self, workers: Optional[int] = None):
        self.workers = max(1, workers or settings.MAX_WORKERS)

    def _map_trials(self, fn: Callable[[int], T], trials: int) -> List[T]:
        if self.workers == 1:
            return [fn(t) for t in range(trials)]
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(fn, range(trials)))

    # ------------------------------------------------------------------------
    # fading BSC
    # ------------------------------------------------------------------------

    @staticmethod
    def _fading_profile(config: ExperimentConfig) -> FadingProfile:
        if config.bsc is not None:
            return config.bsc
        return bpsk_to_bsc(config.awgn.to_profile())

    def run_bsc_sim(self, config: ExperimentConfig) -> ExperimentResult:
        profile = self._fading_profile(config)
        code = build_hierarchical_code(
            config.code.n, config.code.blocks, profile, config.code.delta, config.code.bec_backoff
        )
        decoder = HierarchicalDecoder.for_code(code)
        row_bounds = [
            union_bound(row.reliability, row.info_set)
            for row in (decoder.row_code(state) for state in range(1, profile.num_states + 1))
        ]
        seed = Seed(config.seed)

        outcomes = self._map_trials(lambda t: simulate_trial(code, seed, t, decoder), config.trials)
        curve = pd.DataFrame([asdict(o) for o in outcomes])
        failures = int((~curve["success"]).sum())
        bler = failures / config.trials
        summary = {
            "profile": profile.model_dump(mode="json"),
            "partition": {
                "good": int(code.partition.good.size),
                "middle": code.partition.middle_sizes,
                "bad": int(code.partition.bad.size),
                "bec_dimensions": [spec.dimension for spec in code.bec_specs],
            },
            "row_union_bounds": row_bounds,
            "theoretical_rate": theoretical_rate(code.partition, code.bec_specs, code.blocks),
            "capacity": ergodic_capacity_bsc(profile),
            "trials": config.trials,
            "block_errors": failures,
            "bler": bler,
            "ber": float(curve["bit_errors"].sum() / curve["info_bits"].sum()) if len(curve) else 0.0,
            "flagged": int(curve["flagged"].sum()),
            "aborted": bler > config.abort_bler,
        }
        if summary["aborted"]:
            logger.warning("block error rate above abort threshold", extra={"bler": bler, "threshold": config.abort_bler})
        return ExperimentResult(kind=config.kind, summary=summary, curve=curve)

    def run_bsc_rate(self, config: ExperimentConfig) -> ExperimentResult:
        profile = self._fading_profile(config)
        capacity = ergodic_capacity_bsc(profile)
        rows = []
        for n in config.sweep.n_values:
            code = build_hierarchical_code(
                n, config.code.blocks, profile, config.code.delta, config.code.bec_backoff
            )
            rate = theoretical_rate(code.partition, code.bec_specs, code.blocks)
            rows.append(
                {
                    "n": n,
                    "N": 1 << n,
                    "good_fraction": code.partition.good.size / code.length,
                    "middle_fraction": sum(code.partition.middle_sizes) / code.length,
                    "theoretical_rate": rate,
                    "capacity": capacity,
                    "gap": capacity - rate,
                }
            )
        curve = pd.DataFrame(rows)
        summary = {"profile": profile.model_dump(mode="json"), "capacity": capacity, "points": len(rows)}
        return ExperimentResult(kind=config.kind, summary=summary, curve=curve)

    # ------------------------------------------------------------------------
    # fading AEN
    # ------------------------------------------------------------------------

    def run_aen_rate(self, config: ExperimentConfig) -> ExperimentResult:
        base = config.aen.to_profile()
        rows = []
        for snr_db in config.sweep.snr_db:
            profile = base.with_average_snr_db(snr_db)
            spec = build_expansion_spec(profile, config.code.l1, config.code.l2)
            rate = shaped_rate(spec, profile)
            bound = capacity_upper_bound_aen(profile)
            rows.append(
                {
                    "snr_db": snr_db,
                    "input_mean": profile.input_mean,
                    "achievable_rate": rate,
                    "capacity_bound": bound,
                    "gap": bound - rate,
                }
            )
        curve = pd.DataFrame(rows)
        summary = {"noise_means": list(base.noise_means), "probabilities": list(base.probabilities), "points": len(rows)}
        return ExperimentResult(kind=config.kind, summary=summary, curve=curve)

    def run_aen_sim(self, config: ExperimentConfig) -> ExperimentResult:
        profile = config.aen.to_profile()
        spec = build_expansion_spec(profile, config.code.l1, config.code.l2)
        plan = plan_levels(spec, config.code.active_cut)
        if config.code.active_levels is not None:
            plan = plan.with_active(config.code.active_levels)
        transceiver = ExpansionTransceiver(
            profile, plan, config.code.n, config.code.blocks, config.code.delta, config.code.bec_backoff
        )
        seed = Seed(config.seed)

        reports = self._map_trials(lambda t: transceiver.run(seed.child(t)), config.trials)
        curve = pd.DataFrame(
            [
                {
                    "trial": t,
                    "success": r.success,
                    "first_failed_level": r.first_failed_level,
                    "rate": r.rate,
                    "delivered_rate": r.delivered_rate,
                    "overflow": r.overflow_count,
                    "input_mean": r.empirical_input_mean,
                }
                for t, r in enumerate(reports)
            ]
        )
        failures = int((~curve["success"]).sum())
        bler = failures / config.trials
        summary = {
            "active_levels": plan.active_levels,
            "planned_rate": transceiver.rate,
            "reference_rate": reference_rate(plan),
            "shaped_rate": shaped_rate(spec, profile),
            "capacity_bound": capacity_upper_bound_aen(profile),
            "average_snr": average_snr(profile),
            "plan_input_mean": plan.achieved_mean,
            "trials": config.trials,
            "block_errors": failures,
            "bler": bler,
            "aborted": bler > config.abort_bler,
        }
        return ExperimentResult(kind=config.kind, summary=summary, curve=curve)

    def run_expansion_analysis(self, config: ExperimentConfig) -> ExperimentResult:
        levels = np.arange(config.sweep.min_level, config.sweep.max_level + 1)
        curve = pd.DataFrame(
            {"level": levels, "bernoulli_param": expansion_bernoulli_param(config.sweep.rate, levels)}
        )
        summary: Dict[str, Any] = {"rate": config.sweep.rate, "levels": len(levels)}
        tables = {}
        if config.aen is not None:
            profile = config.aen.to_profile()
            spec = build_expansion_spec(profile, config.code.l1, config.code.l2)
            tables["levels"] = level_rate_table(spec, profile)
            epsilon = config.sweep.epsilon or max(profile.noise_means) / profile.input_mean
            summary.update(
                {
                    "shaped_rate": shaped_rate(spec, profile),
                    "capacity_bound": capacity_upper_bound_aen(profile),
                    "achieved_mean": spec.achieved_mean,
                    "gap_guarantee": gap_guarantee_check(profile, epsilon).to_dict() if epsilon < 1.0 else None,
                }
            )
        return ExperimentResult(kind=config.kind, summary=summary, curve=curve, tables=tables)

    # ------------------------------------------------------------------------

    def run(self, config: ExperimentConfig, out_dir: Optional[Path] = None) -> ExperimentResult:
        """Run the experiment and write its result files"""
        handlers = {
            ExperimentKind.BSC_SIM: self.run_bsc_sim,
            ExperimentKind.BSC_RATE: self.run_bsc_rate,
            ExperimentKind.AEN_RATE: self.run_aen_rate,
            ExperimentKind.AEN_SIM: self.run_aen_sim,
            ExperimentKind.EXPANSION_ANALYSIS: self.run_expansion_analysis,
        }
        logger.info("experiment started", extra={"kind": config.kind.value, "seed": config.seed})
        result = handlers[config.kind](config)
        result.summary = {
            **result.summary,
            "kind": config.kind.value,
            "seed": config.seed,
            "config": config.model_dump(mode="json"),
        }
        result.paths = write_result(result, Path(out_dir or config.output.dir))
        logger.info("experiment finished", extra={"kind": config.kind.value, "files": [str(p) for p in result.paths]})
        return result


def write_result(result: ExperimentResult, out_dir: Path) -> List[Path]:
    """Write summary JSON and curve CSVs; identical results give identical bytes"""
    out_dir.mkdir(parents=True, exist_ok=True)
    prefix = result.kind.value
    summary_path = out_dir / f"{prefix}-summary.json"
    summary_path.write_text(json.dumps(_builtin(result.summary), sort_keys=True, indent=2) + "\n", encoding="utf-8")

    paths = [summary_path]
    tables: Sequence = [("curve", result.curve)] + sorted(result.tables.items())
    for name, frame in tables:
        path = out_dir / f"{prefix}-{name}.csv"
        frame.to_csv(path, index=False, lineterminator="\n")
        paths.append(path)
    return paths


def run_experiment(config: ExperimentConfig, out_dir: Optional[Path] = None, workers: Optional[int] = None) -> ExperimentResult:
    return ExperimentRunner(workers).run(config, out_dir)


__all__ = ["ExperimentResult", "ExperimentRunner", "run_experiment", "write_result"]

"""Configured, seeded experiment runs"""

from app.services.experiments.config import load_config, validate_config
from app.services.experiments.runner import ExperimentResult, ExperimentRunner, run_experiment, write_result

__all__ = [
    "load_config",
    "validate_config",
    "ExperimentResult",
    "ExperimentRunner",
    "run_experiment",
    "write_result",
]

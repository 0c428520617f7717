"""Campaign orchestration, reports, QASM export and the CLI."""

from .campaign import (
    ResultRecord,
    run_campaign,
    run_joint,
    run_kappa_n,
    run_peres,
    run_sorkin,
    sample_haar_qubit,
    summarize,
)
from .config import ExperimentConfig, NoiseParams
from .qasm import export_qasm, load_qasm
from .report import emit_report, render_report

__all__ = [
    "ExperimentConfig",
    "NoiseParams",
    "ResultRecord",
    "emit_report",
    "export_qasm",
    "load_qasm",
    "render_report",
    "run_campaign",
    "run_joint",
    "run_kappa_n",
    "run_peres",
    "run_sorkin",
    "sample_haar_qubit",
    "summarize",
]

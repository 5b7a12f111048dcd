from hybridmark.bench.config import SweepConfig, load_config, parse_config
from hybridmark.bench.plots import emit_plots
from hybridmark.bench.records import TrialRecord, emit_csv, read_csv
from hybridmark.bench.sweep import run_sweep, sweep_metadata

__all__ = [
    "SweepConfig", "TrialRecord", "emit_csv", "emit_plots", "load_config",
    "parse_config", "read_csv", "run_sweep", "sweep_metadata",
]

"""Experiment configs, reports, plots and the command line interface."""

from .config import ExperimentConfig, load_config, loads_config
from .experiments import KINDS, SCHEMAS
from .svg import plot_region

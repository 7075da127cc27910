"""Command-line interface."""
from .config import ConfigError, InstanceConfig, build_presentation, load_config, parse_config_text
from .expr import Evaluator, ExprError
from .main import build_parser, main, run

__all__ = [
    "ConfigError", "Evaluator", "ExprError", "InstanceConfig", "build_parser", "build_presentation",
    "load_config", "main", "parse_config_text", "run",
]

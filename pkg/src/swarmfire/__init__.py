"""Multi-swarm UAV forest-firefighting simulator.

Cooperative information-driven search with divide-and-conquer fire
mitigation, plus baseline search strategies and a seeded Monte-Carlo
evaluation harness.
"""

__version__ = "0.1.0"

from .config import ScenarioConfig, ConfigError, load_config, write_config, PRESETS
from .engine import RunResult, World, monte_carlo, run, summarize

__all__ = [
    "ScenarioConfig", "ConfigError", "load_config", "write_config", "PRESETS",
    "RunResult", "World", "monte_carlo", "run", "summarize", "__version__",
]

"""
Configuration Loader
Loads netdist settings from config/netdist.yaml.
Provides safe defaults if the file is empty or missing.
"""

import os
import yaml
from pathlib import Path
from typing import Dict, Any, Optional
import logging

from utils.errors import ContractError

logger = logging.getLogger(__name__)

THREADS_ENV_VAR = "NETDIST_THREADS"

DEFAULT_CONFIG_DIR = Path(__file__).resolve().parent.parent / "config"


class ConfigLoader:
    """Centralized configuration management with safe defaults."""

    def __init__(self, config_dir: Optional[str] = None):
        self.config_dir = Path(config_dir) if config_dir else DEFAULT_CONFIG_DIR
        self._settings = None

    def load_settings(self) -> Dict[str, Any]:
        """Load settings, deep-merged over the built-in defaults."""
        if self._settings is not None:
            return self._settings

        settings_path = self.config_dir / "netdist.yaml"
        try:
            with open(settings_path, 'r') as f:
                settings = yaml.safe_load(f) or {}
        except FileNotFoundError:
            logger.warning(f"Settings file not found at {settings_path}, using defaults")
            settings = {}

        self._settings = self._deep_merge(self._defaults(), settings)
        return self._settings

    def _defaults(self) -> Dict[str, Any]:
        return {
            "distance": {"xi": 1.0},
            "kernel": {"kernel_gamma": 1.0, "psd_tolerance": 1e-8},
            "runtime": {"threads": None, "log_level": "WARNING", "log_dir": None},
            "families": {
                "BA": {"power_min": 0.1, "power_max": 10.0, "m": 1},
                "ER": {"p_min": 0.1, "p_max": 0.9},
                "WS": {"nei_min": 1, "nei_max": 10, "p_min": 0.1, "p_max": 0.9},
                "PL": {"exponent_min": 2.005, "exponent_max": 3.0},
                "KR": {},
            },
            "scatter": {
                "size_min": 3,
                "size_max": 100,
                "density_min": 0.2,
                "density_max": 0.8,
            },
        }

    def family_ranges(self, model: str) -> Dict[str, Any]:
        """Parameter ranges for one graph family (BA, ER, WS, PL, KR)."""
        return dict(self.load_settings()["families"].get(model, {}))

    def resolve_threads(self, flag: Optional[int] = None) -> int:
        """Worker count: explicit flag, then NETDIST_THREADS, then settings, then cpu count."""
        if flag is not None:
            threads = flag
        elif os.getenv(THREADS_ENV_VAR):
            try:
                threads = int(os.environ[THREADS_ENV_VAR])
            except ValueError:
                raise ContractError(f"{THREADS_ENV_VAR} must be an integer, got {os.environ[THREADS_ENV_VAR]!r}")
        elif self.load_settings()["runtime"].get("threads"):
            threads = int(self.load_settings()["runtime"]["threads"])
        else:
            threads = os.cpu_count() or 1

        if threads < 1:
            raise ContractError(f"thread count must be >= 1, got {threads}")
        return threads

    def _deep_merge(self, base: Dict, override: Dict) -> Dict:
        """Recursively merge override into base dict."""
        result = base.copy()
        for key, value in override.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._deep_merge(result[key], value)
            elif value is not None and value != "" and value != []:
                result[key] = value
        return result


# Global singleton instance
_config_loader = None

def get_config_loader() -> ConfigLoader:
    """Get or create global ConfigLoader instance."""
    global _config_loader
    if _config_loader is None:
        _config_loader = ConfigLoader()
    return _config_loader

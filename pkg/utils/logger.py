"""
Logging Configuration
Centralized logging for the CLI and library.
Every CLI run is recorded in a JSONL run ledger so results can be regenerated.
"""

import logging
import sys
from pathlib import Path
from datetime import datetime
from typing import Optional, Dict, Any
import json


class RunLogger:
    """
    Ledger of CLI invocations.
    Logs: timestamp, command, parameters (seed, threads, ...), outputs, runtime.
    """

    def __init__(self, log_dir: str = "logs"):
        self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)

        date_str = datetime.now().strftime("%Y%m%d")
        self.ledger_file = self.log_dir / f"runs_{date_str}.jsonl"

    def log_run(
        self,
        command: str,
        params: Dict[str, Any],
        outputs: Optional[Dict[str, Any]] = None,
        elapsed_s: Optional[float] = None,
        exit_code: int = 0
    ):
        """Append one run record."""
        entry = {
            "timestamp": datetime.now().isoformat(),
            "command": command,
            "params": params,
            "outputs": outputs or {},
            "elapsed_s": round(elapsed_s, 4) if elapsed_s is not None else None,
            "exit_code": exit_code
        }

        with open(self.ledger_file, 'a') as f:
            f.write(json.dumps(entry, default=str) + '\n')

    def get_run_summary(self) -> dict:
        """Aggregate the ledger: run counts per command and total runtime."""
        if not self.ledger_file.exists():
            return {"total_runs": 0, "commands": {}, "failed_runs": 0, "total_elapsed_s": 0.0}

        total_runs = 0
        failed = 0
        total_elapsed = 0.0
        commands: Dict[str, int] = {}

        with open(self.ledger_file, 'r') as f:
            for line in f:
                entry = json.loads(line)
                total_runs += 1
                commands[entry['command']] = commands.get(entry['command'], 0) + 1
                if entry.get('exit_code'):
                    failed += 1
                if entry.get('elapsed_s'):
                    total_elapsed += entry['elapsed_s']

        return {
            "total_runs": total_runs,
            "commands": commands,
            "failed_runs": failed,
            "total_elapsed_s": round(total_elapsed, 4),
            "log_file": str(self.ledger_file)
        }


def setup_logging(log_level: str = "WARNING", log_dir: Optional[str] = None) -> Optional[RunLogger]:
    """
    Setup application logging: console handler on stderr, plus a dated
    file handler when log_dir is given.
    Returns a RunLogger writing into log_dir, or None without one.
    """
    logger = logging.getLogger()
    logger.setLevel(logging.DEBUG if log_dir else getattr(logging, log_level.upper()))

    # Clear existing handlers
    logger.handlers = []

    # Console handler; stdout carries results only
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(getattr(logging, log_level.upper()))
    console_formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%H:%M:%S'
    )
    console_handler.setFormatter(console_formatter)
    logger.addHandler(console_handler)

    if not log_dir:
        return None

    Path(log_dir).mkdir(parents=True, exist_ok=True)
    date_str = datetime.now().strftime("%Y%m%d")
    file_handler = logging.FileHandler(Path(log_dir) / f"netdist_{date_str}.log")
    file_handler.setLevel(logging.DEBUG)
    file_formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    file_handler.setFormatter(file_formatter)
    logger.addHandler(file_handler)

    return RunLogger(log_dir=log_dir)

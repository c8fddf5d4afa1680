"""Configuration management for maxips."""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from . import exactmath

_TRUE = {"1", "true", "yes", "on"}


def _env_flag(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in _TRUE


@dataclass
class Config:
    """maxips configuration."""

    threads: int = 1
    two_squares_threshold: int = exactmath.DEFAULT_TWO_SQUARES_THRESHOLD
    log_level: str = "WARNING"
    debug_checks: bool = False
    timestamps: bool = False

    @classmethod
    def from_env(cls) -> "Config":
        """Load configuration from environment variables."""
        return cls(
            threads=max(1, int(os.getenv("MAXIPS_THREADS", "1"))),
            two_squares_threshold=int(
                os.getenv(
                    "MAXIPS_TWO_SQUARES_THRESHOLD", str(exactmath.DEFAULT_TWO_SQUARES_THRESHOLD)
                )
            ),
            log_level=os.getenv("MAXIPS_LOG_LEVEL", "WARNING").upper(),
            debug_checks=_env_flag("MAXIPS_DEBUG_CHECKS", False),
            timestamps=_env_flag("MAXIPS_TIMESTAMPS", False),
        )

    @classmethod
    def from_file(cls, path: Optional[Union[Path, str]] = None) -> "Config":
        """Load configuration from a YAML file; environment variables win over the file."""
        path = Path(path) if path is not None else cls.default_path()

        if not path.exists():
            return cls.from_env()

        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}

        cfg = cls(
            threads=max(1, int(data.get("threads", 1))),
            two_squares_threshold=int(
                data.get("two_squares_threshold", exactmath.DEFAULT_TWO_SQUARES_THRESHOLD)
            ),
            log_level=str(data.get("log_level", "WARNING")).upper(),
            debug_checks=bool(data.get("debug_checks", False)),
            timestamps=bool(data.get("timestamps", False)),
        )

        env = cls.from_env()
        if "MAXIPS_THREADS" in os.environ:
            cfg.threads = env.threads
        if "MAXIPS_TWO_SQUARES_THRESHOLD" in os.environ:
            cfg.two_squares_threshold = env.two_squares_threshold
        if "MAXIPS_LOG_LEVEL" in os.environ:
            cfg.log_level = env.log_level
        if "MAXIPS_DEBUG_CHECKS" in os.environ:
            cfg.debug_checks = env.debug_checks
        if "MAXIPS_TIMESTAMPS" in os.environ:
            cfg.timestamps = env.timestamps
        return cfg

    @classmethod
    def load(cls) -> "Config":
        """Load configuration from all sources (file + env override)."""
        return cls.from_file()

    @staticmethod
    def default_path() -> Path:
        return Path.home() / ".config" / "maxips" / "config.yaml"

    def apply(self) -> None:
        """Push process-wide settings into the arithmetic kernels."""
        exactmath.set_two_squares_threshold(self.two_squares_threshold)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "threads": self.threads,
            "two_squares_threshold": self.two_squares_threshold,
            "log_level": self.log_level,
            "debug_checks": self.debug_checks,
            "timestamps": self.timestamps,
        }

    def save(self, path: Optional[Union[Path, str]] = None) -> Path:
        save_path = Path(path) if path is not None else self.default_path()
        save_path.parent.mkdir(parents=True, exist_ok=True)
        with open(save_path, "w", encoding="utf-8") as f:
            yaml.safe_dump(self.to_dict(), f, sort_keys=True)
        return save_path

import os
from dotenv import load_dotenv
from typing import Dict, Any

# Load environment variables
load_dotenv()


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


class Config:
    """Centralized configuration for the André-Quillen engine"""

    # Window limits
    AQ_MAX_WINDOW = _int_env("AQ_MAX_WINDOW", 40)
    AQ_DEFAULT_LENGTH_BOUND = _int_env("AQ_DEFAULT_LENGTH_BOUND", 12)

    # Caching of bases and catalog models
    AQ_CACHE_SIZE = _int_env("AQ_CACHE_SIZE", 512)

    # Logging and reporting
    AQ_LOG_LEVEL = os.getenv("AQ_LOG_LEVEL", "WARNING").upper()
    DEBUG_MODE = os.getenv("DEBUG_MODE", "False").lower() == "true"
    AQ_REPORT_FORMAT = os.getenv("AQ_REPORT_FORMAT", "text").lower()

    REPORT_FORMATS = ("text", "json")
    LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

    @classmethod
    def log_level(cls) -> str:
        return "DEBUG" if cls.DEBUG_MODE else cls.AQ_LOG_LEVEL

    @classmethod
    def as_dict(cls) -> Dict[str, Any]:
        return {
            "AQ_MAX_WINDOW": cls.AQ_MAX_WINDOW,
            "AQ_DEFAULT_LENGTH_BOUND": cls.AQ_DEFAULT_LENGTH_BOUND,
            "AQ_CACHE_SIZE": cls.AQ_CACHE_SIZE,
            "AQ_LOG_LEVEL": cls.log_level(),
            "AQ_REPORT_FORMAT": cls.AQ_REPORT_FORMAT,
        }

    @classmethod
    def validate(cls):
        """Validates that all configured values are usable"""
        if cls.AQ_MAX_WINDOW < 1:
            raise ValueError("AQ_MAX_WINDOW must be at least 1.")
        if cls.AQ_DEFAULT_LENGTH_BOUND < 1:
            raise ValueError("AQ_DEFAULT_LENGTH_BOUND must be at least 1.")
        if cls.AQ_CACHE_SIZE < 1:
            raise ValueError("AQ_CACHE_SIZE must be at least 1.")
        if cls.AQ_REPORT_FORMAT not in cls.REPORT_FORMATS:
            raise ValueError(f"AQ_REPORT_FORMAT must be one of {cls.REPORT_FORMATS}.")
        if cls.AQ_LOG_LEVEL not in cls.LOG_LEVELS:
            raise ValueError(f"AQ_LOG_LEVEL must be one of {cls.LOG_LEVELS}.")
        return True

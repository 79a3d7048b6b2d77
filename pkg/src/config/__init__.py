"""Settings loaded from SUBHOL_ environment variables and .env."""

from src.config.settings import Settings, get_settings

__all__ = ["Settings", "get_settings"]

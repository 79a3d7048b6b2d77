"""Application settings using Pydantic Settings."""

from typing import Optional, Tuple

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Настройки вычислений, загружаемые из окружения (префикс SUBHOL_) и .env."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="SUBHOL_",
        case_sensitive=False,
        extra="ignore"
    )

    # Logging
    log_level: str = Field(default="INFO", description="Logging level")
    log_file: Optional[str] = Field(default=None, description="Optional log file path")
    log_json: bool = Field(default=False, description="Emit loguru records as JSON lines")

    # Linear algebra
    rank_tol: float = Field(default=1e-9, description="Relative singular-value cutoff for spans")
    holonomy_rank_tol: float = Field(
        default=1e-6, description="Rank tolerance for spans of transported generators and loop logs"
    )
    classifier_tol: float = Field(default=1e-10, description="Tolerance of the Lorentzian classifier")

    # Transport ODE
    ode_tol: float = Field(default=1e-10, description="Target Richardson error of a transport")
    ode_min_step: float = Field(default=1e-6, description="Smallest step in curve parameter")
    ode_initial_steps: int = Field(default=16, description="RK4 steps per segment before halving")

    # Curves
    horizontality_tol: float = Field(default=1e-8, description="Max |theta(dot gamma)| on horizontal curves")
    horizontality_samples: int = Field(default=100, description="Samples per segment for curve checks")
    log_max_defect: float = Field(default=0.5, description="Matrix log only when ||M - I|| is below this")

    # Holonomy budgets
    loop_scales: Tuple[float, ...] = Field(default=(0.05, 0.1, 0.2), description="Loop sizes")
    loops_per_plane: int = Field(default=64, description="Loops per coordinate 2-plane")
    ambrose_singer_paths: int = Field(default=16, description="Random horizontal paths in Ambrose-Singer mode")
    path_scale: float = Field(default=0.3, description="Coordinate length of random paths")

    # Reproducibility / parallelism
    seed: int = Field(default=20240917, description="Default random seed")
    workers: int = Field(default=1, description="Thread pool width for curve batches")

    @property
    def tolerances(self) -> dict:
        """Get tolerances as dictionary (echoed into reports)."""
        return {
            "rank_tol": self.rank_tol,
            "holonomy_rank_tol": self.holonomy_rank_tol,
            "classifier_tol": self.classifier_tol,
            "ode_tol": self.ode_tol,
            "horizontality_tol": self.horizontality_tol,
        }


def get_settings() -> Settings:
    """Get application settings instance."""
    return Settings()

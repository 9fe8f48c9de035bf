"""Configuration management using Pydantic Settings"""

from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings with environment variable support"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="CCSURGERY_",
        case_sensitive=False,
        extra="ignore"
    )

    # Logging Configuration
    log_level: str = Field(default="INFO", description="Logging level")
    log_to_file: bool = Field(default=False, description="Also write rotating log files under logs/")

    # Randomized Search Configuration
    default_seed: int = Field(default=20240917, description="Seed used when a command gets no --seed")
    default_trials: int = Field(default=10_000, description="Information-set trials per Pauli type")

    # Budgets
    exhaustive_budget: int = Field(
        default=5_000_000,
        description="Largest C(N, w) table built by one meet-in-the-middle half"
    )
    bfs_max_elements: int = Field(
        default=4_000_000,
        description="Largest group closure held in memory by generation checks"
    )

    # Execution
    jobs: int = Field(default=1, description="Worker processes for scans and trial batches")
    show_progress: bool = Field(default=True, description="Show tqdm progress bars")

    # Reports
    report_schema_version: str = Field(default="1.0", description="Schema version stamped on reports")

    @property
    def project_root(self) -> Path:
        """Get project root directory"""
        return Path(__file__).parent.parent.parent

    @property
    def data_dir(self) -> Path:
        """Get data directory"""
        return self.project_root / "data"

    @property
    def seeds_dir(self) -> Path:
        """Get directory holding the shipped seed documents"""
        return self.data_dir / "seeds"

    @property
    def logs_dir(self) -> Path:
        """Get log directory"""
        return self.project_root / "logs"


# Global settings instance
settings = Settings()

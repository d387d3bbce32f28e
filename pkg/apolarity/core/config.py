"""
Application Configuration
"""
try:
    from pydantic_settings import BaseSettings
except ImportError:
    # Fallback for older pydantic versions
    from pydantic import BaseSettings
from dotenv import load_dotenv

load_dotenv()


class Settings(BaseSettings):
    """Application settings"""

    # Application Configuration
    APP_NAME: str = "Apolarity Toolkit"
    APP_VERSION: str = "1.0.0"
    LOG_LEVEL: str = "WARNING"

    # Arithmetic Configuration
    FIELD: str = "q"  # "q" or "fp:<odd prime>"

    # Local ring computations
    TRUNCATION_CEILING: int = 64  # largest truncation bound tried before NotArtinian

    # Sweep Configuration
    SWEEP_WORKERS: int = 1

    class Config:
        env_prefix = "APOLAR_"
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"


# Global settings instance
settings = Settings()

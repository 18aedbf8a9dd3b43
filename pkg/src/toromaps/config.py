from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Logging Settings
    LOG_LEVEL: str = "INFO"
    LOG_FILE_PATH: str = ""  # Empty string disables the file sink

    # Enumeration Settings
    ENUM_EDGE_CAP: int = 6  # Desk-scale cap for exhaustive generation
    ENUM_JOBS: int = 1
    ENUM_SPLIT_DEPTH: int = 4  # Search-tree depth at which work is partitioned

    # Series Settings
    SERIES_ORDER: int = 10  # Default truncation (total degree)

    # Orientation Settings
    MINIMALIZE_STEP_FACTOR: int = 1  # Step bound is factor * faces**2
    REBALANCE_MAX_STEPS: int = 1000
    VERIFY_ROOT_FACES: bool = False  # Recompute canonical biorientations for all 3 root faces

    model_config = SettingsConfigDict(env_file=".env", env_prefix="TOROMAPS_", extra="ignore")


settings = Settings()

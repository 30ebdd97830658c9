# utils/config_loader.py
import logging
import os
from typing import Optional

import yaml
from pydantic import BaseModel, Field, ValidationError

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "FCPOINCARE_CONFIG"
DEFAULT_CONFIG_NAME = "verify_config.yaml"


def load_yaml_config(file_path: str) -> dict:
    """
    Loads a YAML configuration file safely.

    Args:
        file_path (str): The absolute path to the YAML file.

    Returns:
        dict: The configuration as a dictionary, or an empty dict on error.
    """
    if not os.path.exists(file_path):
        logger.error(f"Configuration file not found at: {file_path}")
        return {}

    try:
        with open(file_path, 'r') as f:
            loaded = yaml.safe_load(f)
    except yaml.YAMLError as e:
        logger.error(f"Error parsing YAML file {file_path}: {e}")
        return {}
    except Exception as e:
        logger.error(f"An unexpected error occurred while loading {file_path}: {e}")
        return {}

    if loaded is None:
        return {}
    if not isinstance(loaded, dict):
        logger.error(f"Configuration file {file_path} does not hold a mapping.")
        return {}
    return loaded


class VerifySettings(BaseModel):
    """Tunables for the brute-force oracles and the verification battery."""

    permutation_cap: int = Field(default=11, ge=1)
    chain_warning_rank: int = Field(default=12, ge=1)
    random_instances: int = Field(default=200, ge=0)
    random_seed: int = 20240601
    random_max_dim: int = Field(default=7, ge=1)
    random_entry_bound: int = Field(default=9, ge=0)
    triangle_oracle_limit: int = Field(default=12, ge=0)
    oracle_count_limit: int = Field(default=14, ge=0)


def default_config_path() -> str:
    env_path = os.getenv(CONFIG_ENV_VAR)
    if env_path:
        return env_path
    src_dir = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    project_root = os.path.dirname(src_dir)
    return os.path.join(project_root, 'config', DEFAULT_CONFIG_NAME)


def load_verify_settings(file_path: Optional[str] = None) -> VerifySettings:
    """
    Builds VerifySettings from the YAML file, falling back to the model
    defaults for anything missing or invalid.
    """
    path = file_path or default_config_path()
    if not os.path.exists(path):
        logger.debug(f"No verification config at {path}; using defaults.")
        return VerifySettings()

    raw = load_yaml_config(path)
    try:
        return VerifySettings(**raw)
    except ValidationError as e:
        logger.warning(f"Invalid values in {path}, using defaults instead: {e}")
        return VerifySettings()

"""
Configuration management for Slupecki Lab
"""

import os
import json

import psutil


DEFAULT_CONFIG = {
    # Search budget
    "budget_nodes": 100_000_000,
    "timeout_s": 300,
    "threads": 1,                   # 0 = one worker per physical core
    "deterministic": True,          # canonical (lex-least) witnesses
    # Relation preservation
    "theta_exhaustive_limit": 200_000,
    "theta_samples": 20_000,
    "seed": 0,
    # Logging
    "log_level": "INFO",
    "log_to_file": True,
    "log_days_to_keep": 30,
}

ENV_HOME = "SLUPECKI_HOME"
ENV_THREADS = "SLUPECKI_THREADS"


def get_data_dir():
    """Get the application data directory"""
    data_dir = os.environ.get(ENV_HOME) or os.path.join(os.path.expanduser('~'), 'Slupecki')
    os.makedirs(data_dir, exist_ok=True)
    return data_dir


def get_config_paths():
    """Get list of possible config file locations"""
    return [
        os.path.join(get_data_dir(), 'config.json'),
        'config.json',  # Current working directory fallback
    ]


def _apply_env(config):
    threads = os.environ.get(ENV_THREADS)
    if threads:
        try:
            config["threads"] = int(threads)
        except ValueError:
            pass
    return config


def load_config(logger=None, path=None):
    """Load configuration, merging the first config file found over the defaults"""
    candidates = [path] if path else get_config_paths()

    for candidate in candidates:
        try:
            candidate = os.path.abspath(candidate)
            if logger:
                logger.debug(f"Trying to load configuration from: {candidate}")

            if os.path.exists(candidate):
                with open(candidate, 'r') as f:
                    loaded = json.load(f)

                config = DEFAULT_CONFIG.copy()
                config.update({k: v for k, v in loaded.items() if k in DEFAULT_CONFIG})
                unknown = sorted(set(loaded) - set(DEFAULT_CONFIG))
                if unknown and logger:
                    logger.warning(f"Ignoring unknown config keys: {', '.join(unknown)}")

                if logger:
                    logger.info(f"Config loaded from: {candidate}")

                return _apply_env(config), candidate

        except PermissionError:
            if logger:
                logger.warning(f"Permission denied: {candidate}")
            continue
        except (OSError, ValueError) as e:
            if logger:
                logger.warning(f"Error loading from {candidate}: {e}")
            continue

    if logger:
        logger.debug("Using default configuration")

    return _apply_env(DEFAULT_CONFIG.copy()), None


def save_config(config, config_path=None, logger=None):
    """Save configuration to config.json"""
    path = config_path or os.path.join(get_data_dir(), 'config.json')
    try:
        config_dir = os.path.dirname(path)
        if config_dir:
            os.makedirs(config_dir, exist_ok=True)

        with open(path, 'w') as f:
            json.dump(config, f, indent=4, sort_keys=True)

        if logger:
            logger.info(f"Configuration saved to {path}")

        return True, path

    except OSError as e:
        if logger:
            logger.error(f"Error saving to {path}: {e}")
        return False, None


def resolve_threads(config):
    """Number of worker processes; 0 means one per physical core"""
    threads = int(config.get("threads", 1))
    if threads <= 0:
        threads = psutil.cpu_count(logical=False) or psutil.cpu_count() or 1
    return max(1, threads)

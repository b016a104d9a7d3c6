"""
Logging utilities for Slupecki Lab
"""

import os
import sys
import glob
import logging
from datetime import datetime, timedelta

from .config import get_data_dir

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def get_logs_dir():
    """Get or create logs directory in the app data folder"""
    logs_dir = os.path.join(get_data_dir(), 'logs')
    os.makedirs(logs_dir, exist_ok=True)
    return logs_dir


def setup_logger(name, prefix="", level="INFO", to_file=True):
    """Setup a logger with a stderr console handler and an optional file handler"""
    logger = logging.getLogger(name)
    logger.setLevel(level)

    # Avoid duplicate handlers
    if not logger.handlers:
        formatter = logging.Formatter(LOG_FORMAT)

        if to_file:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            filename = f"{prefix}_{timestamp}.log" if prefix else f"{timestamp}.log"
            try:
                file_handler = logging.FileHandler(
                    os.path.join(get_logs_dir(), filename), encoding='utf-8')
                file_handler.setLevel(level)
                file_handler.setFormatter(formatter)
                logger.addHandler(file_handler)
            except OSError as e:
                print(f"[!] Could not open log file: {e}", file=sys.stderr)

        # stdout carries reports, so the console handler writes to stderr
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)
    else:
        for handler in logger.handlers:
            handler.setLevel(level)

    return logger


def log_callback_for(logger, level=logging.INFO):
    """Adapt a logger into the `log_callback(msg)` hook used by long searches"""
    def callback(msg):
        logger.log(level, msg)
    return callback


def cleanup_old_logs(logs_dir=None, days_to_keep=30):
    """Clean up old log files"""
    if logs_dir is None:
        logs_dir = get_logs_dir()

    cutoff_date = datetime.now() - timedelta(days=days_to_keep)
    removed = []
    for log_file in glob.glob(os.path.join(logs_dir, "*.log")):
        try:
            file_time = datetime.fromtimestamp(os.path.getmtime(log_file))
            if file_time < cutoff_date:
                os.remove(log_file)
                removed.append(os.path.basename(log_file))
        except OSError as e:
            print(f"[!] Error removing log file {log_file}: {e}", file=sys.stderr)
    return removed

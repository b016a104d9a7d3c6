"""
Tests for configuration, logging setup and search budgets
"""

import json
import logging
import os
import time

import pytest

from slupecki.budget import Budget, BudgetStatus, BudgetTracker, SearchInterrupted, SearchStats
from slupecki.config import DEFAULT_CONFIG, get_data_dir, load_config, resolve_threads, save_config
from slupecki.logging_setup import cleanup_old_logs, get_logs_dir, log_callback_for, setup_logger


@pytest.fixture
def in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


class TestConfig:
    def test_data_dir_follows_environment(self, slupecki_home):
        assert get_data_dir() == str(slupecki_home)
        assert os.path.isdir(slupecki_home)

    def test_defaults_without_a_file(self, in_tmp):
        config, path = load_config()
        assert path is None
        assert config == DEFAULT_CONFIG

    def test_file_overrides_defaults(self, in_tmp):
        ok, path = save_config({"budget_nodes": 10, "colour": "blue"})
        assert ok
        config, loaded_from = load_config()
        assert loaded_from == path
        assert config["budget_nodes"] == 10
        assert config["timeout_s"] == DEFAULT_CONFIG["timeout_s"]
        assert "colour" not in config

    def test_explicit_path(self, in_tmp):
        path = in_tmp / "custom.json"
        path.write_text(json.dumps({"threads": 3}))
        config, _ = load_config(path=str(path))
        assert config["threads"] == 3

    def test_broken_file_falls_back(self, in_tmp):
        path = in_tmp / "broken.json"
        path.write_text("{not json")
        config, loaded_from = load_config(path=str(path))
        assert loaded_from is None
        assert config == DEFAULT_CONFIG

    def test_threads_from_environment(self, in_tmp, monkeypatch):
        monkeypatch.setenv("SLUPECKI_THREADS", "4")
        config, _ = load_config()
        assert config["threads"] == 4

    def test_resolve_threads(self):
        assert resolve_threads({"threads": 2}) == 2
        assert resolve_threads({"threads": 0}) >= 1


class TestLogging:
    def test_console_and_file_handlers(self):
        logger = setup_logger("slupecki.test-logging", prefix="t", level="DEBUG")
        try:
            kinds = {type(h) for h in logger.handlers}
            assert logging.FileHandler in kinds
            assert logging.StreamHandler in kinds
            assert os.listdir(get_logs_dir())
            setup_logger("slupecki.test-logging", prefix="t", level="DEBUG")
            assert len(logger.handlers) == 2
        finally:
            for handler in list(logger.handlers):
                logger.removeHandler(handler)
                handler.close()

    def test_callback_logs_at_level(self, caplog):
        logger = logging.getLogger("slupecki.test-callback")
        with caplog.at_level(logging.INFO, logger="slupecki.test-callback"):
            log_callback_for(logger)("[SEARCH] progress")
        assert "[SEARCH] progress" in caplog.text

    def test_cleanup_removes_old_files(self, tmp_path):
        old = tmp_path / "old.log"
        new = tmp_path / "new.log"
        old.write_text("x")
        new.write_text("y")
        stamp = time.time() - 40 * 86400
        os.utime(old, (stamp, stamp))
        assert cleanup_old_logs(str(tmp_path), days_to_keep=30) == ["old.log"]
        assert new.exists()


class TestBudget:
    def test_node_budget(self):
        tracker = BudgetTracker(Budget(max_nodes=3))
        for _ in range(3):
            tracker.tick()
        with pytest.raises(SearchInterrupted):
            tracker.tick()
        assert tracker.exhausted
        assert tracker.stats.status == BudgetStatus.NODE_BUDGET

    def test_from_config(self):
        budget = Budget.from_config({"budget_nodes": 0, "timeout_s": 5})
        assert budget.max_nodes is None
        assert budget.timeout_s == 5.0

    def test_split(self):
        shares = Budget(max_nodes=10, timeout_s=2).split(3)
        assert [b.max_nodes for b in shares] == [4, 3, 3]
        assert all(b.timeout_s == 2 for b in shares)
        assert Budget().split(2) == [Budget(), Budget()]

    def test_finish_records_memory(self):
        stats = BudgetTracker().finish()
        assert stats.complete
        assert stats.peak_rss_bytes > 0

    def test_merge(self):
        a = SearchStats(nodes=5, solutions=1)
        b = SearchStats(nodes=7, status=BudgetStatus.TIMEOUT)
        a.merge(b)
        assert a.nodes == 12
        assert a.status == BudgetStatus.TIMEOUT
        assert a.to_dict()["status"] == "timeout"

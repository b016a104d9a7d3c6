"""
Tests for the main.py entry point
"""

import ast
import os
import signal
import sys

import main

MAIN_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "main.py")


def _main_block():
    with open(MAIN_PATH) as f:
        tree = ast.parse(f.read())
    for node in tree.body:
        if isinstance(node, ast.If) and ast.unparse(node.test) == "__name__ == '__main__'":
            return node.body
    raise AssertionError("main.py has no __main__ block")


def test_freeze_support_runs_first():
    first = _main_block()[0]
    assert ast.unparse(first) == "multiprocessing.freeze_support()"


def test_help_without_arguments(capsys, monkeypatch):
    monkeypatch.setattr(sys, "argv", ["main.py"])
    previous = signal.getsignal(signal.SIGINT)
    try:
        assert main.main() == 0
    finally:
        signal.signal(signal.SIGINT, previous)
    out = capsys.readouterr().out
    assert "Usage:" in out
    assert "ordinal-sum" in out


def test_dispatches_to_cli(capsys, monkeypatch):
    monkeypatch.setattr(sys, "argv", ["main.py", "bmk", "2", "2", "--no-log-file"])
    previous = signal.getsignal(signal.SIGINT)
    try:
        assert main.main() == 0
    finally:
        signal.signal(signal.SIGINT, previous)
    assert capsys.readouterr().out.strip() == "4"

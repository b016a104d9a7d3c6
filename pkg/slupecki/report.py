"""
Run reports: one JSON document per command, rendered as text on request
"""

import json
from dataclasses import dataclass, field

from . import __version__
from .fileio import file_digest


@dataclass
class Report:
    command: list
    payload: dict
    input_digests: dict = field(default_factory=dict)
    stats: dict | None = None
    deterministic: bool = True
    version: str = __version__

    @classmethod
    def for_inputs(cls, command, payload, paths, **kwargs):
        digests = {p: file_digest(p) for p in paths if p}
        return cls(list(command), payload, digests, **kwargs)

    def to_dict(self):
        return {
            "command": self.command,
            "version": self.version,
            "deterministic": self.deterministic,
            "input_digests": self.input_digests,
            "payload": self.payload,
            "stats": self.stats,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self):
        lines = []
        _render(self.payload, lines, "")
        if self.stats:
            lines.append(f"stats: {self.stats.get('nodes', 0)} nodes, "
                         f"{self.stats.get('elapsed_s', 0.0):.2f}s, {self.stats.get('status')}")
        if not self.deterministic:
            lines.append("note: non-canonical (parallel) run")
        return "\n".join(lines)


def _render(value, lines, indent):
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item and not _flat(item):
                lines.append(f"{indent}{key}:")
                _render(item, lines, indent + "  ")
            else:
                lines.append(f"{indent}{key}: {_inline(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                lines.append(f"{indent}-")
                _render(item, lines, indent + "  ")
            else:
                lines.append(f"{indent}- {_inline(item)}")
    else:
        lines.append(f"{indent}{_inline(value)}")


def _flat(item):
    if isinstance(item, dict):
        return False
    return all(not isinstance(x, (dict, list)) for x in item) and len(item) <= 32


def _inline(item):
    if item is None:
        return "unknown"
    if isinstance(item, bool):
        return "yes" if item else "no"
    if isinstance(item, list):
        return " ".join(_inline(x) for x in item) if item else "(none)"
    return str(item)

"""Append-only JSON-lines event log.

Each record is one JSON object on one line. Appends are flushed and
fsynced before the caller proceeds, so a record is either fully on disk
or not there at all. A partial final line (the mark of a crash mid
write) is tolerated and dropped on replay; a broken line anywhere else
means real corruption and raises.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from ..errors import CorruptEventLog


class EventLog:
    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._handle = open(self.path, "a", encoding="utf-8")

    def append(self, event: dict) -> None:
        line = json.dumps(event, sort_keys=True, ensure_ascii=False)
        self._handle.write(line + "\n")
        self._handle.flush()
        os.fsync(self._handle.fileno())

    def replay(self) -> list[dict]:
        if not self.path.exists():
            return []
        raw = self.path.read_text(encoding="utf-8")
        lines = raw.split("\n")
        events: list[dict] = []
        for i, line in enumerate(lines):
            if not line.strip():
                continue
            try:
                events.append(json.loads(line))
            except json.JSONDecodeError:
                tail = any(rest.strip() for rest in lines[i + 1 :])
                if tail:
                    raise CorruptEventLog(
                        f"{self.path}: undecodable record on line {i + 1}"
                    ) from None
                break  # torn final write, drop it
        return events

    def close(self) -> None:
        self._handle.close()

    def __enter__(self) -> "EventLog":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

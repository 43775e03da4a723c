"""Append-only JSON-lines event log with periodic snapshots.

Every mutation is one event; restarting the service replays the log through
the same apply functions, which reproduces the in-memory state (and therefore
the case snapshots) byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Callable, Iterator

SNAPSHOT_EVERY = 100


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


class EventStore:
    def __init__(self, data_dir: Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.log_path = self.data_dir / "events.jsonl"
        self.snapshot_dir = self.data_dir / "snapshots"
        self.seq = 0

    def replay(self, apply: Callable[[dict], None]) -> int:
        """Feed every stored event through ``apply``; returns the count."""
        if not self.log_path.exists():
            return 0
        count = 0
        with self.log_path.open("r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                event = json.loads(line)
                self.seq = event["seq"]
                apply(event)
                count += 1
        return count

    def append(
        self, type_: str, at: str, data: dict, snapshot: Callable[[], dict] | None = None
    ) -> dict:
        self.seq += 1
        event = {"seq": self.seq, "type": type_, "at": at, "data": data}
        with self.log_path.open("a", encoding="utf-8") as fh:
            fh.write(canonical_json(event) + "\n")
        if snapshot is not None and self.seq % SNAPSHOT_EVERY == 0:
            self._write_snapshot(snapshot())
        return event

    def _write_snapshot(self, doc: dict) -> None:
        self.snapshot_dir.mkdir(parents=True, exist_ok=True)
        path = self.snapshot_dir / f"{self.seq:08d}.json"
        path.write_text(canonical_json({"seq": self.seq, **doc}), encoding="utf-8")

    def events(self) -> Iterator[dict]:
        if not self.log_path.exists():
            return iter(())
        with self.log_path.open("r", encoding="utf-8") as fh:
            return iter([json.loads(l) for l in fh if l.strip()])

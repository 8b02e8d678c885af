"""Optional on-disk memo of enumeration results.

The file is JSON::

    {"format": "finalg-enumeration-memo", "version": 1,
     "entries": {"Set:Word/3": ["<algebra text>", ...], ...}}

Each entry lists the algebras of exactly that size, in enumeration order,
written in the algebra file format.  A file with a different ``version`` is
ignored and overwritten on the next save.
"""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .formats import format_algebra, parse_algebra
from .monads import MonadSpec, TAlgebra, check_t_algebra, enumerate_t_algebras

MEMO_FORMAT = "finalg-enumeration-memo"
MEMO_VERSION = 1


class EnumerationMemo:
    def __init__(self, path=None):
        self.path = None if path is None else Path(path)
        self.entries: dict[str, list[str]] = {}
        self.dirty = False
        if self.path is not None and self.path.exists():
            try:
                data = json.loads(self.path.read_text(encoding="utf-8"))
            except (OSError, ValueError):
                data = None
            if isinstance(data, dict) and data.get("format") == MEMO_FORMAT and data.get("version") == MEMO_VERSION:
                self.entries = {k: list(v) for k, v in data.get("entries", {}).items()}

    @staticmethod
    def key(spec: MonadSpec, size: int) -> str:
        return f"{spec.name}/{size}"

    def enumerate(self, spec: MonadSpec, size: int, *, budget=None, jobs: int = 1) -> list[TAlgebra]:
        k = self.key(spec, size)
        if k in self.entries:
            return [check_t_algebra(spec, parse_algebra(t).algebra) for t in self.entries[k]]
        algs = enumerate_t_algebras(spec, size, budget=budget, jobs=jobs)
        self.entries[k] = [format_algebra(a.algebra) for a in algs]
        self.dirty = True
        return algs

    def save(self):
        if self.path is None or not self.dirty:
            return
        payload = {"format": MEMO_FORMAT, "version": MEMO_VERSION, "entries": self.entries}
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".memo-")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
        os.replace(tmp, self.path)
        self.dirty = False


def enumerate_up_to(spec: MonadSpec, n: int, *, memo: EnumerationMemo | None = None, budget=None,
                    jobs: int = 1) -> list[TAlgebra]:
    """All T-algebras of size ``1..n`` in search order (by size, then enumeration order)."""
    out = []
    for size in range(1, n + 1):
        if memo is not None:
            out.extend(memo.enumerate(spec, size, budget=budget, jobs=jobs))
        else:
            out.extend(enumerate_t_algebras(spec, size, budget=budget, jobs=jobs))
    return out

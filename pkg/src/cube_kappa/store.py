"""Task records, the on-disk results cache, and graph file formats."""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO

from .graph import Graph

log = logging.getLogger(__name__)

CACHE_ENV = "CUBE_KAPPA_CACHE"
GRAPH_FORMATS = ("edgelist", "dimacs")


@dataclass
class TaskRecord:
    task: str
    params: dict
    result: dict
    version: str
    duration: float = 0.0

    def to_dict(self) -> dict:
        # field order is part of the output contract
        return {
            "task": self.task,
            "version": self.version,
            "params": self.params,
            "result": self.result,
            "duration": self.duration,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "TaskRecord":
        return cls(data["task"], data["params"], data["result"], data["version"],
                   data.get("duration", 0.0))

    @classmethod
    def from_json(cls, text: str) -> "TaskRecord":
        return cls.from_dict(json.loads(text))


def canonical_params(params: dict) -> str:
    return json.dumps(params, sort_keys=True, separators=(",", ":"))


def cache_key(task: str, params: dict, version: str) -> str:
    blob = f"{task}\n{canonical_params(params)}\n{version}".encode()
    return hashlib.sha256(blob).hexdigest()


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "cube_kappa"


@dataclass
class ResultCache:
    directory: Path = field(default_factory=default_cache_dir)

    def __post_init__(self):
        self.directory = Path(self.directory)

    def path_for(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def lookup(self, key: str) -> TaskRecord | None:
        path = self.path_for(key)
        if not path.exists():
            return None
        try:
            return TaskRecord.from_json(path.read_text())
        except (OSError, ValueError, KeyError, TypeError) as exc:
            log.warning("corrupt cache entry %s (%s); recomputing", path, exc)
            return None

    def store(self, key: str, record: TaskRecord) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path_for(key)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(record.to_json())
                fh.write("\n")
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return path

    def entries(self) -> list[Path]:
        if not self.directory.is_dir():
            return []
        return sorted(self.directory.glob("*.json"))

    def clear(self) -> int:
        paths = self.entries()
        for p in paths:
            p.unlink()
        return len(paths)


# ---------------------------------------------------------------- graph files


def format_graph(g: Graph, fmt: str = "edgelist") -> str:
    """Edge list (``p V E`` then ``u v``) or DIMACS (``p edge V E`` then ``e u+1 v+1``)."""
    edges = list(g.edges())
    if fmt == "edgelist":
        lines = [f"p {g.vertex_count} {len(edges)}"]
        lines += [f"{u} {v}" for u, v in edges]
    elif fmt == "dimacs":
        lines = [f"p edge {g.vertex_count} {len(edges)}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in edges]
    else:
        raise ValueError(f"unknown graph format {fmt!r}; choose from {GRAPH_FORMATS}")
    return "\n".join(lines) + "\n"


def export_graph(g: Graph, fmt: str, destination: str | os.PathLike | IO[str]) -> None:
    text = format_graph(g, fmt)
    if hasattr(destination, "write"):
        destination.write(text)
        return
    Path(destination).write_text(text)


def parse_graph(text: str) -> Graph:
    """Read either export format back; comment lines start with ``c``."""
    size = None
    declared = None
    edges = []
    offset = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = line.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if size is not None:
                raise ValueError(f"line {lineno}: second header")
            if len(tokens) == 4 and tokens[1] == "edge":
                offset = 1
                tokens = tokens[1:]
            elif len(tokens) != 3:
                raise ValueError(f"line {lineno}: malformed header {line!r}")
            size, declared = int(tokens[1]), int(tokens[2])
            continue
        if size is None:
            raise ValueError(f"line {lineno}: edge before header")
        if tokens[0] == "e":
            tokens = tokens[1:]
        if len(tokens) != 2:
            raise ValueError(f"line {lineno}: malformed edge {line!r}")
        edges.append((int(tokens[0]) - offset, int(tokens[1]) - offset))
    if size is None:
        raise ValueError("missing header line")
    g = Graph.from_edges(size, edges)
    if g.edge_count != declared:
        raise ValueError(f"header declares {declared} edges, found {g.edge_count}")
    return g


def read_graph(source: str | os.PathLike) -> Graph:
    return parse_graph(Path(source).read_text())

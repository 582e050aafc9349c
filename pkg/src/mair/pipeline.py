"""Stage-based pipeline orchestration with content-addressed caching.

A pipeline file is a plain-text stage list.  Grammar, one directive per
line (blank lines and ``#`` comments ignored)::

    stage NAME
    dep PATH        # repeatable; input file or another stage's output
    out PATH        # repeatable
    cmd ARGS...     # exactly one; a toolkit CLI command line

Paths are relative to the pipeline file's directory.  Stages run in
topological order; a stage is skipped when the digests of all its inputs,
its command string, and its recorded outputs are unchanged since the last
run.  Digests are SHA-256 over file bytes.
"""

from __future__ import annotations

import hashlib
import json
import shlex
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

__all__ = ["Stage", "PipelineError", "ExecutionReport", "Pipeline", "load_pipeline"]


class PipelineError(RuntimeError):
    pass


@dataclass(frozen=True)
class Stage:
    name: str
    deps: tuple[str, ...]
    outs: tuple[str, ...]
    command: str


@dataclass
class ExecutionReport:
    executed: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    digests: dict[str, dict[str, str]] = field(default_factory=dict)


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def load_pipeline(path: str | Path) -> list[Stage]:
    stages: list[Stage] = []
    name: str | None = None
    deps: list[str] = []
    outs: list[str] = []
    command: str | None = None

    def flush() -> None:
        nonlocal name, deps, outs, command
        if name is None:
            return
        if command is None:
            raise PipelineError(f"stage {name!r} has no cmd line")
        stages.append(Stage(name=name, deps=tuple(deps), outs=tuple(outs), command=command))
        name, deps, outs, command = None, [], [], None

    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            directive, _, rest = line.partition(" ")
            rest = rest.strip()
            if directive == "stage":
                flush()
                name = rest
            elif directive == "dep":
                deps.append(rest)
            elif directive == "out":
                outs.append(rest)
            elif directive == "cmd":
                command = rest
            else:
                raise PipelineError(f"line {line_no}: unknown directive {directive!r}")
    flush()
    names = [s.name for s in stages]
    if len(names) != len(set(names)):
        raise PipelineError("duplicate stage names")
    return stages


class Pipeline:
    """Executable stage DAG bound to a runner callable.

    ``runner`` receives the argv list of one stage command (the toolkit CLI
    subcommand plus flags) and must raise on failure.
    """

    def __init__(
        self,
        stages: Sequence[Stage],
        base_dir: str | Path,
        runner: Callable[[list[str]], None],
        state_path: str | Path | None = None,
    ) -> None:
        self.stages = list(stages)
        self.base_dir = Path(base_dir)
        self.runner = runner
        self.state_path = Path(state_path) if state_path else self.base_dir / ".mair-state.json"
        self._by_name = {s.name: s for s in self.stages}
        self._producers = {out: s.name for s in self.stages for out in s.outs}
        self._order = self._topological_order()

    # -- DAG ---------------------------------------------------------------

    def _topological_order(self) -> list[str]:
        upstream = {
            s.name: sorted({self._producers[d] for d in s.deps if d in self._producers})
            for s in self.stages
        }
        order: list[str] = []
        mark: dict[str, int] = {}  # 1 visiting, 2 done

        def visit(node: str, path: list[str]) -> None:
            state = mark.get(node, 0)
            if state == 2:
                return
            if state == 1:
                cycle = path[path.index(node):] + [node]
                raise PipelineError(f"stage cycle: {' -> '.join(cycle)}")
            mark[node] = 1
            for parent in upstream[node]:
                visit(parent, path + [node])
            mark[node] = 2
            order.append(node)

        for stage in self.stages:
            visit(stage.name, [])
        return order

    def _required(self, targets: Sequence[str] | None) -> list[str]:
        if not targets:
            return list(self._order)
        for target in targets:
            if target not in self._by_name:
                raise PipelineError(f"unknown stage {target!r}")
        needed: set[str] = set()
        stack = list(targets)
        while stack:
            node = stack.pop()
            if node in needed:
                continue
            needed.add(node)
            stack.extend(
                self._producers[d] for d in self._by_name[node].deps if d in self._producers
            )
        return [n for n in self._order if n in needed]

    # -- state ---------------------------------------------------------------

    def _load_state(self) -> dict:
        if self.state_path.exists():
            return json.loads(self.state_path.read_text(encoding="utf-8"))
        return {}

    def _save_state(self, state: dict) -> None:
        self.state_path.write_text(
            json.dumps(state, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )

    def _fingerprint(self, stage: Stage) -> dict:
        deps = {}
        for dep in stage.deps:
            path = self.base_dir / dep
            if not path.exists():
                raise PipelineError(f"stage {stage.name!r}: missing input {dep}")
            deps[dep] = _digest(path)
        return {"cmd": stage.command, "deps": deps}

    def _is_fresh(self, stage: Stage, state: dict) -> bool:
        record = state.get(stage.name)
        if record is None:
            return False
        fingerprint = self._fingerprint(stage)
        if record.get("cmd") != fingerprint["cmd"] or record.get("deps") != fingerprint["deps"]:
            return False
        for out, digest in record.get("outs", {}).items():
            path = self.base_dir / out
            if not path.exists() or _digest(path) != digest:
                return False
        return set(record.get("outs", {})) == set(stage.outs)

    # -- execution -----------------------------------------------------------

    def run(self, targets: Sequence[str] | None = None, force: bool = False) -> ExecutionReport:
        state = self._load_state()
        report = ExecutionReport()
        for stage_name in self._required(targets):
            stage = self._by_name[stage_name]
            if not force and self._is_fresh(stage, state):
                report.skipped.append(stage_name)
                report.digests[stage_name] = dict(state[stage_name]["outs"])
                continue
            fingerprint = self._fingerprint(stage)
            self.runner(shlex.split(stage.command))
            outs: dict[str, str] = {}
            for out in stage.outs:
                path = self.base_dir / out
                if not path.exists():
                    raise PipelineError(f"stage {stage_name!r} did not produce {out}")
                outs[out] = _digest(path)
            state[stage_name] = {**fingerprint, "outs": outs}
            report.executed.append(stage_name)
            report.digests[stage_name] = outs
            self._save_state(state)
        return report

    def status(self) -> dict[str, str]:
        """Stage name -> "fresh" | "stale" | "missing-input".

        missing-input flags absent source files only; deps produced by
        another stage merely leave the consumer stale until that stage runs.
        """
        state = self._load_state()
        result: dict[str, str] = {}
        for stage_name in self._order:
            stage = self._by_name[stage_name]
            missing = [
                dep
                for dep in stage.deps
                if dep not in self._producers and not (self.base_dir / dep).exists()
            ]
            if missing:
                result[stage_name] = "missing-input"
                continue
            try:
                fresh = self._is_fresh(stage, state)
            except PipelineError:
                fresh = False
            result[stage_name] = "fresh" if fresh else "stale"
        return result

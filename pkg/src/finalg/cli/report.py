"""Running a document and rendering the report as JSON or aligned text."""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .commands import run_command
from .dsl import COMMAND_TARGETS, Command, DSLError, Document, Name
from .serialize import jsonable
from .workspace import Workspace

__all__ = ["Report", "run_doc", "select_commands", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1


@dataclass
class Report:
    seed: int | None
    results: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if any(r["status"] == "error" and r["error"]["kind"] == "dsl" for r in self.results):
            return 2
        return 1 if any(r["status"] == "error" for r in self.results) else 0

    def to_json(self) -> dict:
        return {"schema": SCHEMA_VERSION, "seed": self.seed, "exit_code": self.exit_code,
                "results": self.results}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def text(self) -> str:
        lines = []
        for r in self.results:
            head = f"[{r['index']}] {r['command']} {r['target']}"
            if r["args"]:
                head += " " + " ".join(r["args"])
            lines.append(f"{head}: {r['status']}")
            body = r["result"] if r["status"] == "ok" else r["error"]
            if "seconds" in r:
                body = dict(body, seconds=r["seconds"])
            width = max((len(k) for k in body), default=0)
            for k, v in body.items():
                val = v if isinstance(v, str) else json.dumps(v, separators=(",", ":"))
                lines.append(f"    {k.ljust(width)}  {val}")
        return "\n".join(lines) + ("\n" if lines else "")


def select_commands(doc: Document, name: str | None) -> list[Command]:
    """The document's commands, or only those called ``name``.  When the
    document has none of that name, run it on every definition it accepts."""
    if name is None:
        return list(doc.commands)
    picked = [c for c in doc.commands if c.name == name]
    if picked:
        return picked
    kinds = COMMAND_TARGETS[name]
    return [Command(name, Name(d.name), ("S1",) if name == "resolve" else ())
            for d in doc.definitions if d.kind in kinds]


def _one(ws: Workspace, i: int, c: Command, opts: dict) -> dict:
    entry = {"index": i, "command": c.name, "target": c.target.id, "args": list(c.args)}
    t0 = time.perf_counter()
    try:
        entry["result"] = jsonable(run_command(ws, c, opts))
        entry["status"] = "ok"
        if c.name == "report-all" and entry["result"]["failed_sections"]:
            entry["status"] = "error"
            entry["error"] = {"kind": "computation", "type": "SectionFailure",
                              "message": "sections failed: " + ", ".join(entry["result"]["failed_sections"])}
    except DSLError as exc:
        entry["status"] = "error"
        entry["error"] = {"kind": "dsl", "type": exc.kind, "message": str(exc)}
    except Exception as exc:
        entry["status"] = "error"
        entry["error"] = {"kind": "computation", "type": type(exc).__name__, "message": str(exc)}
    if opts.get("timing"):
        entry["seconds"] = round(time.perf_counter() - t0, 4)
    return entry


def run_doc(doc: Document, commands: list[Command] | None = None, *, bound: int | None = None,
            parallel: bool = False, timing: bool = False, seed: int | None = None) -> Report:
    """Run commands (default: those of the document) and collect a report.

    With ``parallel`` the commands run concurrently; the report keeps
    document order, so its content does not depend on scheduling.
    """
    ws = Workspace(doc, seed)
    cmds = doc.commands if commands is None else commands
    opts = {"bound": bound, "parallel": parallel, "timing": timing}
    if parallel and len(cmds) > 1:
        with ThreadPoolExecutor() as ex:
            results = list(ex.map(lambda ic: _one(ws, ic[0], ic[1], opts), enumerate(cmds, 1)))
    else:
        results = [_one(ws, i, c, opts) for i, c in enumerate(cmds, 1)]
    return Report(ws.seed, results)

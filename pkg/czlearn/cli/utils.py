"""CLI utilities for czlearn."""

from datetime import datetime
from typing import Any

from rich.console import Console
from rich.panel import Panel
from rich.progress import BarColumn, MofNCompleteColumn, Progress, TaskID, TextColumn
from rich.table import Table
from rich.text import Text

from czlearn._register import LoopCallbackMixin


def print_status_panel(
    start_time: datetime, text: str, style: str, body: str | None = None
) -> None:
    """Print a panel with the outcome of a command and its timing."""
    end_time = datetime.now()
    duration = end_time - start_time
    console = Console()
    message = Text(text, style=style)
    if body is not None:
        message.append(f"\n\n{body}", style="white not bold")
    message.append("\nStarted:  ")
    message.append(start_time.strftime("%Y-%m-%d %H:%M:%S"), style="white not bold")
    message.append("\nFinished: ")
    message.append(end_time.strftime("%Y-%m-%d %H:%M:%S"), style="white not bold")
    message.append("\nTotal duration: ")
    message.append(str(duration), style="white not bold")
    panel = Panel(
        message, title="Experiment Status", title_align="left", expand=False, style=style
    )
    console.print(panel)


class ProgressTracker:
    """Rich progress bars following the loops of a `LoopCallbackMixin`, one bar per
    loop.
    """

    def __init__(self, progress: Progress) -> None:
        self._progress = progress
        self._tasks: dict[str, TaskID] = {}

    @classmethod
    def default_progress(cls) -> Progress:
        return Progress(
            TextColumn("{task.description}"),
            BarColumn(),
            MofNCompleteColumn(),
        )

    def attach(self, obj: LoopCallbackMixin) -> None:
        obj.register_on_enter(self._on_enter)
        obj.register_on_iter(self._on_iter)
        obj.register_on_exit(self._on_exit)

    def _on_enter(self, name: str, total: int) -> None:
        self._tasks[name] = self._progress.add_task(name, total=total)

    def _on_iter(self, name: str, idx: int) -> None:
        self._progress.advance(self._tasks[name])

    def _on_exit(self, name: str) -> None:
        self._progress.refresh()


def _fmt(value: Any) -> str:
    return "-" if value is None else f"{value:.4g}"


def summary_table(summaries: dict[str, dict[str, Any]]) -> Table:
    """Table with the final statistics of the player 1 metrics of every variant."""
    table = Table(title="Final metrics of player 1 (mean ± std across seeds)")
    table.add_column("variant")
    table.add_column("seeds", justify="right")
    table.add_column("statuses")
    table.add_column("regret", justify="right")
    table.add_column("violations", justify="right")
    for variant, summary in summaries.items():
        statuses: dict[str, int] = {}
        for run in summary.get("runs", {}).values():
            statuses[run["status"]] = statuses.get(run["status"], 0) + 1
        final = summary["final"]
        regret = final.get("regret_1", {})
        violation_keys = sorted(k for k in final if k.startswith("violation_1_"))
        violations = ", ".join(
            f"{_fmt(final[k]['mean'])} ± {_fmt(final[k]['std'])}" for k in violation_keys
        )
        table.add_row(
            variant,
            str(len(summary.get("seeds", []))),
            ", ".join(f"{k}: {v}" for k, v in sorted(statuses.items())),
            f"{_fmt(regret.get('mean'))} ± {_fmt(regret.get('std'))}",
            violations or "-",
        )
    return table

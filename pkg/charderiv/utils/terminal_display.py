"""
Terminal display for the charderiv CLI: themed rich console, case lines, tables.
"""

from typing import Iterable, Mapping, Sequence

from rich.console import Console
from rich.markup import escape
from rich.table import Table
from rich.theme import Theme

_THEME = Theme({
    "case.pass": "green",
    "case.fail": "bold red",
    "case.kind": "rgb(255,200,80)",
    "value": "bold",
    "op.term": "rgb(120,220,255)",
    "info": "dim",
    "muted": "dim",
})

_console = Console(theme=_THEME, highlight=False)


def get_console() -> Console:
    return _console


# ── Results ────────────────────────────────────────────────────────────

def print_value(value: object) -> None:
    _console.print(f"[value]{escape(str(value))}[/value]")


def print_routes(values: Mapping[str, object]) -> None:
    width = max((len(name) for name in values), default=0)
    for name, value in values.items():
        _console.print(f"[muted]{name:<{width}}[/muted]  [value]{escape(str(value))}[/value]")


def print_operator(k: int, rendered: str) -> None:
    _console.print(f"[info]D_(u,{k}) =[/info] [op.term]{escape(rendered)}[/op.term]")


def print_moment_table(title: str, headers: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
    table = Table(title=title, title_justify="left", header_style="bold")
    for header in headers:
        table.add_column(header)
    for row in rows:
        table.add_row(*(escape(str(cell)) for cell in row))
    _console.print(table)


# ── Verify suite ───────────────────────────────────────────────────────

def print_case(passed: bool, index: int, kind: str, label: str, detail: str = "") -> None:
    status = "[case.pass]PASS[/case.pass]" if passed else "[case.fail]FAIL[/case.fail]"
    tail = f"  [muted]{escape(detail)}[/muted]" if detail else ""
    _console.print(f"{status} {index:>3} [case.kind]{kind:<14}[/case.kind] {escape(label)}{tail}")


def print_summary(total: int, failed: int) -> None:
    if failed:
        _console.print(f"[case.fail]{failed} of {total} cases failed[/case.fail]")
    else:
        _console.print(f"[case.pass]all {total} cases passed[/case.pass]")


def print_error(message: str) -> None:
    _console.print(f"[bold red]Error:[/bold red] {escape(message)}")

import json
import logging
from fractions import Fraction
from typing import Any, Optional

import numpy as np
from rich.console import Console
from rich.table import Table
from rich.tree import Tree

from .game_model import PROFILES, profile_label
from .probability_model import OUTCOMES

logger = logging.getLogger(__name__)

LABELS = {
    "generalized_pd": "generalized PD",
    "is_ne": "NE",
    "no_signaling": "no-signaling",
    "embedding_zeros": "embedding zeros",
}


def to_jsonable(value: Any) -> Any:
    """JSON model of a result: Fractions become "n/d" strings, tuples become lists."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def dumps(payload: Any) -> str:
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=2)


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "[green]yes[/green]" if value else "[red]no[/red]"
    if value is None:
        return "[dim]none[/dim]"
    if isinstance(value, str) and "/" in value:
        try:
            return f"{value} ({float(Fraction(value)):.5f})"
        except (ValueError, ZeroDivisionError):
            return value
    if isinstance(value, float):
        return f"{value:.5f}"
    return str(value)


def _label(key: str) -> str:
    return LABELS.get(key, key.replace("_", " "))


def add_node(tree: Tree, key: str, value: Any) -> None:
    if isinstance(value, dict):
        node = tree.add(f"[bold cyan]{_label(key)}[/bold cyan]")
        for k in sorted(value):
            add_node(node, k, value[k])
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        node = tree.add(f"[bold cyan]{_label(key)}[/bold cyan]")
        for i, item in enumerate(value, start=1):
            add_node(node, str(i), item)
    elif isinstance(value, list):
        shown = " ".join(format_value(v) for v in value) if value else "[dim]none[/dim]"
        tree.add(f"[bold]{_label(key)}:[/bold] {shown}")
    else:
        tree.add(f"[bold]{_label(key)}:[/bold] {format_value(value)}")


def build_tree(title: str, payload: Any) -> Tree:
    tree = Tree(f"[bold underline]{title}[/bold underline]")
    model = to_jsonable(payload)
    for key in sorted(model):
        if key == "p":
            continue
        add_node(tree, key, model[key])
    return tree


def behavior_table(values) -> Table:
    """The 64 entries laid out one context per row."""
    table = Table(title="Joint probabilities")
    table.add_column("context")
    for outcome in OUTCOMES:
        table.add_column("".join("+" if o == 1 else "-" for o in outcome), justify="right")
    model = to_jsonable(list(values))
    for k, profile in enumerate(PROFILES):
        table.add_row(
            profile_label(profile), *(format_value(v) for v in model[8 * k : 8 * k + 8])
        )
    return table


def emit(
    title: str,
    payload: Any,
    fmt: str = "table",
    output: Optional[str] = None,
    console: Optional[Console] = None,
) -> None:
    console = console or Console()
    text = dumps(payload)
    if output:
        with open(output, "w", encoding="utf-8") as file:
            file.write(text + "\n")
        logger.debug(f"Wrote report to {output}")
    if fmt == "json":
        console.print(text, markup=False, highlight=False, soft_wrap=True)
        return
    console.print(build_tree(title, payload))
    if isinstance(payload, dict) and payload.get("p") is not None:
        console.print(behavior_table(payload["p"]))

"""Output formatters using Rich."""

from typing import Any, Dict, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from .canon import CanonicalForm, normal_form
from .geometry import PointSet, diameter, position_class
from .heronian import HeronTriangle, triangle_area
from .search import DiameterTable

console = Console()


def point_text(p: Any) -> str:
    """``x y`` with exact rationals, the plain-text point format."""
    return f"{p.x} {p.y}"


def format_triangles(triangles: Sequence[HeronTriangle]) -> None:
    """Format Heronian triangles as a table."""
    if not triangles:
        console.print("[yellow]No Heronian triangles found[/yellow]")
        return

    table = Table(title="Heronian Triangles")
    table.add_column("a", style="cyan", justify="right")
    table.add_column("b", style="cyan", justify="right")
    table.add_column("c", style="cyan", justify="right")
    table.add_column("Area", style="green", justify="right")

    for t in triangles:
        table.add_row(str(t.a), str(t.b), str(t.c), str(triangle_area(t)))

    console.print(table)


def format_points(points: Sequence[Any], title: str = "Extension Points") -> None:
    if not points:
        console.print(f"[yellow]No {title.lower()}[/yellow]")
        return

    table = Table(title=title)
    table.add_column("x", style="cyan", justify="right")
    table.add_column("y", style="cyan", justify="right")
    for p in points:
        table.add_row(str(p.x), str(p.y))
    console.print(table)


def format_pointset(P: PointSet, title: str = "Point Set") -> None:
    """Format a point set with its invariants."""
    content = Text()
    content.append(f"{normal_form(P).serialize()}\n\n", style="white")
    content.append("Cardinality: ", style="bold")
    content.append(f"{len(P)}\n", style="cyan")
    content.append("Diameter: ", style="bold")
    content.append(f"{diameter(P)}\n", style="cyan")
    content.append("Position: ", style="bold")
    content.append(position_class(P).value, style="green")
    console.print(Panel(content, title=title, border_style="blue"))


def format_sets(forms: Sequence[CanonicalForm], title: str = "Maximal Sets") -> None:
    if not forms:
        console.print("[yellow]No sets found[/yellow]")
        return

    table = Table(title=title)
    table.add_column("k", style="cyan", justify="right")
    table.add_column("Diameter", style="green", justify="right")
    table.add_column("Canonical form", style="white")
    for form in forms:
        P = form.to_pointset()
        table.add_row(str(len(form)), str(diameter(P)), form.serialize())
    console.print(table)


def format_diameter_table(table_data: DiameterTable, title: Optional[str] = None) -> None:
    """Format minimum diameters per cardinality."""
    if not table_data.rows:
        console.print("[yellow]No maximal sets found[/yellow]")
        return

    default_title = f"Minimum diameters (exhaustive up to {table_data.exhaustive_up_to})"
    table = Table(title=title or default_title)
    table.add_column("k", style="cyan", justify="right")
    table.add_column("d(k)", style="green", justify="right")
    table.add_column("Witness", style="white")
    for k in sorted(table_data.rows):
        row = table_data.rows[k]
        relation = "" if row.proven else "<= "
        table.add_row(str(k), f"{relation}{row.diameter}", row.witness.serialize())
    console.print(table)


def format_maximal_triangles(found: List[Tuple[HeronTriangle, CanonicalForm]]) -> None:
    if not found:
        console.print("[yellow]No maximal triangles found[/yellow]")
        return

    table = Table(title="Maximal Triangles")
    table.add_column("Sides", style="cyan")
    table.add_column("Coordinates", style="white")
    for t, form in found:
        table.add_row(str(t), form.serialize())
    console.print(table)


def format_config(cfg: Dict[str, Any], path: Any) -> None:
    console.print(f"[bold]Config file:[/bold] {path}")
    for key in sorted(cfg):
        console.print(f"[bold]{key}:[/bold] {cfg[key]}")

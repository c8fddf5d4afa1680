"""Main CLI for maxips."""

import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import click
from rich.console import Console

from .canon import list_repr, normal_form
from .cliques import MaximalSet, build_graph, constrained_maximal_cliques, maximal_cliques
from .config import Config
from .constructions import (
    CrabSpec,
    PythagoreanPair,
    catalog,
    circle_scaled,
    circle_set,
    circle_tilde,
    crab,
    decompose_crab,
    known,
    rectangle,
    rhombus,
    semi_crab,
)
from .errors import MaxipsError
from .extension import Mode, extension_points, extensions_of, is_maximal, is_strongly_maximal
from .formatters import (
    format_config,
    format_diameter_table,
    format_maximal_triangles,
    format_points,
    format_pointset,
    format_sets,
    format_triangles,
    point_text,
)
from .geometry import PointSet, PositionClass, position_class
from .heronian import HeronTriangle, embeddings, heronian_triangles
from .logging_setup import resolve_level, setup_logging
from .pointfile import read_pointfile, write_pointfile
from .search import (
    MaximalSetSearch,
    SearchConfig,
    search_maximal_triangles,
)
from .svg import SvgOptions, render_svg

console = Console()
err_console = Console(stderr=True)

FILTERS = {
    "arbitrary": PositionClass.ARBITRARY,
    "semi": PositionClass.SEMI_GENERAL,
    "general": PositionClass.GENERAL,
}

pass_config = click.make_pass_decorator(Config)


def _fail(e: Exception) -> None:
    err_console.print(f"[red]Error:[/red] {e}")
    sys.exit(1)


def _parse_ints(text: str, count: int, what: str) -> List[int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise click.BadParameter(f"expected {count} comma-separated integers for {what}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise click.BadParameter(f"{text!r} is not a list of integers") from None


def _parse_triangle(ctx: click.Context, param: click.Parameter, value: Optional[str]):
    if value is None:
        return None
    return tuple(_parse_ints(value, 3, "a triangle"))


def _parse_circles(ctx: click.Context, param: click.Parameter, values: Tuple[str, ...]):
    circles = []
    for value in values:
        parts = value.split(",")
        if len(parts) != 3:
            raise click.BadParameter(f"expected cx,cy,r, got {value!r}")
        try:
            circles.append(tuple(Fraction(p.strip()) for p in parts))
        except ValueError:
            raise click.BadParameter(f"{value!r} is not three rationals") from None
    return tuple(circles)


def _load_points(path: str) -> PointSet:
    return read_pointfile(path).points


def _emit_set(
    P: PointSet,
    raw: bool,
    svg: Optional[str],
    pretty: bool = False,
    save: Optional[str] = None,
) -> None:
    if pretty:
        format_pointset(P)
    elif raw:
        click.echo(";".join(f"{p.x},{p.y}" for p in list_repr(P)))
    else:
        click.echo(normal_form(P).serialize())
    if svg:
        render_svg(P).save(svg)
    if save:
        write_pointfile(save, P, _metadata())


def _metadata() -> Dict[str, str]:
    ctx = click.get_current_context()
    metadata = {"construction": ctx.command_path.split(" ", 1)[-1]}
    metadata.update({k: str(v) for k, v in ctx.params.items()
                     if v is not None and k not in ("raw", "svg", "pretty", "save", "list_names")})
    cfg = ctx.find_object(Config)
    if cfg is not None and cfg.timestamps:
        metadata["generated"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return metadata


def set_output_options(f):
    f = click.option("--svg", type=click.Path(dir_okay=False), help="Also write an SVG figure")(f)
    f = click.option("--raw", is_flag=True, help="Print coordinates as constructed")(f)
    f = click.option("--pretty", is_flag=True, help="Rich panel instead of plain text")(f)
    f = click.option("--save", type=click.Path(dir_okay=False), help="Also write a point file")(f)
    return f


@click.group()
@click.option("--config", "-c", type=click.Path(), help="Path to config file")
@click.option("--verbose", "-v", count=True, help="Increase log verbosity (-v, -vv)")
@click.pass_context
def cli(ctx: click.Context, config: Optional[str], verbose: int):
    """maxips - maximal integral point sets over the integer grid.

    Exact constructions, maximality checks and exhaustive minimum-diameter searches.
    """
    cfg_path = Path(config).expanduser().resolve() if config else Config.default_path()
    try:
        cfg = Config.from_file(cfg_path)
    except (OSError, ValueError) as e:
        _fail(e)
    cfg.log_level = resolve_level(cfg.log_level, verbose)
    setup_logging(cfg.log_level, cfg.timestamps)
    cfg.apply()

    ctx.meta["config_path"] = cfg_path
    ctx.obj = cfg


@cli.command("gen-triangles")
@click.option("--diameter", "-d", type=click.IntRange(min=1), required=True)
@click.option("--up-to", is_flag=True, help="Every diameter from 1 to D")
@click.option("--pretty", is_flag=True)
def gen_triangles(diameter: int, up_to: bool, pretty: bool):
    """List Heronian triangles with longest side D, one "a,b,c" per line."""
    try:
        sides = range(1, diameter + 1) if up_to else [diameter]
        found = [t for d in sides for t in heronian_triangles(d)]
    except MaxipsError as e:
        _fail(e)
    if pretty:
        format_triangles(found)
        return
    for t in found:
        click.echo(str(t))


@cli.command()
@click.option("--triangle", "-t", callback=_parse_triangle, required=True, help="Sides a,b,c")
@click.option("--dedup", is_flag=True, help="One embedding per isomorphism class")
@click.option("--raw", is_flag=True, help="Print A;B;C instead of the canonical form")
def embed(triangle: Tuple[int, int, int], dedup: bool, raw: bool):
    """Place a Heronian triangle on the grid in every possible way."""
    try:
        t = HeronTriangle.from_sides(*triangle)
        placed = embeddings(t, dedup=dedup)
    except MaxipsError as e:
        _fail(e)
    for emb in placed:
        if raw:
            click.echo(";".join(f"{p.x},{p.y}" for p in emb.vertices))
        else:
            click.echo(normal_form(emb.vertices).serialize())


@cli.command()
@click.option("--points", "-p", "points_path", type=click.Path(exists=True), required=True)
@click.option("--mode", type=click.Choice([m.value for m in Mode]), default=Mode.INTEGRAL.value)
@click.option("--threads", "-j", type=click.IntRange(min=1), help="Worker processes")
@click.option("--pretty", is_flag=True)
@pass_config
def extend(cfg: Config, points_path: str, mode: str, threads: Optional[int], pretty: bool):
    """Points at integral (or rational) distance to every point of the set."""
    try:
        P = _load_points(points_path)
        workers = threads or cfg.threads
        if len(P) == 3:
            found = extension_points(tuple(P), Mode(mode), workers=workers)
        else:
            found = extensions_of(P, Mode(mode))
    except MaxipsError as e:
        _fail(e)
    if pretty:
        format_points(found)
        return
    for p in found:
        click.echo(point_text(p))


@cli.command("check-maximal")
@click.option("--points", "-p", "points_path", type=click.Path(exists=True), required=True)
@click.option("--strong", is_flag=True, help="Also rule out rational extension points")
def check_maximal(points_path: str, strong: bool):
    """Print "maximal" or "not maximal"."""
    try:
        P = _load_points(points_path)
        verdict = is_strongly_maximal(P) if strong else is_maximal(P)
    except MaxipsError as e:
        _fail(e)
    label = "strongly maximal" if strong else "maximal"
    click.echo(label if verdict else f"not {label}")


@cli.command()
@click.option("--points", "-p", "points_path", type=click.Path(exists=True), required=True)
@click.option("--raw", is_flag=True, help="Only sort the input, do not normalize")
def normalize(points_path: str, raw: bool):
    """Print the canonical form of a point set."""
    try:
        P = _load_points(points_path)
        form = None if raw else normal_form(P)
    except MaxipsError as e:
        _fail(e)
    if form is not None:
        click.echo(form.serialize())
    else:
        click.echo(";".join(f"{p.x},{p.y}" for p in list_repr(P)))


@cli.group()
def construct():
    """Direct constructions of maximal sets."""
    pass


@construct.command("rect")
@click.option("--a", "a", type=int, required=True)
@click.option("--b", "b", type=int, required=True)
@set_output_options
def construct_rect(
    a: int, b: int, raw: bool, svg: Optional[str], pretty: bool, save: Optional[str]
):
    """Rectangle with Pythagorean sides a, b."""
    try:
        _emit_set(rectangle(PythagoreanPair(a, b)), raw, svg, pretty, save)
    except MaxipsError as e:
        _fail(e)


@construct.command("rhombus")
@click.option("--a", "a", type=int, required=True)
@click.option("--b", "b", type=int, required=True)
@set_output_options
def construct_rhombus(
    a: int, b: int, raw: bool, svg: Optional[str], pretty: bool, save: Optional[str]
):
    """Rhombus with half diagonals a, b and its center."""
    try:
        _emit_set(rhombus(PythagoreanPair(a, b)), raw, svg, pretty, save)
    except MaxipsError as e:
        _fail(e)


@construct.command("crab")
@click.option("--a", "a", type=int, required=True, help="Apex distance")
@click.option("--arms", required=True, help="Comma-separated arm lengths")
@set_output_options
def construct_crab(
    a: int, arms: str, raw: bool, svg: Optional[str], pretty: bool, save: Optional[str]
):
    """Crab with apex +-a and arms +-b_i."""
    try:
        lengths = tuple(int(x) for x in arms.split(","))
    except ValueError:
        raise click.BadParameter(f"{arms!r} is not a list of integers", param_hint="--arms")
    try:
        _emit_set(crab(CrabSpec(a, lengths)), raw, svg, pretty, save)
    except MaxipsError as e:
        _fail(e)


@construct.command("decompose")
@click.option("--h", "h", type=int, required=True)
@set_output_options
def construct_decompose(h: int, raw: bool, svg: Optional[str], pretty: bool, save: Optional[str]):
    """Crab whose arms come from the factor pairs of h^2."""
    try:
        _emit_set(decompose_crab(h), raw, svg, pretty, save)
    except MaxipsError as e:
        _fail(e)


@construct.command("semicrab")
@click.option("--gh", "gh", type=int, required=True)
@click.option("--g", "g", type=int, required=True)
@click.option("--m", "m", type=int, help="Residue class of the base points")
@set_output_options
def construct_semicrab(
    gh: int, g: int, m: Optional[int], raw: bool, svg: Optional[str], pretty: bool,
    save: Optional[str],
):
    """Semi-crab with rational apex height gh/g."""
    try:
        _emit_set(semi_crab(gh, g, m), raw, svg, pretty, save)
    except MaxipsError as e:
        _fail(e)


@construct.command("circle")
@click.option("--r", "r", type=int, required=True)
@set_output_options
def construct_circle(r: int, raw: bool, svg: Optional[str], pretty: bool, save: Optional[str]):
    """Points on a circle of radius R together with its center."""
    try:
        _emit_set(circle_set(r), raw, svg, pretty, save)
    except MaxipsError as e:
        _fail(e)


@construct.command("circle-tilde")
@click.option("--r", "r", type=int, required=True)
@set_output_options
def construct_circle_tilde(
    r: int, raw: bool, svg: Optional[str], pretty: bool, save: Optional[str]
):
    """Points on a circle of radius R/2, center omitted."""
    try:
        _emit_set(circle_tilde(r), raw, svg, pretty, save)
    except MaxipsError as e:
        _fail(e)


@construct.command("circle-scaled")
@click.option("--r", "r", type=int, required=True)
@click.option("--t", "t", type=int, required=True)
def construct_circle_scaled(r: int, t: int):
    """Maximal integral subsets of the circle points scaled by 1/t, largest first."""
    try:
        found = circle_scaled(r, t)
    except MaxipsError as e:
        _fail(e)
    for P in found:
        click.echo(normal_form(P).serialize())


@construct.command("known")
@click.argument("name", required=False)
@click.option("--list", "list_names", is_flag=True, help="List catalog names")
@set_output_options
def construct_known(
    name: Optional[str], list_names: bool, raw: bool, svg: Optional[str], pretty: bool,
    save: Optional[str],
):
    """A named set from the catalog."""
    if list_names or name is None:
        for key in catalog():
            click.echo(key)
        return
    try:
        _emit_set(known(name), raw, svg, pretty, save)
    except MaxipsError as e:
        _fail(e)


def _seed_sets(
    t: HeronTriangle, filter_: PositionClass, within: bool, cfg: Config
) -> List[MaximalSet]:
    found: Dict[str, MaximalSet] = {}
    for emb in embeddings(t, dedup=True):
        graph = build_graph(emb, workers=cfg.threads)
        if within and filter_ is not PositionClass.ARBITRARY:
            sets = constrained_maximal_cliques(graph, filter_, verify=cfg.debug_checks)
        else:
            sets = maximal_cliques(graph, verify=cfg.debug_checks)
        for ms in sets:
            found.setdefault(ms.canonical.serialize(), ms)
    return sorted(found.values(), key=MaximalSet.sort_key)


@cli.command("enumerate")
@click.option("--triangle", "-t", callback=_parse_triangle, required=True, help="Sides a,b,c")
@click.option("--filter", "filter_name", type=click.Choice(list(FILTERS)), default="arbitrary")
@click.option("--within-filter", is_flag=True, help="Maximal within the filter class only")
@click.option("--pretty", is_flag=True)
@pass_config
def enumerate_cmd(
    cfg: Config,
    triangle: Tuple[int, int, int],
    filter_name: str,
    within_filter: bool,
    pretty: bool,
):
    """Every maximal set containing an embedding of the triangle."""
    filter_ = FILTERS[filter_name]
    try:
        t = HeronTriangle.from_sides(*triangle)
        sets = _seed_sets(t, filter_, within_filter, cfg)
        if not within_filter:
            sets = [ms for ms in sets if filter_.admits(position_class(ms.points))]
    except MaxipsError as e:
        _fail(e)
    if pretty:
        format_sets([ms.canonical for ms in sets])
        return
    for ms in sets:
        click.echo(ms.canonical.serialize())


@cli.command()
@click.option("--max-diameter", "-d", type=click.IntRange(min=1), required=True)
@click.option("--filter", "filter_name", type=click.Choice(list(FILTERS)), default="arbitrary")
@click.option("--min-cardinality", type=click.IntRange(min=3), default=3)
@click.option("--within-filter", is_flag=True, help="Maximal within the filter class only")
@click.option("--triangles-only", is_flag=True, help="Search strongly maximal triangles")
@click.option("--start", type=click.IntRange(min=1), default=1, help="First diameter to sweep")
@click.option("--resume", type=click.Path(dir_okay=False), help="JSON-lines checkpoint file")
@click.option("--records", type=click.Path(dir_okay=False), help="Write every set found")
@click.option("--threads", "-j", type=click.IntRange(min=1), help="Worker processes")
@click.option("--pretty", is_flag=True)
@pass_config
def search(
    cfg: Config,
    max_diameter: int,
    filter_name: str,
    min_cardinality: int,
    within_filter: bool,
    triangles_only: bool,
    start: int,
    resume: Optional[str],
    records: Optional[str],
    threads: Optional[int],
    pretty: bool,
):
    """Minimum diameter of maximal sets per cardinality, as TSV.

    Columns: k, "=" or "<=", diameter, exhaustive bound, witness.
    """
    workers = threads or cfg.threads
    try:
        if triangles_only:
            found = search_maximal_triangles(max_diameter, start=start, workers=workers)
            if pretty:
                format_maximal_triangles(found)
                return
            for t, form in found:
                click.echo(f"{t}\t{form.serialize()}")
            return

        search_cfg = SearchConfig(
            max_diameter=max_diameter,
            position_filter=FILTERS[filter_name],
            min_cardinality=min_cardinality,
            within_filter=within_filter,
            start_diameter=start,
            workers=workers,
        )
        runner = MaximalSetSearch(search_cfg, checkpoint=resume)
        table = runner.run()
        if records:
            with open(records, "w", encoding="utf-8") as f:
                for record in runner.records():
                    f.write(record.model_dump_json() + "\n")
    except MaxipsError as e:
        _fail(e)
    if pretty:
        format_diameter_table(table)
        return
    click.echo(table.to_tsv(), nl=False)


@cli.command()
@click.option("--points", "-p", "points_path", type=click.Path(exists=True), required=True)
@click.option("--out", "-o", type=click.Path(dir_okay=False), required=True)
@click.option("--circle", "circles", multiple=True, callback=_parse_circles,
              help="Extra circle cx,cy,r (repeatable)")
@click.option("--width", type=click.IntRange(min=50), default=400)
def render(points_path: str, out: str, circles, width: int):
    """Draw a point set and its integral distances as SVG."""
    try:
        P = _load_points(points_path)
        figure = render_svg(P, SvgOptions(width=width, circles=circles))
        figure.save(out)
    except (MaxipsError, OSError) as e:
        _fail(e)
    console.print(
        f"[green]✓[/green] Wrote {out} ({figure.point_count} points, "
        f"{figure.segment_count} segments)"
    )


@cli.group("config")
def config_group():
    """Configuration helpers."""
    pass


@config_group.command("show")
@click.pass_context
def config_show(ctx: click.Context):
    """Show active settings."""
    cfg: Config = ctx.obj
    format_config(cfg.to_dict(), ctx.meta.get("config_path", Config.default_path()))


@config_group.command("init")
@click.option("--force", is_flag=True, help="Overwrite an existing file")
@click.pass_context
def config_init(ctx: click.Context, force: bool):
    """Write a config file with default settings."""
    path = Path(ctx.meta.get("config_path", Config.default_path()))
    if path.exists() and not force:
        err_console.print(f"[red]Error:[/red] {path} exists (use --force)")
        sys.exit(1)
    written = Config().save(path)
    console.print(f"[green]✓[/green] Config saved to {written}")


def main():
    """Entry point for the CLI."""
    cli()


if __name__ == "__main__":
    main()

"""SVG rendering of integral point sets."""

import itertools
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from .geometry import PointSet, integral_distance

Circle = Tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class SvgOptions:
    width: int = 400
    margin: int = 20
    point_radius: float = 3.0
    circles: Tuple[Circle, ...] = ()


@dataclass(frozen=True)
class SvgFigure:
    markup: str
    point_count: int
    segment_count: int

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.markup)


def _fmt(value: Fraction) -> str:
    return f"{float(value):.3f}"


@dataclass
class _Viewport:
    min_x: Fraction
    max_y: Fraction
    scale: Fraction
    margin: int
    size: List[int] = field(default_factory=list)

    def x(self, value) -> str:
        return _fmt(self.margin + (value - self.min_x) * self.scale)

    def y(self, value) -> str:
        # y grows downwards in SVG
        return _fmt(self.margin + (self.max_y - value) * self.scale)


def render_svg(P: PointSet, opts: SvgOptions = SvgOptions()) -> SvgFigure:
    pts = list(P)
    xs = [Fraction(p.x) for p in pts] or [Fraction(0)]
    ys = [Fraction(p.y) for p in pts] or [Fraction(0)]
    for cx, cy, r in opts.circles:
        xs += [cx - r, cx + r]
        ys += [cy - r, cy + r]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or Fraction(1)
    inner = opts.width - 2 * opts.margin
    scale = Fraction(inner) / span
    view = _Viewport(min(xs), max(ys), scale, opts.margin)
    height = opts.margin * 2 + (max(ys) - min(ys)) * scale

    root = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "width": str(opts.width),
            "height": _fmt(height),
            "data-points": str(len(pts)),
        },
    )
    for cx, cy, r in opts.circles:
        ET.SubElement(
            root,
            "circle",
            {"class": "arc", "cx": view.x(cx), "cy": view.y(cy), "r": _fmt(r * scale),
             "fill": "none", "stroke": "gray"},
        )

    segments = 0
    for p, q in itertools.combinations(pts, 2):
        d = integral_distance(p, q)
        if d is None:
            continue
        segments += 1
        ET.SubElement(
            root,
            "line",
            {"class": "edge", "x1": view.x(p.x), "y1": view.y(p.y), "x2": view.x(q.x),
             "y2": view.y(q.y), "stroke": "black", "data-length": str(d)},
        )

    for p in pts:
        ET.SubElement(
            root,
            "circle",
            {"class": "point", "cx": view.x(p.x), "cy": view.y(p.y),
             "r": f"{opts.point_radius:.1f}", "data-x": str(p.x), "data-y": str(p.y)},
        )

    markup = ET.tostring(root, encoding="unicode")
    return SvgFigure(markup=markup + "\n", point_count=len(pts), segment_count=segments)

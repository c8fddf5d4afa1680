"""Plain-text point-set files.

One point per line as ``x y``; ``#`` starts a comment line; an optional block after a
``---`` line holds ``key=value`` metadata.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Union

from .errors import DomainError, PointSetParseError
from .geometry import GridPoint, PointSet

SEPARATOR = "---"


@dataclass
class PointFile:
    points: PointSet
    metadata: Dict[str, str] = field(default_factory=dict)


def parse_pointfile(text: str) -> PointFile:
    points = []
    seen = set()
    metadata: Dict[str, str] = {}
    in_metadata = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == SEPARATOR:
            in_metadata = True
            continue
        if in_metadata:
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                raise PointSetParseError(f"expected key=value, got {line!r}", lineno)
            metadata[key.strip()] = value.strip()
            continue

        parts = line.split()
        if len(parts) != 2:
            raise PointSetParseError(f"expected two integers, got {line!r}", lineno)
        try:
            p = GridPoint(int(parts[0]), int(parts[1]))
        except ValueError:
            raise PointSetParseError(f"malformed integer in {line!r}", lineno) from None
        if p in seen:
            raise PointSetParseError(f"duplicate point {p.x} {p.y}", lineno)
        seen.add(p)
        points.append(p)

    return PointFile(PointSet(points), metadata)


def parse_pointset(text: str) -> PointSet:
    return parse_pointfile(text).points


def serialize_pointset(P: PointSet, metadata: Dict[str, str] = None) -> str:
    lines = [f"{p.x} {p.y}" for p in P]
    if metadata:
        lines.append(SEPARATOR)
        lines += [f"{key}={metadata[key]}" for key in sorted(metadata)]
    return "".join(line + "\n" for line in lines)


def read_pointfile(path: Union[Path, str]) -> PointFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise DomainError(f"cannot read {path}: {e}") from e
    return parse_pointfile(text)


def write_pointfile(path: Union[Path, str], P: PointSet, metadata: Dict[str, str] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize_pointset(P, metadata), encoding="utf-8")
    return path

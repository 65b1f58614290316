"""Rectangular tile maps: parsing, serialization, generation and text rendering.

A map is a grid of single-character tiles (floor ``f``, wall ``w``, start
``s``, end ``e``).  Coordinates are ``x/y`` with ``x`` growing rightward and
``y`` growing upward; map files store the top row first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

FLOOR = "f"
WALL = "w"
START = "s"
END = "e"
TILE_KINDS = frozenset((FLOOR, WALL, START, END))
PASSABLE_TILES = frozenset((FLOOR, START, END))

# Canonical direction order: up, right, down, left.  Observation labels,
# controller lookups and action alphabets all use this order.
DIRECTIONS = ("up", "right", "down", "left")
DELTA = {"up": (0, 1), "right": (1, 0), "down": (0, -1), "left": (-1, 0)}
OPPOSITE = {"up": "down", "down": "up", "left": "right", "right": "left"}

GLYPHS = {FLOOR: ".", WALL: "#", START: "S", END: "E"}
ARROWS = {"up": "^", "right": ">", "down": "v", "left": "<"}
UNKNOWN_GLYPH = "?"


class MapError(ValueError):
    """Raised for malformed map text or invalid generator parameters."""


class Coord(NamedTuple):
    x: int
    y: int

    def shifted(self, direction: str) -> "Coord":
        dx, dy = DELTA[direction]
        return Coord(self.x + dx, self.y + dy)

    def __repr__(self) -> str:
        return f"{self.x}/{self.y}"


@dataclass(frozen=True)
class GridMap:
    """Immutable tile grid with optional start/end tiles.

    ``tiles[y][x]`` is the tile at column ``x``, row ``y`` (row 0 at the
    bottom).  Maps used as navigation instances carry exactly one start and
    one end tile; bare training grids may carry neither.
    """

    id: str
    width: int
    height: int
    tiles: tuple[tuple[str, ...], ...]
    start: Coord | None = field(default=None)
    end: Coord | None = field(default=None)

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise MapError(f"map {self.id!r}: dimensions must be positive")
        if len(self.tiles) != self.height or any(len(r) != self.width for r in self.tiles):
            raise MapError(f"map {self.id!r}: tile array does not match declared dimensions")
        for row in self.tiles:
            for t in row:
                if t not in TILE_KINDS:
                    raise MapError(f"map {self.id!r}: unknown tile kind {t!r}")
        starts = [c for c in self.cells() if self.tile_at(c) == START]
        ends = [c for c in self.cells() if self.tile_at(c) == END]
        if len(starts) > 1 or len(ends) > 1:
            raise MapError(f"map {self.id!r}: multiple start or end tiles")
        object.__setattr__(self, "start", starts[0] if starts else None)
        object.__setattr__(self, "end", ends[0] if ends else None)

    @classmethod
    def from_rows(cls, map_id: str, rows_top_first: Sequence[str]) -> "GridMap":
        rows = list(rows_top_first)
        tiles = tuple(tuple(row) for row in reversed(rows))
        return cls(map_id, len(rows[0]), len(rows), tiles)

    def in_bounds(self, c: Coord) -> bool:
        return 0 <= c.x < self.width and 0 <= c.y < self.height

    def tile_at(self, c: Coord) -> str:
        if not self.in_bounds(c):
            raise MapError(f"map {self.id!r}: coordinate {c!r} out of bounds")
        return self.tiles[c.y][c.x]

    def passable(self, c: Coord) -> bool:
        return self.in_bounds(c) and self.tiles[c.y][c.x] in PASSABLE_TILES

    def cells(self) -> Iterator[Coord]:
        for y in range(self.height):
            for x in range(self.width):
                yield Coord(x, y)

    def passable_cells(self) -> list[Coord]:
        return [c for c in self.cells() if self.passable(c)]

    def neighbors(self, c: Coord) -> list[tuple[str, Coord]]:
        """Passable von Neumann neighbors as (direction, coordinate) pairs."""
        out = []
        for d in DIRECTIONS:
            n = c.shifted(d)
            if self.passable(n):
                out.append((d, n))
        return out

    def require_endpoints(self) -> tuple[Coord, Coord]:
        if self.start is None or self.end is None:
            raise MapError(f"map {self.id!r}: needs both a start and an end tile")
        return self.start, self.end


def parse_map(text: str, map_id: str, *, require_endpoints: bool = True) -> GridMap:
    """Parse map-file text (top row first) into a GridMap.

    Reports ragged rows, unknown characters and missing or duplicated
    start/end tiles with their row/column position (rows counted from the
    top of the file, columns from the left, both 0-based).
    """
    if not text.strip():
        raise MapError(f"map {map_id!r}: empty map text")
    rows = text.split("\n")
    if rows and rows[-1] == "":
        rows.pop()
    width = len(rows[0])
    starts: list[tuple[int, int]] = []
    ends: list[tuple[int, int]] = []
    for r, row in enumerate(rows):
        if len(row) != width:
            raise MapError(f"map {map_id!r}: ragged row {r} (length {len(row)}, expected {width})")
        for c, ch in enumerate(row):
            if ch not in TILE_KINDS:
                raise MapError(f"map {map_id!r}: bad character {ch!r} at row {r}, column {c}")
            if ch == START:
                starts.append((r, c))
            if ch == END:
                ends.append((r, c))
    for kind, found in ((START, starts), (END, ends)):
        if len(found) > 1:
            at = ", ".join(f"row {r} column {c}" for r, c in found)
            raise MapError(f"map {map_id!r}: multiple {kind!r} tiles ({at})")
        if require_endpoints and not found:
            raise MapError(f"map {map_id!r}: no {kind!r} tile")
    return GridMap.from_rows(map_id, rows)


def serialize_map(grid: GridMap) -> str:
    """Render a GridMap back to map-file text; inverse of parse_map."""
    rows = ["".join(row) for row in reversed(grid.tiles)]
    return "\n".join(rows) + "\n"


def with_endpoints(grid: GridMap, start: Coord, end: Coord) -> GridMap:
    """Copy of ``grid`` with start/end moved to the given passable cells."""
    if start == end:
        raise MapError("start and end must be distinct")
    rows = [list(row) for row in grid.tiles]
    for c in (grid.start, grid.end):
        if c is not None:
            rows[c.y][c.x] = FLOOR
    for c, kind in ((start, START), (end, END)):
        if not grid.in_bounds(c) or rows[c.y][c.x] not in PASSABLE_TILES:
            raise MapError(f"cannot place {kind!r} on unpassable cell {c!r}")
        rows[c.y][c.x] = kind
    return GridMap(grid.id, grid.width, grid.height, tuple(tuple(r) for r in rows))


def _place_endpoints(rows: list[list[str]], map_id: str, width: int, height: int,
                     rng: random.Random) -> GridMap:
    passable = [Coord(x, y) for y in range(height) for x in range(width)
                if rows[y][x] in PASSABLE_TILES]
    start, end = rng.sample(passable, 2)
    rows[start.y][start.x] = START
    rows[end.y][end.x] = END
    return GridMap(map_id, width, height, tuple(tuple(r) for r in rows))


def generate_maze(width: int, height: int, seed: int) -> GridMap:
    """Generate a perfect maze: corridor width 1, no open areas, and a
    unique simple path between any two passable cells.

    Carves with a randomized depth-first backtracker over the even-coordinate
    cell lattice, then places start and end tiles at random distinct passable
    cells.  Deterministic for a given (width, height, seed).
    """
    if width % 2 == 0 or height % 2 == 0:
        raise MapError(f"maze dimensions must be odd, got {width}x{height}")
    if width < 5 or height < 5:
        raise MapError(f"maze dimensions must be at least 5x5, got {width}x{height}")
    rng = random.Random(seed)
    rows = [[WALL] * width for _ in range(height)]
    first = Coord(0, 0)
    rows[first.y][first.x] = FLOOR
    stack = [first]
    seen = {first}
    while stack:
        cur = stack[-1]
        options = []
        for d in DIRECTIONS:
            dx, dy = DELTA[d]
            nxt = Coord(cur.x + 2 * dx, cur.y + 2 * dy)
            if 0 <= nxt.x < width and 0 <= nxt.y < height and nxt not in seen:
                options.append((d, nxt))
        if not options:
            stack.pop()
            continue
        d, nxt = options[rng.randrange(len(options))]
        between = cur.shifted(d)
        rows[between.y][between.x] = FLOOR
        rows[nxt.y][nxt.x] = FLOOR
        seen.add(nxt)
        stack.append(nxt)
    return _place_endpoints(rows, f"maze_{seed}", width, height, rng)


def generate_lake(width: int, height: int, seed: int, *, max_tries: int = 25) -> GridMap:
    """Generate an open-area map: one connected passable region filling at
    least half the grid, dotted with unpassable islands.

    Uses seeded cellular-automaton smoothing over a random fill, keeps the
    largest passable component, and retries with derived seeds until the
    region is large enough.  Deterministic for a given (width, height, seed).
    """
    if width < 5 or height < 5:
        raise MapError(f"lake dimensions must be at least 5x5, got {width}x{height}")
    for attempt in range(max_tries):
        rng = random.Random(seed * 1009 + attempt)
        grid = [[WALL if rng.random() < 0.40 else FLOOR for _ in range(width)]
                for _ in range(height)]
        for _ in range(4):
            nxt = [row[:] for row in grid]
            for y in range(height):
                for x in range(width):
                    walls = 0
                    for dy in (-1, 0, 1):
                        for dx in (-1, 0, 1):
                            nx, ny = x + dx, y + dy
                            if not (0 <= nx < width and 0 <= ny < height):
                                walls += 1
                            elif grid[ny][nx] == WALL:
                                walls += 1
                    nxt[y][x] = WALL if walls >= 5 else FLOOR
            grid = nxt
        component = _largest_component(grid, width, height)
        if len(component) < (width * height) // 2:
            continue
        rows = [[WALL] * width for _ in range(height)]
        for c in component:
            rows[c.y][c.x] = FLOOR
        return _place_endpoints(rows, f"lake_{seed}", width, height, rng)
    raise MapError(f"lake generation failed after {max_tries} tries for seed {seed}")


def _largest_component(grid: list[list[str]], width: int, height: int) -> set[Coord]:
    unvisited = {Coord(x, y) for y in range(height) for x in range(width)
                 if grid[y][x] != WALL}
    best: set[Coord] = set()
    while unvisited:
        root = unvisited.pop()
        comp = {root}
        frontier = [root]
        while frontier:
            cur = frontier.pop()
            for d in DIRECTIONS:
                n = cur.shifted(d)
                if n in unvisited:
                    unvisited.remove(n)
                    comp.add(n)
                    frontier.append(n)
        if len(comp) > len(best):
            best = comp
    return best


def render_map(grid: GridMap, trace: Sequence[Coord] | None = None) -> str:
    """Human-readable render, top row first.

    ``trace`` is a visited path; each traced cell is overlaid with an arrow
    pointing toward the next cell, later visits overwriting earlier ones.
    """
    canvas = [[GLYPHS[t] for t in row] for row in grid.tiles]
    if trace:
        for c in trace:
            if not grid.in_bounds(c):
                raise MapError(f"trace coordinate {c!r} out of bounds")
        for cur, nxt in zip(trace, trace[1:]):
            dx, dy = nxt.x - cur.x, nxt.y - cur.y
            arrow = next((ARROWS[d] for d in DIRECTIONS if DELTA[d] == (dx, dy)), None)
            if arrow is None:
                raise MapError(f"trace jumps from {cur!r} to {nxt!r}")
            canvas[cur.y][cur.x] = arrow
    return "\n".join("".join(row) for row in reversed(canvas))

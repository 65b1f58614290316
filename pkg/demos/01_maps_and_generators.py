"""
Maps: parsing, generation, rendering
====================================

Maps are plain text, one character per tile: floor ``f``, wall ``w``,
start ``s``, end ``e``.  The top line of a file is the top row of the map.
"""

from gridnav import fixture_map, generate_lake, generate_maze, parse_map, render_map, serialize_map

# Parse a tiny map by hand.  Coordinates are x/y with y growing upward,
# so "se" is a 1-row map with the start at 0/0 and the end at 1/0.
tiny = parse_map("se", "tiny")
print("tiny map:", tiny.width, "x", tiny.height, "start", tiny.start, "end", tiny.end)
print()

# Two 7x7 mazes ship with the package.  They are identical except for the
# end tile, which is what makes them ambiguous for a memoryless controller.
maze_a = fixture_map("maze_a")
print("maze_a:")
print(render_map(maze_a))
print()

# The maze generator carves perfect mazes: every pair of passable cells is
# connected by exactly one simple path, so there are no open areas at all.
maze = generate_maze(13, 9, seed=42)
print("generated 13x9 maze (seed 42):")
print(render_map(maze))
print()

# The lake generator goes the other way: one big connected plaza with
# scattered islands.  Same seed, same map, every time.
lake = generate_lake(20, 20, seed=3)
print("generated 20x20 lake (seed 3):")
print(render_map(lake))
print()

# serialize_map is the exact inverse of parse_map.
assert parse_map(serialize_map(lake), lake.id) == lake
print("round trip: parse(serialize(m)) == m")

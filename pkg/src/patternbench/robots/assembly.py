"""Expansion of robot expressions into 3D cube maps, plus the reverse
(canonical formatting), structural validation, and census reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .language import (
    IDENTITY_ORIENTATION,
    SYMMETRIC_KINDS,
    BlankTerm,
    CubeTerm,
    Group,
    Node,
    RobotExpr,
    Sequence,
    Star,
    orientation_right_handed,
    orientation_valid,
    parse,
)

Coord = tuple[int, int, int]


class ExpandError(ValueError):
    pass


@dataclass(frozen=True)
class Cube:
    kind: str
    pos: Coord
    orient: Optional[tuple[str, str, str]] = None


@dataclass
class Assembly:
    cubes: dict[Coord, Cube] = field(default_factory=dict)
    name: str = ""

    @property
    def mass(self) -> int:
        return len(self.cubes)

    def bounding_box(self) -> Optional[tuple[Coord, Coord]]:
        if not self.cubes:
            return None
        xs, ys, zs = zip(*self.cubes)
        return (min(xs), min(ys), min(zs)), (max(xs), max(ys), max(zs))

    def volume(self) -> tuple[int, int, int]:
        box = self.bounding_box()
        if box is None:
            return (0, 0, 0)
        (x0, y0, z0), (x1, y1, z1) = box
        return (x1 - x0 + 1, y1 - y0 + 1, z1 - z0 + 1)

    def kinds(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for cube in self.cubes.values():
            counts[cube.kind] = counts.get(cube.kind, 0) + 1
        return counts

    def neighbors(self, pos: Coord) -> Iterator[Cube]:
        x, y, z = pos
        for dx, dy, dz in ((1, 0, 0), (-1, 0, 0), (0, 1, 0),
                           (0, -1, 0), (0, 0, 1), (0, 0, -1)):
            cube = self.cubes.get((x + dx, y + dy, z + dz))
            if cube is not None:
                yield cube

    def components(self) -> list[set[Coord]]:
        """Connected components of the face-adjacency graph."""
        seen: set[Coord] = set()
        comps: list[set[Coord]] = []
        for start in self.cubes:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                pos = stack.pop()
                for nb in self.neighbors(pos):
                    if nb.pos not in comp:
                        comp.add(nb.pos)
                        stack.append(nb.pos)
            seen |= comp
            comps.append(comp)
        return comps

    def __eq__(self, other) -> bool:
        return isinstance(other, Assembly) and self.cubes == other.cubes


def merge(a: Assembly, b: Assembly, name: str = "") -> Assembly:
    """Union of two cube maps; overlapping coordinates are an error."""
    overlap = set(a.cubes) & set(b.cubes)
    if overlap:
        raise ExpandError(f"assemblies collide at {sorted(overlap)[0]}")
    cubes = dict(a.cubes)
    cubes.update(b.cubes)
    return Assembly(cubes=cubes, name=name or f"{a.name}+{b.name}")


def _collect_terms(node: Node) -> Iterator[CubeTerm]:
    if isinstance(node, CubeTerm):
        yield node
    elif isinstance(node, (Sequence,)):
        for item in node.items:
            yield from _collect_terms(item)
    elif isinstance(node, Group):
        yield from _collect_terms(node.inner)
    elif isinstance(node, Star):
        yield from _collect_terms(node.body)


def expand(expr: RobotExpr, name: str = "") -> Assembly:
    """Expand an expression tree into an assembly.

    Explicit coordinates are authoritative.  A fully coordinate-free
    expression is laid out along +x from the origin with the identity
    orientation, blanks advancing the cursor.  Mixing the two styles is
    an error, as is any coordinate collision.
    """
    terms = list(_collect_terms(expr))
    with_pos = [t for t in terms if t.pos is not None]
    if with_pos and len(with_pos) != len(terms):
        bare = next(t for t in terms if t.pos is None)
        raise ExpandError(
            f"mixed bare and coordinated terms: {bare.kind!r} at "
            f"line {bare.loc[0]} has no coordinates")

    cubes: dict[Coord, Cube] = {}

    def place(cube: Cube):
        if cube.pos in cubes:
            raise ExpandError(f"coordinate collision at {cube.pos}")
        cubes[cube.pos] = cube

    if with_pos:
        def walk(node: Node, shift: Coord):
            if isinstance(node, CubeTerm):
                x, y, z = node.pos
                pos = (x + shift[0], y + shift[1], z + shift[2])
                orient = None if node.kind in SYMMETRIC_KINDS else node.orient
                place(Cube(kind=node.kind, pos=pos, orient=orient))
            elif isinstance(node, BlankTerm):
                pass
            elif isinstance(node, Group):
                walk(node.inner, shift)
            elif isinstance(node, Sequence):
                for item in node.items:
                    walk(item, shift)
            elif isinstance(node, Star):
                if node.translation is None:
                    raise ExpandError(
                        f"star over coordinated terms needs an @(dx,dy,dz) "
                        f"translation (line {node.loc[0]})")
                dx, dy, dz = node.translation
                for k in range(node.count):
                    walk(node.body, (shift[0] + k * dx,
                                     shift[1] + k * dy,
                                     shift[2] + k * dz))

        walk(expr, (0, 0, 0))
    else:
        cursor = 0

        def walk_bare(node: Node, repeat_ok: bool = True):
            nonlocal cursor
            if isinstance(node, CubeTerm):
                orient = None if node.kind in SYMMETRIC_KINDS else IDENTITY_ORIENTATION
                place(Cube(kind=node.kind, pos=(cursor, 0, 0), orient=orient))
                cursor += 1
            elif isinstance(node, BlankTerm):
                cursor += node.count
            elif isinstance(node, Group):
                walk_bare(node.inner)
            elif isinstance(node, Sequence):
                for item in node.items:
                    walk_bare(item)
            elif isinstance(node, Star):
                for _ in range(node.count):
                    walk_bare(node.body)

        walk_bare(expr)

    return Assembly(cubes=cubes, name=name)


@dataclass
class ValidationReport:
    connected: bool
    battery_count: int
    orientation_ok: bool
    collisions: list[Coord]
    functional: bool
    component_count: int
    bad_orientations: list[Coord] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "connected": self.connected,
            "component_count": self.component_count,
            "battery_count": self.battery_count,
            "orientation_ok": self.orientation_ok,
            "bad_orientations": [list(p) for p in self.bad_orientations],
            "collisions": [list(p) for p in self.collisions],
            "functional": self.functional,
        }


def validate(assembly: Assembly, strict_handedness: bool = False) -> ValidationReport:
    """Structural checks: connectivity, battery presence, orientation sanity.

    A robot is functional when it has at least one battery and every
    orientation triple spans three distinct axes.  ``strict_handedness``
    additionally requires right-handed (front, north, west) bases.
    """
    comps = assembly.components()
    batteries = sum(1 for c in assembly.cubes.values() if c.kind == "ba")
    bad: list[Coord] = []
    for cube in assembly.cubes.values():
        if cube.orient is None:
            continue
        ok = orientation_valid(cube.orient)
        if ok and strict_handedness:
            ok = orientation_right_handed(cube.orient)
        if not ok:
            bad.append(cube.pos)
    orientation_ok = not bad
    return ValidationReport(
        connected=len(comps) == 1,
        component_count=len(comps),
        battery_count=batteries,
        orientation_ok=orientation_ok,
        collisions=[],
        functional=batteries >= 1 and orientation_ok,
        bad_orientations=sorted(bad),
    )


def census(assembly: Assembly) -> dict:
    """Mass, bounding-box volume, and per-kind counts."""
    return {
        "mass": assembly.mass,
        "volume": list(assembly.volume()),
        "kinds": dict(sorted(assembly.kinds().items())),
    }


def format_assembly(assembly: Assembly) -> str:
    """Canonical text: terms in row-major order (x fastest, then y, then z),
    with blank runs padding gaps inside occupied rows from the bounding-box
    west edge.  ``expand(parse(format_assembly(a)))`` equals ``a``.
    """
    if not assembly.cubes:
        return ""
    (min_x, _, _), _ = assembly.bounding_box()
    rows: dict[tuple[int, int], list[Cube]] = {}
    for cube in assembly.cubes.values():
        rows.setdefault((cube.pos[2], cube.pos[1]), []).append(cube)

    terms: list[str] = []
    for zy in sorted(rows):
        cursor = min_x
        for cube in sorted(rows[zy], key=lambda c: c.pos[0]):
            gap = cube.pos[0] - cursor
            if gap == 1:
                terms.append("B")
            elif gap > 1:
                terms.append(f"B^{gap}")
            text = f"{cube.kind}_({cube.pos[0]},{cube.pos[1]},{cube.pos[2]})"
            if cube.orient is not None:
                text += f"^({cube.orient[0]},{cube.orient[1]},{cube.orient[2]})"
            terms.append(text)
            cursor = cube.pos[0] + 1
    return " . ".join(terms)


def parse_and_expand(text: str, name: str = "") -> Assembly:
    return expand(parse(text), name=name)

"""Scene files and frame dumps.

Scene files are UTF-8 JSON with keys ``width``, ``height``, ``walls``
(rectangles ``[x, y, w, h]``), ``seeds`` (``{"cells": [[x, y], ...]}``)
and ``probes`` (name -> rectangle).  Frames are emitted as ASCII
(``.`` dead, ``#`` alive, ``%`` wall) or binary PGM P5 (dead=0,
alive=255, wall=128).
"""

from __future__ import annotations

import json

import numpy as np

from .circuits import ChannelScene, Probe, SceneError, Seed
from .engine import Lattice

ASCII_DEAD = "."
ASCII_ALIVE = "#"
ASCII_WALL = "%"

PGM_DEAD = 0
PGM_ALIVE = 255
PGM_WALL = 128


def scene_to_dict(scene: ChannelScene) -> dict:
    return {
        "width": scene.lattice.width,
        "height": scene.lattice.height,
        "walls": [list(r) for r in scene.wall_rects],
        "seeds": [{"cells": [list(c) for c in seed.cells]} for seed in scene.seeds],
        "probes": {name: list(p.rect) for name, p in scene.probes.items()},
    }


def scene_from_dict(data: dict) -> ChannelScene:
    try:
        width = int(data["width"])
        height = int(data["height"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SceneError(f"scene file missing valid width/height: {exc}")
    lattice = Lattice.empty(width, height)
    walls = [tuple(int(v) for v in rect) for rect in data.get("walls", [])]
    for x, y, w, h in walls:
        if x < 0 or y < 0 or x + w > width or y + h > height:
            raise SceneError(f"wall rectangle {(x, y, w, h)} outside the lattice")
        lattice = lattice.with_frozen_rect(x, y, w, h, alive=False)
    seeds = []
    for entry in data.get("seeds", []):
        cells = [tuple(int(v) for v in c) for c in entry["cells"]]
        lattice = lattice.with_cells(cells)
        seeds.append(Seed(channel=-1, bit=-1, cells=cells))
    probes = {}
    for name, rect in data.get("probes", {}).items():
        x, y, w, h = (int(v) for v in rect)
        if x < 0 or y < 0 or x + w > width or y + h > height:
            raise SceneError(f"probe {name!r} outside the lattice")
        probes[name] = Probe(rect=(x, y, w, h))
    return ChannelScene(lattice=lattice, seeds=seeds, probes=probes, wall_rects=walls)


def load_scene(path: str) -> ChannelScene:
    with open(path, encoding="utf-8") as f:
        return scene_from_dict(json.load(f))


def save_scene(scene: ChannelScene, path: str):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(scene_to_dict(scene), f, indent=2)
        f.write("\n")


def lattice_to_ascii(lattice: Lattice) -> str:
    rows = []
    for y in range(lattice.height):
        row = []
        for x in range(lattice.width):
            if lattice.frozen[y, x]:
                row.append(ASCII_WALL)
            elif lattice.state[y, x]:
                row.append(ASCII_ALIVE)
            else:
                row.append(ASCII_DEAD)
        rows.append("".join(row))
    return "\n".join(rows) + "\n"


def lattice_to_pgm(lattice: Lattice) -> bytes:
    pixels = np.full((lattice.height, lattice.width), PGM_DEAD, dtype=np.uint8)
    pixels[lattice.state.astype(bool)] = PGM_ALIVE
    pixels[lattice.frozen] = PGM_WALL
    header = f"P5\n{lattice.width} {lattice.height}\n255\n".encode("ascii")
    return header + pixels.tobytes()

#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
#
# urbanprop: geometry map-based radio propagation modelling for urban scenarios
# Copyright (C) 2026 The urbanprop authors
#
# Regenerates the synthetic scenarios under data/: a straight street canyon and a street corner.
# Box vertex and face order matches urbanprop::MapBuilder::add_box.

import json
import pathlib
import sys


def box(vertices, faces, bid, x0, y0, x1, y1, h):
    o = len(vertices)
    for z in (0.0, h):
        vertices += [[x0, y0, z], [x1, y0, z], [x1, y1, z], [x0, y1, z]]
    for q in ((0, 3, 2, 1), (4, 5, 6, 7), (0, 1, 5, 4), (1, 2, 6, 5), (2, 3, 7, 6), (3, 0, 4, 7)):
        faces.append({"building": bid, "v": [o + i for i in q]})


def write_map(path, boxes):
    vertices, faces, buildings = [], [], []
    for bid, name, x0, y0, x1, y1, h in boxes:
        box(vertices, faces, bid, x0, y0, x1, y1, h)
        buildings.append({"id": bid, "name": name})
    doc = {"vertices": vertices, "faces": faces, "buildings": buildings,
           "origin": {"frame": "local", "note": "synthetic scene"}}
    path.write_text(json.dumps(doc, indent=1) + "\n")


def write_route(path, points, speed):
    rows = ["t,x,y,z"]
    t, prev = 0.0, None
    for p in points:
        if prev is not None:
            t += ((p[0] - prev[0]) ** 2 + (p[1] - prev[1]) ** 2) ** 0.5 / speed
        rows.append(f"{t:.6f},{p[0]:.3f},{p[1]:.3f},{p[2]:.3f}")
        prev = p
    path.write_text("\n".join(rows) + "\n")


def write_config(path, tx):
    cfg = {
        "map": "map.json",
        "route": "route.csv",
        "tx": tx,
        "freq_hz": 5.8e9,
        "p_t_watts": 1.0,
        "g_r_linear": 1.0,
        "eps_r": 6.0,
        "polarization": "V",
        "corridor_width_m": 100.0,
        "pl_cap_db": 300.0,
        "output_dir": "out",
    }
    path.write_text(json.dumps(cfg, indent=2) + "\n")


SPEED = 20.0 / 3.6  # m/s


def canyon(root):
    d = root / "canyon"
    d.mkdir(parents=True, exist_ok=True)
    boxes = [
        (1, "north-1", 0.0, 10.0, 35.0, 30.0, 20.0),
        (2, "north-2", 45.0, 10.0, 80.0, 30.0, 25.0),
        (3, "north-3", 90.0, 10.0, 125.0, 30.0, 18.0),
        (4, "north-4", 135.0, 10.0, 170.0, 30.0, 22.0),
        (5, "south-1", 5.0, -30.0, 40.0, -10.0, 15.0),
        (6, "south-2", 50.0, -30.0, 85.0, -10.0, 24.0),
        (7, "south-3", 95.0, -30.0, 130.0, -10.0, 16.0),
        (8, "south-4", 140.0, -30.0, 175.0, -10.0, 21.0),
    ]
    write_map(d / "map.json", boxes)
    write_route(d / "route.csv", [(-15.0 + 5.0 * i, 2.0, 1.5) for i in range(44)], SPEED)
    write_config(d / "config.json", [-20.0, 0.0, 2.0])


def corner(root):
    d = root / "corner"
    d.mkdir(parents=True, exist_ok=True)
    # Street A runs east-west over y in [-10, 10]; street B runs south over x in [-10, 10].
    boxes = [
        (1, "north-1", -120.0, 10.0, -70.0, 35.0, 22.0),
        (2, "north-2", -60.0, 10.0, -15.0, 35.0, 28.0),
        (3, "north-3", -5.0, 10.0, 40.0, 35.0, 20.0),
        (4, "north-4", 50.0, 10.0, 100.0, 35.0, 25.0),
        (5, "corner", -100.0, -40.0, -10.0, -10.0, 24.0),
        (6, "west-2", -100.0, -100.0, -10.0, -50.0, 18.0),
        (7, "west-3", -100.0, -160.0, -10.0, -110.0, 26.0),
        (8, "east-1", 10.0, -40.0, 60.0, -10.0, 21.0),
        (9, "east-2", 10.0, -100.0, 60.0, -50.0, 27.0),
        (10, "east-3", 10.0, -160.0, 60.0, -110.0, 19.0),
    ]
    write_map(d / "map.json", boxes)
    east = [(-70.0 + 4.0 * i, 2.0, 1.5) for i in range(19)]
    south = [(2.0, -2.0 - 4.0 * i, 1.5) for i in range(38)]
    write_route(d / "route.csv", east + south, SPEED)
    write_config(d / "config.json", [-80.0, 6.0, 2.0])


def main():
    root = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "data"
    canyon(root)
    corner(root)


if __name__ == "__main__":
    main()

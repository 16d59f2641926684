#!/usr/bin/env python3
"""Writes fixtures/batch/: the 60-case manifest and the sites it references.

Run from anywhere; output paths are relative to this script. The output is
committed, so only rerun after editing the case list below.
"""

import json
from pathlib import Path

HERE = Path(__file__).resolve().parent
OUT = HERE / "batch"


def rect(x0, y0, x1, y1):
    return [[x0, y0], [x1, y0], [x1, y1], [x0, y1]]


def block(x0, y0, x1, y1, top=3.0, base=0.0):
    return {"polygon": rect(x0, y0, x1, y1), "base_z": base, "top_z": top}


SITES = {
    # open plaza, 40 cm rise
    "open": {
        "boundary": rect(0, 0, 12, 6),
        "obstacles": [],
        "start": [1, 3, 0],
        "end": [11, 3, 0.4],
        "ground_z": 0,
    },
    # two offset walls forcing a switchback, 2 m rise
    "walls": json.loads((HERE / "trial2.json").read_text()),
    # narrow strip, 30 cm rise
    "strip": json.loads((HERE / "trial3.json").read_text()),
    # long forecourt needing intermediate landings
    "long": {
        "boundary": rect(0, 0, 24, 6),
        "obstacles": [],
        "start": [1, 3, 0],
        "end": [23, 3, 1.2],
        "ground_z": 0,
    },
    # scattered planters between the endpoints
    "planters": {
        "boundary": rect(0, 0, 22, 10),
        "obstacles": [
            block(5, 3.5, 6, 6.5, 1.0),
            block(10.5, 0, 11.5, 3.5, 1.0),
            block(10.5, 6.5, 11.5, 10, 1.0),
            block(16, 3.5, 17, 6.5, 1.0),
        ],
        "start": [1, 5, 0],
        "end": [21, 5, 0.6],
        "ground_z": 0,
    },
    # L-shaped courtyard, the route must turn the corner
    "ell": {
        "boundary": [[0, 0], [14, 0], [14, 10], [11, 10], [11, 3], [0, 3]],
        "obstacles": [],
        "start": [1, 1.5, 0],
        "end": [12.5, 9, 0.5],
        "ground_z": 0,
    },
    # a footbridge crosses overhead midway along the route
    "canopy": {
        "boundary": rect(0, 0, 14, 6),
        "obstacles": [block(6, 0, 9, 6, 4.0, 3.0)],
        "start": [1, 3, 0],
        "end": [13, 3, 0.5],
        "ground_z": 0,
    },
    # many columns and a high landing: the stress case
    "stress": {
        "boundary": rect(0, 0, 20, 14),
        "obstacles": [
            block(x, y, x + 0.6, y + 0.6, 6.0)
            for x in (3, 7, 11, 15)
            for y in (2.5, 6.5, 10.5)
        ],
        "start": [1, 1, 0],
        "end": [19, 13, 2.5],
        "ground_z": 0,
    },
    # infeasible: a wall spans the whole site
    "sealed": json.loads((HERE / "sealed.json").read_text()),
    # infeasible: far too little room for the rise
    "cramped": {
        "boundary": rect(0, 0, 6, 1.4),
        "obstacles": [],
        "start": [0.55, 0.7, 0],
        "end": [5.45, 0.7, 0.8],
        "ground_z": 0,
    },
    # infeasible: end point hard against a wall, inside its clearance
    "pinned": {
        "boundary": rect(0, 0, 12, 6),
        "obstacles": [block(11.2, 0, 12, 6, 3.0)],
        "start": [1, 3, 0],
        "end": [11.1, 3, 0.4],
        "ground_z": 0,
    },
}

EXPECT_OK = 4
EXPECT_FAIL = [1, 2]


def case(id, site, params=None, expect=EXPECT_OK, note=None):
    c = {"id": id, "environment": {"file": f"sites/{site}.json"}, "expect": expect}
    if params:
        c["params"] = params
    if note:
        c["note"] = note
    return c


def path(**kw):
    return {"path": kw}


def rail(**kw):
    return {"railing": kw}


def sup(**kw):
    return {"supports": kw}


def mat(**kw):
    return {"materials": kw}


CURVE = {"type": "curve", "inter_path_distance": 1.0}

CASES = [
    # defaults on every feasible site
    case("open-default", "open"),
    case("walls-default", "walls"),
    case("strip-default", "strip"),
    case("long-default", "long"),
    case("planters-default", "planters"),
    case("ell-default", "ell"),
    case("canopy-default", "canopy"),
    # target slope and slope range
    case("open-slope-1of14", "open", path(slope=1 / 14)),
    case("long-slope-1of16", "long", path(slope=1 / 16)),
    case("planters-slope-1of20", "planters", path(slope=1 / 20)),
    case("open-range-fixed", "open", path(slope_min=1 / 12, slope_max=1 / 12)),
    case("walls-range-coarse", "walls", path(slope_step=1 / 60)),
    # deck thickness
    case("open-thin-deck", "open", path(thickness=0.1)),
    case("walls-thick-deck", "walls", path(thickness=0.3)),
    case("long-thick-deck", "long", path(thickness=0.25)),
    # deck width
    case("open-wide", "open", path(width=1.2)),
    case("planters-wide", "planters", path(width=1.5)),
    # inter-path distance
    case("walls-gap-0.5", "walls", path(inter_path_distance=0.5)),
    case("ell-gap-1.0", "ell", path(inter_path_distance=1.0)),
    case("open-gap-0", "open", path(inter_path_distance=0.0)),
    # headroom above the deck
    case("canopy-height-2.3", "canopy", path(height=2.3)),
    case("open-height-2.5", "open", path(height=2.5)),
    case("canopy-height-2.8", "canopy", path(height=2.8), EXPECT_FAIL,
         "footbridge leaves less than the requested headroom"),
    # level landings
    case("long-manual-landing", "long", path(landings={"manual": [10.0]})),
    case("long-manual-two", "long", path(landings={"manual": [7.0, 13.0]})),
    case("long-max-rise-0.5", "long", path(max_rise=0.5)),
    case("long-landing-1.8", "long", path(landing_length=1.8)),
    case("open-landing-2.0", "open", path(landing_length=2.0)),
    # path type
    case("ell-curve", "ell", path(**CURVE)),
    case("planters-curve", "planters", path(**CURVE)),
    case("open-curve", "open", path(**CURVE)),
    # connectivity
    case("planters-4conn", "planters", path(connectivity="4")),
    case("ell-4conn", "ell", path(connectivity="4")),
    # railing height
    case("open-rail-0.88", "open", rail(height=0.88)),
    case("walls-rail-0.93", "walls", rail(height=0.93)),
    case("open-rail-1.1", "open", rail(height=1.1), 3, "rail above the handrail range"),
    # railing thickness
    case("open-rail-thin", "open", rail(thickness=0.03)),
    case("long-rail-thick", "long", rail(thickness=0.06)),
    # railing post spacing
    case("open-posts-1.0", "open", rail(density=1.0)),
    case("walls-posts-2.5", "walls", rail(density=2.5)),
    # railing type
    case("open-single-square", "open", rail(type="single-square")),
    case("walls-single-square", "walls", rail(type="single-square")),
    case("open-double-rounded", "open", rail(type="double-rounded")),
    case("long-double-rounded", "long", rail(type="double-rounded")),
    # supports
    case("walls-support-thin", "walls", sup(thickness=0.15)),
    case("long-support-thick", "long", sup(thickness=0.3)),
    case("walls-support-dense", "walls", sup(density=1.0)),
    case("long-support-sparse", "long", sup(density=3.0)),
    case("walls-no-supports", "walls", sup(density=0.0)),
    # materials
    case("open-wood-glass", "open", mat(path="wood", railing="glass", support="wood")),
    case("walls-glass-rail", "walls", mat(railing="glass", support="concrete")),
    case("strip-custom-tag", "strip", mat(path="brick")),
    # grid resolution
    case("strip-fine-grid", "strip", {"grid": {"resolution": 0.05}}),
    case("planters-coarse-grid", "planters", {"grid": {"resolution": 0.2}}),
    # stress: many obstacles with a high end height
    case("stress-columns", "stress", None, [1, 4], "many obstacles with a high end point"),
    # injected infeasible
    case("sealed-default", "sealed", None, EXPECT_FAIL, "wall spans the site"),
    case("sealed-4conn", "sealed", path(connectivity="4"), EXPECT_FAIL, "wall spans the site"),
    case("cramped-default", "cramped", None, EXPECT_FAIL, "rise needs more run than the site has"),
    case("strip-steep-rise", "cramped", path(slope_min=1 / 14), EXPECT_FAIL, "no room at any slope"),
    case("pinned-end", "pinned", None, EXPECT_FAIL, "end point inside the wall clearance"),
]


def main():
    assert len(CASES) == 60, len(CASES)
    ids = [c["id"] for c in CASES]
    assert len(set(ids)) == len(ids)
    (OUT / "sites").mkdir(parents=True, exist_ok=True)
    for name, site in SITES.items():
        (OUT / "sites" / f"{name}.json").write_text(json.dumps(site, indent=2) + "\n")
    manifest = {"cases": CASES}
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {len(CASES)} cases, {len(SITES)} sites to {OUT}")


if __name__ == "__main__":
    main()

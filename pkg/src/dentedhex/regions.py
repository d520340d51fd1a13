"""Dented half/quarter hexagons: tiling enumeration, weights, and the bijection.

Coordinates.  The half hexagon of width x (top side) and height h
(lateral sides) is drawn row by row, r = 1..h from the top.  Row r holds
x + r upward triangles up(r, i), i = 0..x+r-1, and x + r - 1 downward
triangles down(r, i).  A left dent in row r removes up(r, 0), a right
dent removes up(r, x+r-1).  The three lozenge orientations are

* vertical      up(r, i) + down(r+1, i)   (weighted, label 2i - r - x + 1),
* right-tilted  up(r, i) + down(r, i),
* left-tilted   down(r, i) + up(r, i+1).

The nonintersecting paths of the bijection enter at the left lateral
side in every row without a left dent and leave through the right dents;
they chain through vertical (a right step in Z x Z) and right-tilted
lozenges (a down step).  A path entering at row s maps to the Z x Z
start (x+s-1, x+s-1); leaving at dent row t maps to the end (x+t-1, 0).
The label of a vertical lozenge equals the label of its right step,
which pins the weight-preserving property checked by the oracle tests.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .exactalg import RatFunc, RF_ONE, RF_ZERO
from .lgv import PathEndpoints, LgvError
from .paths import LatticePoint, WeightMode, label_weight


class RegionError(Exception):
    pass


class RegionKind(enum.Enum):
    HALF_HEXAGON = "half_hexagon"
    QUARTER_HEXAGON = "quarter_hexagon"


class Orientation(enum.Enum):
    LEFT_TILTED = "left_tilted"
    RIGHT_TILTED = "right_tilted"
    VERTICAL = "vertical"


LOZENGE_LIMIT = 80


@dataclass(frozen=True)
class Region:
    """A dented half hexagon or quarter hexagon."""
    kind: RegionKind
    width: int
    height: int
    left_dents: tuple[int, ...] = ()
    right_dents: tuple[int, ...] = ()
    label_offset: int = 1
    weight_mode: WeightMode | None = None

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise RegionError("width and height must be positive")
        for dents, name in ((self.left_dents, "left_dents"),
                            (self.right_dents, "right_dents")):
            if list(dents) != sorted(set(dents)):
                raise RegionError("%s must be strictly increasing" % name)
            if dents and (dents[0] < 1 or dents[-1] > self.height):
                raise RegionError("%s out of range 1..height" % name)
        if self.kind is RegionKind.HALF_HEXAGON:
            if len(self.left_dents) + len(self.right_dents) != self.height:
                raise RegionError(
                    "half hexagon needs |left_dents| + |right_dents| = height")
            if self.weight_mode is None:
                object.__setattr__(self, "weight_mode", WeightMode.GENERAL_XY)
        else:
            if self.right_dents:
                raise RegionError("quarter hexagon carries its dents in left_dents")
            if self.label_offset not in (0, 1):
                raise RegionError("label_offset must be 0 or 1")
            if self.weight_mode not in (None, WeightMode.UNIT_XY_HALF_ZERO):
                raise RegionError("quarter hexagon uses the half-zero weight mode")
            object.__setattr__(self, "weight_mode", WeightMode.UNIT_XY_HALF_ZERO)

    # -- cells -------------------------------------------------------------

    def up_cells(self) -> list[tuple[int, int]]:
        left = set(self.left_dents)
        right = set(self.right_dents)
        cells = []
        for r in range(1, self.height + 1):
            last = self.width + r - 1
            for i in range(0, last + 1):
                if i == 0 and r in left:
                    continue
                if i == last and r in right:
                    continue
                cells.append((r, i))
        return cells

    def down_cells(self) -> list[tuple[int, int]]:
        return [(r, i) for r in range(1, self.height + 1)
                for i in range(0, self.width + r - 1)]

    def lozenge_count(self) -> int:
        return len(self.down_cells())

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "width": self.width,
            "height": self.height,
            "left_dents": list(self.left_dents),
            "right_dents": list(self.right_dents),
            "label_offset": self.label_offset,
            "weight_mode": self.weight_mode.value,
        }

    @staticmethod
    def from_json(obj: dict) -> "Region":
        return Region(
            kind=RegionKind(obj["kind"]),
            width=int(obj["width"]),
            height=int(obj["height"]),
            left_dents=tuple(obj.get("left_dents", ())),
            right_dents=tuple(obj.get("right_dents", ())),
            label_offset=int(obj.get("label_offset", 1)),
            weight_mode=WeightMode(obj["weight_mode"]) if "weight_mode" in obj else None,
        )


@dataclass(frozen=True)
class Tiling:
    """A lozenge tiling, as (orientation, anchor) triples.

    The anchor of a vertical or right-tilted lozenge is its up triangle
    (r, i); the anchor of a left-tilted lozenge is its down triangle.
    """
    region: Region
    lozenges: tuple[tuple[Orientation, int, int], ...]

    def vertical_labels(self) -> list[int]:
        x = self.region.width
        labels = [2 * i - r - x + 1
                  for (o, r, i) in self.lozenges if o is Orientation.VERTICAL]
        return sorted(labels)


def _vertical_label(region: Region, r: int, i: int) -> int:
    return 2 * i - r - region.width + 1


def enumerate_tilings(region: Region) -> list[Tiling]:
    """Exhaustive, duplicate-free tiling enumeration by recursive placement."""
    if region.kind is not RegionKind.HALF_HEXAGON:
        raise RegionError("tiling enumeration is defined for half hexagons")
    if region.lozenge_count() > LOZENGE_LIMIT:
        raise RegionError("region exceeds the %d-lozenge enumeration limit"
                          % LOZENGE_LIMIT)
    ups = set(region.up_cells())
    downs = set(region.down_cells())
    cells = sorted([("u", r, i) for (r, i) in ups] +
                   [("d", r, i) for (r, i) in downs],
                   key=lambda c: (c[1], c[2], c[0] == "d"))
    free_u = set(ups)
    free_d = set(downs)
    out: list[Tiling] = []
    placed: list[tuple[Orientation, int, int]] = []

    def first_free():
        for c in cells:
            if c[0] == "u" and c[1:] in free_u:
                return c
            if c[0] == "d" and c[1:] in free_d:
                return c
        return None

    def rec():
        cell = first_free()
        if cell is None:
            out.append(Tiling(region, tuple(sorted(placed,
                       key=lambda l: (l[1], l[2], l[0].value)))))
            return
        kind, r, i = cell
        if kind == "u":
            # pair up(r,i) with one of its three down neighbours
            options = (
                (Orientation.RIGHT_TILTED, (r, i), (r, i)),
                (Orientation.LEFT_TILTED, (r, i - 1), (r, i - 1)),
                (Orientation.VERTICAL, (r + 1, i), (r, i)),
            )
            for orient, dcell, anchor in options:
                if dcell in free_d:
                    free_u.discard((r, i))
                    free_d.discard(dcell)
                    placed.append((orient, anchor[0], anchor[1]))
                    rec()
                    placed.pop()
                    free_u.add((r, i))
                    free_d.add(dcell)
        else:
            # pair down(r,i) with one of its three up neighbours
            options = (
                (Orientation.RIGHT_TILTED, (r, i), (r, i)),
                (Orientation.LEFT_TILTED, (r, i + 1), (r, i)),
                (Orientation.VERTICAL, (r - 1, i), (r - 1, i)),
            )
            for orient, ucell, anchor in options:
                if ucell in free_u:
                    free_d.discard((r, i))
                    free_u.discard(ucell)
                    placed.append((orient, anchor[0], anchor[1]))
                    rec()
                    placed.pop()
                    free_d.add((r, i))
                    free_u.add(ucell)

    rec()
    return out


def tiling_weight(t: Tiling, mode: WeightMode | None = None) -> RatFunc:
    """Product of step weights over the labels of the vertical lozenges."""
    mode = mode or t.region.weight_mode
    w = RF_ONE
    for label in t.vertical_labels():
        w = w * label_weight(label, mode)
    return w


def tiling_gf(region: Region) -> RatFunc:
    """Weighted generating function: sum of tiling_weight over all tilings."""
    total = RF_ZERO
    for t in enumerate_tilings(region):
        total = total + tiling_weight(t)
    return total


def region_to_endpoints(region: Region) -> PathEndpoints:
    """Endpoint data of the nonintersecting-path family for this region."""
    x = region.width
    if region.kind is RegionKind.HALF_HEXAGON:
        left = set(region.left_dents)
        starts = tuple(LatticePoint(x + s - 1, x + s - 1)
                       for s in range(1, region.height + 1) if s not in left)
        ends = tuple(LatticePoint(x + t - 1, 0) for t in region.right_dents)
        return PathEndpoints(starts, ends)
    # quarter hexagon: dents along the single lateral side name the
    # terminal offsets; starts sit consecutively on the symmetry axis
    m = len(region.left_dents)
    off = region.label_offset
    starts = tuple(LatticePoint(2 * (x + i - 1) + off, x + i - 1)
                   for i in range(1, m + 1))
    ends = tuple(LatticePoint(2 * x + t - 1 + off, 0) for t in region.left_dents)
    return PathEndpoints(starts, ends)


def paths_from_tiling(t: Tiling) -> list[tuple[LatticePoint, ...]]:
    """The path family of a tiling, in Z x Z coordinates.

    Walks the chains of vertical/right-tilted lozenges from the left
    lateral side to the right dents; vertical lozenges become right
    steps, right-tilted ones become down steps.
    """
    region = t.region
    x = region.width
    by_up = {}
    for (o, r, i) in t.lozenges:
        if o is Orientation.VERTICAL or o is Orientation.RIGHT_TILTED:
            by_up[(r, i)] = o
    paths = []
    left = set(region.left_dents)
    for s in range(1, region.height + 1):
        if s in left:
            continue
        a = x + s - 1
        pos = LatticePoint(a, a)
        pts = [pos]
        r, i = s, 0
        while True:
            orient = by_up.get((r, i))
            if orient is None:
                raise RegionError("broken path chain at up(%d, %d)" % (r, i))
            if orient is Orientation.VERTICAL:
                # right step, label check against the lozenge label
                assert pos.x - 2 * pos.y == _vertical_label(region, r, i)
                pos = LatticePoint(pos.x + 1, pos.y)
                r, i = r + 1, i + 1
            else:
                pos = LatticePoint(pos.x, pos.y - 1)
                r, i = r, i + 1
            pts.append(pos)
            if i == x + r - 1 and r in set(region.right_dents):
                break
            if i > x + r - 1:
                raise RegionError("path left the region at up(%d, %d)" % (r, i))
        if pos.y != 0:
            raise RegionError("path did not reach the bottom axis")
        paths.append(tuple(pts))
    return paths


def mirror(region: Region) -> Region:
    """Left-right mirror of a half hexagon (swaps the dent sides)."""
    if region.kind is not RegionKind.HALF_HEXAGON:
        raise RegionError("mirror is defined for half hexagons")
    return Region(region.kind, region.width, region.height,
                  left_dents=region.right_dents, right_dents=region.left_dents,
                  weight_mode=region.weight_mode)


# -- SVG rendering ---------------------------------------------------------

_COLORS = {
    Orientation.LEFT_TILTED: "#a6553c",
    Orientation.RIGHT_TILTED: "#fdd5b1",
    Orientation.VERTICAL: "#d2b48c",
}
_SQRT3_2 = 0.8660254037844386
_SCALE = 40.0


def _pt(u: float, line: int, x0: float) -> tuple[float, float]:
    return ((u + x0) * _SCALE, line * _SQRT3_2 * _SCALE)


def _fmt(v: float) -> str:
    return ("%.2f" % v).rstrip("0").rstrip(".")


def _polygon(points, fill, stroke="#333333") -> str:
    pts = " ".join("%s,%s" % (_fmt(a), _fmt(b)) for a, b in points)
    return '<polygon points="%s" fill="%s" stroke="%s" stroke-width="1"/>' % (
        pts, fill, stroke)


def _lozenge_corners(region: Region, orient: Orientation, r: int, i: int):
    def up_corners(r, i):
        return [(i - r / 2, r), (i - r / 2 + 1, r), (i - (r - 1) / 2, r - 1)]
    def down_corners(r, i):
        return [(i - (r - 1) / 2, r - 1), (i - (r - 1) / 2 + 1, r - 1),
                (i - r / 2 + 1, r)]
    if orient is Orientation.VERTICAL:
        u = up_corners(r, i)
        return [u[2], u[0], (i - (r + 1) / 2 + 1, r + 1), u[1]]
    if orient is Orientation.RIGHT_TILTED:
        u = up_corners(r, i)
        d = down_corners(r, i)
        return [u[0], u[1], d[1], u[2]]
    d = down_corners(r, i)
    return [d[0], d[2], (i - r / 2 + 2, r), d[1]]


def render_svg(region: Region, tiling: Tiling | None = None,
               show_paths: bool = False) -> str:
    """Deterministic SVG picture of a region and (optionally) one tiling."""
    h = region.height
    x0 = h / 2 + 0.5
    width = (region.width + h + 1) * _SCALE + _SCALE
    height = (h + 1) * _SQRT3_2 * _SCALE + _SCALE
    parts = ['<?xml version="1.0" encoding="UTF-8"?>',
             '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
             'width="%s" height="%s">' % (_fmt(width), _fmt(height)),
             '<g transform="translate(20,20)">']
    if tiling is not None:
        for (o, r, i) in tiling.lozenges:
            corners = [_pt(u, line, x0) for u, line in
                       _lozenge_corners(region, o, r, i)]
            parts.append(_polygon(corners, _COLORS[o]))
        for (o, r, i) in tiling.lozenges:
            if o is Orientation.VERTICAL:
                cx, cy = _pt(i - r / 2 + 0.5, r, x0)
                cy += 0.0
                parts.append('<text x="%s" y="%s" font-size="12" '
                             'text-anchor="middle">%d</text>'
                             % (_fmt(cx), _fmt(cy), _vertical_label(region, r, i)))
    # region outline: top, right side (with dents), bottom, left side
    outline = []
    outline.append(_pt(0, 0, x0))
    outline.append(_pt(region.width, 0, x0))
    for r in range(1, h + 1):
        outline.append(_pt(region.width + r / 2, r, x0))
    outline.append(_pt(-h / 2, h, x0))
    for r in range(h, 0, -1):
        outline.append(_pt(-(r - 1) / 2, r - 1, x0))
    pts = " ".join("%s,%s" % (_fmt(a), _fmt(b)) for a, b in outline)
    parts.append('<polyline points="%s" fill="none" stroke="#000000" '
                 'stroke-width="2"/>' % pts)
    if tiling is not None and show_paths:
        for chain in _tiling_chains(tiling):
            pts = " ".join("%s,%s" % (_fmt(a), _fmt(b)) for a, b in chain)
            parts.append('<polyline points="%s" fill="none" stroke="#ffffff" '
                         'stroke-width="3" stroke-linecap="round"/>' % pts)
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _tiling_chains(t: Tiling):
    """Lozenge-center chains of the path family, in picture coordinates."""
    region = t.region
    h = region.height
    x0 = h / 2 + 0.5
    by_up = {}
    for (o, r, i) in t.lozenges:
        if o in (Orientation.VERTICAL, Orientation.RIGHT_TILTED):
            by_up[(r, i)] = o
    left = set(region.left_dents)
    rights = set(region.right_dents)
    chains = []
    for s in range(1, h + 1):
        if s in left:
            continue
        r, i = s, 0
        chain = [_pt(-r / 2 + 0.25, r - 0.5, x0)]
        while True:
            orient = by_up.get((r, i))
            if orient is None:
                break
            if orient is Orientation.VERTICAL:
                chain.append(_pt(i - r / 2 + 0.5, r, x0))
                r, i = r + 1, i + 1
            else:
                chain.append(_pt(i - r / 2 + 0.75, r - 0.5, x0))
                r, i = r, i + 1
            if i == region.width + r - 1 and r in rights:
                chain.append(_pt(i - r / 2 + 0.25, r - 0.5, x0))
                break
        chains.append(chain)
    return chains

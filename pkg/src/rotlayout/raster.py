"""Top-down rasterization of rooms and layouts onto square label grids.

Rooms are letterboxed into an R x R grid (centred, cm_per_px = max(W,H)/R)
so that odd quarter-turns stay inside one tensor shape.  Boxes are mapped
cm -> px with floor/ceil cover semantics, which commutes exactly with
np.rot90 grid rotation for square rooms; all grids are float64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import ndimage

from rotlayout.layout import (
    FurnitureItem,
    OpeningKind,
    Room,
    SceneLayout,
    WallSide,
    _loop_vertices,
    _point_in_loop,
    item_bbox,
    rotate_layout,
)

__all__ = [
    "LayoutImage",
    "ModeMask",
    "RasterConfig",
    "RasterError",
    "RoomImage",
    "apply_mask",
    "extract_items",
    "layout_to_rgb",
    "mode_mask",
    "render_empty_room",
    "render_layout",
    "room_to_rgb",
    "write_pgm",
    "write_ppm",
]

# Components smaller than this many pixels are treated as speckle noise.
MIN_COMPONENT_AREA = 4

WALL_THICKNESS_PX = 2


class RasterError(ValueError):
    """Raised on resolution/extent mismatches and degenerate geometry."""


@dataclass(frozen=True)
class RasterConfig:
    """Grid geometry for one scene: square resolution, category count, room extent."""

    resolution: int
    n_cat: int
    extent: tuple[float, float]

    def __post_init__(self) -> None:
        if self.resolution < 16 or self.resolution % 4 != 0:
            raise RasterError(
                f"resolution must be >= 16 and a multiple of 4, got {self.resolution}"
            )
        if min(self.extent) <= 0:
            raise RasterError(f"degenerate extent {self.extent}")

    @property
    def cm_per_px(self) -> float:
        return max(self.extent) / self.resolution

    def for_extent(self, extent: tuple[float, float]) -> "RasterConfig":
        return replace(self, extent=extent)

    def for_room(self, room: Room) -> "RasterConfig":
        return self.for_extent(room.extent)

    def offsets_px(self) -> tuple[float, float]:
        """Letterbox offsets (ox, oy) in pixels; zero for square rooms."""
        w, h = self.extent
        m = max(self.extent)
        r = self.resolution
        return ((r - (w * r) / m) / 2.0, (r - (h * r) / m) / 2.0)


@dataclass(eq=False)
class RoomImage:
    """Empty-room render: channels (wall, door, window), shape (3, R, R)."""

    grid: np.ndarray


@dataclass(eq=False)
class LayoutImage:
    """Layout render: one-hot category map (n_cat+1, R, R) with channel 0 empty,
    plus a direction map (4, R, R) that is one-hot on furniture pixels.

    Generator outputs reuse this type with soft (post-softmax) channels.
    """

    cat: np.ndarray
    dir: np.ndarray

    @property
    def resolution(self) -> int:
        return self.cat.shape[-1]


@dataclass(eq=False)
class ModeMask:
    """Binary attention map: 1 inside ground-truth furniture boxes, 0 elsewhere."""

    grid: np.ndarray


def _box_cells(
    cfg: RasterConfig, x0: float, x1: float, y0: float, y1: float
) -> tuple[int, int, int, int]:
    """Half-open pixel ranges (r0, r1, c0, c1) covering a cm box, clipped to grid."""
    m = max(cfg.extent)
    r = cfg.resolution
    ox, oy = cfg.offsets_px()
    c0 = math.floor(ox + (x0 * r) / m)
    c1 = math.ceil(ox + (x1 * r) / m)
    r0 = math.floor(oy + (y0 * r) / m)
    r1 = math.ceil(oy + (y1 * r) / m)
    return (max(r0, 0), min(r1, r), max(c0, 0), min(c1, r))


def _px_to_cm(cfg: RasterConfig, c0: int, c1: int, r0: int, r1: int):
    """Inverse of _box_cells for a half-open pixel range, as (x0, x1, y0, y1) cm."""
    m = max(cfg.extent)
    r = cfg.resolution
    ox, oy = cfg.offsets_px()
    return (
        (c0 - ox) * m / r,
        (c1 - ox) * m / r,
        (r0 - oy) * m / r,
        (r1 - oy) * m / r,
    )


def _inward_normal(wall, verts, walls) -> tuple[float, float]:
    (ax, ay), (bx, by) = wall.a, wall.b
    mx, my = (ax + bx) / 2.0, (ay + by) / 2.0
    n = (0.0, 1.0) if ay == by else (1.0, 0.0)
    probe = (mx + n[0], my + n[1])
    if _point_in_loop(probe, verts, walls):
        return n
    return (-n[0], -n[1])


def render_empty_room(room: Room, cfg: RasterConfig) -> RoomImage:
    """Rasterize walls (2 px thick, painted inward) and door/window spans.

    Openings replace the wall channel within their span.
    """
    if tuple(room.extent) != tuple(cfg.extent):
        raise RasterError(f"config extent {cfg.extent} != room extent {room.extent}")
    verts = _loop_vertices(room.walls)
    if verts is None:
        raise RasterError("room walls do not form a closed loop")

    r = cfg.resolution
    grid = np.zeros((3, r, r), dtype=np.float64)
    t = WALL_THICKNESS_PX * cfg.cm_per_px

    def band(wall_or_span, side_normal):
        (ax, ay), (bx, by) = wall_or_span
        nx, ny = side_normal
        x0, x1 = min(ax, bx), max(ax, bx)
        y0, y1 = min(ay, by), max(ay, by)
        if nx > 0:
            x1 = x0 + t
        elif nx < 0:
            x0 = x1 - t
        if ny > 0:
            y1 = y0 + t
        elif ny < 0:
            y0 = y1 - t
        return x0, x1, y0, y1

    normals = {}
    for wall in room.walls:
        n = _inward_normal(wall, verts, room.walls)
        normals[wall] = n
        x0, x1, y0, y1 = band((wall.a, wall.b), n)
        r0, r1, c0, c1 = _box_cells(cfg, x0, x1, y0, y1)
        grid[0, r0:r1, c0:c1] = 1.0

    inward = {
        WallSide.NORTH: (0.0, 1.0),
        WallSide.SOUTH: (0.0, -1.0),
        WallSide.WEST: (1.0, 0.0),
        WallSide.EAST: (-1.0, 0.0),
    }
    for o in room.openings:
        n = inward[o.side]
        half = o.length / 2.0
        if n[0] == 0.0:  # span runs along x
            seg = ((o.x - half, o.y), (o.x + half, o.y))
        else:
            seg = ((o.x, o.y - half), (o.x, o.y + half))
        x0, x1, y0, y1 = band(seg, n)
        r0, r1, c0, c1 = _box_cells(cfg, x0, x1, y0, y1)
        ch = 1 if o.kind is OpeningKind.DOOR else 2
        grid[0, r0:r1, c0:c1] = 0.0
        grid[ch, r0:r1, c0:c1] = 1.0

    return RoomImage(grid)


def render_layout(s: SceneLayout, cfg: RasterConfig) -> LayoutImage:
    """Rasterize item boxes onto one-hot category/direction grids.

    Items later in the list overwrite earlier ones where boxes collide.
    """
    if tuple(s.room.extent) != tuple(cfg.extent):
        raise RasterError(f"config extent {cfg.extent} != room extent {s.room.extent}")
    r = cfg.resolution
    cat = np.zeros((cfg.n_cat + 1, r, r), dtype=np.float64)
    cat[0] = 1.0
    dmap = np.zeros((4, r, r), dtype=np.float64)
    for it in s.items:
        box = item_bbox(it)
        r0, r1, c0, c1 = _box_cells(cfg, box.x0, box.x1, box.y0, box.y1)
        cat[:, r0:r1, c0:c1] = 0.0
        cat[it.category, r0:r1, c0:c1] = 1.0
        dmap[:, r0:r1, c0:c1] = 0.0
        dmap[it.d // 90, r0:r1, c0:c1] = 1.0
    return LayoutImage(cat=cat, dir=dmap)


def mode_mask(s: SceneLayout, k, cfg: RasterConfig) -> ModeMask:
    """Binary union of the item boxes of rotate_layout(s, k), in the rotated frame."""
    rot = rotate_layout(s, k)
    rcfg = cfg.for_extent(rot.room.extent)
    r = cfg.resolution
    grid = np.zeros((r, r), dtype=np.float64)
    for it in rot.items:
        box = item_bbox(it)
        r0, r1, c0, c1 = _box_cells(rcfg, box.x0, box.x1, box.y0, box.y1)
        grid[r0:r1, c0:c1] = 1.0
    return ModeMask(grid)


def apply_mask(img: LayoutImage, m: ModeMask) -> LayoutImage:
    """Hadamard product of every channel with the mask."""
    if img.cat.shape[-2:] != m.grid.shape:
        raise RasterError(
            f"mask shape {m.grid.shape} does not match image {img.cat.shape[-2:]}"
        )
    return LayoutImage(cat=img.cat * m.grid, dir=img.dir * m.grid)


def extract_items(
    img: LayoutImage, cfg: RasterConfig
) -> list[tuple[FurnitureItem, float]]:
    """Recover furniture items from a (possibly soft) layout image.

    Per-pixel argmax over category channels, then 4-connected components per
    category become items: box = component pixel bbox mapped back to cm,
    direction = argmax of the direction channels summed over the component,
    confidence = mean winning category probability.  Components under
    MIN_COMPONENT_AREA pixels are dropped as speckle.
    """
    amax = np.argmax(img.cat, axis=0)
    out: list[tuple[FurnitureItem, float]] = []
    for cid in np.unique(amax):
        if cid == 0:
            continue
        labels, n = ndimage.label(amax == cid)
        slices = ndimage.find_objects(labels)
        for li in range(1, n + 1):
            sl = slices[li - 1]
            comp = labels[sl] == li
            area = int(comp.sum())
            if area < MIN_COMPONENT_AREA:
                continue
            r0, r1 = sl[0].start, sl[0].stop
            c0, c1 = sl[1].start, sl[1].stop
            x0, x1, y0, y1 = _px_to_cm(cfg, c0, c1, r0, r1)
            dsum = img.dir[:, sl[0], sl[1]][:, comp].sum(axis=1)
            d = 90 * int(np.argmax(dsum))
            bw, bh = x1 - x0, y1 - y0
            w, h = (bw, bh) if d % 180 == 0 else (bh, bw)
            conf = float(img.cat[cid, sl[0], sl[1]][comp].mean())
            item = FurnitureItem(
                int(cid), (x0 + x1) / 2.0, (y0 + y1) / 2.0, w, h, d
            )
            out.append((item, conf))
    return out


# -- debug image dumps --------------------------------------------------------

_PALETTE = np.array(
    [
        (255, 255, 255),  # 0 empty
        (31, 119, 180),
        (255, 127, 14),
        (44, 160, 44),
        (214, 39, 40),
        (148, 103, 189),
        (140, 86, 75),
        (227, 119, 194),
        (127, 127, 127),
        (188, 189, 34),
        (23, 190, 207),
        (174, 199, 232),
        (255, 187, 120),
        (152, 223, 138),
    ],
    dtype=np.uint8,
)


def write_pgm(path, channel: np.ndarray) -> None:
    """Binary PGM (P5), 8-bit, row-major, from a single [0,1] channel."""
    a = np.clip(np.asarray(channel, dtype=np.float64), 0.0, 1.0)
    data = np.round(a * 255).astype(np.uint8)
    h, w = data.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        f.write(data.tobytes())


def write_ppm(path, rgb: np.ndarray) -> None:
    """Binary PPM (P6), 8-bit RGB, row-major, from an (H, W, 3) uint8 array."""
    data = np.asarray(rgb, dtype=np.uint8)
    h, w, _ = data.shape
    with open(path, "wb") as f:
        f.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        f.write(data.tobytes())


def layout_to_rgb(img: LayoutImage) -> np.ndarray:
    """RGB composite of a layout image via the fixed category palette."""
    amax = np.argmax(img.cat, axis=0)
    return _PALETTE[amax]


def room_to_rgb(img: RoomImage) -> np.ndarray:
    """RGB composite of a room image: gray walls, brown doors, blue windows."""
    r = img.grid.shape[-1]
    rgb = np.full((r, r, 3), 255, dtype=np.uint8)
    rgb[img.grid[0] > 0.5] = (90, 90, 90)
    rgb[img.grid[1] > 0.5] = (170, 110, 40)
    rgb[img.grid[2] > 0.5] = (70, 130, 220)
    return rgb

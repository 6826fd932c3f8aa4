"""Room-layout data model and exact quarter-turn rotation algebra.

Coordinates are continuous centimetres with the origin at the top-left of
the room bounding box, x rightward and y downward.  One quarter turn maps
(x, y) -> (y, W - x) and swaps the extent (W, H) -> (H, W), so every
rotation is an exact closed-form permutation of the plane: no trig, no
interpolation, and four applications are the identity.

Furniture direction d is stored in degrees from {0, 90, 180, 270}; d = 0
faces the top of the room (-y) and rotating a scene by k quarter turns adds
90*k degrees to every item.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from enum import Enum

__all__ = [
    "AABB",
    "CATALOG",
    "Category",
    "FurnitureItem",
    "LayoutError",
    "N_CATEGORIES",
    "Opening",
    "OpeningKind",
    "Room",
    "RoomType",
    "RotationAngle",
    "SceneLayout",
    "WallFragment",
    "WallSide",
    "categories_for",
    "category_by_id",
    "category_by_name",
    "iou",
    "item_bbox",
    "rotate_direction",
    "rotate_extent",
    "rotate_layout",
    "rotate_point",
    "rotate_side",
    "validate_layout",
]

# Two item boxes may overlap only lightly; see validate_layout.
MAX_ITEM_IOU = 0.3

# Tolerance for "opening midpoint lies on its wall", in cm.
OPENING_WALL_TOL = 0.5


class LayoutError(ValueError):
    """Raised when an operation receives geometrically invalid input."""


class RoomType(Enum):
    BEDROOM = "bedroom"
    BATHROOM = "bathroom"
    STUDY = "study"
    TATAMI = "tatami"


class OpeningKind(Enum):
    DOOR = "door"
    WINDOW = "window"


class WallSide(Enum):
    NORTH = "north"
    EAST = "east"
    SOUTH = "south"
    WEST = "west"


@dataclass(frozen=True)
class Category:
    """Furniture category with a dense id; id 0 is reserved for empty space."""

    id: int
    name: str
    room_types: frozenset[RoomType]


def _cat(cid: int, name: str, *rts: RoomType) -> Category:
    return Category(cid, name, frozenset(rts))


CATALOG: tuple[Category, ...] = (
    _cat(1, "bed", RoomType.BEDROOM),
    _cat(2, "wardrobe", RoomType.BEDROOM),
    _cat(3, "nightstand", RoomType.BEDROOM),
    _cat(4, "desk", RoomType.BEDROOM, RoomType.STUDY, RoomType.TATAMI),
    _cat(5, "toilet", RoomType.BATHROOM),
    _cat(6, "sink", RoomType.BATHROOM),
    _cat(7, "shower", RoomType.BATHROOM),
    _cat(8, "washing_machine", RoomType.BATHROOM),
    _cat(9, "chair", RoomType.STUDY, RoomType.TATAMI),
    _cat(10, "bookshelf", RoomType.STUDY),
    _cat(11, "sofa", RoomType.STUDY),
    _cat(12, "tatami_platform", RoomType.TATAMI),
    _cat(13, "cabinet", RoomType.TATAMI),
)

N_CATEGORIES = len(CATALOG)

_BY_ID = {c.id: c for c in CATALOG}
_BY_NAME = {c.name: c for c in CATALOG}


def category_by_id(cid: int) -> Category:
    try:
        return _BY_ID[cid]
    except KeyError:
        raise LayoutError(f"unknown category id {cid}") from None


def category_by_name(name: str) -> Category:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise LayoutError(f"unknown category name {name!r}") from None


def categories_for(room_type: RoomType) -> tuple[Category, ...]:
    return tuple(c for c in CATALOG if room_type in c.room_types)


@dataclass(frozen=True)
class RotationAngle:
    """Scene rotation as quarter turns k in {0,1,2,3}; k=0 is the 360 case."""

    k: int

    def __post_init__(self) -> None:
        if self.k not in (0, 1, 2, 3):
            raise LayoutError(f"quarter turns must be in 0..3, got {self.k}")

    @property
    def degrees(self) -> int:
        return 90 * self.k


def _quarter_turns(k: "RotationAngle | int") -> int:
    if isinstance(k, RotationAngle):
        return k.k
    if k not in (0, 1, 2, 3):
        raise LayoutError(f"quarter turns must be in 0..3, got {k}")
    return int(k)


@dataclass(frozen=True)
class FurnitureItem:
    """One furniture piece: category id, centre position, own-frame size, direction.

    Size (w, h) is measured in the item's own frame at d = 0; the world
    bounding box swaps the dimensions when d is 90 or 270.
    """

    category: int
    x: float
    y: float
    w: float
    h: float
    d: int

    @property
    def position(self) -> tuple[float, float]:
        return (self.x, self.y)

    @property
    def size(self) -> tuple[float, float]:
        return (self.w, self.h)


@dataclass(frozen=True)
class Opening:
    """Door or window span, located by its midpoint on a wall."""

    kind: OpeningKind
    x: float
    y: float
    length: float
    side: WallSide

    @property
    def midpoint(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class WallFragment:
    """Axis-aligned wall segment from a to b."""

    a: tuple[float, float]
    b: tuple[float, float]

    @property
    def horizontal(self) -> bool:
        return self.a[1] == self.b[1]


@dataclass(frozen=True)
class Room:
    """Empty room: bounding extent (W, H), closed rectilinear wall loop, openings."""

    extent: tuple[float, float]
    walls: tuple[WallFragment, ...]
    openings: tuple[Opening, ...]

    @classmethod
    def rectangle(
        cls, width: float, height: float, openings: tuple[Opening, ...] = ()
    ) -> "Room":
        walls = (
            WallFragment((0.0, 0.0), (width, 0.0)),
            WallFragment((width, 0.0), (width, height)),
            WallFragment((width, height), (0.0, height)),
            WallFragment((0.0, height), (0.0, 0.0)),
        )
        return cls(extent=(width, height), walls=walls, openings=tuple(openings))


@dataclass(frozen=True)
class SceneLayout:
    """A room plus its furniture items at scene rotation theta."""

    room: Room
    items: tuple[FurnitureItem, ...]
    theta: RotationAngle
    room_type: RoomType
    scene_id: str


@dataclass(frozen=True)
class AABB:
    """Axis-aligned box (x0, y0) .. (x1, y1) with x0 < x1 and y0 < y1."""

    x0: float
    y0: float
    x1: float
    y1: float

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def center(self) -> tuple[float, float]:
        return ((self.x0 + self.x1) / 2.0, (self.y0 + self.y1) / 2.0)


def rotate_point(
    p: tuple[float, float],
    k: "RotationAngle | int",
    extent: tuple[float, float],
) -> tuple[float, float]:
    """Rotate a point k quarter turns inside its extent.

    One turn maps (x, y) -> (y, W - x) with the extent becoming (H, W);
    higher k is the composition of single turns.
    """
    turns = _quarter_turns(k)
    x, y = p
    if not (0.0 <= x <= extent[0] and 0.0 <= y <= extent[1]):
        raise LayoutError(f"point {p} outside extent {extent}")
    w, h = extent
    for _ in range(turns):
        x, y = y, w - x
        w, h = h, w
    return (x, y)


def rotate_extent(
    extent: tuple[float, float], k: "RotationAngle | int"
) -> tuple[float, float]:
    return extent if _quarter_turns(k) % 2 == 0 else (extent[1], extent[0])


def rotate_direction(d: int, k: "RotationAngle | int") -> int:
    return (d + 90 * _quarter_turns(k)) % 360


# One quarter turn sends the top wall to the left wall and so on around.
_SIDE_CYCLE = (WallSide.NORTH, WallSide.WEST, WallSide.SOUTH, WallSide.EAST)


def rotate_side(side: WallSide, k: "RotationAngle | int") -> WallSide:
    i = _SIDE_CYCLE.index(side)
    return _SIDE_CYCLE[(i + _quarter_turns(k)) % 4]


def item_bbox(item: FurnitureItem) -> AABB:
    """World-frame bounding box of an item; dims swap for d in {90, 270}."""
    if item.d % 180 == 0:
        bw, bh = item.w, item.h
    else:
        bw, bh = item.h, item.w
    return AABB(item.x - bw / 2.0, item.y - bh / 2.0, item.x + bw / 2.0, item.y + bh / 2.0)


def iou(a: AABB, b: AABB) -> float:
    """Intersection over union of two boxes; 0 when disjoint."""
    ix = min(a.x1, b.x1) - max(a.x0, b.x0)
    iy = min(a.y1, b.y1) - max(a.y0, b.y0)
    if ix <= 0.0 or iy <= 0.0:
        return 0.0
    inter = ix * iy
    union = a.area + b.area - inter
    return inter / union


def rotate_layout(s: SceneLayout, k: "RotationAngle | int") -> SceneLayout:
    """Rotate a whole scene k quarter turns: room, openings, items, theta."""
    turns = _quarter_turns(k)
    if turns == 0:
        return s
    ext = s.room.extent
    walls = tuple(
        WallFragment(rotate_point(w.a, turns, ext), rotate_point(w.b, turns, ext))
        for w in s.room.walls
    )
    openings = tuple(
        replace(
            o,
            x=rotate_point(o.midpoint, turns, ext)[0],
            y=rotate_point(o.midpoint, turns, ext)[1],
            side=rotate_side(o.side, turns),
        )
        for o in s.room.openings
    )
    items = tuple(
        replace(
            it,
            x=rotate_point(it.position, turns, ext)[0],
            y=rotate_point(it.position, turns, ext)[1],
            d=rotate_direction(it.d, turns),
        )
        for it in s.items
    )
    room = Room(extent=rotate_extent(ext, turns), walls=walls, openings=openings)
    theta = RotationAngle((s.theta.k + turns) % 4)
    return replace(s, room=room, items=items, theta=theta)


def _loop_vertices(walls: tuple[WallFragment, ...]) -> "list[tuple[float, float]] | None":
    """Order wall endpoints into one closed loop, or None if that fails."""
    if not walls:
        return None
    adj: dict[tuple[float, float], list[int]] = {}
    for i, w in enumerate(walls):
        adj.setdefault(w.a, []).append(i)
        adj.setdefault(w.b, []).append(i)
    if any(len(ixs) != 2 for ixs in adj.values()):
        return None
    seen = set()
    verts = [walls[0].a]
    cur, cur_idx = walls[0].b, 0
    seen.add(0)
    while cur != verts[0]:
        verts.append(cur)
        nxt = [i for i in adj[cur] if i != cur_idx and i not in seen]
        if not nxt:
            return None
        cur_idx = nxt[0]
        seen.add(cur_idx)
        w = walls[cur_idx]
        cur = w.b if w.a == cur else w.a
    if len(seen) != len(walls):
        return None  # extra segments outside the loop
    return verts


def _on_segment(p: tuple[float, float], w: WallFragment, tol: float) -> bool:
    (ax, ay), (bx, by) = w.a, w.b
    x, y = p
    if ay == by:  # horizontal
        lo, hi = min(ax, bx), max(ax, bx)
        return abs(y - ay) <= tol and lo - tol <= x <= hi + tol
    lo, hi = min(ay, by), max(ay, by)
    return abs(x - ax) <= tol and lo - tol <= y <= hi + tol


def _point_in_loop(p: tuple[float, float], verts: list[tuple[float, float]], walls: tuple[WallFragment, ...]) -> bool:
    """Even-odd test with boundary points counted as inside."""
    if any(_on_segment(p, w, 1e-9) for w in walls):
        return True
    x, y = p
    inside = False
    n = len(verts)
    for i in range(n):
        (x0, y0), (x1, y1) = verts[i], verts[(i + 1) % n]
        if (y0 > y) != (y1 > y):
            # edges are axis-aligned, so a crossing edge is vertical
            if x0 < x:
                inside = not inside
    return inside


def _side_line(side: WallSide, extent: tuple[float, float]) -> tuple[int, float]:
    """(axis, coordinate) of the boundary line a side refers to; axis 0 is x."""
    w, h = extent
    return {
        WallSide.NORTH: (1, 0.0),
        WallSide.SOUTH: (1, h),
        WallSide.WEST: (0, 0.0),
        WallSide.EAST: (0, w),
    }[side]


def validate_layout(s: SceneLayout) -> list[str]:
    """Check every scene invariant; returns a list of violations (empty = ok)."""
    v: list[str] = []
    room = s.room
    w_ext, h_ext = room.extent
    if w_ext <= 0 or h_ext <= 0:
        v.append(f"room extent {room.extent} not positive")
        return v

    for i, wall in enumerate(room.walls):
        if wall.a == wall.b:
            v.append(f"wall {i}: degenerate segment {wall.a}")
        elif wall.a[0] != wall.b[0] and wall.a[1] != wall.b[1]:
            v.append(f"wall {i}: not axis-aligned ({wall.a} -> {wall.b})")
    if v:
        return v

    verts = _loop_vertices(room.walls)
    if verts is None:
        v.append("walls do not form a single closed loop")
        return v

    xs = [p[0] for p in verts]
    ys = [p[1] for p in verts]
    bbox = (min(xs), min(ys), max(xs), max(ys))
    if bbox != (0.0, 0.0, w_ext, h_ext):
        v.append(f"extent {room.extent} does not match wall bounding box {bbox}")

    for i, o in enumerate(room.openings):
        if o.length <= 0:
            v.append(f"opening {i}: non-positive length {o.length}")
            continue
        axis, coord = _side_line(o.side, room.extent)
        side_walls = [
            w
            for w in room.walls
            if (w.horizontal and axis == 1 and abs(w.a[1] - coord) <= OPENING_WALL_TOL)
            or (not w.horizontal and axis == 0 and abs(w.a[0] - coord) <= OPENING_WALL_TOL)
        ]
        if not any(_on_segment(o.midpoint, w, OPENING_WALL_TOL) for w in side_walls):
            v.append(f"opening {i}: midpoint {o.midpoint} not on {o.side.value} wall")

    boxes: list[AABB] = []
    for i, it in enumerate(s.items):
        ok = True
        if it.w <= 0 or it.h <= 0:
            v.append(f"item {i}: non-positive size ({it.w}, {it.h})")
            ok = False
        if it.d not in (0, 90, 180, 270):
            v.append(f"item {i}: invalid direction {it.d}")
            ok = False
        if it.category not in _BY_ID:
            v.append(f"item {i}: unknown category {it.category}")
            ok = False
        if not ok:
            boxes.append(None)  # type: ignore[arg-type]
            continue
        box = item_bbox(it)
        boxes.append(box)
        corners = [(box.x0, box.y0), (box.x1, box.y0), (box.x1, box.y1), (box.x0, box.y1)]
        if not all(_point_in_loop(c, verts, room.walls) for c in corners):
            v.append(f"item {i} outside room")

    for i, j in itertools.combinations(range(len(s.items)), 2):
        if boxes[i] is None or boxes[j] is None:
            continue
        r = iou(boxes[i], boxes[j])
        if r > MAX_ITEM_IOU:
            v.append(f"items {i},{j} overlap IoU {r:.2f} > {MAX_ITEM_IOU}")

    return v

import random

import pytest

from rotlayout.layout import (
    CATALOG,
    FurnitureItem,
    Opening,
    OpeningKind,
    Room,
    RoomType,
    RotationAngle,
    SceneLayout,
    WallSide,
    item_bbox,
)


def make_scene(
    extent=(400.0, 400.0),
    items=(),
    openings=(),
    room_type=RoomType.BEDROOM,
    scene_id="scene-0",
    theta=0,
):
    room = Room.rectangle(extent[0], extent[1], tuple(openings))
    return SceneLayout(
        room=room,
        items=tuple(items),
        theta=RotationAngle(theta),
        room_type=room_type,
        scene_id=scene_id,
    )


def random_scene(rng: random.Random, n_items=4, scene_id="rand"):
    """Hand-rolled valid scene: integer-cm rectangle room, separated items.

    Independent of the synthetic generator so the rotation algebra can be
    tested without trusting it.
    """
    w = rng.randrange(300, 501, 10)
    h = rng.randrange(300, 501, 10)
    side = rng.choice(list(WallSide))
    if side in (WallSide.NORTH, WallSide.SOUTH):
        mid = (rng.randrange(80, int(w) - 80), 0.0 if side is WallSide.NORTH else float(h))
    else:
        mid = (0.0 if side is WallSide.WEST else float(w), rng.randrange(80, int(h) - 80))
    openings = [Opening(OpeningKind.DOOR, mid[0], mid[1], 80.0, side)]

    items = []
    attempts = 0
    while len(items) < n_items and attempts < 200:
        attempts += 1
        cat = rng.choice(CATALOG)
        iw = rng.randrange(45, 120)
        ih = rng.randrange(45, 120)
        d = rng.choice((0, 90, 180, 270))
        bw, bh = (iw, ih) if d % 180 == 0 else (ih, iw)
        x = rng.randrange(int(bw // 2 + 5), int(w - bw // 2 - 5))
        y = rng.randrange(int(bh // 2 + 5), int(h - bh // 2 - 5))
        cand = FurnitureItem(cat.id, float(x), float(y), float(iw), float(ih), d)
        box = item_bbox(cand)
        clear = all(
            box.x1 + 20 <= b.x0 or b.x1 + 20 <= box.x0 or box.y1 + 20 <= b.y0 or b.y1 + 20 <= box.y0
            for b in (item_bbox(it) for it in items)
        )
        if clear:
            items.append(cand)
    return make_scene((float(w), float(h)), items, openings, scene_id=scene_id)


@pytest.fixture
def rng():
    return random.Random(1234)

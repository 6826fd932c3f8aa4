"""Rotation-aware adversarial furniture-layout toolkit."""

from rotlayout.layout import (
    AABB,
    CATALOG,
    Category,
    FurnitureItem,
    LayoutError,
    N_CATEGORIES,
    Opening,
    OpeningKind,
    Room,
    RoomType,
    RotationAngle,
    SceneLayout,
    WallFragment,
    WallSide,
    iou,
    item_bbox,
    rotate_layout,
    rotate_point,
    validate_layout,
)

__version__ = "0.1.0"

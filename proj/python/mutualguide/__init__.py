"""Label assignment strategies for single-stage object detectors.

Labels are encoded as integers: the object index for a positive anchor,
-1 for negative and -2 for ignored.
"""

from ._core import (
    AnchorGridSpec,
    Box,
    LevelSpec,
    amplified_iou,
    average_precision,
    centerness,
    classify_to_localize,
    fcos_assign_original,
    fcos_mutual_assign,
    generate_anchors,
    generate_points,
    iou,
    iou_matrix,
    localize_to_classify,
    mutual_guidance_assign,
    nms,
    static_assign,
    synth_scene,
    trajectory_counts,
)

NEGATIVE = -1
IGNORED = -2

__all__ = [
    "AnchorGridSpec",
    "Box",
    "IGNORED",
    "LevelSpec",
    "NEGATIVE",
    "amplified_iou",
    "average_precision",
    "centerness",
    "classify_to_localize",
    "fcos_assign_original",
    "fcos_mutual_assign",
    "generate_anchors",
    "generate_points",
    "iou",
    "iou_matrix",
    "localize_to_classify",
    "mutual_guidance_assign",
    "nms",
    "static_assign",
    "synth_scene",
    "trajectory_counts",
]

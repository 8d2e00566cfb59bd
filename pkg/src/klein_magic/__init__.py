"""C4-face-magic labelings of Klein bottle grid graphs."""

from klein_magic.grid import Cell, Face, GridDims, GridError, edges, faces
from klein_magic.labeling import (
    Labeling,
    LabelingError,
    VerifyReport,
    is_equatorially_balanced,
    magic_value,
    row_pair_sums,
    verify,
)

__all__ = [
    "Cell",
    "Face",
    "GridDims",
    "GridError",
    "Labeling",
    "LabelingError",
    "VerifyReport",
    "edges",
    "faces",
    "is_equatorially_balanced",
    "magic_value",
    "row_pair_sums",
    "verify",
]

__version__ = "0.1.0"

"""Landmark frames, dataset I/O, affine transforms, and occlusion simulation."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


class LandmarkParseError(ValueError):
    """Raised when a landmark file cannot be parsed."""


class LandmarkStructureError(ValueError):
    """Raised when a parsed landmark file violates structural invariants."""


@dataclass(frozen=True)
class Frame:
    """One frame of labeled 2-D points.

    ``point_ids[i]`` labels the point stored at ``xy[i]``. Coordinates are
    pixels; ids are unique within a frame and stable under transforms and
    occlusion.
    """

    point_ids: tuple[int, ...]
    xy: np.ndarray  # (n, 2) float64, read-only

    def __post_init__(self):
        xy = np.ascontiguousarray(np.asarray(self.xy, dtype=float))
        if xy.ndim != 2 or xy.shape[1] != 2:
            raise ValueError(f"expected (n, 2) coordinates, got shape {xy.shape}")
        if xy.shape[0] == 0:
            raise ValueError("a frame needs at least one point")
        if len(self.point_ids) != xy.shape[0]:
            raise ValueError("point_ids and coordinates disagree in length")
        if len(set(self.point_ids)) != len(self.point_ids):
            raise ValueError("duplicate point ids in frame")
        if not np.isfinite(xy).all():
            raise ValueError("non-finite coordinate in frame")
        xy.flags.writeable = False
        object.__setattr__(self, "xy", xy)
        object.__setattr__(self, "point_ids", tuple(int(p) for p in self.point_ids))

    def __len__(self) -> int:
        return self.xy.shape[0]

    def centroid(self) -> np.ndarray:
        return self.xy.mean(axis=0)

    def index_of(self, point_id: int) -> int:
        try:
            return self.point_ids.index(point_id)
        except ValueError:
            raise KeyError(f"point id {point_id} not in frame") from None


@dataclass(frozen=True)
class LandmarkSequence:
    """Ordered frames sharing one point-id universe (implicit ground truth)."""

    frames: tuple[Frame, ...]
    name: str = ""

    def __post_init__(self):
        if not self.frames:
            raise ValueError("a sequence needs at least one frame")
        universe = set(self.frames[0].point_ids)
        for i, fr in enumerate(self.frames):
            if set(fr.point_ids) != universe:
                raise LandmarkStructureError(
                    f"frame {i} has a different point-id set than frame 0"
                )
        object.__setattr__(self, "frames", tuple(self.frames))

    def __len__(self) -> int:
        return len(self.frames)

    @property
    def n_points(self) -> int:
        return len(self.frames[0])


class TransformKind(Enum):
    ROTATION = "rotation"
    REFLECTION = "reflection"
    SCALE = "scale"
    SHEAR = "shear"
    CUSTOM = "custom"


@dataclass(frozen=True)
class AffineTransform:
    """Invertible 2x2 linear part plus translation.

    ``apply_transform`` anchors the linear part at the frame centroid so that
    rotated or scaled frames stay comparable to the original.
    """

    matrix: np.ndarray  # (2, 2)
    translation: np.ndarray  # (2,)
    kind: TransformKind = TransformKind.CUSTOM

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float).reshape(2, 2).copy()
        t = np.asarray(self.translation, dtype=float).reshape(2).copy()
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if not np.isfinite(m).all() or not np.isfinite(t).all():
            raise ValueError("non-finite transform parameters")
        if abs(det) < 1e-12:
            raise ValueError(f"transform matrix is singular (det={det:g})")
        m.flags.writeable = False
        t.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "translation", t)

    @classmethod
    def rotation(cls, degrees: float) -> "AffineTransform":
        a = math.radians(degrees)
        c, s = math.cos(a), math.sin(a)
        return cls(np.array([[c, -s], [s, c]]), np.zeros(2), TransformKind.ROTATION)

    @classmethod
    def reflection(cls, axis: str = "y") -> "AffineTransform":
        """Reflect about the named axis ('y' flips x signs, 'x' flips y signs)."""
        if axis == "y":
            m = np.array([[-1.0, 0.0], [0.0, 1.0]])
        elif axis == "x":
            m = np.array([[1.0, 0.0], [0.0, -1.0]])
        else:
            raise ValueError(f"unknown reflection axis {axis!r}")
        return cls(m, np.zeros(2), TransformKind.REFLECTION)

    @classmethod
    def scale(cls, sx: float, sy: float | None = None) -> "AffineTransform":
        sy = sx if sy is None else sy
        return cls(np.array([[sx, 0.0], [0.0, sy]]), np.zeros(2), TransformKind.SCALE)

    @classmethod
    def shear(cls, factor: float, axis: str = "x") -> "AffineTransform":
        """Shear along 'x' (x += factor*y) or along 'y' (y += factor*x)."""
        if axis == "x":
            m = np.array([[1.0, factor], [0.0, 1.0]])
        elif axis == "y":
            m = np.array([[1.0, 0.0], [factor, 1.0]])
        else:
            raise ValueError(f"unknown shear axis {axis!r}")
        return cls(m, np.zeros(2), TransformKind.SHEAR)

    def inverse(self) -> "AffineTransform":
        return AffineTransform(np.linalg.inv(self.matrix), -self.translation, self.kind)

    def compose(self, first: "AffineTransform") -> "AffineTransform":
        """Transform equivalent to applying ``first`` then ``self``.

        Valid for the centroid-anchored application below, under which
        translations accumulate additively.
        """
        return AffineTransform(
            self.matrix @ first.matrix,
            self.translation + first.translation,
            TransformKind.CUSTOM,
        )


def apply_transform(frame: Frame, t: AffineTransform) -> Frame:
    """Map every point through ``t``, anchored at the frame centroid."""
    c = frame.centroid()
    new_xy = (frame.xy - c) @ t.matrix.T + c + t.translation
    return Frame(frame.point_ids, new_xy)


def occlude(frame: Frame, remove_count: int, rng_seed: int) -> tuple[Frame, list[int]]:
    """Remove a uniform random subset of points; deterministic per seed.

    Returns the surviving frame (ids unchanged, original order) and the sorted
    list of removed point ids.
    """
    n = len(frame)
    if not 0 <= remove_count < n:
        raise ValueError(f"remove_count must be in [0, {n - 1}], got {remove_count}")
    if remove_count == 0:
        return frame, []
    rng = np.random.default_rng(np.random.SeedSequence(rng_seed))
    ids_sorted = sorted(frame.point_ids)
    removed = set(rng.choice(ids_sorted, size=remove_count, replace=False).tolist())
    keep = [i for i, pid in enumerate(frame.point_ids) if pid not in removed]
    new = Frame(tuple(frame.point_ids[i] for i in keep), frame.xy[keep])
    return new, sorted(removed)


CSV_HEADER = ["frame", "point", "x", "y"]


def load_landmarks(path, format: str = "csv") -> LandmarkSequence:
    """Load a landmark sequence from ``frame,point,x,y`` CSV.

    Frame ids must be sorted ascending in the file; point ids are normalized
    to 0-based ranks of the sorted originals. Ground-truth correspondence is
    implicit: equal normalized point id across frames.
    """
    if format != "csv":
        raise ValueError(f"unsupported landmark format {format!r}")
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise LandmarkParseError(f"{path}: empty file") from None
        if [h.strip() for h in header] != CSV_HEADER:
            raise LandmarkParseError(
                f"{path}: line 1: expected header {','.join(CSV_HEADER)!r}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 4:
                raise LandmarkParseError(f"{path}: line {lineno}: expected 4 fields")
            try:
                fid = int(row[0])
                pid = int(row[1])
                x = float(row[2])
                y = float(row[3])
            except ValueError as exc:
                raise LandmarkParseError(f"{path}: line {lineno}: {exc}") from None
            if not (math.isfinite(x) and math.isfinite(y)):
                raise LandmarkParseError(
                    f"{path}: line {lineno}: non-finite coordinate"
                )
            rows.append((fid, pid, x, y))
    if not rows:
        raise LandmarkParseError(f"{path}: no data rows")

    frame_ids = [fid for fid, _, _, _ in rows]
    if frame_ids != sorted(frame_ids):
        raise LandmarkParseError(f"{path}: frame ids are not sorted ascending")

    by_frame: dict[int, list[tuple[int, float, float]]] = {}
    for fid, pid, x, y in rows:
        by_frame.setdefault(fid, []).append((pid, x, y))

    universe = sorted({pid for _, pid, _, _ in rows})
    remap = {pid: k for k, pid in enumerate(universe)}

    frames = []
    for fid in sorted(by_frame):
        pts = by_frame[fid]
        pids = [p for p, _, _ in pts]
        if len(set(pids)) != len(pids):
            raise LandmarkStructureError(f"frame {fid}: duplicate point id")
        if sorted(pids) != universe:
            raise LandmarkStructureError(
                f"frame {fid}: point-id set differs from the rest of the file"
            )
        pts_sorted = sorted(pts, key=lambda p: remap[p[0]])
        frames.append(
            Frame(
                tuple(remap[p] for p, _, _ in pts_sorted),
                np.array([[x, y] for _, x, y in pts_sorted]),
            )
        )
    return LandmarkSequence(tuple(frames), name=str(path))


def save_landmarks(seq: LandmarkSequence, path) -> None:
    """Write a sequence back out in the loadable CSV format."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for fid, fr in enumerate(seq.frames):
            order = np.argsort(fr.point_ids)
            for i in order:
                writer.writerow(
                    [fid, fr.point_ids[i], repr(float(fr.xy[i, 0])), repr(float(fr.xy[i, 1]))]
                )

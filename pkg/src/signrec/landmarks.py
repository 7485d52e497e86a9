"""Hand landmark containers, validation, temporal resampling, and file IO.

A hand is 21 tracked joints: index 0 is the wrist, 5/9/13/17 are the
palm-side finger hinges (index, middle, ring, pinky), and each finger
chain continues outward from its hinge. Landmark files come in two
layouts:

  JSONL, one video per line:
      {"label": str|null, "signer": str|null,
       "handedness": "left"|"right"|"unknown",
       "frames": [[[x, y, z] * 21] * T]}

  CSV with header ``video_id,frame_idx,joint_idx,x,y,z,label,handedness``,
      rows grouped by video_id, frame_idx ascending.

Coordinates are float64 end to end and files carry full repr precision,
so a write/read round trip reproduces every value exactly.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptySequence,
    NonFiniteCoordinate,
    ParseError,
    SchemaError,
    WrongArity,
)

NUM_JOINTS = 21

# Joint numbering of the 21-point hand skeleton.
WRIST = 0
THUMB_BASE = 1
INDEX_HINGE = 5
MIDDLE_HINGE = 9
RING_HINGE = 13
PINKY_HINGE = 17

#: Every video is resampled to this many frames before classification.
SEQUENCE_LENGTH = 101

HANDEDNESS_VALUES = ("left", "right", "unknown")

_JSONL_REQUIRED_KEYS = ("label", "signer", "handedness", "frames")
_CSV_COLUMNS = ("video_id", "frame_idx", "joint_idx", "x", "y", "z", "label", "handedness")


@dataclass(frozen=True)
class HandLandmarks:
    """21 joint positions of one hand in world coordinates for one frame.

    ``points[i]`` holds joint ``i``; all coordinates are finite float64.
    The array is frozen after construction.
    """

    points: np.ndarray  # (21, 3)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.shape != (NUM_JOINTS, 3):
            raise WrongArity(f"expected (21, 3) points, got shape {pts.shape}")
        bad = ~np.isfinite(pts)
        if bad.any():
            joint = int(np.argwhere(bad)[0][0])
            raise NonFiniteCoordinate(joint)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class LandmarkSequence:
    """One video's worth of per-frame hand landmarks plus metadata."""

    frames: tuple[HandLandmarks, ...]
    label: str | None = None
    signer_id: str | None = None
    handedness: str = "unknown"

    def __post_init__(self):
        frames = tuple(self.frames)
        if not frames:
            raise EmptySequence("a landmark sequence needs at least one frame")
        if self.handedness not in HANDEDNESS_VALUES:
            raise SchemaError(f"handedness must be one of {HANDEDNESS_VALUES}, got {self.handedness!r}")
        object.__setattr__(self, "frames", frames)

    def __len__(self) -> int:
        return len(self.frames)

    def as_array(self) -> np.ndarray:
        """Stack the frames into a (T, 21, 3) array."""
        return np.stack([f.points for f in self.frames])


def validate_landmarks(raw: Sequence[Sequence[float]]) -> HandLandmarks:
    """Validate 21 candidate (x, y, z) positions into a HandLandmarks.

    Raises WrongArity when the count or a point arity is off, and
    NonFiniteCoordinate (carrying the joint index) on NaN/Inf.
    """
    points = list(raw)
    if len(points) != NUM_JOINTS:
        raise WrongArity(f"expected {NUM_JOINTS} joints, got {len(points)}")
    for i, p in enumerate(points):
        if len(p) != 3:
            raise WrongArity(f"joint {i}: expected 3 coordinates, got {len(p)}")
    return HandLandmarks(np.asarray(points, dtype=np.float64))


def resample_indices(n_frames: int, target: int = SEQUENCE_LENGTH) -> list[int]:
    """Source frame index for each of ``target`` output slots.

    Slot k maps to round(k * (n_frames - 1) / (target - 1)) with ties
    rounded up, computed in exact integer arithmetic. The mapping is
    monotonically non-decreasing and is the identity when
    ``n_frames == target``.
    """
    if n_frames < 1:
        raise EmptySequence("cannot resample an empty sequence")
    span = target - 1
    return [(2 * k * (n_frames - 1) + span) // (2 * span) for k in range(target)]


def resample_to_101(seq: LandmarkSequence) -> LandmarkSequence:
    """Uniformly resample a sequence to exactly 101 frames.

    Nearest-frame selection, no interpolation, so every output frame is
    one of the input frames.
    """
    indices = resample_indices(len(seq))
    return replace(seq, frames=tuple(seq.frames[i] for i in indices))


def _sequence_to_record(seq: LandmarkSequence, canonical: bool) -> dict:
    record = {
        "label": seq.label,
        "signer": seq.signer_id,
        "handedness": seq.handedness,
        "frames": [[list(point) for point in frame.points] for frame in seq.frames],
    }
    if canonical:
        record["canonical"] = True
    return record


def _record_to_sequence(record: dict, record_no: int) -> LandmarkSequence:
    for key in _JSONL_REQUIRED_KEYS:
        if key not in record:
            raise SchemaError(f"missing field {key!r}", record=record_no)
    frames = record["frames"]
    if not isinstance(frames, list) or not frames:
        raise SchemaError("'frames' must be a non-empty list", record=record_no)
    validated = []
    for frame_no, frame in enumerate(frames):
        try:
            validated.append(validate_landmarks(frame))
        except (WrongArity, NonFiniteCoordinate, TypeError) as exc:
            raise SchemaError(f"frame {frame_no}: {exc}", record=record_no) from exc
    handedness = record["handedness"]
    if handedness not in HANDEDNESS_VALUES:
        raise SchemaError(f"bad handedness {handedness!r}", record=record_no)
    return LandmarkSequence(
        frames=tuple(validated),
        label=record["label"],
        signer_id=record["signer"],
        handedness=handedness,
    )


def _read_jsonl(path: Path) -> list[LandmarkSequence]:
    sequences = []
    with path.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(str(exc), line=line_no) from exc
            if not isinstance(record, dict):
                raise SchemaError("each line must be a JSON object", record=line_no)
            sequences.append(_record_to_sequence(record, record_no=line_no))
    return sequences


def _write_jsonl(path: Path, sequences: Iterable[LandmarkSequence], canonical: bool) -> None:
    with path.open("w", encoding="utf-8") as fh:
        for seq in sequences:
            fh.write(json.dumps(_sequence_to_record(seq, canonical)))
            fh.write("\n")


def _read_csv(path: Path) -> list[LandmarkSequence]:
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError("empty CSV file") from None
        if tuple(header) != _CSV_COLUMNS:
            raise SchemaError(f"expected header {','.join(_CSV_COLUMNS)}, got {','.join(header)}")

        # video_id -> ordered {frame_idx -> [(joint_idx, xyz)]}
        videos: dict[str, dict[int, list]] = {}
        meta: dict[str, tuple[str | None, str]] = {}
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(_CSV_COLUMNS):
                raise SchemaError(f"expected {len(_CSV_COLUMNS)} columns, got {len(row)}", record=line_no)
            video_id, frame_s, joint_s, x_s, y_s, z_s, label, handedness = row
            try:
                frame_idx = int(frame_s)
                joint_idx = int(joint_s)
                xyz = (float(x_s), float(y_s), float(z_s))
            except ValueError as exc:
                raise ParseError(str(exc), line=line_no) from exc
            frames = videos.setdefault(video_id, {})
            frames.setdefault(frame_idx, []).append((joint_idx, xyz))
            meta.setdefault(video_id, (label if label else None, handedness))

    sequences = []
    for video_id, frames in videos.items():
        label, handedness = meta[video_id]
        hand_frames = []
        for frame_idx in sorted(frames):
            joints = frames[frame_idx]
            if len(joints) != NUM_JOINTS:
                raise SchemaError(
                    f"frame {frame_idx} has {len(joints)} joints, expected {NUM_JOINTS}",
                    record=video_id,
                )
            by_joint = dict(joints)
            if sorted(by_joint) != list(range(NUM_JOINTS)):
                raise SchemaError(f"frame {frame_idx} has bad joint indices", record=video_id)
            try:
                hand_frames.append(validate_landmarks([by_joint[j] for j in range(NUM_JOINTS)]))
            except (WrongArity, NonFiniteCoordinate) as exc:
                raise SchemaError(f"frame {frame_idx}: {exc}", record=video_id) from exc
        if handedness not in HANDEDNESS_VALUES:
            raise SchemaError(f"bad handedness {handedness!r}", record=video_id)
        sequences.append(
            LandmarkSequence(frames=tuple(hand_frames), label=label, handedness=handedness)
        )
    return sequences


def _write_csv(path: Path, sequences: Iterable[LandmarkSequence]) -> None:
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_CSV_COLUMNS)
        for i, seq in enumerate(sequences):
            video_id = f"video_{i:04d}"
            label = seq.label if seq.label is not None else ""
            for frame_idx, frame in enumerate(seq.frames):
                for joint_idx in range(NUM_JOINTS):
                    x, y, z = frame.points[joint_idx]
                    writer.writerow(
                        [video_id, frame_idx, joint_idx, repr(x), repr(y), repr(z), label, seq.handedness]
                    )


def read_landmark_file(path: str | Path, format: str = "jsonl") -> list[LandmarkSequence]:
    """Read one LandmarkSequence per video record from a JSONL or CSV file."""
    path = Path(path)
    if format == "jsonl":
        return _read_jsonl(path)
    if format == "csv":
        return _read_csv(path)
    raise SchemaError(f"unknown landmark format {format!r}")


def write_landmark_file(
    path: str | Path,
    sequences: Iterable[LandmarkSequence],
    format: str = "jsonl",
    canonical: bool = False,
) -> None:
    """Write sequences to disk; ``canonical=True`` adds the canonical marker (JSONL only)."""
    path = Path(path)
    if format == "jsonl":
        _write_jsonl(path, sequences, canonical)
    elif format == "csv":
        _write_csv(path, sequences)
    else:
        raise SchemaError(f"unknown landmark format {format!r}")

"""Per-frame facial-expression confidence vectors and their providers.

The classifier pipeline only needs a length-7 probability vector per
frame over the classes angry, disgusted, fear, happy, neutral, sad,
surprised. Where those vectors come from is pluggable: a file written
by an upstream expression recognizer, a constant (ablation baseline),
or a synthetic class-conditional source for benchmark data.

Expression files are JSONL, one video per line:
    {"video_id": str, "frames": [[p0..p6] * T]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import numpy as np

from .errors import (
    NegativeProbability,
    NotNormalized,
    ParseError,
    SchemaError,
)

EXPRESSION_CLASSES = ("angry", "disgusted", "fear", "happy", "neutral", "sad", "surprised")
NUM_EXPRESSIONS = len(EXPRESSION_CLASSES)

#: Construction tolerance on sum-to-1.
_SUM_TOL = 1e-6
#: Looser ingestion tolerance for externally produced files.
_FILE_SUM_TOL = 1e-3


@dataclass(frozen=True)
class ExpressionConfidence:
    """A probability vector over the seven expression classes."""

    probs: np.ndarray  # (7,)

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.shape != (NUM_EXPRESSIONS,):
            raise SchemaError(f"expected {NUM_EXPRESSIONS} expression entries, got shape {probs.shape}")
        if (probs < 0).any():
            raise NegativeProbability(f"negative expression confidence: {probs.min()}")
        total = float(probs.sum())
        if abs(total - 1.0) > _SUM_TOL:
            raise NotNormalized(f"expression confidences sum to {total}, expected 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)


def uniform_confidence() -> ExpressionConfidence:
    return ExpressionConfidence(np.full(NUM_EXPRESSIONS, 1.0 / NUM_EXPRESSIONS))


def one_hot_confidence(expression: str) -> ExpressionConfidence:
    probs = np.zeros(NUM_EXPRESSIONS)
    probs[EXPRESSION_CLASSES.index(expression)] = 1.0
    return ExpressionConfidence(probs)


class ExpressionProvider(Protocol):
    """Per-frame source of expression confidences, aligned with landmark frames."""

    def frames_for(self, video_id: str, label: str | None, n_frames: int) -> np.ndarray:
        """Return an (n_frames, 7) confidence array for one video."""
        ...


@dataclass(frozen=True)
class ConstantExpressionProvider:
    """Every frame of every video gets the same confidence vector."""

    confidence: ExpressionConfidence

    def frames_for(self, video_id: str, label: str | None, n_frames: int) -> np.ndarray:
        return np.tile(self.confidence.probs, (n_frames, 1))


def constant_provider(c: ExpressionConfidence) -> ConstantExpressionProvider:
    return ConstantExpressionProvider(c)


class SyntheticExpressionProvider:
    """Class-conditional expression source for synthetic benchmarks.

    Videos whose label is in ``class_to_expression`` get the mapped
    expression one-hot blended with uniform noise,

        (1 - noise_level) * onehot + noise_level * uniform,

    identically on every frame; unmapped labels get the uniform vector.
    The blend is a fixed formula, so outputs are bit-identical across
    runs; the seed is accepted for interface stability.
    """

    def __init__(self, class_to_expression: dict[str, str], noise_level: float, seed: int = 0):
        if not 0.0 <= noise_level <= 1.0:
            raise SchemaError(f"noise_level must be in [0, 1], got {noise_level}")
        for expression in class_to_expression.values():
            if expression not in EXPRESSION_CLASSES:
                raise SchemaError(f"unknown expression {expression!r}")
        self.class_to_expression = dict(class_to_expression)
        self.noise_level = float(noise_level)
        self.seed = seed

    def confidence_for(self, label: str | None) -> ExpressionConfidence:
        uniform = np.full(NUM_EXPRESSIONS, 1.0 / NUM_EXPRESSIONS)
        if label not in self.class_to_expression:
            return ExpressionConfidence(uniform)
        onehot = np.zeros(NUM_EXPRESSIONS)
        onehot[EXPRESSION_CLASSES.index(self.class_to_expression[label])] = 1.0
        return ExpressionConfidence((1.0 - self.noise_level) * onehot + self.noise_level * uniform)

    def frames_for(self, video_id: str, label: str | None, n_frames: int) -> np.ndarray:
        return np.tile(self.confidence_for(label).probs, (n_frames, 1))


def synthetic_provider(
    class_to_expression_map: dict[str, str], noise_level: float, seed: int = 0
) -> SyntheticExpressionProvider:
    return SyntheticExpressionProvider(class_to_expression_map, noise_level, seed)


def _validate_frame_vector(vector, record: int | str) -> np.ndarray:
    probs = np.asarray(vector, dtype=np.float64)
    if probs.shape != (NUM_EXPRESSIONS,):
        raise SchemaError(f"expected {NUM_EXPRESSIONS} confidences per frame, got shape {probs.shape}", record=record)
    if (probs < 0).any():
        raise NegativeProbability(f"record {record}: negative confidence {probs.min()}")
    total = float(probs.sum())
    if abs(total - 1.0) > _FILE_SUM_TOL:
        raise NotNormalized(f"record {record}: frame confidences sum to {total}")
    # Align low-precision decimals in the file with the exact-sum contract.
    return probs / total


def read_expression_file(path: str | Path) -> dict[str, np.ndarray]:
    """Read per-video expression confidence sequences keyed by video_id.

    Each value is a validated (T, 7) array whose rows sum to 1.
    """
    path = Path(path)
    videos: dict[str, np.ndarray] = {}
    with path.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(str(exc), line=line_no) from exc
            if not isinstance(record, dict) or "video_id" not in record or "frames" not in record:
                raise SchemaError("expected {'video_id': ..., 'frames': ...}", record=line_no)
            frames = record["frames"]
            if not isinstance(frames, list) or not frames:
                raise SchemaError("'frames' must be a non-empty list", record=line_no)
            video_id = record["video_id"]
            rows = [_validate_frame_vector(f, record=video_id) for f in frames]
            videos[video_id] = np.stack(rows)
    return videos


@dataclass(frozen=True)
class FileExpressionProvider:
    """Serves expression sequences previously read from a file."""

    videos: dict[str, np.ndarray]

    def frames_for(self, video_id: str, label: str | None, n_frames: int) -> np.ndarray:
        if video_id not in self.videos:
            raise SchemaError(f"no expression data for video {video_id!r}")
        frames = self.videos[video_id]
        if frames.shape[0] != n_frames:
            raise SchemaError(
                f"expression frames for {video_id!r} have length {frames.shape[0]}, expected {n_frames}"
            )
        return frames


def write_expression_file(path: str | Path, videos: dict[str, np.ndarray]) -> None:
    """Write per-video confidence sequences in the JSONL expression format."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for video_id, frames in videos.items():
            record = {"video_id": video_id, "frames": [list(row) for row in np.asarray(frames)]}
            fh.write(json.dumps(record))
            fh.write("\n")

"""Random rotations and quaternion/axis-angle conversion helpers."""

from __future__ import annotations

import numpy as np


def quaternion_to_matrix(q: np.ndarray) -> np.ndarray:
    """Rotation matrix of a unit quaternion (w, x, y, z)."""
    w, x, y, z = np.asarray(q, dtype=np.float64)
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Uniform random rotation via a normalized 4-dimensional gaussian quaternion."""
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    return quaternion_to_matrix(q)


def axis_angle_matrix(axis: np.ndarray, angle: float) -> np.ndarray:
    """Rotation by ``angle`` radians about a (not necessarily unit) ``axis``."""
    axis = np.asarray(axis, dtype=np.float64)
    axis = axis / np.linalg.norm(axis)
    half = 0.5 * angle
    q = np.concatenate([[np.cos(half)], np.sin(half) * axis])
    return quaternion_to_matrix(q)


def random_rotation_in_range(rng: np.random.Generator, max_angle: float) -> np.ndarray:
    """Rotation about a uniformly random axis by an angle uniform in [0, max_angle]."""
    if max_angle == 0.0:
        return np.eye(3)
    axis = rng.normal(size=3)
    norm = np.linalg.norm(axis)
    if norm == 0.0:  # vanishing probability; keep the draw count fixed
        axis = np.array([1.0, 0.0, 0.0])
        norm = 1.0
    angle = rng.uniform(0.0, max_angle)
    return axis_angle_matrix(axis / norm, angle)

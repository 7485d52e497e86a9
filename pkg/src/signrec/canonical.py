"""Palm-anchored canonical coordinates for hand landmarks.

The hand frame is built from the wrist (joint 0) and the index/middle
palm hinges (joints 5 and 9). With a = D5 - D0 and b = D9 - D0:

    Z = a / |a|              wrist toward the index hinge
    Y = (a x b) / |a x b|    palm normal
    X = Y x Z                completes a right-handed orthonormal frame

Canonical coordinates are (D_i - D0) / |a| expressed in that frame.
Joint 0 therefore lands on the origin, joint 5 on (0, 0, 1), and joint 9
in the x >= 0 half of the XZ plane; the whole representation is
invariant to global rotation, translation, and uniform scaling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CollinearPalm, ZeroPalmVector
from .landmarks import INDEX_HINGE, MIDDLE_HINGE, WRIST, HandLandmarks

#: Below this threshold palm vectors (and the sine of their angle) count as degenerate.
DEGENERACY_EPS = 1e-9


@dataclass(frozen=True)
class HandFrame:
    """Origin and orthonormal axes of the hand coordinate system.

    ``axes`` columns are the hand-frame X, Y, Z unit axes expressed in
    world coordinates; the matrix is a proper rotation (det +1).
    """

    origin: np.ndarray  # (3,)
    axes: np.ndarray  # (3, 3), columns X | Y | Z

    def __post_init__(self):
        origin = np.asarray(self.origin, dtype=np.float64)
        axes = np.asarray(self.axes, dtype=np.float64)
        origin.setflags(write=False)
        axes.setflags(write=False)
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "axes", axes)


@dataclass(frozen=True)
class CanonicalHand:
    """21 wrist-relative, scale-normalized joint positions in hand-frame coordinates."""

    points: np.ndarray  # (21, 3)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def flatten(self) -> np.ndarray:
        """Joint-major (x, y, z within each joint) 63-vector."""
        return self.points.reshape(-1)


def _palm_vectors(h: HandLandmarks) -> tuple[np.ndarray, np.ndarray]:
    wrist = h.points[WRIST]
    a = h.points[INDEX_HINGE] - wrist
    b = h.points[MIDDLE_HINGE] - wrist
    return a, b


def build_hand_frame(h: HandLandmarks) -> HandFrame:
    """Construct the hand coordinate frame from the wrist and palm hinges.

    Raises ZeroPalmVector when a wrist-to-hinge vector (nearly) vanishes
    and CollinearPalm when the two hinge vectors are (nearly) parallel.
    """
    a, b = _palm_vectors(h)
    norm_a = np.linalg.norm(a)
    norm_b = np.linalg.norm(b)
    if norm_a <= DEGENERACY_EPS or norm_b <= DEGENERACY_EPS:
        raise ZeroPalmVector(f"palm vectors too short (|a|={norm_a:.3e}, |b|={norm_b:.3e})")
    normal = np.cross(a, b)
    norm_n = np.linalg.norm(normal)
    if norm_n <= DEGENERACY_EPS * norm_a * norm_b:
        raise CollinearPalm("wrist and palm hinges are collinear")
    z_axis = a / norm_a
    y_axis = normal / norm_n
    x_axis = np.cross(y_axis, z_axis)
    return HandFrame(origin=h.points[WRIST], axes=np.column_stack([x_axis, y_axis, z_axis]))


def translate_normalize(h: HandLandmarks) -> np.ndarray:
    """Wrist-relative coordinates scaled by the wrist-to-index-hinge distance.

    Returns a (21, 3) array of (D_i - D0) / |D5 - D0|.
    """
    wrist = h.points[WRIST]
    scale = np.linalg.norm(h.points[INDEX_HINGE] - wrist)
    if scale <= DEGENERACY_EPS:
        raise ZeroPalmVector(f"wrist-to-index-hinge distance {scale:.3e} too small to normalize")
    return (h.points - wrist) / scale


def canonicalize(h: HandLandmarks) -> CanonicalHand:
    """Map world-space landmarks to canonical hand-frame coordinates.

    Equivalent to applying the transpose of the hand-frame rotation to
    every translated-and-normalized joint position.
    """
    frame = build_hand_frame(h)
    normalized = translate_normalize(h)
    # Row-vector form of R^T v for every joint at once.
    return CanonicalHand(points=normalized @ frame.axes)


def mirror_if_left(h: HandLandmarks, handedness: str, enabled: bool = False) -> HandLandmarks:
    """Reflect x -> -x for left hands when mirroring is enabled.

    Right/unknown hands, and any hand while mirroring is disabled, pass
    through unchanged.
    """
    if not enabled or handedness != "left":
        return h
    mirrored = h.points.copy()
    mirrored[:, 0] = -mirrored[:, 0]
    return HandLandmarks(mirrored)

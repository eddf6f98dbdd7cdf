"""Rotation-invariant planar grids and their fundamental-slice representation.

A grid invariant under the N discrete rotations is stored by its slice part
only: the points with polar angle in [0, 2*pi/N).  The full point set is
recovered by applying all N rotations.  The section mapping slice points back
into the plane is the identity embedding, fixed once and for all.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidGrid, NotInvariant, ParseError, TrivialStabilizer

TWO_PI = 2.0 * math.pi

# Folding tolerance at the slice-angle boundary.
ANGLE_TOL = 1e-12
# Euclidean tolerance when matching a rotated point set against itself.
INVARIANCE_TOL = 1e-9
# Two slice points closer than this are considered duplicates.
DUPLICATE_TOL = 1e-12


@dataclass(frozen=True)
class SlicePoint:
    """A point of the fundamental slice, in polar coordinates."""

    radius: float
    angle: float

    def xy(self) -> tuple[float, float]:
        return (self.radius * math.cos(self.angle), self.radius * math.sin(self.angle))


@dataclass(frozen=True)
class RotInvariantGrid:
    """A rotation-invariant grid, represented by its slice points.

    ``kind`` is "spatial" or "frequency"; frequency grids must not contain
    the origin (all radii strictly positive).  Instances are immutable and
    safe to share across threads.  Construction through the module functions
    (or :meth:`validate`) enforces the invariants; the raw constructor does
    not, which the test suite uses to build deliberately broken grids.
    """

    N: int
    points: tuple[SlicePoint, ...]
    kind: str = "spatial"

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))

    def validate(self) -> "RotInvariantGrid":
        if not isinstance(self.N, int) or self.N < 1:
            raise InvalidGrid(f"N must be a positive integer, got {self.N!r}")
        if self.kind not in ("spatial", "frequency"):
            raise InvalidGrid(f"unknown grid kind {self.kind!r}")
        width = TWO_PI / self.N
        origin_count = 0
        for p in self.points:
            if not (math.isfinite(p.radius) and math.isfinite(p.angle)):
                raise InvalidGrid(f"non-finite slice point {p}")
            if p.radius < 0:
                raise InvalidGrid(f"negative radius in {p}")
            if p.radius == 0:
                if self.kind == "frequency":
                    raise TrivialStabilizer("frequency grids cannot contain the origin")
                origin_count += 1
            if not (0.0 <= p.angle < width):
                raise InvalidGrid(f"angle {p.angle} outside slice [0, {width})")
        if origin_count > 1:
            raise InvalidGrid("the origin may appear at most once")
        xy = self.slice_xy()
        for i in range(len(xy)):
            d = np.hypot(xy[i + 1 :, 0] - xy[i, 0], xy[i + 1 :, 1] - xy[i, 1])
            if d.size and d.min() <= DUPLICATE_TOL:
                j = i + 1 + int(np.argmin(d))
                raise InvalidGrid(f"duplicate slice points at indices {i} and {j}")
        return self

    def __len__(self) -> int:
        return len(self.points)

    def slice_xy(self) -> np.ndarray:
        """Slice points as an (P, 2) Cartesian array."""
        return np.array([p.xy() for p in self.points], dtype=float).reshape(len(self.points), 2)

    def slice_polar(self) -> tuple[np.ndarray, np.ndarray]:
        """Radii and angles of the slice points as two length-P arrays."""
        r = np.array([p.radius for p in self.points], dtype=float)
        a = np.array([p.angle for p in self.points], dtype=float)
        return r, a

    def full_xy(self) -> np.ndarray:
        """The full point set as an (N, P, 2) array; row n is the slice rotated by 2*pi*n/N."""
        base = self.slice_xy()
        out = np.empty((self.N, len(self.points), 2))
        for n in range(self.N):
            t = TWO_PI * n / self.N
            c, s = math.cos(t), math.sin(t)
            out[n, :, 0] = c * base[:, 0] - s * base[:, 1]
            out[n, :, 1] = s * base[:, 0] + c * base[:, 1]
        return out

    def same_geometry(self, other: "RotInvariantGrid", tol: float = 0.0) -> bool:
        if self.N != other.N or len(self.points) != len(other.points):
            return False
        for p, q in zip(self.points, other.points):
            if abs(p.radius - q.radius) > tol or abs(p.angle - q.angle) > tol:
                return False
        return True


def slice_of(point, N: int) -> tuple[int, SlicePoint]:
    """Fold a planar point into the fundamental slice.

    Returns ``(rotation_index, slice_point)`` with
    ``point = R_{2*pi*rotation_index/N} slice_point``.  The origin maps to
    index 0 with radius 0 by convention.
    """
    x, y = float(point[0]), float(point[1])
    radius = math.hypot(x, y)
    if radius == 0.0:
        return 0, SlicePoint(0.0, 0.0)
    theta = math.atan2(y, x) % TWO_PI
    width = TWO_PI / N
    idx = int(theta // width)
    rem = theta - idx * width
    if rem < 0.0:
        rem = 0.0
    if width - rem <= ANGLE_TOL:
        rem = 0.0
        idx += 1
    return idx % N, SlicePoint(radius, rem)


def build_polar_grid(num_rays_per_slice: int, radii, N: int, kind: str = "spatial") -> RotInvariantGrid:
    """Polar grid: ``num_rays_per_slice`` equispaced rays per slice crossed with ``radii``.

    The full point set is { rho_j * e^{i 2*pi*k / (N*num_rays_per_slice)} }.
    """
    if num_rays_per_slice < 1:
        raise InvalidGrid("num_rays_per_slice must be >= 1")
    if N < 1:
        raise InvalidGrid("N must be >= 1")
    radii = [float(r) for r in radii]
    if not radii:
        raise InvalidGrid("at least one radius required")
    for r in radii:
        if r <= 0:
            raise InvalidGrid(f"nonpositive radius {r}")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise InvalidGrid("radii must be strictly increasing")
    width = TWO_PI / N
    pts = [
        SlicePoint(rho, t * width / num_rays_per_slice)
        for rho in radii
        for t in range(num_rays_per_slice)
    ]
    return RotInvariantGrid(N, tuple(pts), kind).validate()


def canonicalize(points, N: int, kind: str = "spatial") -> RotInvariantGrid:
    """Fold a full rotation-invariant point set into its slice representation.

    The input must be invariant (within ``INVARIANCE_TOL``) under rotation by
    2*pi/N; otherwise :class:`NotInvariant` is raised with a witness point.
    """
    if N < 1:
        raise InvalidGrid("N must be >= 1")
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if pts.size == 0:
        return RotInvariantGrid(N, (), kind).validate()

    if kind == "frequency":
        radii = np.hypot(pts[:, 0], pts[:, 1])
        if np.any(radii <= DUPLICATE_TOL):
            raise TrivialStabilizer("frequency grids cannot contain the origin")

    # Invariance: the image of every point under one rotation step must be present.
    t = TWO_PI / N
    c, s = math.cos(t), math.sin(t)
    rotated = np.column_stack([c * pts[:, 0] - s * pts[:, 1], s * pts[:, 0] + c * pts[:, 1]])
    for i in range(len(pts)):
        d2 = (pts[:, 0] - rotated[i, 0]) ** 2 + (pts[:, 1] - rotated[i, 1]) ** 2
        if d2.min() > INVARIANCE_TOL**2:
            raise NotInvariant(pts[i])

    # Fold and cluster: each non-origin orbit must contribute exactly N points.
    folded = [slice_of(p, N) for p in pts]
    used = [False] * len(pts)
    slice_points: list[SlicePoint] = []
    for i, (idx_i, sp_i) in enumerate(folded):
        if used[i]:
            continue
        members = [
            j
            for j, (idx_j, sp_j) in enumerate(folded)
            if not used[j]
            and math.hypot(
                sp_j.radius * math.cos(sp_j.angle) - sp_i.radius * math.cos(sp_i.angle),
                sp_j.radius * math.sin(sp_j.angle) - sp_i.radius * math.sin(sp_i.angle),
            )
            <= INVARIANCE_TOL
        ]
        for j in members:
            used[j] = True
        if sp_i.radius <= DUPLICATE_TOL:
            if len(members) != 1:
                raise InvalidGrid("the origin may appear at most once")
            slice_points.append(SlicePoint(0.0, 0.0))
            continue
        if len(members) != N or len({folded[j][0] for j in members}) != N:
            raise NotInvariant(pts[i], f"orbit of {tuple(pts[i])} has {len(members)} of {N} points")
        # Representative: the member sitting at rotation index 0.
        rep = min(members, key=lambda j: folded[j][0])
        slice_points.append(folded[rep][1])
    return RotInvariantGrid(N, tuple(slice_points), kind).validate()


def grid_to_dict(grid: RotInvariantGrid) -> dict:
    return {
        "N": grid.N,
        "kind": grid.kind,
        "points": [{"radius": p.radius, "angle": p.angle} for p in grid.points],
    }


def grid_from_dict(data) -> RotInvariantGrid:
    try:
        N = data["N"]
        kind = data["kind"]
        pts = tuple(SlicePoint(float(p["radius"]), float(p["angle"])) for p in data["points"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed grid record: {exc}") from exc
    if not isinstance(N, int):
        raise InvalidGrid(f"N must be a positive integer, got {N!r}")
    return RotInvariantGrid(N, pts, kind).validate()


def save_grid(grid: RotInvariantGrid, path) -> None:
    body = json.dumps(grid_to_dict(grid), indent=1)
    # 17 significant digits round-trip doubles exactly; json uses repr, which does.
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(body)
        fh.write("\n")


def load_grid(path) -> RotInvariantGrid:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return grid_from_dict(data)

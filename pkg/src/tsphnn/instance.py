"""City sets, Euclidean distance matrices, normalization and persistence.

An :class:`Instance` is an immutable set of labelled planar points.  Its
distances are Euclidean unless the instance carries an explicit matrix
(loaded from file or bundled), in which case that matrix is validated and
used as-is instead of being recomputed from coordinates.
"""

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .errors import (
    DegenerateInstanceError,
    InstanceSizeError,
    InvalidTourError,
    ParseError,
    TsphnnError,
)


@dataclass(frozen=True)
class City:
    """A labelled point in the plane."""

    label: str
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise TsphnnError(f"city {self.label!r} has non-finite coordinates")


@dataclass(frozen=True, eq=False)
class Instance:
    """An ordered set of at least three uniquely labelled cities.

    ``matrix``, when present, is an explicit distance matrix that overrides
    coordinate-derived distances.  ``seed`` records how the instance was
    generated, when it was generated at all.
    """

    id: str
    cities: tuple
    seed: Optional[int] = None
    matrix: Optional[np.ndarray] = None

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        if (self.id, self.cities, self.seed) != (other.id, other.cities, other.seed):
            return False
        if (self.matrix is None) != (other.matrix is None):
            return False
        return self.matrix is None or np.array_equal(self.matrix, other.matrix)

    def __post_init__(self):
        if len(self.cities) < 3:
            raise InstanceSizeError(
                f"instance needs at least 3 cities, got {len(self.cities)}"
            )
        labels = [c.label for c in self.cities]
        if len(set(labels)) != len(labels):
            raise TsphnnError(f"duplicate city labels in instance {self.id!r}")
        if self.matrix is not None:
            m = np.asarray(self.matrix, dtype=np.float64)
            _validate_distance_array(m)
            if m.shape[0] != len(self.cities):
                raise TsphnnError(
                    f"matrix is {m.shape[0]}x{m.shape[0]} but instance has "
                    f"{len(self.cities)} cities"
                )
            m.flags.writeable = False
            object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return len(self.cities)

    def coords(self) -> np.ndarray:
        """(n, 2) coordinate array in city order."""
        return np.array([[c.x, c.y] for c in self.cities], dtype=np.float64)


def _validate_distance_array(d: np.ndarray) -> None:
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise TsphnnError(f"distance matrix must be square, got shape {d.shape}")
    if d.shape[0] < 3:
        raise InstanceSizeError("distance matrix needs at least 3 cities")
    if not np.all(np.isfinite(d)):
        raise TsphnnError("distance matrix has non-finite entries")
    if np.any(d < 0):
        raise TsphnnError("distance matrix has negative entries")
    if np.any(np.diagonal(d) != 0):
        raise TsphnnError("distance matrix diagonal must be zero")
    if not np.array_equal(d, d.T):
        raise TsphnnError("distance matrix must be symmetric")


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric nonnegative matrix with a zero diagonal.

    Validated on construction; the underlying array is frozen so instances
    can be shared across workers.
    """

    d: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(np.asarray(self.d, dtype=np.float64))
        _validate_distance_array(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "d", arr)

    @property
    def n(self) -> int:
        return self.d.shape[0]


def _labels(n: int):
    """A, B, ..., Z, AA, AB, ... spreadsheet-style labels."""
    out = []
    for i in range(n):
        s = ""
        v = i
        while True:
            s = chr(ord("A") + v % 26) + s
            v = v // 26 - 1
            if v < 0:
                break
        out.append(s)
    return out


def generate_random_instance(n: int, seed: int, bound: float = 1.0) -> Instance:
    """n cities drawn uniformly from [0, bound]^2, reproducible from the seed."""
    if n < 3:
        raise InstanceSizeError(f"instance needs at least 3 cities, got {n}")
    if not bound > 0:
        raise TsphnnError(f"bound must be positive, got {bound}")
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.0, bound, size=(n, 2))
    cities = tuple(
        City(lab, float(x), float(y)) for lab, (x, y) in zip(_labels(n), pts)
    )
    return Instance(id=f"rand-n{n}-seed{seed}-b{bound:g}", cities=cities, seed=seed)


def distance_matrix(inst: Instance) -> DistanceMatrix:
    """Pairwise Euclidean distances, or the instance's explicit matrix if set."""
    if inst.matrix is not None:
        return DistanceMatrix(inst.matrix)
    pts = inst.coords()
    diff = pts[:, None, :] - pts[None, :, :]
    d = np.hypot(diff[..., 0], diff[..., 1])
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(d)


def normalize_distances(m: DistanceMatrix) -> DistanceMatrix:
    """Scale so the largest entry is exactly 1.0.  Idempotent."""
    peak = float(m.d.max())
    if peak == 0.0:
        raise DegenerateInstanceError("all distances are zero; cannot normalize")
    return DistanceMatrix(m.d / peak)


def _as_order_array(m: DistanceMatrix, tour) -> np.ndarray:
    order = getattr(tour, "order", tour)
    arr = np.asarray(order, dtype=np.int64)
    if arr.ndim != 1 or arr.shape[0] != m.n or not np.array_equal(
        np.sort(arr), np.arange(m.n)
    ):
        raise InvalidTourError(
            f"tour {list(np.atleast_1d(order))} is not a permutation of 0..{m.n - 1}"
        )
    return arr


def tour_length(m: DistanceMatrix, tour) -> float:
    """Closed-tour length: consecutive edges plus the edge back to the start.

    ``tour`` may be a :class:`tsphnn.tour.Tour` or any index sequence.
    """
    return float(_kernels.closed_tour_length(m.d, _as_order_array(m, tour)))


def save_instance(inst: Instance, path) -> None:
    """Write the instance as JSON; coordinates round-trip exactly."""
    payload = {
        "id": inst.id,
        "seed": inst.seed,
        "cities": [{"label": c.label, "x": c.x, "y": c.y} for c in inst.cities],
    }
    if inst.matrix is not None:
        payload["matrix"] = [[float(v) for v in row] for row in inst.matrix]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_instance(path) -> Instance:
    """Read an instance written by :func:`save_instance`.

    Raises :class:`ParseError` with line/field context on malformed input.
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(payload, dict):
        raise ParseError(f"{path}: top level must be an object")
    if "cities" not in payload:
        raise ParseError(f"{path}: missing field 'cities'")
    cities = []
    for idx, entry in enumerate(payload["cities"]):
        for field in ("label", "x", "y"):
            if not isinstance(entry, dict) or field not in entry:
                raise ParseError(f"{path}: cities[{idx}] missing field '{field}'")
        try:
            cities.append(
                City(str(entry["label"]), float(entry["x"]), float(entry["y"]))
            )
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{path}: cities[{idx}]: {exc}") from exc
    matrix = payload.get("matrix")
    try:
        return Instance(
            id=str(payload.get("id", "unnamed")),
            cities=tuple(cities),
            seed=payload.get("seed"),
            matrix=None if matrix is None else np.asarray(matrix, dtype=np.float64),
        )
    except TsphnnError as exc:
        raise ParseError(f"{path}: {exc}") from exc

"""Input tables: parsing, validation, min-max normalization and synthetic datasets.

A table is a header row plus m rows of k+1 finite numbers; the final column is
the dependent variable, everything before it is explanatory.  All fitting is
done in the normalized unit box, so the invertible per-column transform is kept
alongside the rescaled values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class TableError(ValueError):
    """Base class for input-table problems."""


class EmptyInputError(TableError):
    def __init__(self):
        super().__init__("input is empty")


class RaggedRowsError(TableError):
    def __init__(self, line: int, expected: int, got: int):
        self.line = line
        super().__init__(
            f"line {line}: expected {expected} cells, got {got}"
        )


class NonNumericCellError(TableError):
    def __init__(self, line: int, col: int, text: str):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, column {col}: not a finite number: {text!r}")


class TooFewRowsError(TableError):
    def __init__(self, m: int, k: int):
        super().__init__(
            f"need at least {k + 2} data rows for {k} explanatory columns, got {m}"
        )


class TooFewColumnsError(TableError):
    def __init__(self, got: int):
        super().__init__(f"need at least 2 columns (one explanatory, one dependent), got {got}")


class UnknownKindError(TableError):
    def __init__(self, kind: str):
        super().__init__(f"unknown synthetic dataset kind: {kind!r}")


@dataclass(frozen=True)
class DataTable:
    """m observations of k explanatory variables plus a dependent variable."""

    column_names: tuple[str, ...]
    values: np.ndarray  # (m, k+1) float64

    def __post_init__(self):
        v = np.ascontiguousarray(np.asarray(self.values, dtype=np.float64))
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "column_names", tuple(self.column_names))
        if v.ndim != 2 or v.shape[1] < 2:
            raise TooFewColumnsError(0 if v.ndim != 2 else v.shape[1])
        if len(self.column_names) != v.shape[1]:
            raise TableError(
                f"{len(self.column_names)} column names for {v.shape[1]} columns"
            )
        if not np.all(np.isfinite(v)):
            raise TableError("all cells must be finite")
        if self.m < self.k + 2:
            raise TooFewRowsError(self.m, self.k)

    @property
    def m(self) -> int:
        return self.values.shape[0]

    @property
    def k(self) -> int:
        return self.values.shape[1] - 1

    @property
    def x(self) -> np.ndarray:
        return self.values[:, :-1]

    @property
    def y(self) -> np.ndarray:
        return self.values[:, -1]


@dataclass(frozen=True)
class NormalizationParams:
    """Per-column affine transform: normalized = (raw - offset) / span."""

    offsets: np.ndarray  # (k+1,)
    spans: np.ndarray  # (k+1,), all > 0

    def apply(self, raw: np.ndarray) -> np.ndarray:
        return (raw - self.offsets) / self.spans

    def invert(self, normalized: np.ndarray) -> np.ndarray:
        return normalized * self.spans + self.offsets


@dataclass(frozen=True)
class NormalizedTable:
    """A DataTable rescaled so every column lies in [0, 1]."""

    column_names: tuple[str, ...]
    values: np.ndarray  # (m, k+1), all in [0, 1]
    params: NormalizationParams

    @property
    def m(self) -> int:
        return self.values.shape[0]

    @property
    def k(self) -> int:
        return self.values.shape[1] - 1

    @property
    def x(self) -> np.ndarray:
        return self.values[:, :-1]

    @property
    def y(self) -> np.ndarray:
        return self.values[:, -1]


def parse_table(text: str) -> DataTable:
    """Parse header + delimiter-separated numeric rows into a DataTable.

    The delimiter is auto-detected from the header line; tab wins when both
    tab and comma are present (spreadsheet paste is tab-delimited).
    Line and column numbers in errors are 1-based and count the header.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines or not lines[0].strip():
        raise EmptyInputError()

    header = lines[0]
    delim = "\t" if "\t" in header else ","
    names = [c.strip() for c in header.split(delim)]
    ncol = len(names)
    if ncol < 2:
        raise TooFewColumnsError(ncol)

    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(delim)
        if len(cells) != ncol:
            raise RaggedRowsError(lineno, ncol, len(cells))
        row = []
        for colno, cell in enumerate(cells, start=1):
            try:
                val = float(cell.strip())
            except ValueError:
                raise NonNumericCellError(lineno, colno, cell.strip()) from None
            if not np.isfinite(val):
                raise NonNumericCellError(lineno, colno, cell.strip())
            row.append(val)
        rows.append(row)

    if len(rows) < ncol + 1:
        raise TooFewRowsError(len(rows), ncol - 1)
    return DataTable(tuple(names), np.array(rows, dtype=np.float64))


def serialize_table(table: DataTable) -> str:
    """Tab-delimited text with shortest round-trip decimals; inverse of parse_table."""
    out = ["\t".join(table.column_names)]
    for row in table.values:
        out.append("\t".join(repr(float(v)) for v in row))
    return "\n".join(out) + "\n"


def normalize(table: DataTable) -> NormalizedTable:
    """Min-max scale each column to [0, 1]; constant columns map to 0.5 with span 1."""
    lo = table.values.min(axis=0)
    hi = table.values.max(axis=0)
    span = hi - lo
    const = span <= 0
    spans = np.where(const, 1.0, span)
    offsets = np.where(const, lo - 0.5, lo)
    params = NormalizationParams(offsets=offsets, spans=spans)
    return NormalizedTable(table.column_names, params.apply(table.values), params)


def denormalize_plane(
    params: NormalizationParams, intercept: float, slopes: np.ndarray
) -> tuple[float, np.ndarray]:
    """Map a hyperplane fitted in normalized space back to original units."""
    slopes = np.asarray(slopes, dtype=np.float64)
    o, sp = params.offsets, params.spans
    raw_slopes = slopes * sp[-1] / sp[:-1]
    raw_intercept = o[-1] + sp[-1] * intercept - float(raw_slopes @ o[:-1])
    return raw_intercept, raw_slopes


# ---------------------------------------------------------------------------
# Synthetic evaluation datasets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SyntheticSpec:
    kind: str
    seed: int = 0
    size_override: int | None = None
    noise: float | None = None  # amplitude for the noisy kinds, normalized units


# Anscombe's quartet, canonical published values.
_ANSCOMBE_X = [10.0, 8.0, 13.0, 9.0, 11.0, 14.0, 6.0, 4.0, 12.0, 7.0, 5.0]
_ANSCOMBE_Y = {
    1: [8.04, 6.95, 7.58, 8.81, 8.33, 9.96, 7.24, 4.26, 10.84, 4.82, 5.68],
    2: [9.14, 8.14, 8.74, 8.77, 9.26, 8.10, 6.13, 3.10, 9.13, 7.26, 4.74],
    3: [7.46, 6.77, 12.74, 7.11, 7.81, 8.84, 6.08, 5.39, 8.15, 6.42, 5.73],
}
_ANSCOMBE4_X = [8.0, 8.0, 8.0, 8.0, 8.0, 8.0, 8.0, 19.0, 8.0, 8.0, 8.0]
_ANSCOMBE4_Y = [6.58, 5.76, 7.71, 8.84, 8.47, 7.04, 5.25, 12.50, 5.56, 7.91, 6.89]

# Simpson's-paradox construction: three entry grades, each with salary rising
# at slope +0.5 within the grade (unit-box design space), grade centers placed
# on a falling global trend.  Center slope is tan(-37.5 deg) so the global
# trend sits mid-bin for the coarse 12-bin histogram rather than on an edge.
_SIMPSONS_CENTERS = [(0.1, 0.807), (0.5, 0.5), (0.9, 0.193)]
_SIMPSONS_HALF_WIDTH = 0.05
_SIMPSONS_SLOPE = 0.5
_SIMPSONS_NOISE = 0.002
_SIMPSONS_X_SCALE = 40.0  # years of experience
_SIMPSONS_Y_SCALE = 130_000.0  # salary
_SIMPSONS_Y_BASE = 20_000.0

# Two clean 2D linear relationships in disjoint regions of (x1, x2, y) space.
# Each uses one informative axis; the other axis is uniform noise.
_PLANES_3D = (
    # (x1 range, x2 range, informative axis, slope, intercept in design box)
    ((0.02, 0.45), (0.0, 1.0), 0, 0.8, 0.05),
    ((0.0, 1.0), (0.55, 0.98), 1, 0.5, 0.45),
)
_PLANES_3D_SCALES = (10.0, 10.0, 100.0)

DATASET_KINDS: dict[str, str] = {
    "anscombe1": "Anscombe's quartet I: 11 points, linear with scatter",
    "anscombe2": "Anscombe's quartet II: 11 points, smooth curve",
    "anscombe3": "Anscombe's quartet III: 11 points, collinear with one outlier",
    "anscombe4": "Anscombe's quartet IV: 11 points, constant x with one outlier",
    "simpsons": "Simpson's paradox: three rising groups on a falling global trend",
    "two-hyperplanes-3d": "Two clean 2D relationships embedded in 3D space",
    "clean-line-2d": "Single exact line, slope 0.7, no noise",
    "noisy-line-2d": "Single line, slope 0.7, uniform noise",
    "regime-shift-2d": "One slope below x=0.5, another above",
}

_RANDOMIZED_KINDS = {
    "simpsons",
    "two-hyperplanes-3d",
    "clean-line-2d",
    "noisy-line-2d",
    "regime-shift-2d",
}


def _rng(seed: int) -> np.random.Generator:
    # Philox: counter-based, identical streams regardless of draw batching.
    return np.random.Generator(np.random.Philox(seed))


def _anscombe(idx: int) -> DataTable:
    if idx == 4:
        x, y = _ANSCOMBE4_X, _ANSCOMBE4_Y
    else:
        x, y = _ANSCOMBE_X, _ANSCOMBE_Y[idx]
    return DataTable(("x", "y"), np.column_stack([x, y]))


def _simpsons(seed: int, size: int | None) -> DataTable:
    rng = _rng(seed)
    per_group = (size or 60) // 3
    xs, ys = [], []
    for cx, cy in _SIMPSONS_CENTERS:
        u = rng.uniform(-_SIMPSONS_HALF_WIDTH, _SIMPSONS_HALF_WIDTH, per_group)
        e = rng.uniform(-_SIMPSONS_NOISE, _SIMPSONS_NOISE, per_group)
        xs.append(cx + u)
        ys.append(cy + _SIMPSONS_SLOPE * u + e)
    x = np.concatenate(xs)
    y = np.concatenate(ys)
    return DataTable(
        ("experience", "salary"),
        np.column_stack([x * _SIMPSONS_X_SCALE, _SIMPSONS_Y_BASE + y * _SIMPSONS_Y_SCALE]),
    )


def _two_hyperplanes_3d(seed: int, size: int | None) -> DataTable:
    rng = _rng(seed)
    per_plane = (size or 40) // 2
    cols = []
    for (x1r, x2r, axis, slope, icpt) in _PLANES_3D:
        x1 = rng.uniform(*x1r, per_plane)
        x2 = rng.uniform(*x2r, per_plane)
        informative = x1 if axis == 0 else x2
        y = slope * informative + icpt
        cols.append(np.column_stack([x1, x2, y]))
    box = np.vstack(cols)
    return DataTable(("x1", "x2", "y"), box * np.array(_PLANES_3D_SCALES))


def _line_2d(seed: int, size: int | None, noise: float) -> DataTable:
    # kept in design units so the generating slope 0.7 is the raw slope
    rng = _rng(seed)
    m = size or 50
    x = rng.uniform(0.0, 1.0, m)
    y = 0.7 * x + 0.15
    if noise > 0:
        y = y + rng.uniform(-noise, noise, m)
    return DataTable(("x", "y"), np.column_stack([x, y]))


def _regime_shift_2d(seed: int, size: int | None, noise: float) -> DataTable:
    rng = _rng(seed)
    m = size or 40
    x = rng.uniform(0.0, 1.0, m)
    y = np.where(x < 0.5, 0.2 * x + 0.1, 0.9 * (x - 0.5) + 0.2)
    if noise > 0:
        y = y + rng.uniform(-noise, noise, m)
    return DataTable(("x", "y"), np.column_stack([x * 10.0, y * 100.0]))


def generate_synthetic(spec: SyntheticSpec) -> DataTable:
    """Produce a canned dataset; randomized kinds are pure functions of the seed."""
    kind = spec.kind
    if kind.startswith("anscombe") and kind[-1:] in "1234" and len(kind) == 9:
        return _anscombe(int(kind[-1]))
    if kind == "simpsons":
        return _simpsons(spec.seed, spec.size_override)
    if kind == "two-hyperplanes-3d":
        return _two_hyperplanes_3d(spec.seed, spec.size_override)
    if kind == "clean-line-2d":
        return _line_2d(spec.seed, spec.size_override, 0.0)
    if kind == "noisy-line-2d":
        return _line_2d(spec.seed, spec.size_override, spec.noise if spec.noise is not None else 0.05)
    if kind == "regime-shift-2d":
        return _regime_shift_2d(spec.seed, spec.size_override, spec.noise or 0.0)
    raise UnknownKindError(kind)

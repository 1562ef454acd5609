"""Windowed functions on the integer lattice and their difference operators.

Every operator documents how it shrinks the window:

=========  =====================================
operator   result window
=========  =====================================
delta_x    drops the rightmost column (x_max)
delta_y    drops the top row (y_max)
dbar       drops x_max and y_max
=========  =====================================
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Tuple

import numpy as np

from .gaussian import GaussianRational, as_gr

__all__ = [
    "Window",
    "LatticeFunction",
    "AnalyticityReport",
    "WindowError",
    "delta_x",
    "delta_y",
    "dbar",
    "ratio_residual",
    "is_discrete_analytic",
]

ONE_MINUS_I = GaussianRational(1, -1)
ONE_PLUS_I = GaussianRational(1, 1)


class WindowError(ValueError):
    """Raised for degenerate windows and out-of-window access."""


@dataclass(frozen=True)
class Window:
    x_min: int
    x_max: int
    y_min: int
    y_max: int

    def __post_init__(self):
        if self.x_min > self.x_max or self.y_min > self.y_max:
            raise WindowError(f"empty window {self}")

    @property
    def width(self) -> int:
        return self.x_max - self.x_min + 1

    @property
    def height(self) -> int:
        return self.y_max - self.y_min + 1

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.width, self.height)

    def __contains__(self, point) -> bool:
        x, y = point
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max

    def points(self) -> Iterator[Tuple[int, int]]:
        """Points in lexicographic ``(x, y)`` order."""
        for x in range(self.x_min, self.x_max + 1):
            for y in range(self.y_min, self.y_max + 1):
                yield (x, y)

    def intersect(self, other: Window) -> Window:
        return Window(
            max(self.x_min, other.x_min),
            min(self.x_max, other.x_max),
            max(self.y_min, other.y_min),
            min(self.y_max, other.y_max),
        )

    def shrink(self, left=0, right=0, bottom=0, top=0) -> Window:
        return Window(self.x_min + left, self.x_max - right, self.y_min + bottom, self.y_max - top)

    def to_json(self) -> dict:
        return {"x_min": self.x_min, "x_max": self.x_max, "y_min": self.y_min, "y_max": self.y_max}

    @classmethod
    def from_json(cls, obj: dict) -> Window:
        return cls(int(obj["x_min"]), int(obj["x_max"]), int(obj["y_min"]), int(obj["y_max"]))

    @classmethod
    def parse(cls, text: str) -> Window:
        """Parse ``"x_min:x_max,y_min:y_max"``."""
        try:
            xs, ys = text.split(",")
            x0, x1 = (int(v) for v in xs.split(":"))
            y0, y1 = (int(v) for v in ys.split(":"))
        except ValueError as exc:
            raise WindowError(f"cannot parse window {text!r}; expected x0:x1,y0:y1") from exc
        return cls(x0, x1, y0, y1)


class LatticeFunction:
    """A function on a rectangular window of Z^2.

    ``values[i, j]`` holds ``f(window.x_min + i, window.y_min + j)``.  Values
    are usually :class:`GaussianRational`; complex floats are accepted for
    numerical work but never mixed into an exact function implicitly.
    """

    __slots__ = ("window", "values")

    def __init__(self, window: Window, values):
        values = np.asarray(values, dtype=object)
        if values.shape != window.shape:
            raise WindowError(f"values shape {values.shape} does not match window {window.shape}")
        self.window = window
        self.values = values

    @classmethod
    def from_callable(cls, fn: Callable[[int, int], object], window: Window, exact=True):
        vals = np.empty(window.shape, dtype=object)
        conv = as_gr if exact else complex
        for i, x in enumerate(range(window.x_min, window.x_max + 1)):
            for j, y in enumerate(range(window.y_min, window.y_max + 1)):
                vals[i, j] = conv(fn(x, y))
        return cls(window, vals)

    @classmethod
    def constant(cls, c, window: Window):
        c = as_gr(c)
        return cls.from_callable(lambda x, y: c, window)

    def __call__(self, x: int, y: int):
        if (x, y) not in self.window:
            raise WindowError(f"point {(x, y)} outside window {self.window}")
        return self.values[x - self.window.x_min, y - self.window.y_min]

    def restrict(self, window: Window) -> LatticeFunction:
        w = self.window
        if not (w.x_min <= window.x_min and window.x_max <= w.x_max
                and w.y_min <= window.y_min and window.y_max <= w.y_max):
            raise WindowError(f"{window} is not contained in {w}")
        i0, j0 = window.x_min - w.x_min, window.y_min - w.y_min
        return LatticeFunction(window, self.values[i0:i0 + window.width, j0:j0 + window.height])

    def _binary(self, other, op):
        if isinstance(other, LatticeFunction):
            w = self.window.intersect(other.window)
            return LatticeFunction(w, op(self.restrict(w).values, other.restrict(w).values))
        return LatticeFunction(self.window, op(self.values, other))

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __mul__(self, c):
        if isinstance(c, LatticeFunction):
            return self._binary(c, lambda a, b: a * b)
        return LatticeFunction(self.window, self.values * c)

    __rmul__ = __mul__

    def __neg__(self):
        return LatticeFunction(self.window, -self.values)

    def is_zero(self) -> bool:
        return not any(bool(v) for v in self.values.flat)

    def __eq__(self, other):
        if not isinstance(other, LatticeFunction):
            return NotImplemented
        return self.window == other.window and all(
            a == b for a, b in zip(self.values.flat, other.values.flat)
        )

    def __repr__(self):
        return f"LatticeFunction(window={self.window})"

    def items(self) -> Iterator[Tuple[int, int, object]]:
        for x, y in self.window.points():
            yield x, y, self(x, y)

    def to_complex(self) -> np.ndarray:
        return np.array([[complex(v) for v in row] for row in self.values], dtype=complex)

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        """Window bounds plus row-major values: ``values[j][i]`` is ``f(x_min+i, y_min+j)``."""
        rows = [[str(self.values[i, j]) for i in range(self.window.width)]
                for j in range(self.window.height)]
        return {"window": self.window.to_json(), "values": rows}

    @classmethod
    def from_json(cls, obj: dict) -> LatticeFunction:
        window = Window.from_json(obj["window"])
        rows = obj["values"]
        if len(rows) != window.height or any(len(r) != window.width for r in rows):
            raise WindowError("row-major value array does not match window")
        vals = np.empty(window.shape, dtype=object)
        for j, row in enumerate(rows):
            for i, v in enumerate(row):
                vals[i, j] = GaussianRational.from_json(v)
        return cls(window, vals)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "y", "re", "im"])
        for x, y, v in self.items():
            c = complex(v)
            writer.writerow([x, y, repr(c.real + 0.0), repr(c.imag + 0.0)])
        return buf.getvalue()


def _require(f: LatticeFunction, width: int, height: int, name: str):
    if f.window.width < width or f.window.height < height:
        raise WindowError(f"{name} needs a window of at least {width}x{height}, got {f.window}")


def delta_x(f: LatticeFunction) -> LatticeFunction:
    """``f(x+1, y) - f(x, y)``."""
    _require(f, 2, 1, "delta_x")
    return LatticeFunction(f.window.shrink(right=1), f.values[1:, :] - f.values[:-1, :])


def delta_y(f: LatticeFunction) -> LatticeFunction:
    """``f(x, y+1) - f(x, y)``."""
    _require(f, 1, 2, "delta_y")
    return LatticeFunction(f.window.shrink(top=1), f.values[:, 1:] - f.values[:, :-1])


def dbar(f: LatticeFunction) -> LatticeFunction:
    """The discrete Cauchy-Riemann operator ``(1-i)dx + (1+i)dy + dx dy``."""
    _require(f, 2, 2, "dbar")
    w = f.window.shrink(right=1, top=1)
    dx = delta_x(f).restrict(w)
    dy = delta_y(f).restrict(w)
    dxy = delta_x(delta_y(f))
    return LatticeFunction(w, ONE_MINUS_I * dx.values + ONE_PLUS_I * dy.values + dxy.values)


def ratio_residual(f: LatticeFunction) -> LatticeFunction:
    """Difference of the two sides of the diagonal-quotient form of discrete analyticity.

    ``(f(x+1,y+1) - f(x,y))/(1+i) - (f(x+1,y) - f(x,y+1))/(1-i)``, which equals
    ``(1-i)/2 * dbar(f)`` pointwise.
    """
    _require(f, 2, 2, "ratio_residual")
    v = f.values
    w = f.window.shrink(right=1, top=1)
    diag = (v[1:, 1:] - v[:-1, :-1]) / ONE_PLUS_I
    anti = (v[1:, :-1] - v[:-1, 1:]) / ONE_MINUS_I
    return LatticeFunction(w, diag - anti)


@dataclass(frozen=True)
class AnalyticityReport:
    is_analytic: bool
    point: Optional[Tuple[int, int]] = None
    residual: Optional[GaussianRational] = None

    def __bool__(self):
        return self.is_analytic


def is_discrete_analytic(f: LatticeFunction) -> AnalyticityReport:
    """Check ``dbar f == 0`` on the window; report the first violation in (x, y) order."""
    d = dbar(f)
    for x, y, v in d.items():
        if v != 0:
            return AnalyticityReport(False, (x, y), v)
    return AnalyticityReport(True)

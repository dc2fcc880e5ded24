"""Functions on F_q^d under the dual measure convention, with transforms and norms.

Convention: the space side (F_q^d, dx) integrates with the normalized counting
measure (weight q^-d); the frequency side (F_q^d, dm) integrates with the plain
counting measure (weight 1).  The forward transform maps dm -> dx,

    ghat(x) = sum_m chi(-x.m) g(m),

and the inverse transform maps dx -> dm,

    fvee(m) = q^-d sum_x chi(m.x) f(x).

With these weights Plancherel reads ||fvee||_{L2(dm)} = ||f||_{L2(dx)} and the
two transforms invert each other with no extra normalization.

Grid layout: a point (x_1, ..., x_d) with coordinates in 0..q-1 sits at flat
index sum_i x_i * q^(d-i), i.e. row-major with the last coordinate fastest.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Tuple, Union

import numpy as np

from .field import is_odd_prime

Exponent = Union[int, float, Fraction]

#: guard for the O(q^2d) direct transform / exhaustive loops
DIRECT_SIZE_LIMIT = 4096


class MeasureSide(enum.Enum):
    SPACE_DX = "dx"
    FREQ_DM = "dm"


def index_of(point: Tuple[int, ...], q: int, d: int) -> int:
    idx = 0
    for c in point:
        idx = idx * q + (c % q)
    return idx


def point_of(index: int, q: int, d: int) -> Tuple[int, ...]:
    coords = []
    for _ in range(d):
        coords.append(index % q)
        index //= q
    return tuple(reversed(coords))


def all_points(q: int, d: int) -> Iterable[Tuple[int, ...]]:
    """Points of F_q^d in flat-index order."""
    return (point_of(i, q, d) for i in range(q**d))


@lru_cache(maxsize=None)
def coordinate_grid(q: int, d: int) -> np.ndarray:
    """Array of shape (d, q^d): row i holds coordinate i at each flat index."""
    grid = np.indices((q,) * d).reshape(d, -1)
    grid.setflags(write=False)
    return grid


class GridFunction:
    """A complex function on F_q^d tagged with its measure side.

    Values are immutable after construction; arithmetic only combines
    functions living on the same (q, d, side).
    """

    __slots__ = ("values", "side", "q", "d")

    def __init__(self, values, side: MeasureSide, q: int, d: int):
        if not is_odd_prime(q):
            raise ValueError(f"modulus must be an odd prime, got {q}")
        if not 1 <= d <= 6:
            raise ValueError(f"dimension must be in 1..6, got {d}")
        arr = np.array(values, dtype=np.complex128).reshape(-1)
        if arr.size != q**d:
            raise ValueError(f"expected {q**d} values for F_{q}^{d}, got {arr.size}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, val):
        raise AttributeError("GridFunction is immutable")

    @property
    def measure_weight(self) -> float:
        return float(self.q) ** (-self.d) if self.side is MeasureSide.SPACE_DX else 1.0

    def with_values(self, values) -> "GridFunction":
        return GridFunction(values, self.side, self.q, self.d)

    def _check_compatible(self, other: "GridFunction"):
        if (self.q, self.d, self.side) != (other.q, other.d, other.side):
            raise ValueError(
                f"incompatible grids: ({self.q},{self.d},{self.side.value}) vs "
                f"({other.q},{other.d},{other.side.value})"
            )

    def __add__(self, other):
        if isinstance(other, GridFunction):
            self._check_compatible(other)
            return self.with_values(self.values + other.values)
        return self.with_values(self.values + other)

    def __sub__(self, other):
        if isinstance(other, GridFunction):
            self._check_compatible(other)
            return self.with_values(self.values - other.values)
        return self.with_values(self.values - other)

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            self._check_compatible(other)
            return self.with_values(self.values * other.values)
        return self.with_values(self.values * other)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"GridFunction(q={self.q}, d={self.d}, side={self.side.value})"


class SurfaceFunction:
    """A complex function on the points of a variety, integrated with sigma.

    sigma is the normalized counting measure on the variety, so the measure
    weight per point is 1/|V|.
    """

    __slots__ = ("values", "variety")

    def __init__(self, values, variety):
        arr = np.array(values, dtype=np.complex128).reshape(-1)
        if arr.size != variety.size:
            raise ValueError(
                f"expected {variety.size} values on the variety, got {arr.size}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "variety", variety)

    def __setattr__(self, name, val):
        raise AttributeError("SurfaceFunction is immutable")

    @property
    def measure_weight(self) -> float:
        return 1.0 / self.variety.size

    def __repr__(self) -> str:
        return f"SurfaceFunction(|V|={self.variety.size})"


def delta(q: int, d: int, side: MeasureSide, at: Tuple[int, ...] = None) -> GridFunction:
    """Point mass (value 1 at `at`, default the origin, 0 elsewhere)."""
    values = np.zeros(q**d, dtype=np.complex128)
    idx = 0 if at is None else index_of(at, q, d)
    values[idx] = 1.0
    return GridFunction(values, side, q, d)


def constant(q: int, d: int, side: MeasureSide, value: complex = 1.0) -> GridFunction:
    return GridFunction(np.full(q**d, value, dtype=np.complex128), side, q, d)


def random_function(q: int, d: int, side: MeasureSide, rng: np.random.Generator) -> GridFunction:
    values = rng.standard_normal(q**d) + 1j * rng.standard_normal(q**d)
    return GridFunction(values, side, q, d)


@lru_cache(maxsize=None)
def _axis_matrix(q: int, sign: int) -> np.ndarray:
    jk = np.outer(np.arange(q), np.arange(q))
    mat = np.exp(sign * 2j * np.pi * jk / q)
    mat.setflags(write=False)
    return mat


def _factored_transform(values: np.ndarray, q: int, d: int, sign: int) -> np.ndarray:
    """Dimension-by-dimension transform, O(d * q^(d+1)) work."""
    t = values.reshape((q,) * d)
    w = _axis_matrix(q, sign)
    for axis in range(d):
        t = np.moveaxis(np.tensordot(t, w, axes=([axis], [0])), -1, axis)
    return t.reshape(-1)


def _direct_transform(values: np.ndarray, q: int, d: int, sign: int) -> np.ndarray:
    """Full O(q^2d) summation against the character matrix; small grids only."""
    n = q**d
    if n > DIRECT_SIZE_LIMIT:
        raise ValueError(f"direct transform limited to q^d <= {DIRECT_SIZE_LIMIT}")
    pts = coordinate_grid(q, d)
    dots = (pts.T @ pts) % q
    mat = np.exp(sign * 2j * np.pi * dots / q)
    return mat @ values


def fourier_transform(g: GridFunction, method: str = "factored") -> GridFunction:
    """ghat(x) = sum_m chi(-x.m) g(m); input on dm, output on dx."""
    if g.side is not MeasureSide.FREQ_DM:
        raise ValueError("fourier_transform expects a function on (F_q^d, dm)")
    if method == "factored":
        out = _factored_transform(g.values, g.q, g.d, sign=-1)
    elif method == "direct":
        out = _direct_transform(g.values, g.q, g.d, sign=-1)
    else:
        raise ValueError(f"unknown method {method!r}")
    return GridFunction(out, MeasureSide.SPACE_DX, g.q, g.d)


def inverse_fourier_transform(f: GridFunction, method: str = "factored") -> GridFunction:
    """fvee(m) = q^-d sum_x chi(m.x) f(x); input on dx, output on dm."""
    if f.side is not MeasureSide.SPACE_DX:
        raise ValueError("inverse_fourier_transform expects a function on (F_q^d, dx)")
    scale = float(f.q) ** (-f.d)
    if method == "factored":
        out = _factored_transform(f.values, f.q, f.d, sign=+1) * scale
    elif method == "direct":
        out = _direct_transform(f.values, f.q, f.d, sign=+1) * scale
    else:
        raise ValueError(f"unknown method {method!r}")
    return GridFunction(out, MeasureSide.FREQ_DM, f.q, f.d)


def cyclic_convolve_counting(a: np.ndarray, b: np.ndarray, q: int, d: int) -> np.ndarray:
    """c(y) = sum_x a(y-x) b(x) over (Z/q)^d, computed with numpy's FFT.

    This is an independent code path from the character-matrix transforms,
    so the convolution theorem stays a meaningful cross-check.
    """
    ta = np.fft.fftn(a.reshape((q,) * d))
    tb = np.fft.fftn(b.reshape((q,) * d))
    return np.fft.ifftn(ta * tb).reshape(-1)


def convolve(f: GridFunction, h: GridFunction) -> GridFunction:
    """f*h(y) = q^-d sum_x f(y-x) h(x); both sides must live on (F_q^d, dx)."""
    if f.side is not MeasureSide.SPACE_DX or h.side is not MeasureSide.SPACE_DX:
        raise ValueError("convolution is defined on (F_q^d, dx)")
    f._check_compatible(h)
    scale = float(f.q) ** (-f.d)
    return f.with_values(cyclic_convolve_counting(f.values, h.values, f.q, f.d) * scale)


def convolve_direct(f: GridFunction, h: GridFunction) -> GridFunction:
    """Loop oracle for convolve; quadratic in the grid size."""
    if f.side is not MeasureSide.SPACE_DX or h.side is not MeasureSide.SPACE_DX:
        raise ValueError("convolution is defined on (F_q^d, dx)")
    f._check_compatible(h)
    q, d, n = f.q, f.d, f.q**f.d
    if n > DIRECT_SIZE_LIMIT:
        raise ValueError(f"direct convolution limited to q^d <= {DIRECT_SIZE_LIMIT}")
    out = np.zeros(n, dtype=np.complex128)
    for yi in range(n):
        y = point_of(yi, q, d)
        acc = 0.0 + 0.0j
        for xi in range(n):
            x = point_of(xi, q, d)
            ymx = tuple((yc - xc) % q for yc, xc in zip(y, x))
            acc += f.values[index_of(ymx, q, d)] * h.values[xi]
        out[yi] = acc
    return f.with_values(out * float(q) ** (-d))


def translate(f: GridFunction, z: Tuple[int, ...]) -> GridFunction:
    """(tau_z f)(y) = f(y - z)."""
    t = f.values.reshape((f.q,) * f.d)
    rolled = np.roll(t, shift=tuple(c % f.q for c in z), axis=tuple(range(f.d)))
    return f.with_values(rolled.reshape(-1))


def _as_float_exponent(p: Exponent) -> float:
    if p == math.inf:
        return math.inf
    return float(Fraction(p)) if not isinstance(p, float) else p


def lp_norm(f: "GridFunction | SurfaceFunction", p: Exponent) -> float:
    """L^p norm with the measure the function carries; p = inf gives the sup."""
    pf = _as_float_exponent(p)
    if pf != math.inf and pf < 1:
        raise ValueError(f"exponent must satisfy p >= 1, got {p}")
    mags = np.abs(f.values)
    if pf == math.inf:
        return float(mags.max()) if mags.size else 0.0
    return float((f.measure_weight * np.sum(mags**pf)) ** (1.0 / pf))


def weak_lr_norm(g: SurfaceFunction, r: Exponent) -> float:
    """Weak L^r quasinorm sup_l l * sigma(|g| >= l)^(1/r).

    On a finite measure space the sup over continuous l > 0 is attained with
    the >= level sets at the values |g| actually takes, which is what this
    scans.
    """
    rf = _as_float_exponent(r)
    if rf != math.inf and rf < 1:
        raise ValueError(f"exponent must satisfy r >= 1, got {r}")
    mags = np.abs(g.values)
    levels = np.unique(mags[mags > 0])
    if levels.size == 0:
        return 0.0
    if rf == math.inf:
        return float(levels.max())
    weight = g.measure_weight
    best = 0.0
    for lam in levels:
        meas = weight * np.count_nonzero(mags >= lam)
        best = max(best, float(lam) * meas ** (1.0 / rf))
    return best


def grid_inner_product(f: GridFunction, g: GridFunction) -> complex:
    """<f, g> with the shared measure weight (second slot conjugated)."""
    f._check_compatible(g)
    return complex(f.measure_weight * np.sum(f.values * np.conj(g.values)))


def surface_inner_product(h1: SurfaceFunction, h2: SurfaceFunction) -> complex:
    if h1.variety is not h2.variety and h1.variety.size != h2.variety.size:
        raise ValueError("surface functions live on different varieties")
    return complex(h1.measure_weight * np.sum(h1.values * np.conj(h2.values)))

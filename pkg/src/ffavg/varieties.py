"""Algebraic varieties in F_q^d with their normalized surface measures.

Built-ins: the sphere {sum x_i^2 = j, j != 0}, the paraboloid
{x_1^2 + ... + x_{d-1}^2 = x_d}, and the cone {x_1^2 + ... + x_{d-2}^2 =
x_{d-1} x_d}.  The cone's Fourier coefficients have an exact closed form
driven by Gauss sums, with a branch structure controlled by the discriminant
form on the frequency side; the same form cuts out the dual cone.  For even
d with sqrt(-1) in F_q the cone contains a q^(d/2)-point isotropic subspace,
the obstruction that pins the endpoint geometry of the averaging problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .chars import gauss_sum_squared_exact
from .field import PrimeField, is_odd_prime, sqrt_of_minus_one
from .fourier import (
    GridFunction,
    MeasureSide,
    coordinate_grid,
    index_of,
    inverse_fourier_transform,
)


class Variety:
    """A point set V in F_q^d with its normalized surface measure sigma.

    Points are stored as a lexicographically sorted integer array plus an
    O(1) membership bitmap.  The inverse Fourier transform of sigma is
    computed once on first use and cached; everything is immutable after
    construction.
    """

    def __init__(self, q: int, d: int, points: np.ndarray, kind: str = "custom",
                 j: Optional[int] = None):
        if not is_odd_prime(q):
            raise ValueError(f"modulus must be an odd prime, got {q}")
        pts = np.asarray(points, dtype=np.int64).reshape(-1, d) % q
        if pts.shape[0] == 0:
            raise ValueError("a variety must contain at least one point")
        pts = pts[np.lexsort(pts.T[::-1])]
        if pts.shape[0] > 1 and np.any(np.all(pts[1:] == pts[:-1], axis=1)):
            raise ValueError("variety points must be distinct")
        pts.setflags(write=False)
        self.q = q
        self.d = d
        self.kind = kind
        self.j = j
        self.points = pts
        self.size = int(pts.shape[0])
        strides = q ** np.arange(d - 1, -1, -1, dtype=np.int64)
        idx = pts @ strides
        idx.setflags(write=False)
        self.point_indices = idx
        bitmap = np.zeros(q**d, dtype=bool)
        bitmap[idx] = True
        bitmap.setflags(write=False)
        self.indicator = bitmap
        self._density: Optional[GridFunction] = None
        self._sigma_check: Optional[GridFunction] = None

    def contains(self, point: Tuple[int, ...]) -> bool:
        return bool(self.indicator[index_of(tuple(point), self.q, self.d)])

    def indicator_grid(self) -> GridFunction:
        """The characteristic function of V on (F_q^d, dx)."""
        return GridFunction(self.indicator.astype(np.complex128),
                            MeasureSide.SPACE_DX, self.q, self.d)

    def density(self) -> GridFunction:
        """sigma as a density against dx: (q^d/|V|) on V, 0 elsewhere."""
        if self._density is None:
            scale = float(self.q) ** self.d / self.size
            self._density = self.indicator_grid() * scale
        return self._density

    def sigma_check(self) -> GridFunction:
        """sigma_vee(m) = |V|^-1 sum_{x in V} chi(m.x), on (F_q^d, dm).

        The m = 0 entry is exactly 1: the factored transform accumulates the
        plain integer count there before the final 1/|V| division.
        """
        if self._sigma_check is None:
            char_sums = _character_sums(self.indicator.astype(np.complex128),
                                        self.q, self.d)
            self._sigma_check = GridFunction(char_sums / self.size,
                                             MeasureSide.FREQ_DM, self.q, self.d)
        return self._sigma_check

    def restrict(self, grid: GridFunction) -> np.ndarray:
        """Values of a space-side grid function at the points of V."""
        if grid.side is not MeasureSide.SPACE_DX or (grid.q, grid.d) != (self.q, self.d):
            raise ValueError("can only restrict a matching (F_q^d, dx) function")
        return grid.values[self.point_indices]

    def __repr__(self) -> str:
        tag = f", j={self.j}" if self.j is not None else ""
        return f"Variety({self.kind}, q={self.q}, d={self.d}, size={self.size}{tag})"


def _character_sums(values: np.ndarray, q: int, d: int) -> np.ndarray:
    """sum_x chi(m.x) v(x) for every m, by per-axis contraction."""
    t = values.reshape((q,) * d)
    jk = np.outer(np.arange(q), np.arange(q))
    w = np.exp(2j * np.pi * jk / q)
    for axis in range(d):
        t = np.moveaxis(np.tensordot(t, w, axes=([axis], [0])), -1, axis)
    return t.reshape(-1)


def variety_from_predicate(q: int, d: int, predicate: Callable[[np.ndarray], np.ndarray],
                           kind: str = "custom", j: Optional[int] = None) -> Variety:
    """Build a variety from a vectorized predicate on the (d, q^d) coordinate grid."""
    grid = coordinate_grid(q, d)
    mask = np.asarray(predicate(grid), dtype=bool).reshape(-1)
    if mask.size != q**d:
        raise ValueError("predicate must return one boolean per point")
    return Variety(q, d, grid.T[mask], kind=kind, j=j)


def make_sphere(q: int, d: int, j: int) -> Variety:
    """Sphere {x: x_1^2 + ... + x_d^2 = j} with j != 0."""
    jv = int(j) % q
    if jv == 0:
        raise ValueError("sphere radius parameter j must be nonzero")
    return variety_from_predicate(
        q, d, lambda g: np.sum(g * g, axis=0) % q == jv, kind="sphere", j=jv
    )


def make_paraboloid(q: int, d: int) -> Variety:
    """Paraboloid {x: x_1^2 + ... + x_{d-1}^2 = x_d}; a graph of size q^(d-1)."""
    if d < 2:
        raise ValueError("paraboloid needs dimension d >= 2")
    return variety_from_predicate(
        q, d, lambda g: np.sum(g[:-1] * g[:-1], axis=0) % q == g[-1], kind="paraboloid"
    )


def make_cone(q: int, d: int) -> Variety:
    """Cone {x: x_1^2 + ... + x_{d-2}^2 = x_{d-1} x_d}; needs d >= 3."""
    if d < 3:
        raise ValueError("cone needs dimension d >= 3")
    return variety_from_predicate(
        q, d, lambda g: cone_form_on_grid(g, q, 1) == 0, kind="cone"
    )


def cone_form_on_grid(grid: np.ndarray, q: int, ell: int) -> np.ndarray:
    """xi_1^2 + ... + xi_{d-2}^2 - ell * xi_{d-1} xi_d on a (d, n) coordinate array."""
    head = np.sum(grid[:-2] * grid[:-2], axis=0) if grid.shape[0] > 2 else 0
    return (head - ell * grid[-2] * grid[-1]) % q


class ConeForm:
    """The quadratic form xi_1^2 + ... + xi_{d-2}^2 - ell * xi_{d-1} xi_d.

    ell = 1 vanishes exactly on the cone; ell = 4 is the frequency-side
    discriminant selecting the closed-form branches and the dual cone.
    """

    def __init__(self, q: int, d: int, ell: int):
        if d < 3:
            raise ValueError("the form needs dimension d >= 3")
        self.q = q
        self.d = d
        self.ell = int(ell) % q

    def __call__(self, point: Tuple[int, ...]) -> int:
        c = [int(v) % self.q for v in point]
        head = sum(v * v for v in c[:-2])
        return (head - self.ell * c[-2] * c[-1]) % self.q

    def values(self) -> np.ndarray:
        return cone_form_on_grid(coordinate_grid(self.q, self.d), self.q, self.ell)


def cone_fourier_closed_form(q: int, d: int, m: Tuple[int, ...]) -> complex:
    """Exact Fourier coefficient C_vee(m) of the cone indicator on (F_q^d, dx).

    Even d >= 4:  delta_0(m)/q + (q-1) G^(d-2) / q^d   when Gamma_4(m) = 0,
                  -G^(d-2) / q^d                        when Gamma_4(m) != 0.
    Odd d >= 3:   delta_0(m)/q                          when Gamma_4(m) = 0,
                  G^(d-1) eta(-Gamma_4(m)) / q^d        when Gamma_4(m) != 0.

    Both powers of the Gauss sum are even, hence exact integers via
    G^2 = eta(-1) q; no floating-point summation enters.
    """
    if d < 3:
        raise ValueError("cone needs dimension d >= 3")
    field = PrimeField(q)
    gamma = ConeForm(q, d, 4)(m)
    at_origin = all(int(c) % q == 0 for c in m)
    g2 = gauss_sum_squared_exact(field)
    qd = q**d
    if d % 2 == 0:
        gpow = g2 ** ((d - 2) // 2)
        if gamma == 0:
            return complex((1.0 / q if at_origin else 0.0) + (q - 1) * gpow / qd)
        return complex(-gpow / qd)
    if gamma == 0:
        return complex(1.0 / q if at_origin else 0.0)
    gpow = g2 ** ((d - 1) // 2)
    return complex(gpow * field.eta_int(-gamma) / qd)


def cone_fourier_closed_form_grid(q: int, d: int) -> np.ndarray:
    """Vectorized closed form over every m in flat-index order."""
    if d < 3:
        raise ValueError("cone needs dimension d >= 3")
    field = PrimeField(q)
    gamma = cone_form_on_grid(coordinate_grid(q, d), q, 4)
    g2 = gauss_sum_squared_exact(field)
    qd = q**d
    out = np.empty(q**d, dtype=np.complex128)
    if d % 2 == 0:
        gpow = g2 ** ((d - 2) // 2)
        out[:] = np.where(gamma == 0, (q - 1) * gpow / qd, -gpow / qd)
        out[0] += 1.0 / q
    else:
        gpow = g2 ** ((d - 1) // 2)
        eta_table = np.array([field.eta_int(v) for v in range(q)])
        out[:] = np.where(gamma == 0, 0.0, gpow * eta_table[(-gamma) % q] / qd)
        out[0] = 1.0 / q
    return out


def dual_cone_mask(q: int, d: int) -> np.ndarray:
    """Boolean mask over flat indices of {m: Gamma_4(m) = 0}."""
    if d < 3:
        raise ValueError("dual cone needs dimension d >= 3")
    return cone_form_on_grid(coordinate_grid(q, d), q, 4) == 0


def dual_cone(q: int, d: int) -> np.ndarray:
    """The point set {m: Gamma_4(m) = 0}, sorted in flat-index order."""
    mask = dual_cone_mask(q, d)
    return coordinate_grid(q, d).T[mask]


def isotropic_subspace(q: int, d: int) -> Optional[Variety]:
    """The q^(d/2)-point subspace {(t_1, i t_1, ..., t_k, i t_k, s, 0)} in the cone.

    Requires even d >= 4; returns None when -1 is not a square (q = 3 mod 4).
    Each pair (t, i t) contributes t^2 (1 + i^2) = 0 to the defining form, and
    the last two coordinates contribute s * 0 = 0, so the subspace lies in the
    cone whenever i^2 = -1 exists.
    """
    if d % 2 != 0:
        raise ValueError("the isotropic subspace construction needs even d")
    if d < 4:
        raise ValueError("the isotropic subspace construction needs d >= 4")
    root = sqrt_of_minus_one(q)
    if root is None:
        return None
    i = root.value
    k = (d - 2) // 2
    params = coordinate_grid(q, k + 1)  # rows: t_1..t_k, s
    n = params.shape[1]
    pts = np.zeros((n, d), dtype=np.int64)
    for jcol in range(k):
        pts[:, 2 * jcol] = params[jcol]
        pts[:, 2 * jcol + 1] = (i * params[jcol]) % q
    pts[:, d - 2] = params[k]
    return Variety(q, d, pts, kind="pi")


@dataclass(frozen=True)
class RegularityReport:
    """Measured size and Fourier-decay constants of a variety.

    size_ratio = |V| / q^(d-1); decay_ratio = max_{m != 0} |sigma_vee(m)|
    normalized by q^-((d-1)/2).  Regularity is certified against an explicit
    constant threshold instead of a hidden one.
    """

    size: int
    size_ratio: float
    max_decay: float
    decay_ratio: float

    def is_regular_at(self, c: float = 2.0) -> bool:
        return (1.0 / c <= self.size_ratio <= c) and self.decay_ratio <= c


def regularity_report(v: Variety) -> RegularityReport:
    sc = v.sigma_check().values
    max_decay = float(np.max(np.abs(sc[1:]))) if sc.size > 1 else 0.0
    return RegularityReport(
        size=v.size,
        size_ratio=v.size / float(v.q) ** (v.d - 1),
        max_decay=max_decay,
        decay_ratio=max_decay * float(v.q) ** ((v.d - 1) / 2.0),
    )


def _as_index_set(q: int, d: int, points) -> np.ndarray:
    """Normalize a point collection (mask, flat indices, or coordinate rows)."""
    arr = np.asarray(points)
    if arr.dtype == bool:
        if arr.size != q**d:
            raise ValueError("boolean mask has the wrong length")
        return np.flatnonzero(arr)
    if arr.ndim == 2:
        strides = q ** np.arange(d - 1, -1, -1, dtype=np.int64)
        return np.unique((arr % q) @ strides)
    return np.unique(arr.astype(np.int64))


def dual_cone_energy_ratio(q: int, d: int, points) -> float:
    """Energy of a set's Fourier coefficients on the dual cone, against the
    two-term bound q^(-d-1)|E| + q^(-3d/2)|E|^2.

    Returns (sum_{m: Gamma_4(m)=0} |E_vee(m)|^2) / bound, with E_vee the
    inverse transform of the indicator on (F_q^d, dx).  Even d >= 4 only.
    """
    if d % 2 != 0 or d < 4:
        raise ValueError("the dual-cone energy bound applies to even d >= 4")
    idx = _as_index_set(q, d, points)
    if idx.size == 0:
        raise ValueError("the point set must be nonempty")
    values = np.zeros(q**d, dtype=np.complex128)
    values[idx] = 1.0
    evee = inverse_fourier_transform(
        GridFunction(values, MeasureSide.SPACE_DX, q, d)
    ).values
    mask = dual_cone_mask(q, d)
    lhs = float(np.sum(np.abs(evee[mask]) ** 2))
    size = float(idx.size)
    bound = float(q) ** (-d - 1) * size + float(q) ** (-1.5 * d) * size**2
    return lhs / bound

"""The rational family z ** n + a / z ** n + c: parameters, critical data, and orbits.

All complex arithmetic is binary64. Every fractional power uses the principal
branch with argument in (-pi, pi] and the branch cut on the negative real axis;
a real-axis input with a negative-zero imaginary part is treated as approaching
the cut from above, so Arg(-4 - 0j) is +pi, not -pi.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleError

_INF = complex(math.inf, 0.0)


def wrap_angle(theta: float) -> float:
    """Wrap an angle (radians) to the principal interval (-pi, pi]."""
    t = math.remainder(theta, math.tau)
    if t <= -math.pi:
        t += math.tau
    return t


def principal_arg(z: complex) -> float:
    """Arg(z) in (-pi, pi]; negative real inputs give +pi even with -0.0 imaginary part."""
    z = complex(z)
    im = 0.0 if z.imag == 0.0 else z.imag
    return math.atan2(im, z.real)


def principal_sqrt(z: complex) -> complex:
    """Square root with Arg of the result in (-pi/2, pi/2]."""
    z = complex(z)
    if z.imag == 0.0:
        z = complex(z.real, 0.0)
    return cmath.sqrt(z)


def principal_root(z: complex, m: int) -> complex:
    """Principal m-th root |z|**(1/m) * exp(i*Arg(z)/m)."""
    z = complex(z)
    if z == 0:
        return 0j
    return abs(z) ** (1.0 / m) * cmath.exp(1j * principal_arg(z) / m)


def np_principal_sqrt(a: np.ndarray) -> np.ndarray:
    """Vectorized principal square root with the same -0.0 handling as principal_sqrt."""
    a = np.asarray(a, dtype=complex)
    a = np.where(a.imag == 0.0, a.real + 0.0j, a)
    return np.sqrt(a)


def safe_abs(z: complex) -> float:
    """|z| that saturates to inf instead of raising when the modulus of a finite
    complex value overflows the float range."""
    try:
        return abs(z)
    except OverflowError:
        return math.inf


def pow_int(z, n: int):
    """z ** n by binary exponentiation; identical operation order for scalars and arrays,
    so the scalar and vectorized orbit engines agree to rounding (compiler fusing only)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    result = None
    base = z
    e = n
    while e:
        if e & 1:
            result = base if result is None else result * base
        e >>= 1
        if e:
            base = base * base
    return result


@dataclass(frozen=True)
class MapParams:
    """One member of the family z -> z**n + a/z**n + c."""

    n: int
    a: complex
    c: complex

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int):
            raise TypeError(f"n must be an int, got {type(self.n).__name__}")
        if self.n < 3:
            raise ValueError(f"n must be >= 3, got {self.n}")
        a = complex(self.a)
        c = complex(self.c)
        if a == 0:
            raise ValueError("a must be nonzero")
        if not (cmath.isfinite(a) and cmath.isfinite(c)):
            raise ValueError("a and c must be finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", c)

    @property
    def psi(self) -> float:
        """Principal argument of a, in (-pi, pi]."""
        return principal_arg(self.a)


@dataclass(frozen=True)
class OrbitResult:
    """Outcome of iterating one point: whether it escaped, after how many map
    applications the decision fell, and the modulus at decision time (inf when the
    orbit hit the pole or overflowed)."""

    escaped: bool
    iterations: int
    final_modulus: float


def eval_map(p: MapParams, z: complex) -> complex:
    """One application of the map. z = 0 raises PoleError; overflow returns a
    non-finite value rather than raising."""
    z = complex(z)
    if z == 0:
        raise PoleError("the map has a pole at z = 0")
    zn = pow_int(z, p.n)
    if zn == 0:
        return _INF
    return zn + p.a / zn + p.c


def critical_points(p: MapParams) -> list[complex]:
    """The 2n critical points |a|**(1/2n) * exp(i*(psi + 2*k*pi)/(2n)), k = 0..2n-1."""
    r = abs(p.a) ** (1.0 / (2 * p.n))
    psi = p.psi
    return [
        r * cmath.exp(1j * (psi + 2.0 * math.pi * k) / (2 * p.n))
        for k in range(2 * p.n)
    ]


def critical_values(p: MapParams) -> tuple[complex, complex]:
    """(v_plus, v_minus) = (c + 2*sqrt(a), c - 2*sqrt(a)), principal square root.
    Even-k critical points map to v_plus, odd-k to v_minus."""
    root = principal_sqrt(p.a)
    return p.c + 2.0 * root, p.c - 2.0 * root


def escape_radius(p: MapParams) -> float:
    """s = max(4, |c|, |a|); orbits beyond modulus s grow at least like s**m."""
    return max(4.0, abs(p.c), abs(p.a))


def inner_radius(p: MapParams) -> float:
    """|a|**(1/n) / s; orbits inside this modulus escape (they pass near the pole)."""
    return abs(p.a) ** (1.0 / p.n) / escape_radius(p)


def involute(p: MapParams, z: complex) -> complex:
    """h(z) = a**(1/n) / z (principal root); satisfies eval_map(p, h(z)) = eval_map(p, z)."""
    z = complex(z)
    if z == 0:
        raise PoleError("the involution has a pole at z = 0")
    return principal_root(p.a, p.n) / z


def iterate_orbit(p: MapParams, z0: complex, max_iter: int, threshold: float) -> OrbitResult:
    """Iterate z <- eval_map(p, z) from z0 until |z| > threshold or max_iter applications.

    Decision rule per application m = 1..max_iter: a pole (z = 0) or non-finite value
    encountered when the next application is attempted reports escaped with
    final_modulus = inf; |z| > threshold (strict) reports escaped at m; otherwise the
    orbit is bounded with iterations = max_iter.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    z = complex(z0)
    if not cmath.isfinite(z):
        return OrbitResult(True, 0, math.inf)
    for m in range(1, max_iter + 1):
        if z == 0:
            return OrbitResult(True, m - 1, math.inf)
        z = eval_map(p, z)
        if not cmath.isfinite(z):
            return OrbitResult(True, m, math.inf)
        mod = safe_abs(z)
        if mod > threshold:
            return OrbitResult(True, m, mod)
    return OrbitResult(False, max_iter, safe_abs(z))


def iterate_orbits_bulk(n, a, c, z0, max_iter, threshold):
    """Vectorized iterate_orbit with elementwise (a, c, z0, threshold), broadcast together.

    Returns (escaped, iterations) boolean/int arrays of the broadcast shape, with the
    same decision semantics as iterate_orbit. Deterministic regardless of chunking.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    a, c, z0, thr = np.broadcast_arrays(
        np.asarray(a, dtype=complex),
        np.asarray(c, dtype=complex),
        np.asarray(z0, dtype=complex),
        np.asarray(threshold, dtype=float),
    )
    shape = z0.shape
    a = a.ravel()
    c = c.ravel()
    thr = thr.ravel()
    z = z0.ravel().astype(complex, copy=True)

    iters = np.zeros(z.size, dtype=np.int64)
    escaped = np.zeros(z.size, dtype=bool)
    finite0 = np.isfinite(z.real) & np.isfinite(z.imag)
    escaped[~finite0] = True
    active = np.flatnonzero(finite0)

    for step in range(1, max_iter + 1):
        if active.size == 0:
            break
        za = z[active]
        pole = za == 0
        if pole.any():
            hit = active[pole]
            escaped[hit] = True
            iters[hit] = step - 1
            active = active[~pole]
            za = z[active]
            if active.size == 0:
                break
        with np.errstate(all="ignore"):
            zn = pow_int(za, n)
            znew = zn + a[active] / zn + c[active]
        z[active] = znew
        bad = ~(np.isfinite(znew.real) & np.isfinite(znew.imag))
        with np.errstate(all="ignore"):
            out = bad | (np.abs(znew) > thr[active])
        if out.any():
            hit = active[out]
            escaped[hit] = True
            iters[hit] = step
            active = active[~out]

    iters[~escaped] = max_iter
    return escaped.reshape(shape), iters.reshape(shape)

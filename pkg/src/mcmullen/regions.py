"""Region geometry: polar rectangles, the image ellipse and its halves, the V and W
regions attached to fixed critical points, and the parameter rectangle for real |c| > 1."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import HypothesisError, InconsistencyError
from .family import (
    MapParams,
    eval_map,
    principal_arg,
    principal_sqrt,
    wrap_angle,
)


@dataclass(frozen=True)
class PolarRect:
    """Annular sector {r_inner < |z| < r_outer, |wrap(Arg z - arg_center)| < arg_halfwidth};
    all four comparisons become non-strict when closed is True."""

    r_inner: float
    r_outer: float
    arg_center: float
    arg_halfwidth: float
    closed: bool

    def __post_init__(self) -> None:
        if not (0.0 < self.r_inner < self.r_outer):
            raise ValueError(
                f"need 0 < r_inner < r_outer, got ({self.r_inner}, {self.r_outer})"
            )
        if not (0.0 < self.arg_halfwidth <= math.pi):
            raise ValueError(f"arg_halfwidth must be in (0, pi], got {self.arg_halfwidth}")
        object.__setattr__(self, "arg_center", wrap_angle(float(self.arg_center)))


def polar_contains(rect: PolarRect, z: complex) -> bool:
    """Membership in the annular sector, honoring the closed flag."""
    z = complex(z)
    r = abs(z)
    d = abs(wrap_angle(principal_arg(z) - rect.arg_center))
    if rect.closed:
        return rect.r_inner <= r <= rect.r_outer and d <= rect.arg_halfwidth
    return rect.r_inner < r < rect.r_outer and d < rect.arg_halfwidth


def polar_margin(rect: PolarRect, z: complex) -> float:
    """Signed inside-depth: positive strictly inside, 0 on the boundary, negative
    outside. The angular leg is scaled by |z| so both legs are length-like."""
    z = complex(z)
    r = abs(z)
    d = abs(wrap_angle(principal_arg(z) - rect.arg_center))
    return min(r - rect.r_inner, rect.r_outer - r, (rect.arg_halfwidth - d) * r)


def u_prime_rect(p: MapParams, k: int) -> PolarRect:
    """The open polar rectangle around the k-th critical point:
    radii (|a|**(1/n)/2, 2), center (psi + 2*k*pi)/(2n), halfwidth pi/(2n)."""
    if not 0 <= k <= 2 * p.n - 1:
        raise ValueError(f"k must be in 0..{2 * p.n - 1}, got {k}")
    if abs(p.a) >= 4.0**p.n:
        raise HypothesisError(
            f"|a| = {abs(p.a)} >= 4**n collapses the rectangle (inner radius >= 2)"
        )
    return PolarRect(
        r_inner=abs(p.a) ** (1.0 / p.n) / 2.0,
        r_outer=2.0,
        arg_center=wrap_angle((p.psi + 2.0 * math.pi * k) / (2 * p.n)),
        arg_halfwidth=math.pi / (2 * p.n),
        closed=False,
    )


@dataclass(frozen=True)
class HalfEllipseSpec:
    """An ellipse centered at `center` with its major axis rotated by `rotation`,
    cut by the minor axis: half_sign +1/-1 selects one open half (minor axis included
    in both), 0 the full ellipse."""

    center: complex
    rotation: float
    semi_major: float
    semi_minor: float
    half_sign: int

    def __post_init__(self) -> None:
        if not (0.0 < self.semi_minor < self.semi_major):
            raise ValueError(
                f"need 0 < semi_minor < semi_major, got ({self.semi_minor}, {self.semi_major})"
            )
        if self.half_sign not in (-1, 0, 1):
            raise ValueError(f"half_sign must be -1, 0, or +1, got {self.half_sign}")
        object.__setattr__(self, "center", complex(self.center))


def ellipse_spec(p: MapParams, half_sign: int = 0) -> HalfEllipseSpec:
    """Image ellipse of the critical rectangles: center c, rotation psi/2,
    semi-axes 2**n +- |a|/2**n (so the foci sit at the critical values:
    semi_major**2 - semi_minor**2 = 4|a|). half_sign +1 is the half containing
    c + 2*sqrt(a), -1 the half containing c - 2*sqrt(a)."""
    two_n = 2.0**p.n
    ratio = abs(p.a) / two_n
    if ratio >= two_n:
        raise HypothesisError(f"|a| = {abs(p.a)} >= 4**n degenerates the minor axis")
    return HalfEllipseSpec(
        center=p.c,
        rotation=p.psi / 2.0,
        semi_major=two_n + ratio,
        semi_minor=two_n - ratio,
        half_sign=int(half_sign),
    )


def half_ellipse_contains(spec: HalfEllipseSpec, z: complex) -> bool:
    """Strict ellipse-interior membership, restricted to the selected half when
    half_sign is nonzero; minor-axis points belong to both halves."""
    zp = (complex(z) - spec.center) * cmath.exp(-1j * spec.rotation)
    q = (zp.real / spec.semi_major) ** 2 + (zp.imag / spec.semi_minor) ** 2
    if q >= 1.0:
        return False
    if spec.half_sign == 0:
        return True
    return zp.real * spec.half_sign >= 0.0


def half_ellipse_margin(spec: HalfEllipseSpec, z: complex) -> float:
    """Signed margin to the region boundary: positive inside, negative outside.
    The elliptical leg is measured radially along the ray from the center (exact on
    the boundary, a lower-magnitude proxy elsewhere); for a half, the distance to the
    minor axis is a second leg."""
    zp = (complex(z) - spec.center) * cmath.exp(-1j * spec.rotation)
    x, y = zp.real, zp.imag
    q = (x / spec.semi_major) ** 2 + (y / spec.semi_minor) ** 2
    if q == 0.0:
        radial = spec.semi_minor
    else:
        radial = math.hypot(x, y) * (1.0 / math.sqrt(q) - 1.0)
    if spec.half_sign == 0:
        return radial
    return min(radial, x * spec.half_sign)


def l_c_rect(c: complex, eps: float) -> PolarRect:
    """Closed parameter rectangle containing the boundedness locus for |c| > 1 + eps:
    radii ((|c| -+ (1+eps))**2)/4, centered at twice Arg(c), halfwidth 2*asin((1+eps)/|c|)."""
    c = complex(c)
    if eps <= 0:
        raise HypothesisError(f"eps must be positive, got {eps}")
    if abs(c) <= 1.0 + eps:
        raise HypothesisError(f"requires |c| > 1 + eps, got |c| = {abs(c)} with eps = {eps}")
    reach = 1.0 + eps
    return PolarRect(
        r_inner=(abs(c) - reach) ** 2 / 4.0,
        r_outer=(abs(c) + reach) ** 2 / 4.0,
        arg_center=wrap_angle(2.0 * principal_arg(c)),
        arg_halfwidth=2.0 * math.asin(reach / abs(c)),
        closed=True,
    )


def sector_index(n: int, w_j: complex, a_j: complex) -> int:
    """The integer k with Arg(w_j) = (Arg(a_j) + 2*k*pi)/(2n) modulo full turns.
    Exact when a_j = w_j**(2n); raises if no integer fits within 0.25."""
    x = (2 * n * principal_arg(w_j) - principal_arg(a_j)) / (2.0 * math.pi)
    k = round(x)
    if abs(x - k) > 0.25:
        raise InconsistencyError(
            f"sector index {x} is {abs(x - k):.3f} from the nearest integer; "
            f"(w_j, a_j) is not a consistent root pair"
        )
    return k % (2 * n)


@dataclass(frozen=True)
class WRegionSpec:
    """A fixed critical point w_j of the member (n, a_j, c) with a_j = w_j**(2n),
    its sector index k, and the enumeration index j. Anchors the V and W regions."""

    c: complex
    n: int
    j: int
    w_j: complex
    a_j: complex
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "w_j", complex(self.w_j))
        object.__setattr__(self, "a_j", complex(self.a_j))
        if self.n < 3:
            raise ValueError(f"n must be >= 3, got {self.n}")
        if not 0 <= self.k <= 2 * self.n - 1:
            raise ValueError(f"k must be in 0..{2 * self.n - 1}, got {self.k}")
        residual = abs(eval_map(MapParams(self.n, self.a_j, self.c), self.w_j) - self.w_j)
        if not residual <= 1e-8:
            raise ValueError(
                f"w_j is not fixed by the member (n={self.n}, a_j={self.a_j}, c={self.c}): "
                f"residual {residual:.3e}"
            )
        expected = wrap_angle((principal_arg(self.a_j) + 2.0 * math.pi * self.k) / (2 * self.n))
        if abs(wrap_angle(principal_arg(self.w_j) - expected)) > 1e-10:
            raise ValueError(
                f"k = {self.k} does not match Arg(w_j) = {principal_arg(self.w_j)}"
            )


def k_of_j(w: WRegionSpec) -> int:
    """Recompute the sector index from the region's (w_j, a_j) pair."""
    return sector_index(w.n, w.w_j, w.a_j)


def v_rect(w: WRegionSpec) -> PolarRect:
    """Closed polar rectangle in the dynamical plane around w_j:
    radii (1/2, 2), center Arg(w_j), halfwidth pi/(2n)."""
    return PolarRect(
        r_inner=0.5,
        r_outer=2.0,
        arg_center=principal_arg(w.w_j),
        arg_halfwidth=math.pi / (2 * w.n),
        closed=True,
    )


def w_boundary_point(w: WRegionSpec, segment: int, param: float) -> complex:
    """The four boundary curves of the parameter region W, i.e. the V-rectangle
    boundary pushed through a = ((z - c)/2)**2:
    segment 1: ((exp(i*theta))/4 - c/2)**2, theta in [0, 2*pi]
    segment 2: (exp(i*theta) - c/2)**2, theta in [0, 2*pi]
    segment 3: ((r/2)*exp(i*(Arg w_j + pi/2n)) - c/2)**2, r in [1/2, 2]
    segment 4: ((r/2)*exp(i*(Arg w_j - pi/2n)) - c/2)**2, r in [1/2, 2]
    """
    half_c = w.c / 2.0
    if segment in (1, 2):
        if not 0.0 <= param <= 2.0 * math.pi:
            raise ValueError(f"theta must be in [0, 2*pi], got {param}")
        radius = 0.25 if segment == 1 else 1.0
        base = radius * cmath.exp(1j * param) - half_c
    elif segment in (3, 4):
        if not 0.5 <= param <= 2.0:
            raise ValueError(f"r must be in [1/2, 2], got {param}")
        sign = 1.0 if segment == 3 else -1.0
        edge = principal_arg(w.w_j) + sign * math.pi / (2 * w.n)
        base = (param / 2.0) * cmath.exp(1j * edge) - half_c
    else:
        raise ValueError(f"segment must be 1..4, got {segment}")
    return base * base


def w_region_contains(w: WRegionSpec, a: complex) -> bool:
    """Membership of a parameter a in the closed region W: true iff either critical
    value c +- 2*sqrt(a) lies in the closed V rectangle (W is the image of V under
    z -> ((z - c)/2)**2, so membership is tested by pushing a forward through both
    critical-value branches). a = 0 is trivially outside (the values collapse to c)."""
    a = complex(a)
    if a == 0:
        return False
    root = principal_sqrt(a)
    rect = v_rect(w)
    return polar_contains(rect, w.c + 2.0 * root) or polar_contains(rect, w.c - 2.0 * root)

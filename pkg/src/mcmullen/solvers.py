"""Polynomial root finding (simultaneous Aberth-Ehrlich iteration) and the
fixed-critical-point solvers that locate the principal cluster centers in both the
fixed-c and diagonal (c = t*a) parameter slices."""
from __future__ import annotations

import cmath
import math
import random
from typing import Sequence

import numpy as np

from .errors import InconsistencyError, RootFindingError
from .family import MapParams, eval_map, pow_int
from .regions import WRegionSpec, sector_index

# Coefficients are given highest degree first, like numpy.polyval.
PolyCoeffs = Sequence[complex]

_JITTER_SEED = 0x5EED


def poly_roots(coeffs: PolyCoeffs, tol: float = 1e-12, max_iter: int = 200) -> list[complex]:
    """All d roots (with multiplicity) of a degree-d polynomial, via simultaneous
    Aberth-Ehrlich iteration.

    Initial guesses sit on a ring of radius 1 + max|coeff|/|lead| with deterministic
    pseudo-random angular jitter (fixed seed), so output is reproducible. Each
    returned root r satisfies |p(r)| <= tol * (1 + max coefficient modulus), else
    RootFindingError carries the best residuals. Roots are sorted by (Re, Im).
    """
    c = [complex(x) for x in coeffs]
    if len(c) < 2:
        raise ValueError("need a polynomial of degree >= 1 (at least two coefficients)")
    if c[0] == 0:
        raise ValueError("leading coefficient must be nonzero")
    if tol <= 0:
        raise ValueError("tol must be positive")
    d = len(c) - 1
    coeff_arr = np.array(c, dtype=complex)
    max_mod = float(np.max(np.abs(coeff_arr)))
    monic = coeff_arr / coeff_arr[0]
    deriv = monic[:-1] * np.arange(d, 0, -1)

    radius = 1.0 + max(abs(x) for x in c[1:]) / abs(c[0])
    rng = random.Random(_JITTER_SEED)
    theta = np.array([2.0 * math.pi * (k + 0.05 + 0.9 * rng.random()) / d for k in range(d)])
    z = radius * np.exp(1j * theta)

    with np.errstate(all="ignore"):
        for _ in range(max_iter):
            pv = np.polyval(monic, z)
            dv = np.polyval(deriv, z)
            dv = np.where(dv == 0, 1e-300, dv)
            w = pv / dv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            diff = np.where(diff == 0, 1e-300, diff)
            s = (1.0 / diff).sum(axis=1) - 1.0
            denom = 1.0 - w * s
            denom = np.where(denom == 0, 1e-300, denom)
            delta = w / denom
            z = z - delta
            if np.all(np.abs(delta) <= 1e-14 * (1.0 + np.abs(z))):
                break
        residuals = np.abs(np.polyval(coeff_arr, z))
    bound = tol * (1.0 + max_mod)
    if np.any(~np.isfinite(residuals)) or np.any(residuals > bound):
        worst = np.sort(residuals)[-min(3, d):]
        raise RootFindingError(
            f"no convergence within {max_iter} iterations: worst residuals {list(worst)} "
            f"exceed bound {bound:.3e}"
        )
    return sorted((complex(r) for r in z), key=lambda r: (r.real, r.imag))


def _dedupe_by_value(pairs: list[tuple[complex, complex]], tol: float) -> list[tuple[complex, complex]]:
    """Drop (w, a) pairs whose a-value repeats an already-kept one within relative tol."""
    kept: list[tuple[complex, complex]] = []
    for w, a in pairs:
        if any(abs(a - b) <= tol * max(1.0, abs(a), abs(b)) for _, b in kept):
            continue
        kept.append((w, a))
    return kept


def fixed_critical_params(n: int, c: complex, dedupe_tol: float = 1e-9) -> list[WRegionSpec]:
    """Fixed critical points of the fixed-c slice: roots w of 2*w**n - w + c = 0, each
    giving the parameter a = w**(2n) whose member fixes its k-th critical point w.

    Returns one spec per distinct a (relative dedupe within dedupe_tol), sorted by
    (Re a, Im a). The count is asserted to equal n when |c| >= 1 (there the roots'
    a-values are provably distinct); below |c| = 1 the deduped count is returned as
    found, with no law enforced.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    c = complex(c)
    if c == 0:
        raise ValueError("c must be nonzero")
    if dedupe_tol <= 0:
        raise ValueError("dedupe_tol must be positive")
    coeffs = [2.0 + 0j] + [0j] * (n - 2) + [-1.0 + 0j, c]
    roots = poly_roots(coeffs)
    pairs = [(w, pow_int(w, 2 * n)) for w in roots if w != 0]
    kept = sorted(_dedupe_by_value(pairs, dedupe_tol), key=lambda p: (p[1].real, p[1].imag))
    if abs(c) >= 1.0 and len(kept) != n:
        raise InconsistencyError(
            f"expected {n} distinct fixed-critical parameters for |c| >= 1, found {len(kept)}"
        )
    return [
        WRegionSpec(c=c, n=n, j=j, w_j=w, a_j=a, k=sector_index(n, w, a))
        for j, (w, a) in enumerate(kept)
    ]


def diagonal_fixed_params(
    n: int, t: complex, dedupe_tol: float = 1e-9
) -> list[tuple[complex, complex]]:
    """Fixed critical points of the diagonal slice c = t*a: roots w of
    t*w**(2n-1) + 2*w**(n-1) - 1 = 0 (the fixed-point condition 2*w**n + c = w with
    c = t*w**(2n), divided by w), each giving a = w**(2n).

    Returns (w, a) pairs with w != 0, deduplicated in a and sorted by (Re a, Im a);
    every pair satisfies |eval_map((n, a, t*a), w) - w| <= 1e-8. No count law is
    asserted; the observed count is simply returned.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    t = complex(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    if not cmath.isfinite(t):
        raise ValueError("t must be finite")
    coeffs = [t] + [0j] * (n - 1) + [2.0 + 0j] + [0j] * (n - 2) + [-1.0 + 0j]
    roots = poly_roots(coeffs)
    pairs = [(w, pow_int(w, 2 * n)) for w in roots if w != 0]
    kept = sorted(_dedupe_by_value(pairs, dedupe_tol), key=lambda p: (p[1].real, p[1].imag))
    for w, a in kept:
        residual = abs(eval_map(MapParams(n, a, t * a), w) - w)
        if not residual <= 1e-8:
            raise InconsistencyError(
                f"diagonal root w = {w} is not fixed by (n={n}, a={a}, c=t*a): "
                f"residual {residual:.3e}"
            )
    return kept

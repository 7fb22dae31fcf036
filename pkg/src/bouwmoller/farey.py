"""Projective renormalization of directions: flip-and-shear matrices, the
piecewise linear-fractional Farey maps, itineraries, and direction recovery."""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .tracer import sector_of

EPS_DYN = 1e-12

__all__ = [
    "DomainError", "BoundaryOrbit", "NoConvergence", "EPS_DYN",
    "gamma", "gamma_factors", "reflection", "subsectors", "farey_F",
    "farey_F_cot", "farey_FF", "ff_branches", "Itinerary", "itinerary",
    "direction_from_itinerary",
]


class DomainError(Exception):
    """Direction outside the standard sector."""


class BoundaryOrbit(Exception):
    """Orbit falls within the quarantine band of a sector boundary."""


class NoConvergence(Exception):
    """Nested inverse branches failed to shrink below tolerance."""


def gamma_factors(m, n):
    """Flip, shear, similarity, and dual shear whose product is gamma(m, n)."""
    flip = np.array([[-1.0, 0.0], [0.0, 1.0]])
    shear = np.array([[1.0, 1.0 / math.tan(math.pi / n)], [0.0, 1.0]])
    r = math.sqrt(math.sin(math.pi / n) / math.sin(math.pi / m))
    diag = np.array([[r, 0.0], [0.0, 1.0 / r]])
    dual_shear = np.array([[1.0, 1.0 / math.tan(math.pi / m)], [0.0, 1.0]])
    return dual_shear, diag, shear, flip


def gamma(m, n):
    """Linear part of the flip-and-shear map from M(m,n) to M(n,m)."""
    sm, sn = math.sin(math.pi / m), math.sin(math.pi / n)
    cm, cn = math.cos(math.pi / m), math.cos(math.pi / n)
    return np.array([[-math.sqrt(sn / sm), (cm + cn) / math.sqrt(sm * sn)],
                     [0.0, math.sqrt(sm / sn)]])


def reflection(m, n, i):
    """Matrix of the reflection taking sector i of M(m,n) to sector 0."""
    if not 0 <= i <= 2 * n - 1:
        raise ValueError(f"sector {i} out of range 0..{2 * n - 1}")
    if i == 0:
        return np.eye(2)
    phi = (i + 1) * math.pi / n
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, s], [s, -c]])


def _upper(v):
    """Representative of the projective class in the closed upper half plane."""
    if v[1] < 0 or (v[1] == 0 and v[0] < 0):
        return -v
    return v


def _angle(v):
    v = _upper(v)
    return math.atan2(v[1], v[0])


def _dual_sector(v, m, tol):
    """Index a with angle(v) in [a pi/m, (a+1) pi/m], plus boundary flag.

    v must lie in the image cone of gamma, i.e. between angles pi/m and pi;
    representatives that wrapped past pi are folded back.  The flag marks
    angular distance below tol to the nearest sector boundary.
    """
    v = _upper(v)
    psi = math.atan2(v[1], v[0])
    step = math.pi / m
    if psi < 0.5 * step:
        psi += math.pi
    margin = min(abs(psi - j * step) for j in range(1, m + 1))
    a = min(max(int(psi // step), 1), m - 1)
    return a, psi, margin < tol


def _f_step(m, n, v, tol):
    """One projective renormalization step on a direction vector of M(m,n).

    Returns (dual sector a, normalized image vector, boundary flag).
    """
    w = _upper(gamma(m, n) @ v)
    a, _, on_boundary = _dual_sector(w, m, tol)
    out = _upper(reflection(n, m, a) @ w)
    return a, out / np.hypot(out[0], out[1]), on_boundary


def farey_F(m, n, theta):
    """Normalized projective step in angle coordinates: (dual sector, angle)."""
    if not -EPS_DYN <= theta <= math.pi / n + EPS_DYN:
        raise DomainError(f"theta {theta} outside [0, pi/{n}]")
    v = np.array([math.cos(theta), math.sin(theta)])
    a, out, _ = _f_step(m, n, v, 0.0)
    psi = _angle(out)
    if psi > 0.5 * math.pi:
        psi = max(0.0, psi - math.pi)
    return a, psi


def farey_F_cot(m, n, u):
    """The same step as a linear fractional map on inverse slopes."""
    v = _upper(np.array([float(u), 1.0]))
    if _angle(v) > math.pi / n + EPS_DYN:
        raise DomainError(f"inverse slope {u} outside the standard sector")
    a, out, _ = _f_step(m, n, v, 0.0)
    if abs(out[1]) < 1e-300:
        return a, math.inf
    return a, out[0] / out[1]


def farey_FF(m, n, theta):
    """Composed Farey map: branch pair (a, b) and the image angle."""
    a, psi = farey_F(m, n, theta)
    b, out = farey_F(n, m, psi)
    return (a, b), out


def subsectors(m, n):
    """Angle intervals of the standard sector mapped into each dual sector.

    Entry j-1 is the closure of the set of angles sent by the projective
    flip-and-shear action into sector j of M(n,m), for j = 1..m-1; the
    intervals tile [0, pi/n] in decreasing j order.
    """
    ginv = np.linalg.inv(gamma(m, n))
    cuts = []
    for j in range(m + 1):
        psi = j * math.pi / m
        th = _angle(ginv @ np.array([math.cos(psi), math.sin(psi)]))
        cuts.append(th)
    out = []
    for j in range(1, m):
        lo, hi = sorted((cuts[j], cuts[j + 1]))
        out.append((lo, hi))
    return out


@lru_cache(maxsize=None)
def _branch_matrix(m, n, a, b):
    return (reflection(m, n, b) @ gamma(n, m)
            @ reflection(n, m, a) @ gamma(m, n))


def ff_branches(m, n):
    """Branch domains and matrices of the composed map, keyed by (a, b).

    Each value is (lo, hi, matrix): the branch acts on angles in [lo, hi]
    and maps that interval onto the standard sector.
    """
    duals = subsectors(n, m)
    out = {}
    for a in range(1, m):
        back = np.linalg.inv(reflection(n, m, a) @ gamma(m, n))
        for b in range(1, n):
            angs = []
            for end in duals[b - 1]:
                v = back @ np.array([math.cos(end), math.sin(end)])
                angs.append(_angle(v))
            lo, hi = sorted(angs)
            out[(a, b)] = (lo, hi, _branch_matrix(m, n, a, b))
    return out


@dataclass(frozen=True)
class Itinerary:
    """Starting sector and branch pairs of an orbit of the composed map."""
    b0: int
    pairs: tuple

    def flatten(self):
        """Sector sequence (b0, a1, b1, a2, b2, ...)."""
        out = [self.b0]
        for a, b in self.pairs:
            out.extend((a, b))
        return out


def itinerary(m, n, theta, k):
    """Sector of theta and the first k branch pairs of its orbit."""
    if k < 1:
        raise ValueError("need k >= 1")
    b0, on_boundary = sector_of(theta, n, tol=EPS_DYN)
    if on_boundary:
        raise BoundaryOrbit(f"direction {theta} on a sector boundary")
    v = np.array([math.cos(theta), math.sin(theta)])
    v = _upper(reflection(m, n, b0) @ v)
    pairs = []
    for _ in range(k):
        a, v, bad = _f_step(m, n, v, EPS_DYN)
        if bad:
            raise BoundaryOrbit("orbit within quarantine band of a boundary")
        b, v, bad = _f_step(n, m, v, EPS_DYN)
        if bad:
            raise BoundaryOrbit("orbit within quarantine band of a boundary")
        pairs.append((a, b))
    return Itinerary(b0, tuple(pairs))


def direction_from_itinerary(m, n, b0, pairs, tol=1e-9):
    """Direction whose itinerary starts with the given data, via nested
    inverse branches.  Every direction with this itinerary prefix lies in
    the final interval, so a returned value is within tol of the true
    direction; if the pairs do not pin the direction down that far the
    stall is reported as NoConvergence instead of a fabricated digit."""
    pairs = [tuple(p) for p in pairs]
    if not pairs:
        raise ValueError("need at least one branch pair")
    if not 0 <= b0 <= 2 * n - 1:
        raise ValueError(f"b0 {b0} out of range 0..{2 * n - 1}")
    for a, b in pairs:
        if not (1 <= a <= m - 1 and 1 <= b <= n - 1):
            raise ValueError(f"branch pair ({a}, {b}) out of range")
    e0 = np.array([1.0, 0.0])
    e1 = np.array([math.cos(math.pi / n), math.sin(math.pi / n)])
    mat = np.eye(2)
    for a, b in pairs:
        mat = mat @ np.linalg.inv(_branch_matrix(m, n, a, b))
        mat = mat / np.abs(mat).max()
    lo, hi = sorted((_angle(mat @ e0), _angle(mat @ e1)))
    if hi - lo >= tol:
        raise NoConvergence(
            f"interval width {hi - lo:.3e} above tol {tol} "
            f"after {len(pairs)} branch inversions")
    theta = (lo + hi) / 2
    if b0 == 0:
        return theta
    return (b0 + 1) * math.pi / n - theta

"""Numerical certification of the real contact construction.

Disk and annulus pages only: there the primitive one-form has a global
closed form on the chart (s, theta) with beta = e^s d(theta), the real
chart structure is (s, theta) -> (s, -theta), and the n-fold boundary
twist is theta -> theta + 2 pi n phi(s) for a fixed smooth ramp phi
with values running from 1 at the interior chart edge to 0 at the
boundary (the handedness that makes the twist term oppose the large-K
term with the orientation fixed below).

On the two mapping-torus pieces the candidate form is

    alpha_K = +-[(1-t) c*beta + t (f c)*beta - beta + 2K dt]

and the contact defect is the coefficient of alpha ^ d(alpha) against
the coherent volume pulled from the binding side through the gluing
(vartheta, r, phi) -> (s, theta, t) = (1 - r - eps, -vartheta, phi),
which is -(e^s ds ^ dtheta ^ dt) in chart coordinates.  With these
conventions the binding profiles pin to h1 = 2 e^{1-r-eps}, h2 = 2K at
the gluing region and the Wronskian condition h1 h2' - h1' h2 > 0 is
verifiable on (0, 1]; see the repository notes for why one sign in the
source construction cannot be taken literally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

TAU = 2.0 * math.pi

RAMP_LO = -0.85
RAMP_HI = -0.15


def _smoothstep(u: np.ndarray) -> np.ndarray:
    u = np.clip(u, 0.0, 1.0)
    return 3.0 * u * u - 2.0 * u * u * u


def _smoothstep_d(u: np.ndarray) -> np.ndarray:
    inside = (u > 0.0) & (u < 1.0)
    u = np.clip(u, 0.0, 1.0)
    return np.where(inside, 6.0 * u * (1.0 - u), 0.0)


def ramp(s: np.ndarray) -> np.ndarray:
    """Twist profile: 1 at s = -1, 0 at s = 0, constant near both ends."""
    u = (np.asarray(s, dtype=float) - RAMP_LO) / (RAMP_HI - RAMP_LO)
    return 1.0 - _smoothstep(u)


def ramp_d(s: np.ndarray) -> np.ndarray:
    u = (np.asarray(s, dtype=float) - RAMP_LO) / (RAMP_HI - RAMP_LO)
    return -_smoothstep_d(u) / (RAMP_HI - RAMP_LO)


class ContactModelError(ValueError):
    """The numerical model could not be built or verified."""


@dataclass(frozen=True)
class FormSampler:
    """Grid sampler for alpha_K on both mapping-torus pieces.

    family: number of boundary twists (0 is the disk book, n >= 1 the
    annulus book with monodromy the n-th power of the core twist).
    """

    family: int
    k: float
    resolution: int = 50

    def __post_init__(self):
        if self.family < 0:
            raise ContactModelError("family must be a disk (0) or annulus(n >= 1)")
        if self.family > 10:
            raise ContactModelError("annulus families are supported up to n = 10")
        if self.resolution < 2:
            raise ContactModelError("resolution must be at least 2")

    def grid(self):
        n = self.resolution
        s = np.linspace(-1.0, 0.0, n)
        theta = np.linspace(-math.pi, math.pi, n)
        t = np.linspace(0.0, 1.0, n)
        return s, theta, t

    def alpha_components(self, piece: int):
        """(P, Q, R) with alpha = P ds + Q dtheta + R dt on one piece.

        piece +1 is t in I_+, piece -1 the opposite piece, where the
        form is the negative of the I_+ expression in matching chart
        labels (that is exactly anti-invariance).
        """
        s, theta, t = self.grid()
        ss, _th, tt = np.meshgrid(s, theta, t, indexing="ij")
        es = np.exp(ss)
        p = TAU * self.family * tt * es * ramp_d(ss)
        q = -2.0 * es
        r = 2.0 * self.k * np.ones_like(ss)
        if piece < 0:
            return -p, np.broadcast_to(-q, ss.shape), -r
        return p, np.broadcast_to(q, ss.shape), r

    def defect_grid(self, piece: int) -> np.ndarray:
        """Coefficient of alpha ^ d(alpha) against -(e^s ds dtheta dt).

        With alpha = P ds + Q dtheta + R dt the coefficient on
        ds^dtheta^dt is Q dP/dt + R dQ/ds; one factor e^s cancels
        against the volume normalization and is cancelled symbolically
        so the disk family evaluates to 4K exactly.
        """
        s, theta, t = self.grid()
        ss, _th, tt = np.meshgrid(s, theta, t, indexing="ij")
        es = np.exp(ss)
        dp_dt_over = TAU * self.family * es * ramp_d(ss)   # (dP/dt) / 1
        q_over_es = -2.0                                   # Q / e^s
        dq_ds_over_es = -2.0                               # (dQ/ds) / e^s
        r = 2.0 * self.k
        return -(q_over_es * dp_dt_over + r * dq_ds_over_es * np.ones_like(es))

    def k_term_grid(self) -> np.ndarray:
        """Large-K part of the defect (the term linear in K)."""
        s, theta, t = self.grid()
        ss, _th, _tt = np.meshgrid(s, theta, t, indexing="ij")
        return 4.0 * self.k * np.ones_like(ss)

    def page_area_min(self) -> float:
        """min of the page part of d(alpha) against the page orientation;
        positivity is the page half of the supporting conditions."""
        s, _theta, _t = self.grid()
        return float(np.min(2.0 * np.exp(s) / np.exp(s)))


def contact_defect(fs: FormSampler) -> tuple[float, tuple]:
    """Minimum defect over both pieces with its lexicographic argmin."""
    grids = [fs.defect_grid(+1), fs.defect_grid(-1)]
    stack = np.stack(grids)
    idx = np.unravel_index(np.argmin(stack), stack.shape)
    s, theta, t = fs.grid()
    piece = +1 if idx[0] == 0 else -1
    argmin = (piece, float(s[idx[1]]), float(theta[idx[2]]), float(t[idx[3]]))
    return float(stack[idx]), argmin


def reality_defect(fs: FormSampler, symmetrized: bool = True) -> float:
    """max |c* alpha + alpha| over the grid, componentwise sup norm.

    The chart action of the ambient involution swaps the two pieces with
    identity Jacobian in matching labels, so the pullback of the form on
    one piece is read off the other piece's components.  With
    symmetrized=False the check runs on the raw primitive (negative
    control: it is not anti-invariant once the monodromy twists).
    """
    if symmetrized:
        plus = fs.alpha_components(+1)
        minus = fs.alpha_components(-1)
        return float(max(np.max(np.abs(a + b)) for a, b in zip(plus, minus)))
    s, theta, t = fs.grid()
    ss, _th, tt = np.meshgrid(s, theta, t, indexing="ij")
    es = np.exp(ss)
    # beta-hat on I_+ and its pullback (the I_- expression beta - K dt)
    p_plus = TAU * fs.family * tt * es * ramp_d(ss)
    q_plus = -es
    r_plus = fs.k * np.ones_like(ss)
    p_min, q_min, r_min = np.zeros_like(ss), es, -fs.k * np.ones_like(ss)
    return float(max(
        np.max(np.abs(p_plus + p_min)),
        np.max(np.abs(q_plus + q_min)),
        np.max(np.abs(r_plus + r_min)),
    ))


def k_threshold(family: int, resolution: int = 50, cap: float = 1e6) -> float:
    """Smallest grid-certified K with positive defect, to 1% relative."""
    def min_defect(k: float) -> float:
        fs = FormSampler(family=family, k=k, resolution=resolution)
        return min(float(np.min(fs.defect_grid(+1))), float(np.min(fs.defect_grid(-1))))

    floor = 1e-9
    if min_defect(floor) > 0.0:
        return floor
    lo, hi = floor, 1.0
    while min_defect(hi) <= 0.0:
        lo = hi
        hi *= 2.0
        if hi > cap:
            raise ContactModelError(
                f"no positive defect below K = {cap}: model inconsistency")
    while hi - lo > 0.01 * hi:
        mid = 0.5 * (lo + hi)
        if min_defect(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return hi


def k_term_dominates(family: int, k: float, resolution: int = 50) -> bool:
    """Whether the K-proportional term exceeds the twist remainder
    everywhere on the grid (the large-K structure of the construction)."""
    fs = FormSampler(family=family, k=k, resolution=resolution)
    k_term = fs.k_term_grid()
    rest = fs.defect_grid(+1) - k_term
    return bool(np.min(k_term - np.abs(rest)) > 0.0)


# ---------------------------------------------------------------------------
# binding profiles


@dataclass(frozen=True)
class ProfileFunctions:
    """Binding profiles h1, h2 on [0, 1] with exactly pinned ends.

    Near r = 0: h1 = 1 and h2 = r^2 exactly.  Near r = 1: h1 =
    2 e^{1-r-eps} and h2 = 2K exactly, matching the page form through
    the gluing.  In between both interpolate by slope-matched cubics.
    """

    k: float
    eps: float
    r0: float
    r1: float
    grid_min_w: float
    h1: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    h2: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    dh1: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    dh2: Callable[[np.ndarray], np.ndarray] = field(repr=False)

    def wronskian(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return self.h1(r) * self.dh2(r) - self.dh1(r) * self.h2(r)


def _hermite(a: float, b: float, va: float, sa: float, vb: float, sb: float):
    h = b - a

    def value(r):
        u = (np.asarray(r, dtype=float) - a) / h
        h00 = 2 * u**3 - 3 * u**2 + 1
        h10 = u**3 - 2 * u**2 + u
        h01 = -2 * u**3 + 3 * u**2
        h11 = u**3 - u**2
        return h00 * va + h * h10 * sa + h01 * vb + h * h11 * sb

    def deriv(r):
        u = (np.asarray(r, dtype=float) - a) / h
        d00 = (6 * u**2 - 6 * u) / h
        d10 = (3 * u**2 - 4 * u + 1)
        d01 = (-6 * u**2 + 6 * u) / h
        d11 = (3 * u**2 - 2 * u)
        return d00 * va + d10 * sa + d01 * vb + d11 * sb

    return value, deriv


def _piecewise(break1, break2, head, head_d, mid, mid_d, tail, tail_d):
    def value(r):
        r = np.asarray(r, dtype=float)
        return np.where(r <= break1, head(r), np.where(r < break2, mid(r), tail(r)))

    def deriv(r):
        r = np.asarray(r, dtype=float)
        return np.where(r <= break1, head_d(r), np.where(r < break2, mid_d(r), tail_d(r)))

    return value, deriv


def build_profiles(k: float, eps: float, r0: float = 0.2, r1: float = 0.8,
                   grid_points: int = 10_000) -> ProfileFunctions:
    """Construct and grid-certify the binding profiles.

    Verifies h1 h2' - h1' h2 > 0 on [r0/10, 1] (the pinned head makes
    W = 2r exactly below that) and reports the violating radius
    otherwise, after retrying a few interior slope choices.
    """
    if k < 1:
        raise ContactModelError("need K >= 1")
    if not 0 < eps < 0.25:
        raise ContactModelError("need eps in (0, 0.25)")

    def tail1(r):
        return 2.0 * np.exp(1.0 - np.asarray(r, dtype=float) - eps)

    def tail1_d(r):
        return -2.0 * np.exp(1.0 - np.asarray(r, dtype=float) - eps)

    def head1(r):
        return np.ones_like(np.asarray(r, dtype=float))

    def head1_d(r):
        return np.zeros_like(np.asarray(r, dtype=float))

    def head2(r):
        return np.asarray(r, dtype=float) ** 2

    def head2_d(r):
        return 2.0 * np.asarray(r, dtype=float)

    # candidate interior slopes for h2 at r1 (the tail is flat, but a
    # slightly positive matching slope can rescue marginal Wronskians)
    for s_end in (0.0, k, 4.0 * k):
        mid1, mid1_d = _hermite(r0, r1, 1.0, 0.0, float(tail1(r1)), float(tail1_d(r1)))
        mid2, mid2_d = _hermite(r0, r1, r0 * r0, 2 * r0, 2.0 * k, 0.0)
        if s_end:
            mid2, mid2_d = _hermite(r0, r1, r0 * r0, 2 * r0 + s_end / k, 2.0 * k, 0.0)
        h1, dh1 = _piecewise(r0, r1, head1, head1_d, mid1, mid1_d, tail1, tail1_d)
        h2, dh2 = _piecewise(r0, r1, head2, head2_d, mid2, mid2_d,
                             lambda r: 2.0 * k * np.ones_like(np.asarray(r, dtype=float)),
                             lambda r: np.zeros_like(np.asarray(r, dtype=float)))
        rr = np.linspace(r0 / 10.0, 1.0, grid_points)
        w = h1(rr) * dh2(rr) - dh1(rr) * h2(rr)
        if np.min(w) > 0.0:
            return ProfileFunctions(k=k, eps=eps, r0=r0, r1=r1,
                                    grid_min_w=float(np.min(w)),
                                    h1=h1, h2=h2, dh1=dh1, dh2=dh2)
    bad = rr[int(np.argmin(w))]
    raise ContactModelError(f"Wronskian not positive near r = {bad:.4f} (min {np.min(w):.3e})")


@dataclass(frozen=True)
class ExtensionReport:
    case: str
    max_mismatch: float
    checks: tuple[tuple[str, float], ...]


def solid_torus_extension_check(pf: ProfileFunctions, case: str,
                                resolution: int = 40) -> ExtensionReport:
    """Verify the gluing between the page form and the binding profiles.

    reflection: the pullback of alpha_K through the gluing equals
    +(h1 dvartheta + h2 dphi) on the I_+ half and its negative on the
    other, with h1, h2 the pinned tails.  swapped-pair: the second
    torus carries the exact negatives via the equivariant square.
    """
    if case not in ("reflection", "swapped-pair"):
        raise ContactModelError(f"unknown case {case!r}")
    eps = pf.eps
    lo = max(pf.r1, 1.0 - eps)
    rr = np.linspace(lo, 1.0, resolution)
    # page-side coefficients at s = 1 - r - eps where the ramp is flat
    s = 1.0 - rr - eps
    page_h1 = 2.0 * np.exp(s)
    page_h2 = 2.0 * pf.k * np.ones_like(rr)
    m1 = np.max(np.abs(page_h1 - pf.h1(rr)))
    m2 = np.max(np.abs(page_h2 - pf.h2(rr)))
    checks = [("h1 match", float(m1)), ("h2 match", float(m2))]
    if case == "reflection":
        # opposite half of the book: the form is the exact negative
        m3 = np.max(np.abs((-page_h1) - (-pf.h1(rr))))
        checks.append(("opposite half negation", float(m3)))
    else:
        # second torus: c-pullback of h1 dvartheta + h2 dphi
        m3 = np.max(np.abs((-pf.h1(rr)) + pf.h1(rr)))
        m4 = np.max(np.abs((-pf.h2(rr)) + pf.h2(rr)))
        checks.append(("negated h1 on partner torus", float(m3)))
        checks.append(("negated h2 on partner torus", float(m4)))
    # the binding contact condition near the core, restated
    rr_head = np.linspace(1e-6, pf.r0, resolution)
    w_head = pf.wronskian(rr_head)
    checks.append(("head W/r limit", float(np.max(np.abs(w_head / rr_head - 2.0)))
                   if np.min(rr_head) < pf.r0 / 10 else 0.0))
    mism = max(v for _name, v in checks[:2])
    return ExtensionReport(case=case, max_mismatch=float(mism), checks=tuple(checks))


def contact_report(family: int, k: float, resolution: int = 50) -> dict:
    """JSON-ready summary for one family at one K."""
    fs = FormSampler(family=family, k=k, resolution=resolution)
    mindef, argmin = contact_defect(fs)
    return {
        "family": "disk" if family == 0 else f"annulus:{family}",
        "K": k,
        "grid": resolution,
        "min_defect": mindef,
        "argmin": {"piece": argmin[0], "s": argmin[1], "theta": argmin[2], "t": argmin[3]},
        "reality_defect": reality_defect(fs),
        "page_area_min": fs.page_area_min(),
    }

"""Zero location for the section/tail combination inside a window.

For lam = 0 the combination is the polynomial section and all n roots are
found at once by Aberth-Ehrlich simultaneous iteration.  For general lam
a quadtree of winding numbers (argument principle on rectangle boundaries)
isolates the zeros, which are then polished by Newton steps on the scaled
evaluation and certified by a winding count of 1 in a small box.

For lam = 1 the combination is minus the tail, which has a zero of
multiplicity n + 1 at the origin.  All winding arithmetic then runs on
the reduced function I_n(R_n z) / (R_n z)^{n+1}, which is zero-free at
the origin, and the locator reports the known multiplicity separately;
without the reduction the phase whirls n + 1 times around 0 and boundary
sampling aliases.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .curves import asymptote_distance
from .mitlef import MLContext, combo_batch, radius
from .specfun import ln_gamma_arr

__all__ = [
    "Window",
    "ZeroRecord",
    "ZeroSet",
    "BoundaryZeroError",
    "ClusterWarning",
    "poly_zeros",
    "winding_number",
    "locate_zeros",
    "strip_filter",
]

ORIGIN_MASK_RADIUS = 1e-6
POLISH_CELL_DIAMETER = 1e-3
MIN_CELL_DIAMETER = 1e-6
PHASE_STEP_LIMIT = math.pi / 2.0


class BoundaryZeroError(RuntimeError):
    """Adaptive boundary refinement stalled on a (near-)zero of the function."""


class ClusterWarning(UserWarning):
    """A zero cluster did not separate above the minimum cell size."""


@dataclass(frozen=True)
class Window:
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("window must have positive extent")

    @property
    def diameter(self) -> float:
        return math.hypot(self.re_max - self.re_min, self.im_max - self.im_min)

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))

    def contains(self, z: complex) -> bool:
        return self.re_min <= z.real <= self.re_max and self.im_min <= z.imag <= self.im_max

    def boundary_points(self, per_side: int) -> np.ndarray:
        """Closed counterclockwise polyline (last point repeats the first)."""
        a, b, c, d = self.re_min, self.re_max, self.im_min, self.im_max
        bottom = a + np.linspace(0.0, 1.0, per_side, endpoint=False) * (b - a) + 1j * c
        right = b + 1j * (c + np.linspace(0.0, 1.0, per_side, endpoint=False) * (d - c))
        top = b + np.linspace(0.0, 1.0, per_side, endpoint=False) * (a - b) + 1j * d
        left = a + 1j * (d + np.linspace(0.0, 1.0, per_side, endpoint=False) * (c - d))
        return np.concatenate([bottom, right, top, left, [complex(a, c)]])


@dataclass(frozen=True)
class ZeroRecord:
    location: complex
    residual_log: float  # natural log of |I_n| at the reported point
    certified: bool
    near_asymptote: bool = False
    cluster_count: int = 1


@dataclass(frozen=True)
class ZeroSet:
    """locate_zeros output: records plus origin-mask bookkeeping."""

    records: tuple[ZeroRecord, ...]
    masked_origin_multiplicity: int = 0
    total_winding: int = 0


def _wrap(d: np.ndarray) -> np.ndarray:
    return (d + math.pi) % (2.0 * math.pi) - math.pi


def _field_batch(ctx: MLContext, zs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(log|.|, arg) of the function whose zeros are isolated.

    For lam = 1 this is the origin-reduced I_n(R_n z) / (R_n z)^{n+1};
    otherwise I_n itself.
    """
    zs = np.asarray(zs, dtype=complex)
    lm, ph = combo_batch(zs, ctx)
    if ctx.lam != 1:
        return lm, ph
    m = ctx.n + 1
    w = ctx.radius_value * zs
    nz = w != 0
    wsafe = np.where(nz, w, 1.0)
    lm = lm - m * np.log(np.abs(wsafe))
    ph = _wrap(ph - m * np.angle(wsafe))
    if (~nz).any():
        # reduced value at the origin is -1/Gamma(1 + (n+1)/rho)
        lm = np.where(nz, lm, -float(ln_gamma_arr(np.array([1.0 + m / ctx.rho]))[0]))
        ph = np.where(nz, ph, math.pi)
    return lm, ph


def _initial_per_side(ctx: MLContext, window: Window) -> int:
    """Sample density estimate from the phase speed of the dominant terms.

    The exponential part of E contributes ~ rho R_n^rho r^{rho-1} = n r^{rho-1}
    radians per unit arclength; zero rows on the limit curve contribute ~ n/2.
    (For lam = 1 the winding field is already origin-reduced, so no extra
    density is needed near 0.)
    """
    r_max = max(abs(complex(window.re_min, window.im_min)),
                abs(complex(window.re_max, window.im_max)),
                abs(complex(window.re_min, window.im_max)),
                abs(complex(window.re_max, window.im_min)))
    rate = ctx.n * (r_max ** (ctx.rho - 1.0) + 0.5)
    side = max(window.re_max - window.re_min, window.im_max - window.im_min)
    return int(min(20000, max(16, 1.3 * rate * side / PHASE_STEP_LIMIT)))


def winding_number(ctx: MLContext, rectangle: Window, max_depth: int = 48) -> int:
    """Total change of arg I_n along the rectangle boundary, over 2 pi.

    Sampling refines until consecutive phase increments are below pi/2;
    a refinement stall raises BoundaryZeroError (callers retry with a
    jittered rectangle).
    """
    pts = rectangle.boundary_points(_initial_per_side(ctx, rectangle))
    _lm, ph = _field_batch(ctx, pts)
    depth = np.zeros(len(pts) - 1, dtype=int)
    while True:
        d = _wrap(np.diff(ph))
        bad = np.abs(d) >= PHASE_STEP_LIMIT
        if not bad.any():
            break
        if np.any(depth[bad] >= max_depth):
            raise BoundaryZeroError(
                "phase refinement hit max depth; zero on or near the boundary"
            )
        mids = 0.5 * (pts[:-1][bad] + pts[1:][bad])
        _lm2, ph_mid = _field_batch(ctx, mids)
        new_pts = []
        new_ph = []
        new_depth = []
        j = 0
        for i in range(len(pts) - 1):
            new_pts.append(pts[i])
            new_ph.append(ph[i])
            if bad[i]:
                new_pts.append(mids[j])
                new_ph.append(ph_mid[j])
                new_depth.extend([depth[i] + 1, depth[i] + 1])
                j += 1
            else:
                new_depth.append(depth[i])
        new_pts.append(pts[-1])
        new_ph.append(ph[-1])
        pts = np.array(new_pts)
        ph = np.array(new_ph)
        depth = np.array(new_depth)
    total = float(np.sum(_wrap(np.diff(ph)))) / (2.0 * math.pi)
    w = round(total)
    if abs(total - w) > 1e-3:
        raise BoundaryZeroError(f"winding sum {total:.6f} is not close to an integer")
    return int(w)


def _winding_with_jitter(ctx: MLContext, rect: Window, retries: int = 5) -> tuple[int, Window]:
    """Winding number with the documented deterministic jitter on stalls."""
    cur = rect
    for attempt in range(retries + 1):
        try:
            return winding_number(ctx, cur), cur
        except BoundaryZeroError:
            if attempt == retries:
                raise
            eps = 1e-7 * rect.diameter * (attempt + 1)
            cur = Window(rect.re_min - eps, rect.re_max + eps * 1.3,
                         rect.im_min - eps * 0.7, rect.im_max + eps * 1.1)
    raise AssertionError("unreachable")


def _scalar_combo(z: complex, ctx: MLContext, deriv: bool = False) -> tuple[float, float]:
    lm, ph = combo_batch(np.array([z]), ctx, deriv=deriv)
    return float(lm[0]), float(ph[0])


def _newton_polish(z: complex, ctx: MLContext, tol: float, max_iter: int = 30
                   ) -> tuple[complex, float, bool, float]:
    """Newton iteration on the scaled evaluation.

    Returns (root, ln|I| there, ok, uncertainty radius).  Where the
    combination is a difference of exponentially large parts, |I| bottoms
    out on the rounding-noise floor and the steps stagnate above tol; the
    best iterate is then still accepted, with the stagnation scale
    |I|_floor / |I'| reported as the uncertainty radius.
    """
    best_lm, best_z, d_last = math.inf, z, 0.0
    for _ in range(max_iter):
        f_lm, f_ph = _scalar_combo(z, ctx)
        if f_lm == -math.inf:
            return z, -math.inf, True, 0.0
        d_lm, d_ph = _scalar_combo(z, ctx, deriv=True)
        if d_lm == -math.inf:
            return z, f_lm, False, math.inf
        if f_lm < best_lm:
            best_lm, best_z, d_last = f_lm, z, d_lm
        step = math.exp(min(f_lm - d_lm, 100.0)) * cmath.exp(1j * (f_ph - d_ph))
        if ctx.lam == 1 and z != 0:
            # Newton on the origin-reduced function g = I / w^{n+1}:
            # g/g' = (I/I') z / (z - (n+1) I/I')
            step = step * z / (z - (ctx.n + 1) * step)
        z = z - step
        if abs(step) < tol:
            f_lm, _ = _scalar_combo(z, ctx)
            return z, f_lm, True, abs(step)
    radius_unc = math.exp(min(best_lm - d_last, 100.0))
    return best_z, best_lm, radius_unc < 1e-6, radius_unc


def _certify(z: complex, ctx: MLContext, tol: float, radius_unc: float = 0.0) -> bool:
    # Start above both the polish tolerance and the evaluation-noise
    # radius, and grow the box until the boundary phases are clean:
    # within the noise radius the winding integral cannot settle, but any
    # box well below the inter-zero spacing still isolates a single zero.
    side = max(10.0 * tol, 1e-9, abs(z) * 1e-12, 50.0 * radius_unc)
    for _ in range(5):
        box = Window(z.real - side, z.real + side, z.imag - side, z.imag + side)
        try:
            w, _ = _winding_with_jitter(ctx, box, retries=1)
        except BoundaryZeroError:
            side *= 10.0
            continue
        return w == 1
    return False


def poly_zeros(ctx: MLContext, tol: float = 1e-12) -> list[ZeroRecord]:
    """All n roots of the section s_n(R_n z) by Aberth-Ehrlich iteration."""
    if ctx.lam != 0:
        raise ValueError("poly_zeros requires lam = 0")
    n, rho = ctx.n, ctx.rho
    rn = radius(n, rho)
    k = np.arange(n + 1, dtype=float)
    logc = k * math.log(rn) - ln_gamma_arr(1.0 + k / rho)
    spread = logc.max() - logc.min()
    if spread > 600.0:
        raise OverflowError(
            f"coefficient spread e^{spread:.0f} exceeds double range; n too large"
        )
    c = np.exp(logc - logc[n])  # monic normalization
    dc = c[1:] * np.arange(1, n + 1)

    if n == 1:
        roots = np.array([-c[0] / c[1]], dtype=complex)
    else:
        r0 = math.exp((logc[0] - logc[n]) / n)
        j = np.arange(n)
        roots = r0 * np.exp(1j * (2.0 * math.pi * j / n + 0.4 / n))
        for _ in range(400):
            p = np.polyval(c[::-1].astype(complex), roots)
            dp = np.polyval(dc[::-1].astype(complex), roots)
            dp = np.where(dp == 0, 1e-300, dp)
            newton = p / dp
            diff = roots[:, None] - roots[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            denom = 1.0 - newton * s
            denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
            step = newton / denom
            roots = roots - step
            if np.max(np.abs(step) / (1.0 + np.abs(roots))) < 1e-15:
                break
        else:
            warnings.warn("Aberth iteration budget exhausted; roots may be unpolished",
                          ClusterWarning, stacklevel=2)

    records = []
    for z0 in sorted(roots, key=lambda z: (z.real, z.imag)):
        z, res, ok, runc = _newton_polish(complex(z0), ctx, tol)
        cert = ok and _certify(z, ctx, tol, runc)
        records.append(ZeroRecord(z, res, cert,
                                  near_asymptote=False))
    return records


def _split(cell: Window, shift: float = 0.0) -> list[Window]:
    cx = 0.5 * (cell.re_min + cell.re_max) + shift * (cell.re_max - cell.re_min)
    cy = 0.5 * (cell.im_min + cell.im_max) + shift * (cell.im_max - cell.im_min)
    return [
        Window(cell.re_min, cx, cell.im_min, cy),
        Window(cx, cell.re_max, cell.im_min, cy),
        Window(cell.re_min, cx, cy, cell.im_max),
        Window(cx, cell.re_max, cy, cell.im_max),
    ]


def locate_zeros(ctx: MLContext, window: Window, tol: float = 1e-10) -> ZeroSet:
    """Quadtree subdivision by winding number with Newton polish.

    Cells of winding 1 below the polish diameter are handed to Newton;
    clusters that never separate above the minimum cell size are reported
    unpolished with their count.
    """
    if tol < 1e-12:
        raise ValueError("tol must be >= 1e-12")
    # lam = 1: winding runs on the origin-reduced function, so the known
    # multiplicity at 0 is reported directly rather than subdivided into.
    masked = ctx.n + 1 if ctx.lam == 1 and window.contains(0.0) else 0
    records: list[ZeroRecord] = []

    total, root_win = _winding_with_jitter(ctx, window)

    def solve(cell: Window, w: int) -> None:
        if w == 0:
            return
        if w == 1 and cell.diameter < POLISH_CELL_DIAMETER:
            z, res, ok, runc = _newton_polish(cell.center, ctx, tol)
            inflate = cell.diameter
            near = (cell.re_min - inflate <= z.real <= cell.re_max + inflate
                    and cell.im_min - inflate <= z.imag <= cell.im_max + inflate)
            if ok and near:
                records.append(ZeroRecord(z, res, _certify(z, ctx, tol, runc)))
                return
            # Newton escaped the cell: isolate further
        if cell.diameter < MIN_CELL_DIAMETER:
            warnings.warn(
                f"cluster of {w} zeros did not separate above diameter {MIN_CELL_DIAMETER}",
                ClusterWarning, stacklevel=2)
            records.append(ZeroRecord(cell.center, math.nan, False, cluster_count=w))
            return
        _subdivide(cell, w)

    def _subdivide(cell: Window, w: int) -> None:
        for attempt in range(6):
            shift = 0.0 if attempt == 0 else 1e-7 * attempt
            children = _split(cell, shift)
            try:
                counts = [winding_number(ctx, ch) for ch in children]
            except BoundaryZeroError:
                continue
            if sum(counts) != w:
                continue  # a zero sat on the split line; shift and retry
            for ch, cw in zip(children, counts):
                solve(ch, cw)
            return
        raise BoundaryZeroError(
            f"could not split cell {cell} without a boundary zero")

    solve(root_win, total)
    records.sort(key=lambda rec: (rec.location.real, rec.location.imag))
    return ZeroSet(tuple(records), masked_origin_multiplicity=masked,
                   total_winding=total + masked)


def strip_filter(records, rho: float, strip_width: float
                 ) -> tuple[list[ZeroRecord], list[ZeroRecord]]:
    """Partition records by distance to the rays arg z = +-pi/(2 rho).

    Returns (kept, filtered); filtered records get near_asymptote=True.
    """
    if strip_width <= 0.0:
        raise ValueError("strip_width must be > 0")
    kept: list[ZeroRecord] = []
    filtered: list[ZeroRecord] = []
    for rec in records:
        if asymptote_distance(rec.location, rho) < strip_width:
            filtered.append(replace(rec, near_asymptote=True))
        else:
            kept.append(replace(rec, near_asymptote=False))
    return kept, filtered

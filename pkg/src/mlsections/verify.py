"""Desk-scale numerical checks of the asymptotic formulas behind the toolkit.

Each check compares an exact finite-n quantity (evaluated through the scaled
series machinery) against the leading term of its limit formula, with the
o(1) factors set to 1.  Because the underlying statements are limits in n,
most checks are trend checks (the deviation must shrink along an n-list);
a few absolute thresholds were frozen after calibration runs and are kept
as module constants.

Suites return a plain dict {check_id, params, n_list, metric_list, pass}
that the CLI serializes verbatim.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .scaled import ScaledComplex, sc_add, sc_from_complex, sc_mul, sc_sub, sc_to_complex
from .specfun import erfc, ln_gamma
from .mitlef import MLContext, combo, combo_normalized, ml_series, radius
from .curves import RegionSpec, asymptote_distance, phase_u, region_contains, szego_sigma
from .zeros import Window, locate_zeros, strip_filter

# Calibrated absolute thresholds (frozen after pre-runs; trend checks carry
# the actual burden of proof).
THEOREM1_DEV_AT_200 = 0.05   # relative deviation ceiling at n=200 in-regime
THEOREM3_DEV_AT_200 = 0.05   # |lhs - 1/2| at lam=0, zeta=0, n=200
KN_RATIO_DEV_AT_80 = 0.15    # |ratio - 1| ceiling at n=80
LEMMA4_C1 = 1.0              # documented lower-bound constant for |J1'|
LEMMA4_SMALLNESS = 1e-2      # "o(1)" proxy ceiling at n=200


class RegimeError(ValueError):
    """The point violates (or straddles) the requested regime's conditions."""


class ContourError(RuntimeError):
    """The integration contour passes too close to the pole."""


@dataclass(frozen=True)
class ContourSpec:
    """Hankel-style contour: two rays arg = +-nu (|zeta| >= H) and the arc.

    ray_cutoff is the truncation radius of the rays, in units of H.
    """

    nu: float
    H: float
    ray_cutoff: float

    def validate(self, rho: float) -> None:
        if not (math.pi / (2.0 * rho) < self.nu <= math.pi / rho):
            raise ValueError("nu must lie in (pi/(2 rho), pi/rho]")
        if not self.H > 0.0:
            raise ValueError("H must be positive")
        if not self.ray_cutoff > 1.0:
            raise ValueError("ray_cutoff must exceed 1 (in units of H)")


@dataclass(frozen=True)
class ScalingFrame3:
    """Local frame at z = 1: zeta -> z = 1 + sqrt(2/(rho n)) zeta."""

    n: int
    rho: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("frame requires n >= 2")

    def map(self, zeta: complex) -> complex:
        return 1.0 + math.sqrt(2.0 / (self.rho * self.n)) * zeta


@dataclass(frozen=True)
class ScalingFrame4:
    """Local frame at a limit-curve point xi, part 'I' (sector) or 'II' (arc)."""

    xi: complex
    n: int
    rho: float
    part: str
    tau_n: float = field(init=False)

    def __post_init__(self):
        rho, xi = self.rho, complex(self.xi)
        phi = cmath.phase(xi)
        sector = math.pi / (2.0 * rho)
        if self.part == "I":
            if not (0.0 < phi < sector):
                raise ValueError("part I requires 0 < arg xi < pi/(2 rho)")
            if abs(abs(xi) - 1.0) < 1e-12:
                raise ValueError("part I excludes |xi| = 1")
            if abs(phase_u(xi, rho)) > 1e-9:
                raise ValueError("xi must lie on the limit curve (u(xi) = 0)")
        elif self.part == "II":
            if abs(abs(xi) - math.exp(-1.0 / rho)) > 1e-9:
                raise ValueError("part II requires |xi| = e^{-1/rho}")
            if not (sector < phi <= math.pi):
                raise ValueError("part II requires pi/(2 rho) < arg xi <= pi")
        else:
            raise ValueError("part must be 'I' or 'II'")
        object.__setattr__(self, "tau_n", theorem4_tau(xi, rho, self.n, self.part))

    def map(self, zeta: complex) -> complex:
        n, rho, xi = self.n, self.rho, complex(self.xi)
        if self.part == "I":
            denom = (1.0 - xi ** rho) * n
            return xi * (1.0 + math.log(n) / (2.0 * denom) - (zeta - 1j * self.tau_n) / denom)
        # the e^{-zeta} limit on the arc requires the +(zeta - i tau'_n)
        # orientation: the (n+1)-st powers of the frame factor and of xi then
        # cancel their tau'_n phases instead of doubling them
        pert = (0.5 - 1.0 / rho) * math.log(n) / n
        return xi * (1.0 + pert + (zeta - 1j * self.tau_n) / (n + 1))


# --- regime formulas --------------------------------------------------------


def j_primes(z: complex, ctx: MLContext) -> tuple[ScaledComplex, ScaledComplex]:
    """J1 = e^{w^rho} Gamma(1+n/rho) / w^n and J2 = Gamma(1+n/rho) / w^{n+1},
    with w = R_n z, both in scaled form."""
    z = complex(z)
    if z == 0:
        raise ValueError("j_primes requires z != 0")
    n, rho = ctx.n, ctx.rho
    rn = ctx.radius_value
    lw = math.log(rn) + math.log(abs(z))
    phi = cmath.phase(z)
    lg = ln_gamma(1.0 + n / rho)
    wp = (rn ** rho) * (abs(z) ** rho)  # |w|^rho; moderate (~ n/rho * |z|^rho)
    j1 = ScaledComplex(wp * math.cos(rho * phi) + lg - n * lw,
                       wp * math.sin(rho * phi) - n * phi)
    j2 = ScaledComplex(lg - (n + 1) * lw, -(n + 1) * phi)
    return j1, j2


def lemma4_logmag(z: complex, ctx: MLContext) -> tuple[float, float]:
    """Leading log-magnitudes of J1, J2 from the Stirling expansions."""
    r = abs(complex(z))
    phi = abs(cmath.phase(complex(z)))
    n, rho = ctx.n, ctx.rho
    u = r ** rho * math.cos(rho * phi) - 1.0 - rho * math.log(r)
    lj1 = (0.5 * math.log(2.0 * math.pi)
           + (rho - 1.0) / (2.0 * rho) * (r ** rho * math.cos(rho * phi) - 1.0)
           + (n / rho) * u + 0.5 * math.log(n / rho))
    lj2 = (0.5 * math.log(2.0 * math.pi) + 1.0 / rho - (rho - 1.0) / (2.0 * rho)
           + (n + 1) * (-1.0 / rho - math.log(r))
           + (0.5 - 1.0 / rho) * math.log(n / rho))
    return lj1, lj2


def _regime_of(z: complex, rho: float, delta2: float, delta3: float) -> str:
    r = abs(z)
    phi = abs(cmath.phase(z))
    sector = math.pi / (2.0 * rho)
    if phi >= sector + delta3:
        return "exterior"
    if phi <= sector and abs(z - 1.0) >= delta2:
        if r > 1.0:
            return "outer_sector"
        if r < 1.0:
            return "inner_sector"
        raise RegimeError("|z| = 1 straddles the inner/outer sector split")
    raise RegimeError("z lies in none of the covered regimes")


def theorem1_rhs(z: complex, ctx: MLContext, regime: str,
                 delta2: float = 0.2, delta3: float = 0.2) -> ScaledComplex:
    """Leading right-hand side of the regime expansion, o(1) factors = 1."""
    z = complex(z)
    if z == 0 or z == 1:
        raise RegimeError("z = 0 and z = 1 are excluded")
    actual = _regime_of(z, ctx.rho, delta2, delta3)
    if regime not in {"outer_sector", "inner_sector", "exterior"}:
        raise ValueError(f"unknown regime {regime!r}")
    if actual != regime:
        raise RegimeError(f"z is in regime {actual!r}, not {regime!r}")
    j1, j2 = j_primes(z, ctx)
    pole = sc_from_complex(-z / (1.0 - z))
    if regime == "outer_sector":
        coef = -ctx.lam * ctx.rho
        lead = sc_mul(sc_from_complex(coef), j1)
    elif regime == "inner_sector":
        coef = (1.0 - ctx.lam) * ctx.rho
        lead = sc_mul(sc_from_complex(coef), j1)
    else:
        coef = (ctx.lam - 1.0) * math.exp(-ln_gamma(1.0 - 1.0 / ctx.rho))
        lead = sc_mul(sc_from_complex(coef), j2)
    return sc_add(lead, pole)


def theorem1_check(z: complex, ctx: MLContext,
                   delta2: float = 0.2, delta3: float = 0.2) -> float:
    """Relative deviation between the normalized combination and its regime
    formula; tends to 0 in n."""
    regime = _regime_of(complex(z), ctx.rho, delta2, delta3)
    lhs = combo_normalized(z, ctx)
    rhs = theorem1_rhs(z, ctx, regime, delta2, delta3)
    diff = sc_sub(lhs, rhs)
    denom = max(lhs.log_mag, rhs.log_mag)
    if denom == -math.inf:
        return 0.0
    return math.exp(diff.log_mag - denom)


# --- contour integral -------------------------------------------------------


def default_contour(ctx: MLContext, delta3: float = 0.2,
                    ray_cutoff: float = 4.0) -> ContourSpec:
    return ContourSpec(nu=math.pi / (2.0 * ctx.rho) + delta3 / 2.0,
                       H=ctx.radius_value, ray_cutoff=ray_cutoff)


def kn_quadrature(z: complex, ctx: MLContext,
                  contour: ContourSpec | None = None) -> tuple[complex, float]:
    """Contour integral of e^{zeta^rho} zeta^{-(n+1)} / (zeta - R_n z) over
    the arc and truncated rays, rescaled to the unit-radius plane.

    Returns (value, estimated absolute error); the truncated ray tails are
    bounded analytically and folded into the error estimate.
    """
    z = complex(z)
    n, rho = ctx.n, ctx.rho
    rn = ctx.radius_value
    if contour is None:
        contour = default_contour(ctx)
    contour.validate(rho)
    if abs(contour.H - rn) > 1e-9 * rn:
        raise ValueError("contour radius must equal R_n (H = R_n)")
    nu, cut = contour.nu, contour.ray_cutoff
    crn = math.cos(rho * nu)
    if crn >= 0.0:
        raise ValueError("ray direction must have cos(rho nu) < 0")
    wp = rn ** rho  # R_n^rho, moderate

    # distance from the pole t = z to the contour (t-plane, H = 1)
    thetas = np.linspace(-nu, nu, 721)
    d_arc = np.abs(np.exp(1j * thetas) - z).min()
    ss = np.linspace(1.0, cut, 721)
    d_ray = min(np.abs(ss * cmath.exp(1j * nu) - z).min(),
                np.abs(ss * cmath.exp(-1j * nu) - z).min())
    if min(d_arc, d_ray) < 1e-6:
        raise ContourError("pole within 1e-6 R_n of the contour")

    def arc_integrand(theta: float) -> complex:
        t = cmath.exp(1j * theta)
        return cmath.exp(wp * t ** rho) * t ** (-(n + 1)) / (t - z) * 1j * t

    def ray_integrand(s: float, sign: float) -> complex:
        d = cmath.exp(1j * sign * nu)
        t = s * d
        return cmath.exp(wp * t ** rho) * t ** (-(n + 1)) / (t - z) * d

    def cquad(f, a, b):
        re, re_err = quad(lambda x: f(x).real, a, b, limit=400)
        im, im_err = quad(lambda x: f(x).imag, a, b, limit=400)
        return complex(re, im), math.hypot(re_err, im_err)

    arc, e_arc = cquad(arc_integrand, -nu, nu)
    up, e_up = cquad(lambda s: ray_integrand(s, +1.0), 1.0, cut)
    dn, e_dn = cquad(lambda s: ray_integrand(s, -1.0), 1.0, cut)
    total = arc + up - dn

    # tail of each ray beyond the cutoff: |integrand| <= e^{wp s^rho cos(rho nu)}
    # s^{-(n+1)} / d_ray, and the exponent decays at rate >= wp rho cut^{rho-1}|cos|
    tail_log = wp * cut ** rho * crn - (n + 1) * math.log(cut) - math.log(d_ray)
    tail = math.exp(min(tail_log, 700.0)) / (wp * rho * cut ** (rho - 1.0) * abs(crn))
    err = e_arc + e_up + e_dn + 2.0 * tail

    scale = -(n + 1) * math.log(rn)  # zeta = R_n t rescaling factor
    return total * math.exp(scale), err * math.exp(scale)


def kn_ratio(z: complex, ctx: MLContext,
             contour: ContourSpec | None = None) -> complex:
    """rho (R_n z)^{n+1} K_n / (2 pi i), divided by the predicted
    R_n^n z^n z / ((1-z) Gamma(1+n/rho)); tends to 1 on the good set."""
    z = complex(z)
    n, rho = ctx.n, ctx.rho
    rn = ctx.radius_value
    if contour is None:
        contour = default_contour(ctx)
    nu, cut = contour.nu, contour.ray_cutoff
    wp = rn ** rho
    crn = math.cos(rho * nu)

    # same integrals as kn_quadrature but kept un-rescaled; combine in logs
    def arc_integrand(theta: float) -> complex:
        t = cmath.exp(1j * theta)
        return cmath.exp(wp * t ** rho) * t ** (-(n + 1)) / (t - z) * 1j * t

    def ray_integrand(s: float, sign: float) -> complex:
        d = cmath.exp(1j * sign * nu)
        t = s * d
        return cmath.exp(wp * t ** rho) * t ** (-(n + 1)) / (t - z) * d

    def cquad(f, a, b):
        re, _ = quad(lambda x: f(x).real, a, b, limit=400)
        im, _ = quad(lambda x: f(x).imag, a, b, limit=400)
        return complex(re, im)

    q = (cquad(arc_integrand, -nu, nu)
         + cquad(lambda s: ray_integrand(s, +1.0), 1.0, cut)
         - cquad(lambda s: ray_integrand(s, -1.0), 1.0, cut))
    if q == 0:
        return 0.0
    # ratio = rho R_n Gamma(1+n/rho) (1-z) K_n / (2 pi i), K_n = R_n^{-(n+1)} Q
    lg = ln_gamma(1.0 + n / rho) - n * math.log(rn)
    val = cmath.log(q) + lg + cmath.log(rho * (1.0 - z) / (2j * math.pi))
    return cmath.exp(val)


# --- scaling-limit pairs ----------------------------------------------------


def theorem3_pair(zeta: complex, ctx: MLContext) -> tuple[complex, complex]:
    """Exact finite-n normalized combination at the z = 1 frame vs its
    erfc limit e^{zeta^2}(erfc(zeta)/2 - lam)."""
    zeta = complex(zeta)
    frame = ScalingFrame3(ctx.n, ctx.rho)
    z = frame.map(zeta)
    val = combo(z, ctx)
    # normalization by (1 + a zeta)^n E(R_n); E(R_n) by the direct series
    e_rn = ml_series(ctx.radius_value, ctx.rho)
    lz = cmath.log(z)
    lhs = ScaledComplex(val.log_mag - ctx.n * lz.real - e_rn.log_mag,
                        val.phase - ctx.n * lz.imag - e_rn.phase)
    rhs = cmath.exp(zeta * zeta) * (erfc(zeta) / 2.0 - ctx.lam)
    return sc_to_complex(lhs), rhs


def theorem4_tau(xi: complex, rho: float, n: int, part: str,
                 printed_exponent: float | None = None) -> float:
    """The phase-alignment sequence, reduced to (-pi, pi].

    part 'I' uses tau = |xi|^rho sin(rho phi) - rho phi (the curve-consistent
    exponent; printed_exponent substitutes another power of |xi| so both
    readings of the source formula can be reported side by side);
    part 'II' uses (n+1) phi.
    """
    xi = complex(xi)
    phi = cmath.phase(xi)
    if part == "I":
        p = rho if printed_exponent is None else printed_exponent
        tau = abs(xi) ** p * math.sin(rho * phi) - rho * phi
        raw = tau / rho * n
    elif part == "II":
        raw = (n + 1) * phi
    else:
        raise ValueError("part must be 'I' or 'II'")
    red = math.remainder(raw, 2.0 * math.pi)
    if red <= -math.pi:
        red += 2.0 * math.pi
    return red


def theorem4_pair(zeta: complex, frame: ScalingFrame4, lam: complex
                  ) -> tuple[complex, complex]:
    """Exact finite-n normalized combination at the curve frame vs its limit."""
    zeta = complex(zeta)
    rho, n, xi = frame.rho, frame.n, complex(frame.xi)
    ctx = MLContext(rho=rho, n=n, lam=lam)
    z = frame.map(zeta)
    lhs = sc_to_complex(combo_normalized(z, ctx))
    if frame.part == "I":
        xr = cmath.exp(rho * cmath.log(xi))  # principal xi^rho
        # constant exponent (rho-1)/(2 rho): the value consistent with the
        # Stirling expansion of |J1| (and confirmed numerically)
        amp = math.sqrt(2.0 * math.pi * rho) * cmath.exp(
            (rho - 1.0) / (2.0 * rho) * (xr - 1.0)) * cmath.exp(zeta)
        coef = (1.0 - lam) if abs(xi) < 1.0 else -lam
        rhs = coef * amp - xi / (1.0 - xi)
    else:
        # the e^{1/rho} factor comes with the Stirling expansion of |J2| on
        # the arc |xi| = e^{-1/rho} (confirmed numerically at several rho)
        amp = (math.sqrt(2.0 * math.pi * math.exp((1.0 - rho) / rho))
               * math.exp(1.0 / rho)
               / (rho ** (0.5 - 1.0 / rho) * math.exp(ln_gamma(1.0 - 1.0 / rho)))
               ) * cmath.exp(-zeta)
        rhs = (lam - 1.0) * amp - xi / (1.0 - xi)
    return lhs, rhs


# --- suites -----------------------------------------------------------------

_T1_POINTS = {
    "outer_sector": (2.5, 1.4 * cmath.exp(0.3j)),
    "inner_sector": (0.3, 0.6 * cmath.exp(-0.4j)),
    "exterior": (0.5 * cmath.exp(2.0j), 1.2 * cmath.exp(2.8j)),
}

_OMEGA_SAMPLES = {
    "omega1": (0.3, 0.5 * cmath.exp(0.3j), 0.7),
    "omega2": (cmath.exp(0.35j), 0.95 * cmath.exp(0.35j), 1.02 * cmath.exp(0.4j)),
    "omega3": (1.2 * cmath.exp(1.5j), 0.9 * cmath.exp(2.5j), 2.0 * cmath.exp(1j * math.pi)),
    "omega4": (0.3 * cmath.exp(1j * math.pi), 0.35 * cmath.exp(2.0j), 0.2 * cmath.exp(-1.2j)),
    "omega5": (2.0, 1.5 * cmath.exp(0.2j), 1.8 * cmath.exp(-0.3j)),
}

_KN_POINTS = (0.4, 2.5, 0.6 * cmath.exp(0.5j), 0.5 * cmath.exp(2.0j),
              1.3 * cmath.exp(-2.2j), 0.7 * cmath.exp(1j * math.pi))


def _grid(radius_: float, side: int) -> np.ndarray:
    """side x side grid on the bounding square, masked to |zeta| <= radius."""
    xs = np.linspace(-radius_, radius_, side)
    g = (xs[None, :] + 1j * xs[:, None]).ravel()
    return g[np.abs(g) <= radius_ + 1e-12]


def suite_theorem1(rho: float = 2.0, lam: complex = 0.5,
                   n_list: tuple[int, ...] = (50, 200),
                   delta2: float = 0.2, delta3: float = 0.2) -> dict:
    devs = []
    ok = True
    for n in n_list:
        ctx = MLContext(rho=rho, n=n, lam=lam)
        row = [theorem1_check(z, ctx, delta2, delta3)
               for pts in _T1_POINTS.values() for z in pts]
        devs.append(row)
    for j in range(len(devs[0])):
        col = [devs[i][j] for i in range(len(n_list))]
        # deviations already at the rounding floor cannot shrink further
        if any(col[i + 1] > max(col[i], 1e-9) for i in range(len(col) - 1)):
            ok = False
    if n_list[-1] >= 200 and max(devs[-1]) > THEOREM1_DEV_AT_200:
        ok = False
    return {"check_id": "theorem1", "params": {"rho": rho, "lam": _jlam(lam),
            "delta2": delta2, "delta3": delta3},
            "n_list": list(n_list),
            "metric_list": [max(row) for row in devs], "pass": ok}


def suite_theorem2(rho: float = 2.0, lam: complex = 0.5,
                   n_list: tuple[int, ...] = (50, 100), h: float = 0.2,
                   delta2: float = 0.2, delta3: float = 0.2,
                   window: Window | None = None, tol: float = 1e-10,
                   zero_sets: dict | None = None) -> dict:
    """No located zero may fall in any of the five excluded regions.

    zero_sets, if given, maps n -> ZeroSet and skips relocating.
    """
    if window is None:
        window = Window(-1.8, 1.8, -1.8, 1.8)
    specs = [RegionSpec(f"omega{i}", rho, h=h, delta2=delta2, delta3=delta3)
             for i in range(1, 6)]
    violations = []
    for n in n_list:
        ctx = MLContext(rho=rho, n=n, lam=lam)
        zs = zero_sets.get(n) if zero_sets else None
        if zs is None:
            zs = locate_zeros(ctx, window, tol=tol)
        bad = sum(1 for rec in zs.records
                  for spec in specs if region_contains(rec.location, spec))
        violations.append(bad)
    return {"check_id": "theorem2", "params": {"rho": rho, "lam": _jlam(lam),
            "h": h, "delta2": delta2, "delta3": delta3,
            "window": [window.re_min, window.re_max, window.im_min, window.im_max]},
            "n_list": list(n_list), "metric_list": violations,
            "pass": all(v == 0 for v in violations)}


def suite_theorem3(rho: float = 2.0, lam: complex = 0.0,
                   n_list: tuple[int, ...] = (50, 100, 200),
                   grid_side: int = 21) -> dict:
    zetas = _grid(2.0, grid_side)
    sups = []
    for n in n_list:
        ctx = MLContext(rho=rho, n=n, lam=lam)
        sup = max(abs(l - r) for l, r in (theorem3_pair(zt, ctx) for zt in zetas))
        sups.append(sup)
    ok = all(sups[i + 1] < sups[i] for i in range(len(sups) - 1))
    if lam == 0 and n_list[-1] >= 200:
        ctx = MLContext(rho=rho, n=n_list[-1], lam=lam)
        lhs, _ = theorem3_pair(0.0, ctx)
        if abs(lhs - 0.5) > THEOREM3_DEV_AT_200:
            ok = False
    return {"check_id": "theorem3", "params": {"rho": rho, "lam": _jlam(lam),
            "grid_side": grid_side}, "n_list": list(n_list),
            "metric_list": sups, "pass": ok}


def theorem4_frames(rho: float, n: int) -> list[ScalingFrame4]:
    """The three acceptance frames: inner/outer sector points at phi = 0.25
    and the arc point at phi = 2."""
    phi = 0.25
    inner = szego_sigma(phi, rho, "inner") * cmath.exp(1j * phi)
    outer = szego_sigma(phi, rho, "outer") * cmath.exp(1j * phi)
    arc = math.exp(-1.0 / rho) * cmath.exp(2.0j)
    return [ScalingFrame4(inner, n, rho, "I"),
            ScalingFrame4(outer, n, rho, "I"),
            ScalingFrame4(arc, n, rho, "II")]


def suite_theorem4(rho: float = 2.0, lam_list: tuple[complex, ...] = (0.0, 1.0),
                   n_list: tuple[int, ...] = (75, 300), grid_side: int = 7) -> dict:
    zetas = _grid(1.5, grid_side)
    metrics = []
    ok = True
    for lam in lam_list:
        for fi in range(3):
            sups = []
            variations = []
            for n in n_list:
                frame = theorem4_frames(rho, n)[fi]
                vals = [theorem4_pair(zt, frame, lam) for zt in zetas]
                sups.append(max(abs(l - r) for l, r in vals))
                mags = [abs(l) for l, _ in vals]
                variations.append(max(mags) - min(mags))
            if any(sups[i + 1] > sups[i] for i in range(len(sups) - 1)):
                ok = False
            # lam values that kill the exponential coefficient leave a
            # zeta-constant limit; the exact lhs variation must shrink too
            frame0 = theorem4_frames(rho, n_list[0])[fi]
            coef = ((1.0 - lam) if (frame0.part == "I" and abs(frame0.xi) < 1)
                    else -lam if frame0.part == "I" else (lam - 1.0))
            if coef == 0 and any(variations[i + 1] > variations[i]
                                 for i in range(len(variations) - 1)):
                ok = False
            metrics.append(sups[-1])
    return {"check_id": "theorem4", "params": {"rho": rho,
            "lam_list": [_jlam(l) for l in lam_list], "grid_side": grid_side},
            "n_list": list(n_list), "metric_list": metrics, "pass": ok}


def suite_kn(rho: float = 2.0, n_list: tuple[int, ...] = (20, 80)) -> dict:
    devs = []
    for n in n_list:
        ctx = MLContext(rho=rho, n=n, lam=0.5)
        devs.append([abs(kn_ratio(z, ctx) - 1.0) for z in _KN_POINTS])
    ok = all(devs[-1][j] <= devs[0][j] for j in range(len(_KN_POINTS)))
    if n_list[-1] >= 80 and max(devs[-1]) > KN_RATIO_DEV_AT_80:
        ok = False
    return {"check_id": "kn", "params": {"rho": rho},
            "n_list": list(n_list),
            "metric_list": [max(row) for row in devs], "pass": ok}


def suite_lemma4(rho: float = 2.0, n_list: tuple[int, ...] = (100, 200),
                 h: float = 0.2, delta2: float = 0.2, delta3: float = 0.2) -> dict:
    specs = {k: RegionSpec(k, rho, h=h, delta2=delta2, delta3=delta3)
             for k in _OMEGA_SAMPLES}
    for k, spec in specs.items():  # samples must genuinely lie in their regions
        for z in _OMEGA_SAMPLES[k]:
            if not region_contains(z, spec):
                raise RuntimeError(f"sample {z} escaped {k}")
    ok = True
    metrics = []
    for n in n_list:
        ctx = MLContext(rho=rho, n=n, lam=0.5)
        floor1 = math.log(LEMMA4_C1) + 0.5 * math.log(n / rho)
        growth4 = n * math.log1p(h * math.exp(1.0 / rho) / 2.0)
        worst = -math.inf
        for k, pts in _OMEGA_SAMPLES.items():
            for z in pts:
                j1, j2 = j_primes(z, ctx)
                if k in ("omega1", "omega5") and j1.log_mag < floor1:
                    ok = False
                if k == "omega2" and n >= 200 and j1.log_mag > math.log(LEMMA4_SMALLNESS):
                    ok = False
                if k == "omega4" and j2.log_mag < growth4:
                    ok = False
                if k == "omega3" and n >= 200 and j2.log_mag > math.log(LEMMA4_SMALLNESS):
                    ok = False
                worst = max(worst, -j1.log_mag + floor1 if k in ("omega1", "omega5")
                            else -j2.log_mag + growth4 if k == "omega4" else -math.inf)
        metrics.append(worst)
    # the explicit Stirling expansion must track |J1'| closely at large n
    ctx = MLContext(rho=rho, n=400, lam=0.5)
    z = 1.5 * cmath.exp(1j * math.pi / 8.0)
    j1, _ = j_primes(z, ctx)
    lj1, _ = lemma4_logmag(z, ctx)
    if abs(j1.log_mag - lj1) > 0.01 * abs(j1.log_mag):
        ok = False
    return {"check_id": "lemma4", "params": {"rho": rho, "h": h, "C1": LEMMA4_C1},
            "n_list": list(n_list), "metric_list": metrics, "pass": ok}


def suite_lemma1(rho: float = 2.0,
                 r_list: tuple[float, ...] = (10.0, 30.0, 100.0, 300.0)) -> dict:
    """Outer-branch points approach the sector rays no slower than the
    explicit envelope (1 + rho log r) / (r^{rho-1} cos(pi/(2 rho)))."""
    dists = []
    ok = True
    for r in r_list:
        # phi on the curve at radius r: r^rho cos(rho phi) = 1 + rho log r
        c = (1.0 + rho * math.log(r)) / r ** rho
        phi = math.acos(min(1.0, c)) / rho
        z = r * cmath.exp(1j * phi)
        d = asymptote_distance(z, rho)
        bound = (1.0 + rho * math.log(r)) / (r ** (rho - 1.0)
                                             * math.cos(math.pi / (2.0 * rho)))
        if d > bound:
            ok = False
        dists.append(d)
    if any(dists[i + 1] >= dists[i] for i in range(len(dists) - 1)):
        ok = False
    return {"check_id": "lemma1", "params": {"rho": rho, "r_list": list(r_list)},
            "n_list": [], "metric_list": dists, "pass": ok}


def _jlam(lam: complex) -> list[float]:
    lam = complex(lam)
    return [lam.real, lam.imag]


SUITES = {
    "theorem1": suite_theorem1,
    "theorem2": suite_theorem2,
    "theorem3": suite_theorem3,
    "theorem4": suite_theorem4,
    "lemma1": suite_lemma1,
    "lemma4": suite_lemma4,
    "kn": suite_kn,
}

"""Mittag-Leffler functions of order rho > 1, their sections and tails.

Everything is evaluated in scaled (log-magnitude, phase) arithmetic: every
sum is normalized by its maximal term before the mantissas are added, which
keeps intermediates finite for section indices up to a few thousand where
raw doubles would overflow around n ~ 100.

Notation used throughout the package:

    E(z)        = sum_k z^k / Gamma(1 + k/rho)        (order-rho function)
    s_n(w)      = sum_{k<=n} w^k / Gamma(1 + k/rho)   (section)
    t_{n+1}(w)  = sum_{k>n} w^k / Gamma(1 + k/rho)    (tail)
    R_n         = Gamma(1 + n/rho) / Gamma(1 + (n-1)/rho)
    combo(z)    = s_n(R_n z) - lam * E(R_n z)

combo is the mixed section/tail combination
(1 - lam) s_n(R_n z) - lam t_{n+1}(R_n z) in its cancellation-safe form.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .scaled import (
    SC_ZERO,
    ScaledComplex,
    _wrap_phase,
    sc_add,
    sc_from_complex,
    sc_mul,
    sc_sub,
)
from .specfun import ln_gamma, ln_gamma_arr

__all__ = [
    "TruncationSpec",
    "MaxTermInfo",
    "MLContext",
    "TruncationError",
    "CancellationWarning",
    "radius",
    "radius_asymptotic",
    "max_term",
    "ml_series",
    "ml_asymptotic",
    "ml_mu",
    "section",
    "tail",
    "combo",
    "combo_normalized",
    "combo_derivative",
    "combo_batch",
]


class TruncationError(RuntimeError):
    """Raised when a series does not converge within the term budget."""


class CancellationWarning(UserWarning):
    """A subtraction lost more than half of the working digits."""


@dataclass(frozen=True)
class TruncationSpec:
    rel_tol: float = 1e-14
    max_terms: int = 200_000
    tail_margin: int = 64

    def __post_init__(self):
        if not (0.0 < self.rel_tol <= 1e-6):
            raise ValueError("rel_tol must be in (0, 1e-6]")
        if self.max_terms < 16:
            raise ValueError("max_terms must be >= 16")
        if self.tail_margin < 1:
            raise ValueError("tail_margin must be >= 1")


DEFAULT_TRUNC = TruncationSpec()


@dataclass(frozen=True)
class MaxTermInfo:
    mu_log: float
    nu: int


@dataclass(frozen=True)
class MLContext:
    """Parameter bundle (rho, n, lam) plus truncation policy.

    rho >= 1 is accepted so the rho = 1 exponential oracle can share the
    machinery; theorem-level code additionally requires rho > 1.
    """

    rho: float
    n: int
    lam: complex = 0.0 + 0.0j
    trunc: TruncationSpec = field(default_factory=TruncationSpec)

    def __post_init__(self):
        if not self.rho >= 1.0:
            raise ValueError("rho must be >= 1")
        if self.n < 1:
            raise ValueError("n must be >= 1 (R_0 is undefined)")
        object.__setattr__(self, "lam", complex(self.lam))

    @property
    def radius_value(self) -> float:
        return radius(self.n, self.rho)


# --- coefficient tables ---------------------------------------------------

# rho -> array L with L[k] = ln Gamma(1 + k/rho), grown on demand
_LGAMMA_TABLES: dict[float, np.ndarray] = {}


def _lgamma_table(rho: float, upto: int) -> np.ndarray:
    tab = _LGAMMA_TABLES.get(rho)
    if tab is None or len(tab) <= upto:
        size = max(2 * upto + 2, 4096)
        k = np.arange(size, dtype=float)
        _LGAMMA_TABLES[rho] = ln_gamma_arr(1.0 + k / rho)
        tab = _LGAMMA_TABLES[rho]
    return tab


def radius(n: int, rho: float) -> float:
    """R_n = Gamma(1 + n/rho) / Gamma(1 + (n-1)/rho)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.exp(ln_gamma(1.0 + n / rho) - ln_gamma(1.0 + (n - 1) / rho))


def radius_asymptotic(n: int, rho: float) -> float:
    """Two-term Stirling expansion (n/rho)^(1/rho) (1 + (rho-1)/(2 rho n))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not rho > 1.0:
        raise ValueError("rho must be > 1")
    return (n / rho) ** (1.0 / rho) * (1.0 + (rho - 1.0) / (2.0 * rho * n))


def max_term(r: float, rho: float, trunc: TruncationSpec = DEFAULT_TRUNC) -> MaxTermInfo:
    """Maximal term and central index of E at radius r.

    Scans k -> k log r - ln Gamma(1 + k/rho); the sequence is concave in k,
    and ties (r exactly at a jump point R_n) resolve to the larger index,
    matching the right-continuity of the central index.
    """
    if not r > 0.0:
        raise ValueError("r must be > 0")
    lr = math.log(r)
    best = -math.inf
    nu = 0
    k0 = 0
    chunk = 4096
    while True:
        if k0 > trunc.max_terms:
            raise TruncationError(
                f"central index not bracketed within {trunc.max_terms} terms at r={r!r}"
            )
        hi = k0 + chunk
        k = np.arange(k0, hi, dtype=float)
        logt = k * lr - _lgamma_table(rho, hi)[k0:hi]
        m = float(logt.max())
        if m >= best:
            # >= prefers the larger index on an exact tie
            idx = int(np.nonzero(logt == m)[0][-1])
            best = m
            nu = k0 + idx
        if logt[-1] < best and hi > nu + trunc.tail_margin:
            return MaxTermInfo(mu_log=best, nu=nu)
        k0 = hi


def _peak_and_cutoff(lr: float, logc: "np.ndarray | None", rho: float,
                     trunc: TruncationSpec, kstart: int = 0,
                     mu_arg: float | None = None) -> tuple[float, int, int]:
    """Peak value, its index, and the truncation index of a log-term scan.

    logc[k] must hold -ln Gamma(...) offsets; when logc is None the table
    for (1 + k/rho) is used.  The cutoff is the first index past the peak
    where terms drop below rel_tol of the peak, plus the tail margin.
    """
    log_tol = math.log(trunc.rel_tol)
    best = -math.inf
    nu = kstart
    k0 = kstart
    chunk = 4096
    while True:
        if k0 > trunc.max_terms + kstart:
            raise TruncationError(
                f"series did not converge within {trunc.max_terms} terms"
            )
        hi = k0 + chunk
        k = np.arange(k0, hi, dtype=float)
        if mu_arg is None:
            logt = k * lr - _lgamma_table(rho, hi)[k0:hi]
        else:
            logt = k * lr - ln_gamma_arr(mu_arg + k / rho)
        m = float(logt.max())
        if m >= best:
            idx = int(np.nonzero(logt == m)[0][-1])
            best = m
            nu = k0 + idx
        if hi > nu + 1:
            below = logt < best + log_tol
            if below[-1] and k0 > nu:
                # concave sequence: once below tolerance past the peak it stays below
                first = k0 + int(np.argmax(below)) if below.any() else hi
                return best, nu, max(first, nu + 1) + trunc.tail_margin
        k0 = hi


def _sum_terms(lr: float, ph: float, M: float, kstop: int, rho: float,
               kstart: int = 0, mu_arg: float | None = None,
               deriv: bool = False) -> ScaledComplex:
    """Sum exp(k lr - lgamma) e^{i k ph} / e^M for k in [kstart, kstop]."""
    total = 0.0 + 0.0j
    for k0 in range(kstart, kstop + 1, 65536):
        hi = min(k0 + 65536, kstop + 1)
        k = np.arange(k0, hi, dtype=float)
        if mu_arg is None:
            logt = k * lr - _lgamma_table(rho, hi)[k0:hi]
        else:
            logt = k * lr - ln_gamma_arr(mu_arg + k / rho)
        if deriv:
            logt = logt + np.log(np.maximum(k, 1.0))
        with np.errstate(under="ignore"):
            total += complex(np.sum(np.exp(logt - M + 1j * (k * ph))))
    if total == 0:
        return SC_ZERO
    return ScaledComplex(M + math.log(abs(total)), _wrap_phase(cmath.phase(total)))


def ml_series(z: complex, rho: float, trunc: TruncationSpec = DEFAULT_TRUNC) -> ScaledComplex:
    """E(z) by direct log-normalized summation of the power series."""
    z = complex(z)
    if z == 0:
        return ScaledComplex(0.0, 0.0)
    lr = math.log(abs(z))
    ph = cmath.phase(z)
    M, _nu, kstop = _peak_and_cutoff(lr, None, rho, trunc)
    return _sum_terms(lr, ph, M, kstop, rho)


def ml_mu(z: complex, rho: float, mu: float, trunc: TruncationSpec = DEFAULT_TRUNC) -> ScaledComplex:
    """Two-parameter function sum_k z^k / Gamma(mu + k/rho), mu >= 1."""
    if mu < 1.0:
        raise ValueError("mu must be >= 1")
    z = complex(z)
    if z == 0:
        return ScaledComplex(-ln_gamma(mu), 0.0)
    lr = math.log(abs(z))
    ph = cmath.phase(z)
    M, _nu, kstop = _peak_and_cutoff(lr, None, rho, trunc, mu_arg=mu)
    return _sum_terms(lr, ph, M, kstop, rho, mu_arg=mu)


ASYMPTOTIC_FLOOR = 5.0  # empirical validity floor for the (2.2)-style expansion


def ml_asymptotic(z: complex, rho: float) -> ScaledComplex:
    """Leading asymptotic expansion of E(z) for |z| >= 5.

    In |arg z| <= pi/(2 rho): rho e^{z^rho} - 1/(z Gamma(1 - 1/rho));
    elsewhere the algebraic term alone.  Principal branch for z^rho.
    """
    if not rho > 1.0:
        raise ValueError("rho must be > 1")
    z = complex(z)
    if abs(z) < ASYMPTOTIC_FLOOR:
        raise ValueError(f"asymptotic expansion requires |z| >= {ASYMPTOTIC_FLOOR}")
    g1 = math.exp(ln_gamma(1.0 - 1.0 / rho))
    alg = sc_from_complex(-1.0 / (z * g1))
    if abs(cmath.phase(z)) <= math.pi / (2.0 * rho):
        zr = rho * cmath.log(z)
        expo = cmath.exp(zr)  # z^rho; modest magnitude, exponentiated in log form below
        lead = ScaledComplex(expo.real + math.log(rho), _wrap_phase(expo.imag))
        return sc_add(lead, alg)
    return alg


def _recip_gamma_tail_coef(x: float) -> float:
    """1/Gamma(1 - x) for real x > 0, via reflection once x >= 1."""
    if x < 1.0:
        return math.exp(-ln_gamma(1.0 - x))
    if x == round(x):
        return 0.0
    return math.sin(math.pi * x) * math.exp(ln_gamma(x)) / math.pi


_ASYM_COEF_CACHE: dict[float, np.ndarray] = {}
_ASYM_TERMS = 80


def _asym_coefs(rho: float) -> np.ndarray:
    coefs = _ASYM_COEF_CACHE.get(rho)
    if coefs is None:
        coefs = np.array([_recip_gamma_tail_coef(k / rho)
                          for k in range(1, _ASYM_TERMS + 1)])
        _ASYM_COEF_CACHE[rho] = coefs
    return coefs


def _ml_asym_batch(wv: np.ndarray, rho: float, deriv: bool = False
                   ) -> tuple[np.ndarray, np.ndarray]:
    """E(w) (or E'(w)) from the full asymptotic expansion, per point.

    rho e^{w^rho} (included where the principal branch applies,
    |arg w| <= pi/rho) minus sum_k w^{-k}/Gamma(1 - k/rho), each divergent
    tail truncated at its smallest term.  Used where direct summation dies
    of cancellation: that requires |w|^rho large, which is exactly where
    this expansion is exponentially accurate.  Returns (log_mag, phase).
    """
    wv = np.asarray(wv, dtype=complex)
    k = np.arange(1, _ASYM_TERMS + 1, dtype=float)
    winv = 1.0 / wv
    terms = _asym_coefs(rho)[None, :] * winv[:, None] ** k[None, :]
    if deriv:
        # d/dw of -sum c_k w^{-k} is +sum k c_k w^{-k-1}
        terms = terms * k[None, :] * winv[:, None]
    mags = np.abs(terms)
    # optimal truncation: stop at the first strict growth over the running
    # minimum of nonzero magnitudes (zero coefficients are transparent)
    prev_min = np.minimum.accumulate(np.where(mags > 0, mags, np.inf), axis=1)
    prev_min = np.concatenate([np.full((len(wv), 1), np.inf), prev_min[:, :-1]], axis=1)
    diverged = (mags > prev_min) & (mags > 0)
    stop = np.where(diverged.any(axis=1), diverged.argmax(axis=1), _ASYM_TERMS)
    csum = np.cumsum(terms, axis=1)
    alg = np.take_along_axis(csum, np.maximum(stop - 1, 0)[:, None], axis=1)[:, 0]
    alg = np.where(stop > 0, alg, 0.0)
    if not deriv:
        alg = -alg
    mag_a = np.abs(alg)
    with np.errstate(divide="ignore"):
        la = np.where(mag_a > 0, np.log(np.maximum(mag_a, 1e-300)), -np.inf)
    pa = np.angle(alg)

    theta = np.angle(wv)
    lr = np.log(np.abs(wv))
    rp = np.exp(rho * lr)
    le = rp * np.cos(rho * theta) + math.log(rho)
    pe = rp * np.sin(rho * theta)
    if deriv:
        # d/dw of rho e^{w^rho} = rho^2 w^{rho-1} e^{w^rho}
        le = le + math.log(rho) + (rho - 1.0) * lr
        pe = pe + (rho - 1.0) * theta
    le = np.where(np.abs(theta) <= math.pi / rho, le, -np.inf)

    base = np.maximum(le, la)
    with np.errstate(under="ignore", invalid="ignore"):
        v = np.where(le > -np.inf, np.exp(le - base + 1j * pe), 0.0) \
            + np.where(la > -np.inf, np.exp(la - base + 1j * pa), 0.0)
    mag_v = np.abs(v)
    with np.errstate(divide="ignore"):
        out_log = np.where(mag_v > 0, np.log(np.maximum(mag_v, 1e-300)) + base, -np.inf)
    return out_log, np.angle(v)


def _ml_asym_accurate(w: complex, rho: float, deriv: bool = False) -> ScaledComplex:
    lm, ph = _ml_asym_batch(np.array([complex(w)]), rho, deriv=deriv)
    if lm[0] == -np.inf:
        return SC_ZERO
    return ScaledComplex(float(lm[0]), _wrap_phase(float(ph[0])))


def _section_scaled(w_logabs: float, w_phase: float, n: int, rho: float) -> ScaledComplex:
    k = np.arange(0, n + 1, dtype=float)
    logt = k * w_logabs - _lgamma_table(rho, n + 1)[: n + 1]
    M = float(logt.max())
    with np.errstate(under="ignore"):
        total = complex(np.sum(np.exp(logt - M + 1j * (k * w_phase))))
    if total == 0:
        return SC_ZERO
    return ScaledComplex(M + math.log(abs(total)), _wrap_phase(cmath.phase(total)))


def section(z: complex, ctx: MLContext) -> ScaledComplex:
    """Section s_n(R_n z) in scaled form."""
    w = ctx.radius_value * complex(z)
    if w == 0:
        return ScaledComplex(0.0, 0.0)
    return _section_scaled(math.log(abs(w)), cmath.phase(w), ctx.n, ctx.rho)


def tail(z: complex, ctx: MLContext) -> ScaledComplex:
    """Tail t_{n+1}(R_n z) in scaled form.

    Forward summation while |R_n z| <= R_{n+1} (terms decrease from the
    start), otherwise E - s_n with a cancellation check.
    """
    w = ctx.radius_value * complex(z)
    if w == 0:
        return SC_ZERO
    lr = math.log(abs(w))
    ph = cmath.phase(w)
    n, rho, trunc = ctx.n, ctx.rho, ctx.trunc
    if abs(w) <= radius(n + 1, rho):
        M, _nu, kstop = _peak_and_cutoff(lr, None, rho, trunc, kstart=n + 1)
        return _sum_terms(lr, ph, M, kstop, rho, kstart=n + 1)
    full = ml_series(w, rho, trunc)
    sec = _section_scaled(lr, ph, n, rho)
    diff = sc_sub(full, sec)
    if not diff.is_zero and diff.log_mag < max(full.log_mag, sec.log_mag) - 18.5:
        warnings.warn(
            "tail via E - s_n lost more than half the working digits",
            CancellationWarning,
            stacklevel=2,
        )
    return diff


def combo(z: complex, ctx: MLContext) -> ScaledComplex:
    """I_n(R_n z; lam) = s_n(R_n z) - lam E(R_n z), in scaled form."""
    log_mag, phase = combo_batch(np.array([complex(z)]), ctx)
    if log_mag[0] == -np.inf:
        return SC_ZERO
    return ScaledComplex(float(log_mag[0]), float(phase[0]))


def combo_normalized(z: complex, ctx: MLContext) -> ScaledComplex:
    """combo(z) * Gamma(1 + n/rho) / (R_n z)^n, entirely in log space."""
    z = complex(z)
    if z == 0:
        raise ValueError("combo_normalized is undefined at z = 0")
    val = combo(z, ctx)
    if val.is_zero:
        return SC_ZERO
    n, rho = ctx.n, ctx.rho
    shift = ln_gamma(1.0 + n / rho) - n * (math.log(ctx.radius_value) + math.log(abs(z)))
    return ScaledComplex(val.log_mag + shift, _wrap_phase(val.phase - n * cmath.phase(z)))


def combo_derivative(z: complex, ctx: MLContext) -> ScaledComplex:
    """d/dz I_n(R_n z; lam) = R_n (s_n'(R_n z) - lam E'(R_n z))."""
    log_mag, phase = combo_batch(np.array([complex(z)]), ctx, deriv=True)
    if log_mag[0] == -np.inf:
        return SC_ZERO
    return ScaledComplex(float(log_mag[0]), float(phase[0]))


# --- vectorized evaluation over z-grids ------------------------------------


def combo_batch(zs: np.ndarray, ctx: MLContext, deriv: bool = False
                ) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate combo (or its z-derivative) on an array of points.

    Returns (log_mag, phase) float arrays; exact zeros carry log_mag=-inf.
    This is the hot path behind winding numbers and verification grids.
    """
    zs = np.asarray(zs, dtype=complex)
    flat = zs.ravel()
    n, rho, lam, trunc = ctx.n, ctx.rho, ctx.lam, ctx.trunc
    rn = ctx.radius_value
    w = rn * flat
    aw = np.abs(w)
    out_log = np.full(flat.shape, -np.inf)
    out_ph = np.zeros(flat.shape)

    zero_mask = aw == 0.0
    if zero_mask.any():
        if deriv:
            v = (1.0 - lam) * math.exp(-ln_gamma(1.0 + 1.0 / rho)) * rn
        else:
            v = 1.0 - lam
        sv = sc_from_complex(v)
        out_log[zero_mask] = sv.log_mag
        out_ph[zero_mask] = sv.phase
    live = ~zero_mask
    if not live.any():
        return out_log.reshape(zs.shape), out_ph.reshape(zs.shape)

    lw = np.log(aw[live])
    phw = np.angle(w[live])
    lr_max = float(lw.max())
    # the tail columns are kept even for lam = 0: the section's own terms
    # can cancel (interior peak, exterior phase), and the E - tail rewrite
    # needs them
    _M, _nu, kcut = _peak_and_cutoff(lr_max, None, rho, trunc)
    kcut = max(kcut, n + trunc.tail_margin)
    k = np.arange(0, kcut + 1, dtype=float)
    logc = _lgamma_table(rho, kcut + 1)[: kcut + 1].copy()
    if deriv:
        # coefficients k / Gamma(1 + k/rho), one power of w shifted out
        with np.errstate(divide="ignore"):
            logd = np.log(np.maximum(k, 1e-300)) - logc
        logd[0] = -np.inf

    idx_live = np.nonzero(live)[0]
    m = len(idx_live)
    chunk = max(1, 4_000_000 // (kcut + 1))
    res_log = np.empty(m)
    res_ph = np.empty(m)
    for c0 in range(0, m, chunk):
        c1 = min(c0 + chunk, m)
        lwc = lw[c0:c1, None]
        phc = phw[c0:c1, None]
        if deriv:
            logt = (k[None, :] - 1.0) * lwc + logd[None, :]
            pht = (k[None, :] - 1.0) * phc
        else:
            logt = k[None, :] * lwc - logc[None, :]
            pht = k[None, :] * phc
        msec = logt[:, : n + 1].max(axis=1)
        with np.errstate(under="ignore"):
            ssec = np.exp(logt[:, : n + 1] - msec[:, None] + 1j * pht[:, : n + 1]).sum(axis=1)
        if lam == 0:
            # the section is E - t_{n+1}; when its own terms cancel (value
            # far below the largest term) and the tail is forward-summable,
            # that difference is the accurate form
            vals_log, vals_ph = _log_polar(ssec, msec)
            with np.errstate(over="ignore"):
                awp_rho = np.exp(rho * lwc[:, 0])
            err_a = _LOG_EPS + msec
            forward_ok = lwc[:, 0] <= math.log(radius(n + 1, rho))
            err_c = np.where(
                forward_ok,
                np.logaddexp(-awp_rho, _LOG_EPS + logt[:, n + 1]),
                np.inf)
            suspect = (vals_log == -np.inf) | (err_a > vals_log - 13.8)
            use_c = suspect & (err_c < err_a)
            if use_c.any():
                idx = np.nonzero(use_c)[0]
                _tail_rewrite(idx, logt, pht, n, 1.0,
                              w[idx_live[c0:c1]][idx], rho, deriv,
                              vals_log, vals_ph)
        elif lam == 1:
            # combo is exactly -t_{n+1}(w); near the origin the difference
            # s_n - E cancels to rounding noise (the true value is
            # ~|w|^{n+1}), so sum the tail forward wherever its terms
            # decrease from the first one, and fall back to s_n - E beyond.
            tail_logt = logt[:, n + 1:]
            tail_pht = pht[:, n + 1:]
            mtl = tail_logt.max(axis=1)
            with np.errstate(under="ignore"):
                stl = np.exp(tail_logt - mtl[:, None] + 1j * tail_pht).sum(axis=1)
            vals_log, vals_ph = _log_polar(-stl, mtl)
            forward_ok = lwc[:, 0] <= math.log(radius(n + 1, rho))
            if not forward_ok.all():
                mml = logt.max(axis=1)
                with np.errstate(under="ignore"):
                    sml = np.exp(logt - mml[:, None] + 1j * pht).sum(axis=1)
                base = np.maximum(msec, mml)
                with np.errstate(under="ignore"):
                    cval = ssec * np.exp(msec - base) - sml * np.exp(mml - base)
                dlog, dph = _log_polar(cval, base)
                vals_log = np.where(forward_ok, vals_log, dlog)
                vals_ph = np.where(forward_ok, vals_ph, dph)
                with np.errstate(over="ignore"):
                    awp_rho = np.exp(rho * lwc[:, 0])
                noisy = (~forward_ok) & (np.abs(sml) < 1e-6) & (mml + awp_rho > 36.0)
                if noisy.any():
                    idx = np.nonzero(noisy)[0]
                    _rescue_points(idx, ssec, msec, w[idx_live[c0:c1]][idx],
                                   1.0, rho, deriv, vals_log, vals_ph)
        else:
            mml = logt.max(axis=1)
            with np.errstate(under="ignore"):
                sml = np.exp(logt - mml[:, None] + 1j * pht).sum(axis=1)
            base = np.maximum(msec, mml)
            with np.errstate(under="ignore"):
                cval = ssec * np.exp(msec - base) - lam * sml * np.exp(mml - base)
            vals_log, vals_ph = _log_polar(cval, base)
            # Three representations of s_n - lam*E with different rounding
            # floors (all logs of absolute error):
            #   A  direct series difference      eps * e^{max(msec, mml)}
            #   B  section - lam*E_asym          eps * e^{msec} + |lam| e^{-|w|^rho}
            #   C  (1-lam)*E_asym - forward tail |1-lam| e^{-|w|^rho}
            #                                      + eps * e^{first tail term}
            # C requires the tail terms to decrease from k = n+1 on
            # (|w| <= R_{n+1}).  Where A sits near its own noise floor,
            # switch to whichever alternative promises the smaller error.
            with np.errstate(over="ignore"):
                awp_rho = np.exp(rho * lwc[:, 0])
            err_a = _LOG_EPS + base
            err_b = np.logaddexp(_LOG_EPS + msec,
                                 -awp_rho + math.log(abs(lam)))
            forward_ok = lwc[:, 0] <= math.log(radius(n + 1, rho))
            err_c = np.where(
                forward_ok,
                np.logaddexp(-awp_rho + math.log(abs(1.0 - lam)),
                             _LOG_EPS + logt[:, n + 1]),
                np.inf)
            suspect = (vals_log == -np.inf) | (err_a > vals_log - 13.8)
            use_b = suspect & (err_b < err_a) & (err_b <= err_c)
            use_c = suspect & (err_c < err_a) & (err_c < err_b)
            if use_b.any():
                idx = np.nonzero(use_b)[0]
                _rescue_points(idx, ssec, msec, w[idx_live[c0:c1]][idx],
                               lam, rho, deriv, vals_log, vals_ph)
            if use_c.any():
                idx = np.nonzero(use_c)[0]
                _tail_rewrite(idx, logt, pht, n, 1.0 - lam,
                              w[idx_live[c0:c1]][idx], rho, deriv,
                              vals_log, vals_ph)
        res_log[c0:c1] = vals_log
        res_ph[c0:c1] = vals_ph
    if deriv:
        res_log = res_log + math.log(rn)
    out_log[idx_live] = res_log
    out_ph[idx_live] = res_ph
    return out_log.reshape(zs.shape), out_ph.reshape(zs.shape)


_LOG_EPS = math.log(2.0 ** -52)


def _tail_rewrite(idx: np.ndarray, logt: np.ndarray, pht: np.ndarray, n: int,
                  coef: complex, wv: np.ndarray, rho: float, deriv: bool,
                  vals_log: np.ndarray, vals_ph: np.ndarray) -> None:
    """Overwrite vals at idx with coef*E - t_{n+1}, E from the asymptotic
    form and the tail summed forward (its terms must be decreasing)."""
    tl = logt[idx, n + 1:]
    tp = pht[idx, n + 1:]
    mtl = tl.max(axis=1)
    with np.errstate(under="ignore"):
        stl = np.exp(tl - mtl[:, None] + 1j * tp).sum(axis=1)
    t_log, t_ph = _log_polar(stl, mtl)
    e_log, e_ph = _ml_asym_batch(wv, rho, deriv=deriv)
    coef = complex(coef)
    with np.errstate(divide="ignore"):
        e_log = e_log + (math.log(abs(coef)) if coef != 0 else -math.inf)
    e_ph = e_ph + cmath.phase(coef)
    bc = np.maximum(e_log, t_log)
    bc = np.where(np.isfinite(bc), bc, 0.0)
    with np.errstate(under="ignore"):
        v = np.where(e_log > -np.inf, np.exp(e_log - bc + 1j * e_ph), 0.0) \
            - np.where(t_log > -np.inf, np.exp(t_log - bc + 1j * t_ph), 0.0)
    vals_log[idx], vals_ph[idx] = _log_polar(v, bc)


def _rescue_points(idx: np.ndarray, ssec: np.ndarray, msec: np.ndarray,
                   wv: np.ndarray, lam: complex, rho: float, deriv: bool,
                   vals_log: np.ndarray, vals_ph: np.ndarray) -> None:
    """Overwrite vals at idx with section - lam*E, E from the asymptotic form."""
    sec = ssec[idx]
    mag_s = np.abs(sec)
    with np.errstate(divide="ignore"):
        sl = np.where(mag_s > 0, np.log(np.maximum(mag_s, 1e-300)) + msec[idx], -np.inf)
    sp = np.angle(sec)
    ml_l, ml_p = _ml_asym_batch(wv, rho, deriv=deriv)
    ml_l = ml_l + math.log(abs(lam))
    ml_p = ml_p + cmath.phase(lam)
    base = np.maximum(sl, ml_l)
    base = np.where(np.isfinite(base), base, 0.0)
    with np.errstate(under="ignore"):
        v = np.where(sl > -np.inf, np.exp(sl - base + 1j * sp), 0.0) \
            - np.where(ml_l > -np.inf, np.exp(ml_l - base + 1j * ml_p), 0.0)
    mag_v = np.abs(v)
    with np.errstate(divide="ignore"):
        vals_log[idx] = np.where(mag_v > 0,
                                 np.log(np.maximum(mag_v, 1e-300)) + base, -np.inf)
    vals_ph[idx] = np.angle(v)


def _log_polar(vals: np.ndarray, base: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mag = np.abs(vals)
    with np.errstate(divide="ignore"):
        log_mag = np.where(mag > 0, np.log(np.maximum(mag, 1e-300)) + base, -np.inf)
    return log_mag, np.angle(vals)

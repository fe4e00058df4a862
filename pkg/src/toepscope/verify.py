"""Independent numerical oracles.

Nothing here reuses the subspace formulas: Laurent windows come from
partial fractions (exact route) and from adaptive FFT sampling (sampling
route), truncated Toeplitz matrices come straight from Fourier
coefficients. The two routes cross-check each other and certify kernels,
cokernels and deficiency vectors produced elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CancellationError,
    InputError,
    InvalidElementError,
    NonConvergenceError,
    PoleTooCloseError,
    UnboundedSymbolError,
)
from .factorization import RationalSymbol, make_symbol
from .operator_analysis import RationalFun, _require_hardy, symbol_times
from .polynomial import Poly, _expand, poly_divmod, roots, taylor_coeffs

POLE_MARGIN = 1e-3
_FFT_TOL = 1e-11
_FFT_CAP = 1 << 20
_IP_TRUNC = 1e-13
_IP_CAP = 16384


@dataclass(frozen=True)
class FourierWindow:
    """Laurent coefficients on the index window [n_min, n_max]."""

    n_min: int
    n_max: int
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        assert len(self.coeffs) == self.n_max - self.n_min + 1

    def at(self, n: int) -> complex:
        if not self.n_min <= n <= self.n_max:
            raise IndexError(f"index {n} outside window [{self.n_min}, {self.n_max}]")
        return self.coeffs[n - self.n_min]

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)


def _check_margin(den: Poly):
    if den.degree == 0:
        return
    for b, _ in roots(den).entries:
        if abs(abs(b) - 1.0) <= POLE_MARGIN:
            raise PoleTooCloseError(
                f"pole at {b!r} within {POLE_MARGIN} of the circle")


def laurent_fft(f: RationalFun, n_min: int, n_max: int) -> FourierWindow:
    """Laurent window by sampling on the circle and DFT, grid doubled until
    two successive windows agree to 1e-11 (relative)."""
    if n_min > n_max:
        raise InputError("empty window")
    _check_margin(f.den)
    width = n_max - n_min + 1
    m = 256
    while m < 2 * width:
        m *= 2
    prev = None
    while m <= _FFT_CAP:
        zs = np.exp(2j * np.pi * np.arange(m) / m)
        vals = f.eval_array(zs)
        c = np.fft.fft(vals) / m
        window = c[np.arange(n_min, n_max + 1) % m]
        if prev is not None:
            scale = max(1.0, float(np.max(np.abs(window))))
            if float(np.max(np.abs(window - prev))) <= _FFT_TOL * scale:
                return FourierWindow(n_min=n_min, n_max=n_max, coeffs=tuple(window))
        prev = window
        m *= 2
    raise NonConvergenceError("FFT windows did not stabilize below the grid cap")


def laurent_exact(f: RationalFun, n_min: int, n_max: int) -> FourierWindow:
    """Laurent window by long division plus partial fractions.

    Inside poles feed the n <= -1 side, outside poles the n >= 0 side,
    with closed-form binomial coefficients; origin poles contribute single
    exact indices. Poles within 1e-3 of the circle are refused.
    """
    if n_min > n_max:
        raise InputError("empty window")
    _check_margin(f.den)
    ns = np.arange(n_min, n_max + 1)
    out = np.zeros(len(ns), dtype=complex)
    if f.num.is_zero:
        return FourierWindow(n_min=n_min, n_max=n_max, coeffs=tuple(out))
    q, rem = poly_divmod(f.num, f.den)
    for k, c in enumerate(q.coeffs):
        if n_min <= k <= n_max:
            out[k - n_min] += c
    if rem.is_zero or f.den.degree == 0:
        return FourierWindow(n_min=n_min, n_max=n_max, coeffs=tuple(out))
    entries = roots(f.den).entries
    for b, mult in entries:
        others = [(v, m2) for v, m2 in entries if v != b]
        deflated = _expand(others, 1.0)
        nt = taylor_coeffs(rem, b, order=mult)
        dt = taylor_coeffs(deflated, b, order=mult)
        t = [0j] * mult
        for k in range(mult):
            acc = nt[k]
            for i in range(1, k + 1):
                acc -= dt[i] * t[k - i]
            t[k] = acc / dt[0]
        for j in range(1, mult + 1):
            a = t[mult - j]
            if a == 0:
                continue
            if abs(b) <= 1e-300:  # exact origin pole: single index n = -j
                if n_min <= -j <= n_max:
                    out[-j - n_min] += a
                continue
            if abs(b) < 1.0:
                mask = ns <= -1
                if not mask.any():
                    continue
                nn = ns[mask]
                binom = np.ones(len(nn))
                for i in range(1, j):
                    binom *= (-nn - i) / i
                out[mask] += a * binom * b ** (-nn - j).astype(float)
            else:
                mask = ns >= 0
                if not mask.any():
                    continue
                nn = ns[mask]
                binom = np.ones(len(nn))
                for i in range(1, j):
                    binom *= (nn + i) / i
                out[mask] += a * (-1.0) ** j * binom * b ** (-nn - j).astype(float)
    return FourierWindow(n_min=n_min, n_max=n_max, coeffs=tuple(out))


# ---- Certificates ----


def kernel_residual(sym: RationalSymbol, u: RationalFun, n_max: int = 64) -> float:
    """Max |coeff(n)| of omega*u over 0 <= n <= n_max; ~0 certifies u in ker T."""
    _require_hardy(u, sym.eps_circle)
    f = symbol_times(sym, u)
    if f.den.degree > 0:
        for b, _ in roots(f.den).entries:
            if abs(abs(b) - 1.0) <= sym.eps_circle:
                raise CancellationError(
                    f"circle pole at {b!r} survived the product omega*u")
    w = laurent_exact(f, 0, n_max)
    return float(np.max(np.abs(w.as_array())))


def _inner_products(v: RationalFun, h: RationalFun, n_max: int) -> float:
    """max_n |<v, z^n h>| for 0 <= n <= n_max, truncated with a tail bound."""
    k_cap = 256
    while True:
        vw = laurent_exact(v, 0, k_cap).as_array()
        hw = laurent_exact(h, -n_max, k_cap).as_array()
        ip = np.empty(n_max + 1, dtype=complex)
        half = np.empty(n_max + 1, dtype=complex)
        q3 = np.empty(n_max + 1, dtype=complex)
        cut = k_cap // 2
        cut2 = (3 * k_cap) // 4
        cv = np.conj(vw)
        for n in range(n_max + 1):
            seg = hw[n_max - n: n_max - n + k_cap + 1]
            ip[n] = np.dot(cv, seg)
            half[n] = np.dot(cv[cut:], seg[cut:])
            q3[n] = np.dot(cv[cut:cut2], seg[cut:cut2])
        scale = max(1.0, float(np.max(np.abs(ip))))
        h1 = float(np.max(np.abs(half)))
        if h1 <= _IP_TRUNC * scale or k_cap >= _IP_CAP:
            break
        k_cap *= 2
    # geometric tail: the second half contributes h1, later blocks shrink by
    # roughly the last observed quarter-over-quarter ratio
    q4 = float(np.max(np.abs(half - q3)))
    q3m = float(np.max(np.abs(q3)))
    ratio = min(0.97, q4 / q3m) if q3m > 0 else 0.0
    tail = h1 * ratio / (1.0 - ratio)
    return float(np.max(np.abs(ip))) + tail


def orthogonality_residual(sym: RationalSymbol, v: RationalFun, n_max: int = 32) -> float:
    """max_n |<v, omega*s*e_n>| for 0 <= n <= n_max; ~0 certifies v orthogonal to ran T."""
    _require_hardy(v, sym.eps_circle)
    h = RationalFun(
        num=sym.R * (1.0 / sym.split_S.scale),
        den=sym.split_S.inside * sym.split_S.outside,
    )
    return _inner_products(v, h, n_max)


def deficiency_residual(sym: RationalSymbol, v: RationalFun, sign: str, n_max: int = 32) -> float:
    """Certificate for v in the +/- deficiency space: orthogonality to ran(T -+ iI).

    sign "+" tests against the numerator R - iS, sign "-" against R + iS.
    """
    if sign == "+":
        shifted_num = sym.R - 1j * sym.S
    elif sign == "-":
        shifted_num = sym.R + 1j * sym.S
    else:
        raise InputError(f"sign must be '+' or '-', got {sign!r}")
    shifted = make_symbol(shifted_num, sym.S, sym.eps_circle, sym.delta_coprime)
    return orthogonality_residual(shifted, v, n_max)


# ---- Matrix oracle ----


@dataclass(frozen=True, eq=False)
class ToeplitzMatrix:
    """Truncated N x N matrix with entries omega_hat(j - k)."""

    n: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        # constant diagonals, exact by construction
        e = self.entries
        assert e.shape == (self.n, self.n)
        if self.n > 1:
            assert np.array_equal(e[1:, 1:], e[:-1, :-1])

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.entries))))
        return float(np.max(np.abs(self.entries - self.entries.conj().T))) <= tol * scale


def toeplitz_matrix(sym: RationalSymbol, n: int) -> ToeplitzMatrix:
    """Truncation of the operator's matrix; bounded symbols only, n <= 4096."""
    if not sym.is_bounded:
        raise UnboundedSymbolError("matrix truncation needs a symbol without circle poles")
    if not 1 <= n <= 4096:
        raise InputError(f"matrix size {n} outside [1, 4096]")
    f = RationalFun(num=sym.R * (1.0 / sym.S.leading), den=sym.S.monic())
    w = laurent_exact(f, -(n - 1), n - 1).as_array()
    idx = np.subtract.outer(np.arange(n), np.arange(n)) + (n - 1)
    return ToeplitzMatrix(n=n, entries=w[idx])


def apply_residual(sym: RationalSymbol, u: RationalFun, n: int = 512) -> float:
    """|| (T_N u_hat)[0 : N/2] || / || u_hat ||: certifies T u ~ 0 without
    the truncation edge rows."""
    _require_hardy(u, sym.eps_circle)
    uh = laurent_exact(u, 0, n - 1).as_array()
    norm = float(np.linalg.norm(uh))
    if norm == 0.0:
        raise InvalidElementError("zero element has no apply residual")
    t = toeplitz_matrix(sym, n)
    y = t.entries @ uh
    return float(np.linalg.norm(y[: n // 2 + 1])) / norm


def decay_ratio(w: FourierWindow, k1: int, k2: int) -> float:
    """Empirical geometric decay ratio (|c_k2| / |c_k1|)**(1/(k2-k1))."""
    a, b = abs(w.at(k1)), abs(w.at(k2))
    if a == 0.0 or b == 0.0:
        return 0.0
    return float((b / a) ** (1.0 / (k2 - k1)))

"""Domain, kernel, cokernel and Fredholm data of a Toeplitz operator T with
rational symbol R/S on the Hardy space of the circle.

T acts as u -> P(omega * u) where P is the Hardy projection. Its domain is
s*H2 for the monic circle factor s of S; kernel and range complement are
finite-dimensional spaces of explicit rational functions read off the
circle splits of R and S. A Cayley pullback maps the symbol to a rational
function on the real line for half-plane comparisons.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidElementError,
    NoValidRotationError,
    ZeroPolynomialError,
)
from .factorization import RationalSymbol
from .polynomial import Poly, _expand, reflect, roots

_Z = Poly((0, 1))
_ONE = Poly((1,))

ROTATION_CLEARANCE = 1e-3
_ROTATION_GRID = 257


@dataclass(frozen=True)
class RationalFun:
    """Quotient num/den with monic denominator (den nonzero)."""

    num: Poly
    den: Poly

    @classmethod
    def make(cls, num: Poly, den: Poly) -> "RationalFun":
        if den.is_zero:
            raise ZeroPolynomialError("rational function with zero denominator")
        lead = den.leading
        return cls(num=num * (1.0 / lead), den=den.monic())

    def eval(self, z: complex) -> complex:
        return self.num.eval(z) / self.den.eval(z)

    def eval_array(self, zs: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.num.eval_array(zs) / self.den.eval_array(zs)

    def is_hardy_element(self, eps: float = 1e-8) -> bool:
        """True when every pole lies strictly outside the closed eps-disk."""
        if self.den.degree == 0:
            return True
        return all(abs(b) > 1.0 + eps for b, _ in roots(self.den).entries)


def _require_hardy(u: RationalFun, eps: float):
    if not u.is_hardy_element(eps):
        raise InvalidElementError("element has a pole inside or on the circle")


def symbol_times(sym: RationalSymbol, u: RationalFun) -> RationalFun:
    """The product omega * u with shared roots cancelled at root level.

    Root pairs closer than delta_coprime annihilate (multiplicity-wise);
    the rebuilt quotient is what the Laurent oracles expand.
    """
    if u.num.is_zero:
        return RationalFun(num=Poly(()), den=_ONE)
    num_pairs = [list(x) for x in roots(sym.R).entries + roots(u.num).entries]
    den_pairs = [list(x) for x in roots(sym.S).entries + roots(u.den).entries]
    delta = sym.delta_coprime
    for dp in den_pairs:
        while dp[1] > 0:
            best = None
            best_d = delta
            for np_pair in num_pairs:
                if np_pair[1] <= 0:
                    continue
                d = abs(np_pair[0] - dp[0])
                if d <= best_d:
                    best, best_d = np_pair, d
            if best is None:
                break
            take = min(best[1], dp[1])
            best[1] -= take
            dp[1] -= take
    lead = sym.R.leading * u.num.leading / sym.S.leading
    num = _expand([(v, m) for v, m in num_pairs if m > 0], lead)
    den = _expand([(v, m) for v, m in den_pairs if m > 0], 1.0)
    return RationalFun(num=num, den=den)


# ---- Subspace data ----


def domain_factor(sym: RationalSymbol) -> Poly:
    """Monic circle factor s of S; the operator's domain is s*H2."""
    return sym.split_S.on


def kernel_basis(sym: RationalSymbol) -> tuple[RationalFun, ...]:
    """Basis s*S_ex*z^j / R_ex, j < deg S_in - deg(r*R_in); empty if that is <= 0."""
    d = sym.split_S.inside.degree - (sym.split_R.on.degree + sym.split_R.inside.degree)
    if d <= 0:
        return ()
    num0 = sym.split_S.on * sym.split_S.outside
    den = sym.split_R.outside
    return tuple(RationalFun(num=num0 * (_Z ** j), den=den) for j in range(d))


def cokernel_basis(sym: RationalSymbol) -> tuple[RationalFun, ...]:
    """Basis reflect(S_in)*z^j / reflect(R_in), j < deg R_in - deg S_in."""
    d = sym.split_R.inside.degree - sym.split_S.inside.degree
    if d <= 0:
        return ()
    num0 = reflect(sym.split_S.inside) if sym.split_S.inside.degree > 0 else _ONE
    den = reflect(sym.split_R.inside) if sym.split_R.inside.degree > 0 else _ONE
    return tuple(RationalFun(num=num0 * (_Z ** j), den=den) for j in range(d))


def is_fredholm(sym: RationalSymbol) -> bool:
    """Fredholm iff the numerator has no circle zeros."""
    return sym.split_R.on.degree == 0


@dataclass(frozen=True)
class AnalysisReport:
    """Everything analyze() knows about one operator."""

    domain_on_factor: Poly
    kernel_basis: tuple[RationalFun, ...]
    cokernel_basis: tuple[RationalFun, ...]
    dim_ker: int
    dim_coker: int
    fredholm: bool
    index: int | None
    formal_degree_gap: int
    range_numerator: Poly
    range_denominator: Poly
    ill_conditioned: bool

    def __post_init__(self):
        assert self.dim_ker == len(self.kernel_basis) >= 0
        assert self.dim_coker == len(self.cokernel_basis) >= 0
        # one-sided invertibility: a kernel and a cokernel never coexist
        assert self.dim_ker * self.dim_coker == 0
        if self.fredholm:
            assert self.index == self.dim_ker - self.dim_coker


def analyze(sym: RationalSymbol) -> AnalysisReport:
    """Assemble domain factor, bases, dimensions and Fredholm data."""
    kb = kernel_basis(sym)
    cb = cokernel_basis(sym)
    fred = is_fredholm(sym)
    gap = sym.split_S.inside.degree - sym.split_R.inside.degree
    return AnalysisReport(
        domain_on_factor=domain_factor(sym),
        kernel_basis=kb,
        cokernel_basis=cb,
        dim_ker=len(kb),
        dim_coker=len(cb),
        fredholm=fred,
        index=gap if fred else None,
        formal_degree_gap=gap,
        range_numerator=sym.R,
        range_denominator=sym.split_S.inside * sym.split_S.outside,
        ill_conditioned=sym.ill_conditioned,
    )


def domain_membership(sym: RationalSymbol, u: RationalFun) -> bool:
    """Whether u (a Hardy element) lies in dom T: omega*u has no circle poles."""
    _require_hardy(u, sym.eps_circle)
    f = symbol_times(sym, u)
    if f.den.degree == 0:
        return True
    eps = sym.eps_circle
    return all(abs(abs(b) - 1.0) > eps for b, _ in roots(f.den).entries)


# ---- Cayley pullback ----


def cayley(x: complex) -> complex:
    """Upper half plane -> disk, real line -> circle minus {1}."""
    return (x - 1j) / (x + 1j)


def cayley_inv(w: complex) -> complex:
    return 1j * (1 + w) / (1 - w)


@dataclass(frozen=True)
class CayleyPullback:
    """P/Q on the real line equals omega(e^{i alpha} C(x)); deg P = deg Q = max(deg R, deg S)."""

    P: Poly
    Q: Poly
    alpha: float


def cayley_pullback(sym: RationalSymbol, alpha: float = 0.0) -> CayleyPullback:
    """Pull the symbol back to a rational function on the real line.

    The rotation alpha must keep e^{i alpha} clear of all roots of R*S
    (the Cayley chart omits that point); when the requested alpha fails,
    angles 2*pi*k/257 are scanned.
    """
    root_vals = roots(sym.R).values() + roots(sym.S).values()
    chosen = None
    for a in [alpha] + [2.0 * np.pi * k / _ROTATION_GRID for k in range(_ROTATION_GRID)]:
        e = cmath.exp(1j * a)
        if all(abs(e - b) > ROTATION_CLEARANCE for b in root_vals):
            chosen = a
            break
    if chosen is None:
        raise NoValidRotationError("no rotation cleared the symbol's roots")
    e = cmath.exp(1j * chosen)
    m, n = sym.R.degree, sym.S.degree
    p_pairs = [(cayley_inv(b / e), mult) for b, mult in roots(sym.R).entries]
    q_pairs = [(cayley_inv(b / e), mult) for b, mult in roots(sym.S).entries]
    P0 = (Poly((1j, 1)) ** max(0, n - m)) * _expand(p_pairs, 1.0)
    Q0 = (Poly((1j, 1)) ** max(0, m - n)) * _expand(q_pairs, 1.0)
    # calibrate the scalar at a well-separated real point
    scale_p = max(abs(c) for c in P0.coeffs)
    scale_q = max(abs(c) for c in Q0.coeffs)
    for x0 in (0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 3.0, -3.0, 0.25, -0.25, 5.0, -5.0):
        pv, qv = P0.eval(x0), Q0.eval(x0)
        w = e * cayley(x0)
        sv = sym.S.eval(w)
        if (abs(pv) > 1e-8 * scale_p and abs(qv) > 1e-8 * scale_q
                and abs(sv) > 1e-12 * max(1.0, max(abs(c) for c in sym.S.coeffs))):
            c = sym.eval(w) * qv / pv
            return CayleyPullback(P=c * P0, Q=Q0, alpha=chosen)
    raise NoValidRotationError("no usable calibration point for the pullback scale")


def pullback_residual(sym: RationalSymbol, pb: CayleyPullback, n_points: int = 32) -> float:
    """Max |P/Q - omega(e^{i alpha} C(x))| over n_points well-conditioned real x.

    Candidates are tan-spaced over the line; points whose image on the
    circle sits near a pole of the symbol are ranked out, since there both
    sides blow up and the comparison is meaningless.
    """
    k = np.arange(4 * n_points)
    xs = np.tan(np.pi * (k + 0.5) / len(k) - np.pi / 2.0)
    ws = np.exp(1j * pb.alpha) * (xs - 1j) / (xs + 1j)
    score = np.full(len(xs), np.inf)
    for b, _ in roots(sym.S).entries:
        score = np.minimum(score, np.abs(ws - b))
    order = np.argsort(-score, kind="stable")[:n_points]
    lhs = pb.P.eval_array(xs[order]) / pb.Q.eval_array(xs[order])
    rhs = sym.eval_array(ws[order])
    return float(np.max(np.abs(lhs - rhs)))

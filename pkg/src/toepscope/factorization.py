"""Rational symbols R/S and their circle-split factorizations.

A symbol's numerator and denominator are each split into monic factors by
root modulus relative to the unit circle: on (within eps of it), inside,
outside, times the original leading coefficient. Everything downstream
(domain factors, kernel dimensions, spectral parts, deficiency indices)
is bookkeeping on these factors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CoprimalityError,
    DegreeCapError,
    GenerationError,
    InputError,
    NonConvergenceError,
    ZeroPolynomialError,
)
from .polynomial import (
    DEGREE_CAP,
    Poly,
    _expand,
    recip_conj,
    reflect,
    roots,
)

EPS_CIRCLE = 1e-8
DELTA_COPRIME = 1e-7
REALNESS_TOL = 1e-9


@dataclass(frozen=True)
class CircleSplit:
    """p = scale * on * inside * outside with monic factors.

    boundary_warning is set when some root falls in the ambiguity band
    (eps, 2*eps] around the circle: the classification stands but a tiny
    perturbation could flip it.
    """

    on: Poly
    inside: Poly
    outside: Poly
    scale: complex
    eps: float
    boundary_warning: bool

    def reconstruct(self) -> Poly:
        return self.scale * (self.on * self.inside * self.outside)


def circle_split(p: Poly, eps: float = EPS_CIRCLE) -> CircleSplit:
    """Split a nonzero polynomial by root modulus against the unit circle."""
    if p.is_zero:
        raise ZeroPolynomialError("cannot circle-split the zero polynomial")
    rs = roots(p)
    on, ins, out = [], [], []
    warning = False
    for b, m in rs.entries:
        d = abs(abs(b) - 1.0)
        if d <= eps:
            on.append((b, m))
        elif abs(b) < 1.0:
            ins.append((b, m))
        else:
            out.append((b, m))
        if eps < d <= 2.0 * eps:
            warning = True
    return CircleSplit(
        on=_expand(on, 1.0),
        inside=_expand(ins, 1.0),
        outside=_expand(out, 1.0),
        scale=p.leading,
        eps=eps,
        boundary_warning=warning,
    )


@dataclass(frozen=True)
class DerivedFactors:
    """Composite factors read off a circle split.

    closed_outside: on * outside (all roots of modulus >= 1-eps)
    closed_inside:  on * inside  (all roots of modulus <= 1+eps)
    reflected_inside: monic polynomial with roots 1/conj(b) over the
        inside factor's roots; it sits strictly outside the circle.
    """

    closed_outside: Poly
    closed_inside: Poly
    reflected_inside: Poly


def _derived(split: CircleSplit) -> DerivedFactors:
    return DerivedFactors(
        closed_outside=split.on * split.outside,
        closed_inside=split.on * split.inside,
        reflected_inside=reflect(split.inside) if split.inside.degree > 0 else Poly((1,)),
    )


@dataclass(frozen=True)
class RationalSymbol:
    """A validated rational symbol R/S, coprime, with cached splits."""

    R: Poly
    S: Poly
    split_R: CircleSplit
    split_S: CircleSplit
    real_on_circle: bool
    eps_circle: float
    delta_coprime: float

    def eval(self, z: complex) -> complex:
        return self.R.eval(z) / self.S.eval(z)

    def eval_array(self, zs: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.R.eval_array(zs) / self.S.eval_array(zs)

    @property
    def is_bounded(self) -> bool:
        return self.split_S.on.degree == 0

    @property
    def ill_conditioned(self) -> bool:
        return self.split_R.boundary_warning or self.split_S.boundary_warning


def is_real_on_circle(R: Poly, S: Poly, tol: float = REALNESS_TOL) -> bool:
    """Whether R/S takes real values on the unit circle.

    Algebraic test: the Laurent polynomial R(z)*conj_S(1/z) - conj_R(1/z)*S(z)
    must vanish identically (conj_X has conjugated coefficients).
    """
    if R.is_zero:
        return True
    r = np.array(R.coeffs, dtype=complex)
    s = np.array(S.coeffs, dtype=complex)
    a = np.convolve(r, np.conj(s)[::-1])  # spans z^(-deg S) .. z^(deg R)
    b = np.convolve(np.conj(r)[::-1], s)  # spans z^(-deg R) .. z^(deg S)
    m, n = R.degree, S.degree
    big = max(m, n)
    width = 2 * big + 1
    diff = np.zeros(width, dtype=complex)
    diff[big - n: big - n + len(a)] += a
    diff[big - m: big - m + len(b)] -= b
    scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    return float(np.max(np.abs(diff))) <= tol * scale


def make_symbol(R: Poly, S: Poly,
                eps_circle: float = EPS_CIRCLE,
                delta_coprime: float = DELTA_COPRIME) -> RationalSymbol:
    """Validate and package a rational symbol.

    Rejects zero R or S (the zero symbol is excluded), degrees over the
    cap, and root pairs of R and S closer than delta_coprime.
    """
    if S.is_zero:
        raise ZeroPolynomialError("denominator is the zero polynomial")
    if R.is_zero:
        raise ZeroPolynomialError("zero numerator: the zero symbol is excluded")
    if R.degree > DEGREE_CAP or S.degree > DEGREE_CAP:
        raise DegreeCapError(
            f"symbol degrees ({R.degree}, {S.degree}) exceed cap {DEGREE_CAP}")
    root_R = roots(R)
    root_S = roots(S)
    for a, _ in root_R.entries:
        for b, _ in root_S.entries:
            if abs(a - b) <= delta_coprime:
                raise CoprimalityError(
                    f"numerator and denominator share a root near {a!r}")
    return RationalSymbol(
        R=R,
        S=S,
        split_R=circle_split(R, eps_circle),
        split_S=circle_split(S, eps_circle),
        real_on_circle=is_real_on_circle(R, S),
        eps_circle=eps_circle,
        delta_coprime=delta_coprime,
    )


def derived_factors(sym: RationalSymbol, which: str) -> DerivedFactors:
    """Composite factors of the numerator or denominator split."""
    if which == "numerator":
        return _derived(sym.split_R)
    if which == "denominator":
        return _derived(sym.split_S)
    raise InputError(f"which must be 'numerator' or 'denominator', got {which!r}")


def random_real_symbol(max_block_deg: int = 3,
                       n_circle_poles: int = 0,
                       seed: int = 0) -> RationalSymbol:
    """Seeded random symbol that is real on the circle.

    Built as a real linear combination of blocks U * recip_conj(U) / z**deg U
    (each equals |U|^2 on the circle), then divided by factors
    i(z - g)/(z + g) with |g| = 1 to inject circle poles. Draws that fail
    validation are rejected and redrawn; GenerationError after 100 tries.
    """
    rng = np.random.default_rng(seed)
    z = Poly((0, 1))
    for _ in range(100):
        n_blocks = int(rng.integers(1, 3))
        degs = [int(rng.integers(1, max_block_deg + 1)) for _ in range(n_blocks)]
        big = max(degs)
        num = Poly(())
        for d in degs:
            cs = rng.normal(size=d + 1) + 1j * rng.normal(size=d + 1)
            while abs(cs[-1]) < 0.3:
                cs[-1] = rng.normal() + 1j * rng.normal()
            u = Poly(tuple(cs))
            block = u * recip_conj(u) * (z ** (big - d))
            num = num + float(rng.normal()) * block
        if num.is_zero:
            continue
        den = z ** big
        for _ in range(n_circle_poles):
            g = complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
            num = num * Poly((g, 1))
            den = den * Poly((-1j * g, 1j))
        try:
            sym = make_symbol(num, den)
        except (CoprimalityError, NonConvergenceError, ZeroPolynomialError):
            continue
        if not sym.real_on_circle:
            continue
        return sym
    raise GenerationError("no valid real symbol after 100 draws")

"""Pointwise spectral classification for a Toeplitz operator with rational
symbol R/S.

For each complex lambda the circle split of R - lambda*S carries everything:
whether lambda sits on the symbol curve omega(T), which part of the spectrum
it belongs to, kernel/cokernel dimensions of T - lambda, and the Fredholm
index. A portrait rasterizes the classification over a rectangular grid; the
winding number gives an argument-principle route to the index that shares no
code with the degree bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    ConstantShiftError,
    InputError,
    NumericalError,
    OracleInapplicableError,
    PhaseJumpError,
)
from .factorization import RationalSymbol, circle_split
from .polynomial import Poly

PORTRAIT_CELL_CAP = 4_000_000
_WINDING_CAP = 2 ** 20


class SpectralPart(Enum):
    RESOLVENT = "Resolvent"
    POINT = "Point"
    CONTINUOUS = "Continuous"
    RESIDUAL = "Residual"


@dataclass(frozen=True)
class ShiftDegrees:
    """Interior degree of S and interior/closed-interior degrees of R - lambda*S."""

    s_in: int
    rl_in: int
    rl_in_bar: int

    def __post_init__(self):
        assert 0 <= self.rl_in <= self.rl_in_bar
        assert self.s_in >= 0


def _expected_part(on_curve: bool, d: ShiftDegrees) -> SpectralPart:
    if not on_curve and d.s_in == d.rl_in:
        return SpectralPart.RESOLVENT
    if d.rl_in_bar < d.s_in:
        return SpectralPart.POINT
    if d.s_in < d.rl_in:
        return SpectralPart.RESIDUAL
    return SpectralPart.CONTINUOUS


@dataclass(frozen=True)
class SpectrumReport:
    """Classification of one lambda.

    infinite_dimensional marks the degenerate constant-symbol eigenvalue,
    where the kernel is all of the domain and the dimension counters do not
    apply; ill_conditioned marks boundary-band ambiguity or a per-node
    fallback inside a portrait.
    """

    lam: complex
    on_curve: bool
    fredholm: bool
    part: SpectralPart
    regular_value: bool
    dim_ker: int
    dim_coker: int
    index: int | None
    degrees: ShiftDegrees
    infinite_dimensional: bool = False
    ill_conditioned: bool = False

    def __post_init__(self):
        d = self.degrees
        if self.infinite_dimensional:
            assert self.part is SpectralPart.POINT
            assert self.on_curve and not self.fredholm and not self.regular_value
            assert self.index is None
            return
        assert self.fredholm == (not self.on_curve)
        assert self.part is _expected_part(self.on_curve, d)
        assert self.dim_ker == max(0, d.s_in - d.rl_in_bar)
        assert self.dim_coker == max(0, d.rl_in - d.s_in)
        assert self.regular_value == (not self.on_curve and d.s_in <= d.rl_in)
        if self.fredholm:
            assert self.index == d.s_in - d.rl_in
            assert self.dim_ker * self.dim_coker == 0
        else:
            assert self.index is None


def shifted_numerator(sym: RationalSymbol, lam: complex) -> Poly:
    """The numerator R - lambda*S of omega - lambda (coprime with S for free)."""
    rl = sym.R - sym.S * lam
    if rl.is_zero:
        raise ConstantShiftError("symbol is identically equal to lambda")
    return rl


def on_symbol_curve(sym: RationalSymbol, lam: complex, eps: float | None = None) -> bool:
    """Whether lambda lies on omega(T), i.e. R - lambda*S has a circle zero."""
    try:
        rl = shifted_numerator(sym, lam)
    except ConstantShiftError:
        return True
    return circle_split(rl, sym.eps_circle if eps is None else eps).on.degree > 0


def classify(sym: RationalSymbol, lam: complex, eps: float | None = None) -> SpectrumReport:
    """Classify lambda from the circle split of R - lambda*S."""
    try:
        rl = shifted_numerator(sym, lam)
    except ConstantShiftError:
        return SpectrumReport(
            lam=lam, on_curve=True, fredholm=False, part=SpectralPart.POINT,
            regular_value=False, dim_ker=0, dim_coker=0, index=None,
            degrees=ShiftDegrees(0, 0, 0), infinite_dimensional=True,
            ill_conditioned=sym.ill_conditioned,
        )
    split = circle_split(rl, sym.eps_circle if eps is None else eps)
    d = ShiftDegrees(
        s_in=sym.split_S.inside.degree,
        rl_in=split.inside.degree,
        rl_in_bar=split.inside.degree + split.on.degree,
    )
    on_curve = split.on.degree > 0
    return SpectrumReport(
        lam=lam,
        on_curve=on_curve,
        fredholm=not on_curve,
        part=_expected_part(on_curve, d),
        regular_value=not on_curve and d.s_in <= d.rl_in,
        dim_ker=max(0, d.s_in - d.rl_in_bar),
        dim_coker=max(0, d.rl_in - d.s_in),
        index=d.s_in - d.rl_in if not on_curve else None,
        degrees=d,
        ill_conditioned=sym.ill_conditioned or split.boundary_warning,
    )


@dataclass(frozen=True)
class PortraitGrid:
    """Row-major classification grid; rows ordered by ascending Im(lambda)."""

    xs: tuple[float, ...]
    ys: tuple[float, ...]
    cells: tuple[SpectrumReport, ...]

    def __post_init__(self):
        assert len(self.cells) == len(self.xs) * len(self.ys)

    def at(self, ix: int, iy: int) -> SpectrumReport:
        return self.cells[iy * len(self.xs) + ix]


def _fallback_report(lam: complex) -> SpectrumReport:
    return SpectrumReport(
        lam=lam, on_curve=True, fredholm=False, part=SpectralPart.CONTINUOUS,
        regular_value=False, dim_ker=0, dim_coker=0, index=None,
        degrees=ShiftDegrees(0, 0, 0), ill_conditioned=True,
    )


def portrait(sym: RationalSymbol, x0: float, x1: float, y0: float, y1: float,
             nx: int, ny: int) -> PortraitGrid:
    """Classify every node of an inclusive nx-by-ny grid over [x0,x1]x[y0,y1].

    Nodes are independent of each other; a node whose classification fails
    numerically is retried with a doubled circle band and, failing that,
    recorded as an ill-conditioned Continuous placeholder rather than
    aborting the grid.
    """
    if nx < 1 or ny < 1:
        raise InputError("grid needs nx >= 1 and ny >= 1")
    if nx * ny > PORTRAIT_CELL_CAP:
        raise InputError(f"grid has {nx * ny} nodes, cap is {PORTRAIT_CELL_CAP}")
    xs = np.linspace(x0, x1, nx)
    ys = np.linspace(y0, y1, ny)
    cells = []
    for y in ys:
        for x in xs:
            lam = complex(x, y)
            try:
                cells.append(classify(sym, lam))
            except NumericalError:
                try:
                    cells.append(classify(sym, lam, eps=2.0 * sym.eps_circle))
                except NumericalError:
                    cells.append(_fallback_report(lam))
    return PortraitGrid(xs=tuple(float(x) for x in xs),
                        ys=tuple(float(y) for y in ys),
                        cells=tuple(cells))


def _poly_winding(p: Poly, m0: int) -> int:
    """Winding of p(e^{i theta}) around 0 by phase unwrapping at >= m0 samples."""
    m = m0
    while m <= _WINDING_CAP:
        theta = np.arange(m) * (2.0 * np.pi / m)
        vals = p.eval_array(np.exp(1j * theta))
        if np.all(np.abs(vals) > 0):
            ph = np.angle(vals)
            d = np.diff(np.concatenate([ph, ph[:1]]))
            d = (d + np.pi) % (2.0 * np.pi) - np.pi
            if float(np.max(np.abs(d))) <= np.pi / 2.0:
                return int(round(float(np.sum(d)) / (2.0 * np.pi)))
        m *= 2
    raise PhaseJumpError("phase steps stayed above pi/2 at the resolution cap")


def winding_number(sym: RationalSymbol, lam: complex, m_samples: int = 4096) -> int:
    """Winding of omega - lambda around 0, as wind(R - lambda*S) - wind(S).

    Only defined for bounded symbols with lambda off the curve; the Fredholm
    index of T - lambda equals minus this winding.
    """
    if m_samples < 256:
        raise InputError("winding_number needs m_samples >= 256")
    if sym.split_S.on.degree > 0:
        raise OracleInapplicableError("winding oracle requires a symbol with no circle poles")
    rl = shifted_numerator(sym, lam)
    return _poly_winding(rl, m_samples) - _poly_winding(sym.S, m_samples)

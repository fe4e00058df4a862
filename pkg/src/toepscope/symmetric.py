"""Deficiency theory for symbols that are real on the circle.

The operator is symmetric exactly when omega(T) is real. Splitting
R - iS = scale * p * q across the circle (p interior roots, q exterior; the
circle itself carries none) yields the deficiency indices

    n_plus  = deg p - deg S_in        (defect of ran(T - i))
    n_minus = l + deg q - deg S_in    (defect of ran(T + i))

with l read off the companion identity R + iS = c * z^l * reflect(p) * reflect(q),
which is also verified numerically as a guard against root misclassification.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import RealnessError, TheoryViolationError
from .factorization import RationalSymbol, circle_split
from .operator_analysis import RationalFun
from .polynomial import Poly, reflect

PLUS_IDENTITY_TOL = 1e-6

_Z = Poly((0, 1))


class SymmetryClass(Enum):
    SELF_ADJOINT_BOUNDED = "SelfAdjointBounded"
    MAXIMAL_SYMMETRIC = "MaximalSymmetric"
    PROPER_SYMMETRIC = "ProperSymmetric"


@dataclass(frozen=True)
class DeficiencyReport:
    """Deficiency data of a symmetric T with real symbol.

    p and q are the monic interior/exterior factors of R - iS; c_scale is
    the constant in R + iS = c z^l reflect(p) reflect(q), and
    plus_identity_residual the relative coefficient error of that identity.
    """

    p: Poly
    q: Poly
    l: int
    n_plus: int
    n_minus: int
    basis_plus: tuple[RationalFun, ...]
    basis_minus: tuple[RationalFun, ...]
    symmetry_class: SymmetryClass
    c_scale: complex
    plus_identity_residual: float

    def __post_init__(self):
        assert self.l >= 0 and self.n_plus >= 0 and self.n_minus >= 0
        assert len(self.basis_plus) == self.n_plus
        assert len(self.basis_minus) == self.n_minus
        assert abs(self.p.leading - 1) < 1e-12 and abs(self.q.leading - 1) < 1e-12
        want = _classify_symmetry(self.n_plus, self.n_minus)
        assert self.symmetry_class is want
        assert self.c_scale != 0


def _classify_symmetry(n_plus: int, n_minus: int) -> SymmetryClass:
    if n_plus == 0 and n_minus == 0:
        return SymmetryClass.SELF_ADJOINT_BOUNDED
    if n_plus == 0 or n_minus == 0:
        return SymmetryClass.MAXIMAL_SYMMETRIC
    return SymmetryClass.PROPER_SYMMETRIC


def split_R_minus_iS(sym: RationalSymbol) -> tuple[Poly, Poly]:
    """Monic factors (p, q) of R - iS by root modulus; the circle carries none.

    A root landing in the eps band contradicts the realness hypothesis and is
    reported as a theory violation (it signals root-solver trouble).
    """
    if not sym.real_on_circle:
        raise RealnessError("deficiency theory needs a symbol real on the circle")
    split = circle_split(sym.R - sym.S * 1j, sym.eps_circle)
    if split.on.degree > 0:
        raise TheoryViolationError(
            "R - iS has a zero in the circle band; impossible for real symbols")
    return split.inside, split.outside


def _fit_plus_scale(plus: Poly, model: Poly) -> tuple[complex, float]:
    """Scalar c with plus ~ c*model, and the max relative coefficient error."""
    scale = max(abs(v) for v in plus.coeffs)
    model_scale = max(1.0, max(abs(v) for v in model.coeffs))
    for z0 in (1.0, -1.0, 0.6 + 0.8j, -0.6 - 0.8j):
        mv = model.eval(z0)
        if abs(mv) > 1e-9 * model_scale:
            c = plus.eval(z0) / mv
            break
    else:
        raise TheoryViolationError("plus-identity model vanishes at every probe point")
    diff = plus - model * c
    resid = 0.0 if diff.is_zero else max(abs(v) for v in diff.coeffs) / scale
    return c, float(resid)


def deficiency(sym: RationalSymbol) -> DeficiencyReport:
    """Deficiency indices, defect-space bases and the symmetry classification."""
    p, q = split_R_minus_iS(sym)
    plus = sym.R + sym.S * 1j
    p_ref, q_ref = reflect(p), reflect(q)
    l = plus.degree - p_ref.degree - q_ref.degree
    s_in = sym.split_S.inside.degree
    n_plus = p.degree - s_in
    n_minus = l + q.degree - s_in
    if l < 0 or n_plus < 0 or n_minus < 0:
        raise TheoryViolationError(
            f"negative deficiency bookkeeping (l={l}, n+={n_plus}, n-={n_minus})")
    s_ref = reflect(sym.split_S.inside)
    basis_plus = tuple(
        RationalFun.make(num=s_ref * (_Z ** j), den=p_ref) for j in range(n_plus))
    basis_minus = tuple(
        RationalFun.make(num=s_ref * (_Z ** j), den=q) for j in range(n_minus))
    c, resid = _fit_plus_scale(plus, (_Z ** l) * p_ref * q_ref)
    if resid > PLUS_IDENTITY_TOL:
        raise TheoryViolationError(
            f"R + iS identity residual {resid:.3e} exceeds {PLUS_IDENTITY_TOL}")
    return DeficiencyReport(
        p=p, q=q, l=l, n_plus=n_plus, n_minus=n_minus,
        basis_plus=basis_plus, basis_minus=basis_minus,
        symmetry_class=_classify_symmetry(n_plus, n_minus),
        c_scale=c, plus_identity_residual=resid,
    )


def verify_plus_identity(sym: RationalSymbol) -> float:
    """Residual of R + iS = c z^l reflect(p) reflect(q); raises above 1e-6."""
    return deficiency(sym).plus_identity_residual

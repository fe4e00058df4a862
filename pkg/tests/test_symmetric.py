"""Deficiency indices and defect bases for real symbols, certified against
the orthogonality oracle and the cokernel bases of the shifted symbols."""

import numpy as np
import pytest

from toepscope.errors import RealnessError
from toepscope.factorization import make_symbol, random_real_symbol
from toepscope.operator_analysis import cokernel_basis, domain_factor
from toepscope.polynomial import Poly
from toepscope.symmetric import (
    SymmetryClass,
    deficiency,
    split_R_minus_iS,
    verify_plus_identity,
)
from toepscope.verify import deficiency_residual

Z = Poly((0, 1))
ONE = Poly((1,))

PHI = (1 + np.sqrt(5)) / 2


def _mobius(a):
    # i(z-a)/(z+a), real on the circle for |a| = 1
    return make_symbol(Poly((-1j * a, 1j)), Poly((a, 1)))


def test_split_frozen_quadratic():
    sym = make_symbol(Poly((1, 0, 1)), Z)
    p, q = split_R_minus_iS(sym)
    assert p.degree == 1 and q.degree == 1
    assert abs(p.coeffs[0] - 1j * (PHI - 1)) < 1e-12   # root -i(phi-1)
    assert abs(q.coeffs[0] + 1j * PHI) < 1e-12          # root i*phi


def test_split_constant_difference():
    p, q = split_R_minus_iS(_mobius(1.0))
    assert p.degree == 0 and q.degree == 0


def test_split_requires_realness():
    with pytest.raises(RealnessError):
        split_R_minus_iS(make_symbol(Z, ONE))
    with pytest.raises(RealnessError):
        deficiency(make_symbol(ONE, Z))


def test_deficiency_mobius_family():
    for a in (1.0, -1.0, 1j, np.exp(0.3j)):
        rep = deficiency(_mobius(a))
        assert (rep.n_plus, rep.n_minus, rep.l) == (0, 1, 1)
        assert rep.symmetry_class is SymmetryClass.MAXIMAL_SYMMETRIC
        (v,) = rep.basis_minus
        assert v.num.degree == 0 and v.den.degree == 0
        assert rep.plus_identity_residual < 1e-12
        assert deficiency_residual(_mobius(a), v, "-", 32) < 1e-8


def test_deficiency_mobius_scale():
    rep = deficiency(_mobius(1.0))
    assert abs(rep.c_scale - 2j) < 1e-12  # R + iS = 2iz


def test_deficiency_self_adjoint_bounded():
    sym = make_symbol(Poly((1, 0, 1)), Z)
    rep = deficiency(sym)
    assert (rep.n_plus, rep.n_minus, rep.l) == (0, 0, 0)
    assert rep.symmetry_class is SymmetryClass.SELF_ADJOINT_BOUNDED
    assert rep.basis_plus == () and rep.basis_minus == ()
    assert abs(rep.c_scale - 1.0) < 1e-10
    assert rep.plus_identity_residual < 1e-10
    assert sym.is_bounded


def test_deficiency_real_constant():
    rep = deficiency(make_symbol(Poly((2.5,)), ONE))
    assert rep.symmetry_class is SymmetryClass.SELF_ADJOINT_BOUNDED
    assert abs(rep.c_scale - (2.5 + 1j)) < 1e-14


def test_deficiency_proper_symmetric_product():
    # product of two Mobius symbols: two circle poles, indices (1, 1)
    R = Poly((-1, 1)) * Poly((-1j, 1)) * (-1)
    S = Poly((1, 1)) * Poly((1j, 1))
    sym = make_symbol(R, S)
    assert sym.real_on_circle
    rep = deficiency(sym)
    assert (rep.n_plus, rep.n_minus, rep.l) == (1, 1, 0)
    assert rep.symmetry_class is SymmetryClass.PROPER_SYMMETRIC
    root_p = (1 - np.sqrt(3)) * (1 - 1j) / 2
    root_q = (1 + np.sqrt(3)) * (1 - 1j) / 2
    assert abs(rep.p.eval(root_p)) < 1e-10
    assert abs(rep.q.eval(root_q)) < 1e-10
    (vp,) = rep.basis_plus
    (vm,) = rep.basis_minus
    assert deficiency_residual(sym, vp, "+", 32) < 1e-8
    assert deficiency_residual(sym, vm, "-", 32) < 1e-8


def test_bases_match_shifted_cokernels():
    for sym in (_mobius(1.0), _mobius(1j),
                make_symbol(Poly((-1, 1)) * Poly((-1j, 1)) * (-1),
                            Poly((1, 1)) * Poly((1j, 1)))):
        rep = deficiency(sym)
        cb_plus = cokernel_basis(make_symbol(sym.R - sym.S * 1j, sym.S))
        cb_minus = cokernel_basis(make_symbol(sym.R + sym.S * 1j, sym.S))
        assert len(cb_plus) == rep.n_plus and len(cb_minus) == rep.n_minus
        for v, w in list(zip(rep.basis_plus, cb_plus)) + list(zip(rep.basis_minus, cb_minus)):
            assert v.num.degree == w.num.degree and v.den.degree == w.den.degree
            zs = np.exp(1j * np.linspace(0.1, 6.0, 7))
            assert np.allclose(v.eval_array(zs), w.eval_array(zs), atol=1e-9)


def test_plus_identity_random_real():
    for seed in range(25):
        sym = random_real_symbol(max_block_deg=3, n_circle_poles=seed % 3, seed=seed)
        assert verify_plus_identity(sym) < 1e-6


def test_indices_nonnegative_random():
    for seed in range(40):
        sym = random_real_symbol(max_block_deg=3, n_circle_poles=seed % 3, seed=1000 + seed)
        rep = deficiency(sym)
        assert rep.n_plus >= 0 and rep.n_minus >= 0


def test_no_unbounded_self_adjoint():
    for seed in range(30):
        sym = random_real_symbol(max_block_deg=3, n_circle_poles=1 + seed % 2, seed=seed)
        assert domain_factor(sym).degree >= 1
        rep = deficiency(sym)
        assert rep.n_plus + rep.n_minus >= 1
        assert rep.symmetry_class is not SymmetryClass.SELF_ADJOINT_BOUNDED


def test_nonconstant_real_symbol_has_interior_or_circle_pole():
    # a real symbol analytic across the closed disk would have to be constant
    for seed in range(30):
        sym = random_real_symbol(max_block_deg=3, n_circle_poles=seed % 2, seed=500 + seed)
        if sym.R.degree == 0 and sym.S.degree == 0:
            continue
        assert sym.split_S.inside.degree + sym.split_S.on.degree >= 1

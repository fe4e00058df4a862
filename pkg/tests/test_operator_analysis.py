"""Kernel/cokernel bases, domain data, Fredholm index, Cayley pullback.
Every claimed basis element is certified against the Laurent oracles."""

import numpy as np
import pytest

from conftest import random_symbol

from toepscope.errors import InvalidElementError, ZeroPolynomialError
from toepscope.factorization import make_symbol
from toepscope.operator_analysis import (
    RationalFun,
    analyze,
    cayley,
    cayley_inv,
    cayley_pullback,
    cokernel_basis,
    domain_factor,
    domain_membership,
    is_fredholm,
    kernel_basis,
    pullback_residual,
    symbol_times,
)
from toepscope.polynomial import Poly
from toepscope.verify import kernel_residual, orthogonality_residual

Z = Poly((0, 1))
ONE = Poly((1,))


def test_rational_fun_make_normalizes():
    f = RationalFun.make(num=Poly((2,)), den=Poly((0, 4)))
    assert f.den.coeffs == (0, 1)
    assert abs(f.num.eval(1) - 0.5) < 1e-15
    with pytest.raises(ZeroPolynomialError):
        RationalFun.make(num=ONE, den=Poly(()))


def test_hardy_membership():
    assert RationalFun.make(ONE, Poly((-2, 1))).is_hardy_element()
    assert RationalFun.make(Poly((1, 2, 3)), ONE).is_hardy_element()
    assert not RationalFun.make(ONE, Poly((-0.5, 1))).is_hardy_element()
    assert not RationalFun.make(ONE, Poly((-1, 1))).is_hardy_element()


def test_symbol_times_cancels_shared_roots():
    sym = make_symbol(Poly((-0.5, 1)), Poly((-2, 1)))
    u = RationalFun.make(ONE, Poly((-0.5, 1)))
    f = symbol_times(sym, u)
    assert f.num.degree == 0 and f.den.coeffs == (-2, 1)
    sym2 = make_symbol(ONE, Z * Z)
    f2 = symbol_times(sym2, RationalFun.make(Z, ONE))
    assert f2.den.coeffs == (0, 1) and f2.num.degree == 0


def test_symbol_times_zero():
    sym = make_symbol(Z, ONE)
    f = symbol_times(sym, RationalFun.make(Poly(()), ONE))
    assert f.num.is_zero


# ---- Subspaces: frozen examples certified by the oracles ----

def test_domain_factor():
    assert domain_factor(make_symbol(ONE, Poly((-1, 1)))).coeffs == (-1, 1)
    assert domain_factor(make_symbol(ONE, Z)).degree == 0
    assert domain_factor(make_symbol(Poly((1, 0, 1)), Z)).degree == 0


def test_kernel_backward_shifts():
    sym = make_symbol(ONE, Z * Z)
    kb = kernel_basis(sym)
    assert len(kb) == 2
    assert kb[0].num.coeffs == (1,) and kb[1].num.coeffs == (0, 1)
    for u in kb:
        assert kernel_residual(sym, u, 64) < 1e-12
    assert len(kernel_basis(make_symbol(ONE, Z))) == 1
    assert kernel_basis(make_symbol(Z, ONE)) == ()


def test_kernel_with_exterior_numerator_root():
    # R = z-3 contributes the denominator z-3 to every kernel element
    sym = make_symbol(Poly((-3, 1)), (Z ** 2) * Poly((-0.5, 1)))
    kb = kernel_basis(sym)
    assert len(kb) == 3
    for j, u in enumerate(kb):
        assert u.den.coeffs == (-3, 1)
        assert u.num.degree == j
        assert kernel_residual(sym, u, 64) < 1e-10
        assert domain_membership(sym, u)


def test_kernel_with_circle_pole():
    # S = (z-1) z: domain factor z-1, kernel spanned by it
    sym = make_symbol(ONE, Poly((-1, 1)) * Z)
    kb = kernel_basis(sym)
    assert len(kb) == 1
    assert np.allclose(kb[0].num.coeffs, (-1, 1))
    assert kernel_residual(sym, kb[0], 64) < 1e-10
    assert domain_membership(sym, kb[0])
    assert not domain_membership(sym, RationalFun.make(ONE, ONE))


def test_cokernel_forward_shift():
    sym = make_symbol(Z, ONE)
    cb = cokernel_basis(sym)
    assert len(cb) == 1 and cb[0].num.degree == 0 and cb[0].den.degree == 0
    assert orthogonality_residual(sym, cb[0], 32) < 1e-12


def test_cokernel_reflected_poles():
    sym = make_symbol(Poly((-0.5, 1)) ** 2, Z)
    cb = cokernel_basis(sym)
    assert len(cb) == 1
    assert np.allclose(cb[0].den.coeffs, (4, -4, 1))  # (z-2)^2
    assert orthogonality_residual(sym, cb[0], 32) < 1e-8


def test_cokernel_reflects_interior_denominator_roots():
    # S_in = z-1/2 shows up reflected in the cokernel numerators
    sym = make_symbol(Z ** 3, Poly((-0.5, 1)))
    cb = cokernel_basis(sym)
    assert len(cb) == 2
    for j, v in enumerate(cb):
        assert v.num.degree == 1 + j
        assert v.den.degree == 0
        assert abs(v.num.monic().eval(2.0)) < 1e-12  # root of reflect(z-1/2)
        assert orthogonality_residual(sym, v, 32) < 1e-8


# ---- Fredholm data ----

def test_fredholm_and_index():
    rep = analyze(make_symbol(ONE, Z * Z))
    assert rep.fredholm and rep.index == 2 and rep.dim_ker == 2 and rep.dim_coker == 0
    rep = analyze(make_symbol(Z, ONE))
    assert rep.fredholm and rep.index == -1 and rep.dim_coker == 1
    rep = analyze(make_symbol(Poly((-1, 1)), Z))  # circle zero of R
    assert not rep.fredholm and rep.index is None
    assert rep.formal_degree_gap == 1
    assert not is_fredholm(make_symbol(Poly((1, 0, 1)), Z))


def test_report_fields():
    sym = make_symbol(Poly((-0.5, 1)) ** 2, Z)
    rep = analyze(sym)
    assert rep.range_numerator is sym.R
    assert rep.range_denominator.coeffs == (0, 1)
    assert rep.domain_on_factor.degree == 0
    assert not rep.ill_conditioned


def test_report_invariants_random():
    rng = np.random.default_rng(77)
    fred_seen = unfred_seen = 0
    for _ in range(60):
        sym = random_symbol(rng, circle_zeros=rng.random() < 0.3)
        rep = analyze(sym)
        assert rep.dim_ker * rep.dim_coker == 0
        if rep.fredholm:
            fred_seen += 1
            assert rep.index == rep.dim_ker - rep.dim_coker == rep.formal_degree_gap
        else:
            unfred_seen += 1
            assert rep.index is None
    assert fred_seen >= 10 and unfred_seen >= 5


def test_bases_certify_random():
    rng = np.random.default_rng(101)
    checked = 0
    for _ in range(40):
        sym = random_symbol(rng, max_in=3, max_out=2)
        rep = analyze(sym)
        for u in rep.kernel_basis:
            assert kernel_residual(sym, u, 48) < 1e-8
            assert domain_membership(sym, u)
            checked += 1
        for v in rep.cokernel_basis:
            assert orthogonality_residual(sym, v, 32) < 1e-8
            checked += 1
    assert checked >= 20


def test_domain_membership_unbounded():
    sym = make_symbol(ONE, Poly((-1, 1)))
    assert not domain_membership(sym, RationalFun.make(ONE, ONE))
    assert domain_membership(sym, RationalFun.make(Poly((-1, 1)), ONE))
    assert domain_membership(sym, RationalFun.make(Poly((-1, 1)), Poly((-2, 1))))
    with pytest.raises(InvalidElementError):
        domain_membership(sym, RationalFun.make(ONE, Poly((-0.5, 1))))


# ---- Cayley pullback ----

def test_cayley_maps():
    assert abs(cayley(0.0) + 1.0) < 1e-15
    for x in (-3.0, -0.4, 0.0, 1.7, 12.0):
        assert abs(abs(cayley(x)) - 1.0) < 1e-14
    rng = np.random.default_rng(5)
    for _ in range(20):
        w = complex(*rng.uniform(-0.9, 0.9, 2))
        assert abs(cayley(cayley_inv(w)) - w) < 1e-12


def test_pullback_shift_symbol():
    sym = make_symbol(Z, ONE)
    pb = cayley_pullback(sym)
    assert pb.alpha == 0.0
    assert np.allclose(pb.P.coeffs, (-1j, 1), atol=1e-12)
    assert np.allclose(pb.Q.coeffs, (1j, 1), atol=1e-12)
    assert pullback_residual(sym, pb) < 1e-10


def test_pullback_backward_shift_symbol():
    sym = make_symbol(ONE, Z)
    pb = cayley_pullback(sym)
    assert np.allclose(pb.P.coeffs, (1j, 1), atol=1e-12)
    assert np.allclose(pb.Q.coeffs, (-1j, 1), atol=1e-12)
    assert pullback_residual(sym, pb) < 1e-10


def test_pullback_rotates_off_roots():
    sym = make_symbol(ONE, Poly((-1, 1)))
    pb = cayley_pullback(sym, alpha=0.0)
    assert pb.alpha != 0.0
    assert abs(np.exp(1j * pb.alpha) - 1.0) > 1e-3
    assert pullback_residual(sym, pb) < 1e-9


def test_pullback_degrees_and_residual_random():
    rng = np.random.default_rng(23)
    for _ in range(25):
        sym = random_symbol(rng)
        pb = cayley_pullback(sym)
        d = max(sym.R.degree, sym.S.degree)
        assert pb.P.degree <= d and pb.Q.degree == d
        assert pullback_residual(sym, pb, n_points=24) < 1e-8


def test_pullback_mobius_and_selfadjoint_symbols():
    for R, S in (
        (Poly((1, 0, 1)), Z),
        (Poly((-1j, 1j)), Poly((1, 1))),
    ):
        sym = make_symbol(R, S)
        pb = cayley_pullback(sym)
        assert pullback_residual(sym, pb) < 1e-9

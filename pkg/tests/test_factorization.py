"""Circle splits, symbol validation, realness, derived factors, random symbols."""

import numpy as np
import pytest

from toepscope.errors import CoprimalityError, InputError, ZeroPolynomialError
from toepscope.factorization import (
    circle_split,
    derived_factors,
    is_real_on_circle,
    make_symbol,
    random_real_symbol,
)
from toepscope.polynomial import Poly, roots

Z = Poly((0, 1))


def _poly_close(p, q, tol=1e-9):
    if p.degree != q.degree:
        return False
    scale = max(1.0, max((abs(c) for c in p.coeffs), default=0.0))
    return all(abs(a - b) <= tol * scale for a, b in zip(p.coeffs, q.coeffs))


# ---- circle_split ----

def test_split_mixed():
    p = Z * (Z - 1 * Poly((1,))) * Poly((-3, 1))  # z(z-1)(z-3)
    sp = circle_split(p)
    assert _poly_close(sp.on, Poly((-1, 1)))
    assert _poly_close(sp.inside, Z)
    assert _poly_close(sp.outside, Poly((-3, 1)))
    assert sp.scale == 1
    assert not sp.boundary_warning


def test_split_constant():
    sp = circle_split(Poly((5,)))
    assert sp.on.coeffs == (1,) and sp.inside.coeffs == (1,) and sp.outside.coeffs == (1,)
    assert sp.scale == 5


def test_split_circle_pair():
    sp = circle_split(Poly((1, 0, 1)))  # z^2 + 1, roots +-i
    assert sp.on.degree == 2
    assert sp.inside.degree == 0 and sp.outside.degree == 0


def test_split_reconstruction_random():
    rng = np.random.default_rng(31)
    for _ in range(100):
        deg = int(rng.integers(1, 9))
        cs = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        while abs(cs[-1]) < 0.2:
            cs[-1] = rng.normal() + 1j * rng.normal()
        p = Poly(tuple(cs))
        sp = circle_split(p)
        back = sp.reconstruct()
        scale = max(abs(c) for c in p.coeffs)
        assert back.degree == p.degree
        assert max(abs(a - b) for a, b in zip(back.coeffs, p.coeffs)) < 1e-8 * scale
        assert sp.on.degree + sp.inside.degree + sp.outside.degree == p.degree


def test_split_boundary_warning_band():
    just_on = circle_split(Poly((-(1 + 5e-9), 1)))
    assert just_on.on.degree == 1 and not just_on.boundary_warning
    in_band = circle_split(Poly((-(1 + 1.5e-8), 1)))
    assert in_band.outside.degree == 1 and in_band.boundary_warning
    clear = circle_split(Poly((-(1 + 5e-8), 1)))
    assert clear.outside.degree == 1 and not clear.boundary_warning


# ---- realness ----

def test_realness_examples():
    assert is_real_on_circle(Poly((-1j, 1j)), Poly((1, 1)))      # i(z-1)/(z+1)
    assert is_real_on_circle(Poly((1, 0, 1)), Z)                 # (z^2+1)/z
    assert not is_real_on_circle(Poly((1,)), Z)                  # 1/z
    assert not is_real_on_circle(Z, Poly((1,)))                  # z
    assert is_real_on_circle(Poly((2.5,)), Poly((1,)))           # real constant
    assert not is_real_on_circle(Poly((1j,)), Poly((1,)))        # imaginary constant


def test_realness_matches_sampling():
    rng = np.random.default_rng(77)
    thetas = 2 * np.pi * np.arange(128) / 128
    zs = np.exp(1j * thetas)
    for k in range(30):
        if k % 2 == 0:
            sym = random_real_symbol(max_block_deg=3, n_circle_poles=k % 3, seed=900 + k)
        else:
            deg_r = int(rng.integers(1, 5))
            cs = rng.normal(size=deg_r + 1) + 1j * rng.normal(size=deg_r + 1)
            try:
                sym = make_symbol(Poly(tuple(cs)), Poly((-0.3, 0, 1)))
            except CoprimalityError:
                continue
        pole_vals = [b for b, _ in roots(sym.S).entries]
        mask = np.ones(len(zs), dtype=bool)
        for b in pole_vals:
            mask &= np.abs(zs - b) > 1e-3
        if mask.sum() < 32:
            continue
        vals = sym.eval_array(zs[mask])
        sampled_real = float(np.max(np.abs(vals.imag))) < 1e-6 * max(1.0, float(np.max(np.abs(vals))))
        assert sampled_real == sym.real_on_circle


# ---- make_symbol ----

def test_make_symbol_valid():
    sym = make_symbol(Poly((-1j, 1j)), Poly((1, 1)))
    assert sym.real_on_circle
    assert not sym.is_bounded  # pole at -1 sits on the circle
    assert sym.split_S.on.degree == 1


def test_make_symbol_errors():
    with pytest.raises(ZeroPolynomialError):
        make_symbol(Poly((1,)), Poly(()))
    with pytest.raises(ZeroPolynomialError):
        make_symbol(Poly(()), Poly((1,)))
    with pytest.raises(CoprimalityError):
        make_symbol(Poly((-1, 1)), Poly((2, 1)) * Poly((-1, 1)))
    # shared root only up to delta_coprime
    make_symbol(Poly((-1, 1)), Poly((-(1 + 1e-3), 1)))  # far enough apart
    with pytest.raises(CoprimalityError):
        make_symbol(Poly((-1, 1)), Poly((-(1 + 1e-9), 1)))


def test_symbol_eval():
    sym = make_symbol(Poly((1, 0, 1)), Z)
    assert abs(sym.eval(1j)) < 1e-12  # (i^2+1)/i = 0
    assert abs(sym.eval(2) - 2.5) < 1e-12


# ---- derived factors ----

def test_derived_factors_denominator():
    sym = make_symbol(Poly((7,)), Z * Poly((-1, 1)) * Poly((-3, 1)))
    df = derived_factors(sym, "denominator")
    assert _poly_close(df.closed_outside, Poly((-1, 1)) * Poly((-3, 1)))
    assert _poly_close(df.closed_inside, Z * Poly((-1, 1)))
    assert df.reflected_inside.coeffs == (1,)  # origin root drops


def test_derived_factors_reflection():
    sym = make_symbol(Poly((3,)), Poly((-0.5, 1)) ** 2)
    df = derived_factors(sym, "denominator")
    want = Poly((-2, 1)) ** 2
    assert _poly_close(df.reflected_inside, want, tol=1e-8)


def test_derived_factors_numerator_and_errors():
    sym = make_symbol(Poly((-0.25, 1)), Z)
    df = derived_factors(sym, "numerator")
    assert _poly_close(df.reflected_inside, Poly((-4, 1)), tol=1e-8)
    with pytest.raises(InputError):
        derived_factors(sym, "both")


# ---- random real symbols ----

def test_random_real_symbol_deterministic():
    a = random_real_symbol(max_block_deg=3, n_circle_poles=1, seed=42)
    b = random_real_symbol(max_block_deg=3, n_circle_poles=1, seed=42)
    assert a.R.coeffs == b.R.coeffs and a.S.coeffs == b.S.coeffs


def test_random_real_symbol_properties():
    for seed in range(20):
        sym = random_real_symbol(max_block_deg=3, n_circle_poles=seed % 3, seed=seed)
        assert sym.real_on_circle
        assert sym.split_S.on.degree >= seed % 3
        if seed % 3 > 0:
            assert not sym.is_bounded

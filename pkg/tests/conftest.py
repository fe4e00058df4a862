"""Shared seeded generators. Margins from the unit circle are kept generous
so the Laurent oracles converge fast and certificates are clean."""

import numpy as np
from toepscope.errors import CoprimalityError
from toepscope.factorization import make_symbol
from toepscope.operator_analysis import RationalFun
from toepscope.polynomial import Poly, _expand


def _draw_root_pairs(rng, n_in, n_out, n_on, dup_prob=0.0):
    pairs = []
    for _ in range(n_in):
        r = rng.uniform(0.15, 0.8)
        pairs.append((complex(r * np.exp(1j * rng.uniform(0, 2 * np.pi))), 1))
    for _ in range(n_out):
        r = rng.uniform(1.25, 5.0)
        pairs.append((complex(r * np.exp(1j * rng.uniform(0, 2 * np.pi))), 1))
    for _ in range(n_on):
        pairs.append((complex(np.exp(1j * rng.uniform(0, 2 * np.pi))), 1))
    if pairs and rng.uniform() < dup_prob:
        k = int(rng.integers(0, len(pairs)))
        pairs[k] = (pairs[k][0], 2)
    return pairs


def _draw_poly(rng, max_in, max_out, allow_circle, dup_prob=0.0):
    n_in = int(rng.integers(0, max_in + 1))
    n_out = int(rng.integers(0, max_out + 1))
    n_on = int(rng.integers(0, 2)) if allow_circle else 0
    lead = complex(rng.uniform(0.5, 2.0) * np.exp(1j * rng.uniform(0, 2 * np.pi)))
    pairs = _draw_root_pairs(rng, n_in, n_out, n_on, dup_prob)
    return _expand(pairs, lead)


def random_symbol(rng, max_in=3, max_out=3, circle_zeros=False, circle_poles=False,
                  dup_prob=0.2):
    """Random coprime symbol with roots well separated from the circle
    except for explicitly requested circle zeros/poles."""
    for _ in range(100):
        r = _draw_poly(rng, max_in, max_out, circle_zeros, dup_prob)
        s = _draw_poly(rng, max_in, max_out, circle_poles, dup_prob)
        try:
            return make_symbol(r, s)
        except CoprimalityError:
            continue
    raise RuntimeError("random_symbol rejection loop exhausted")


def random_rational_fun(rng, max_num_deg=6, max_poles=4, origin_prob=0.3):
    """Random rational function with pole margin >= 0.02 from the circle,
    sometimes with a polynomial part and an origin pole."""
    nd = int(rng.integers(0, max_num_deg + 1))
    cs = rng.normal(size=nd + 1) + 1j * rng.normal(size=nd + 1)
    while abs(cs[-1]) < 0.2:
        cs[-1] = rng.normal() + 1j * rng.normal()
    num = Poly(tuple(cs))
    pairs = []
    for _ in range(int(rng.integers(0, max_poles + 1))):
        if rng.uniform() < 0.5:
            mod = rng.uniform(0.15, 0.98)
        else:
            mod = rng.uniform(1.02, 4.0)
        pairs.append((complex(mod * np.exp(1j * rng.uniform(0, 2 * np.pi))), 1))
    if rng.uniform() < origin_prob:
        pairs.append((0j, int(rng.integers(1, 3))))
    den = _expand(pairs, 1.0)
    return RationalFun(num=num, den=den)

"""Dense univariate complex polynomials and a simultaneous-iteration root solver.

Coefficients are stored ascending (coeffs[k] multiplies z**k). The zero
polynomial is the empty tuple and reports degree -1. Trailing coefficients
below 1e-13 relative to the largest magnitude are trimmed on construction,
so degrees stay honest after arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeCapError, NonConvergenceError, ZeroPolynomialError

# Root finding above this degree is too ill-conditioned to promise anything.
DEGREE_CAP = 64

TRIM_REL = 1e-13

# Roots below this magnitude are treated as sitting at the origin when
# reflecting; they only arise from exact z**k factors after deflation.
ORIGIN_DROP = 1e-12

_ABERTH_MAX_ITER = 500


@dataclass(frozen=True)
class Poly:
    """Immutable polynomial with complex coefficients, ascending order."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        cs = [complex(c) for c in self.coeffs]
        if cs:
            m = max(abs(c) for c in cs)
            if m == 0.0:
                cs = []
            else:
                while cs and abs(cs[-1]) <= TRIM_REL * m:
                    cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # ---- Structure ----

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> complex:
        return self.coeffs[-1] if self.coeffs else 0j

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    # ---- Evaluation ----

    def eval(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def eval_array(self, zs: np.ndarray) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        acc = np.zeros_like(zs)
        for c in reversed(self.coeffs):
            acc = acc * zs + c
        return acc

    # ---- Ring operations ----

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly(tuple((a[k] if k < len(a) else 0j) + (b[k] if k < len(b) else 0j)
                          for k in range(n)))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero or other.is_zero:
                return Poly(())
            prod = np.convolve(np.array(self.coeffs), np.array(other.coeffs))
            return Poly(tuple(prod))
        return Poly(tuple(c * complex(other) for c in self.coeffs))

    def __rmul__(self, scalar) -> "Poly":
        return self * scalar

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative polynomial power")
        out = Poly((1,))
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> "Poly":
        return Poly(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ZeroPolynomialError("zero polynomial has no monic form")
        lead = self.leading
        return Poly(tuple(c / lead for c in self.coeffs))


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Long division: a = q*b + r with deg r < deg b."""
    if b.is_zero:
        raise ZeroPolynomialError("division by the zero polynomial")
    if a.degree < b.degree:
        return Poly(()), a
    r = list(a.coeffs)
    db, lead = b.degree, b.leading
    q = [0j] * (a.degree - db + 1)
    for k in range(a.degree, db - 1, -1):
        f = r[k] / lead
        q[k - db] = f
        for j in range(db + 1):
            r[k - db + j] -= f * b.coeffs[j]
    return Poly(tuple(q)), Poly(tuple(r[:db]))


def taylor_coeffs(p: Poly, b: complex, order: int | None = None) -> list[complex]:
    """Coefficients of w -> p(b + w), by repeated synthetic division at b."""
    cs = list(p.coeffs) if not p.is_zero else [0j]
    n = len(cs) if order is None else min(order, len(cs))
    out = []
    for _ in range(n):
        # one synthetic division by (z - b): remainder is the next coefficient
        q = [0j] * (len(cs) - 1)
        acc = 0j
        for k in range(len(cs) - 1, 0, -1):
            acc = cs[k] + b * acc
            q[k - 1] = acc
        out.append(cs[0] + b * (q[0] if q else 0j))
        if not q:
            break
        cs = q
    while order is not None and len(out) < order:
        out.append(0j)
    return out


# ---- Root finding ----


@dataclass(frozen=True)
class RootSet:
    """Roots with multiplicities, sorted by (re, im).

    condition_hint[i] is the distance from entries[i] to the nearest other
    root (inf for a lone root); small values flag clustering ambiguity.
    """

    entries: tuple[tuple[complex, int], ...]
    leading: complex
    condition_hint: tuple[float, ...] = field(default=())

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.entries)

    def values(self) -> list[complex]:
        return [r for r, _ in self.entries]


def _sorted_entries(pairs):
    return tuple(sorted(pairs, key=lambda rm: (rm[0].real, rm[0].imag)))


def _hints(entries):
    vals = [r for r, _ in entries]
    out = []
    for i, r in enumerate(vals):
        ds = [abs(r - s) for j, s in enumerate(vals) if j != i]
        out.append(min(ds) if ds else math.inf)
    return tuple(out)


def _initial_guesses(g: np.ndarray) -> np.ndarray:
    # Concentric spread between Cauchy-type lower and upper bounds, angles
    # offset so symmetric root patterns are not hit head on.
    n = len(g) - 1
    mags = np.abs(g)
    r_hi = 1.0 + float(np.max(mags[:-1]))
    r_lo = float(mags[0] / (mags[0] + np.max(mags[1:])))
    r_lo = max(r_lo, 1e-12)
    ks = np.arange(n)
    radii = r_lo * (r_hi / r_lo) ** ((ks + 0.5) / n)
    angles = 2.0 * np.pi * ks / n + 0.4
    return radii * np.exp(1j * angles)


def _aberth_iterate(g: np.ndarray, dg: np.ndarray, z: np.ndarray) -> np.ndarray:
    # Multiple roots make the corrections stall around eps**(1/m), so besides
    # the convergence test we stop once the step size has plateaued.
    best = np.inf
    since_best = 0
    for _ in range(_ABERTH_MAX_ITER):
        pv = _horner(g, z)
        dpv = _horner(dg, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = np.where(pv == 0, 0j, pv / np.where(dpv == 0, 1e-300, dpv))
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            denom = 1.0 - w * s
            delta = np.where(np.abs(denom) < 1e-300, w, w / denom)
        z = z - delta
        step = float(np.max(np.abs(delta)))
        if np.all(np.abs(delta) <= 1e-14 * (1.0 + np.abs(z))):
            break
        if step < 0.5 * best:
            best, since_best = step, 0
        else:
            since_best += 1
            if since_best > 20:
                break
    return z


def _horner(cs: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(z)
    for c in cs[::-1]:
        acc = acc * z + c
    return acc


def _newton(g: np.ndarray, z: np.ndarray, iters: int) -> np.ndarray:
    dg = np.array([k * g[k] for k in range(1, len(g))])
    for _ in range(iters):
        pv = _horner(g, z)
        dpv = _horner(dg, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(pv == 0, 0j, pv / np.where(dpv == 0, 1e-300, dpv))
        z = z - step
        if np.all(np.abs(step) <= 1e-15 * (1.0 + np.abs(z))):
            break
    return z


def _refine_center(g: np.ndarray, center: complex, m: int) -> complex:
    # An m-fold root cannot be located from values of p better than
    # eps**(1/m), but it is a simple root of the (m-1)-th derivative, which
    # Newton then pins to machine precision.
    d = g
    for _ in range(m - 1):
        d = np.array([k * d[k] for k in range(1, len(d))])
    z = _newton(d, np.array([center], dtype=complex), iters=8)
    return complex(z[0])


def _cluster(zs: np.ndarray, radius: float) -> list[tuple[complex, int]]:
    order = sorted(range(len(zs)), key=lambda i: (zs[i].real, zs[i].imag))
    seeds: list[complex] = []
    members: list[list[complex]] = []
    for i in order:
        z = complex(zs[i])
        best, best_d = -1, radius
        for j, seed in enumerate(seeds):
            d = abs(z - seed)
            if d <= best_d:
                best, best_d = j, d
        if best >= 0:
            members[best].append(z)
        else:
            seeds.append(z)
            members.append([z])
    return [(sum(ms) / len(ms), len(ms)) for ms in members]


def roots(p: Poly, tol: float = 1e-6) -> RootSet:
    """All roots of p with multiplicities (Aberth-Ehrlich plus clustering).

    Approximations within max(1e-6, 10*tol) of each other merge into one
    root, so genuinely distinct roots closer than that report as a cluster
    (condition_hint flags the ambiguity either way). Raises
    NonConvergenceError when the scaled residual
    |p(r)| / (|leading| * max(1,|r|)**deg) of any root exceeds tol.
    """
    if p.is_zero:
        raise ZeroPolynomialError("root finding needs a nonzero polynomial")
    if p.degree > DEGREE_CAP:
        raise DegreeCapError(f"degree {p.degree} exceeds cap {DEGREE_CAP}")
    lead = p.leading
    cs = list(p.coeffs)
    k0 = 0
    while cs and cs[0] == 0:  # exact z**k factor
        cs.pop(0)
        k0 += 1
    pairs: list[tuple[complex, int]] = []
    if k0:
        pairs.append((0j, k0))
    n = len(cs) - 1
    if n > 0:
        g = np.array(cs, dtype=complex) / lead
        dg = np.array([k * g[k] for k in range(1, len(g))])
        z = _initial_guesses(g)
        z = _aberth_iterate(g, dg, z)
        z = _newton(g, z, iters=3)
        clusters = _cluster(z, radius=max(1e-6, 10.0 * tol))
        refined = []
        for c, m in clusters:
            if m == 1:
                refined.append((complex(_newton(g, np.array([c]), iters=2)[0]), 1))
            else:
                refined.append((_refine_center(g, c, m), m))
        for r, m in refined:
            resid = abs(p.eval(r)) / (abs(lead) * max(1.0, abs(r)) ** p.degree)
            if resid > tol:
                raise NonConvergenceError(
                    f"root residual {resid:.3e} above tol {tol:.1e} at {r!r}")
        pairs.extend(refined)
    entries = _sorted_entries(pairs)
    rs = RootSet(entries=entries, leading=lead, condition_hint=_hints(entries))
    assert rs.total_multiplicity == p.degree
    return rs


def from_roots(rs: RootSet) -> Poly:
    """Expand leading * prod (z - r)**m back into coefficients."""
    if rs.leading == 0:
        raise ZeroPolynomialError("leading coefficient must be nonzero")
    acc = np.array([complex(rs.leading)])
    for r, m in rs.entries:
        for _ in range(m):
            acc = np.convolve(acc, np.array([-r, 1.0 + 0j]))
    return Poly(tuple(acc))


def _expand(pairs, leading: complex) -> Poly:
    return from_roots(RootSet(entries=_sorted_entries(pairs), leading=leading))


# ---- Involutions ----


def conj_coeffs(p: Poly) -> Poly:
    """Coefficient-wise conjugate; on the circle (conj_coeffs p)(1/z) == conj(p(z))."""
    return Poly(tuple(c.conjugate() for c in p.coeffs))


def recip_conj(p: Poly) -> Poly:
    """Reversed conjugated coefficients: z**deg * conj(p(1/conj(z)))."""
    if p.is_zero:
        raise ZeroPolynomialError("recip_conj of the zero polynomial")
    return Poly(tuple(c.conjugate() for c in reversed(p.coeffs)))


def reflect(p: Poly, tol: float = 1e-6) -> Poly:
    """Monic polynomial whose roots are 1/conj(b) over roots b of p; origin roots dropped."""
    if p.is_zero:
        raise ZeroPolynomialError("reflect of the zero polynomial")
    if p.degree == 0:
        return Poly((1,))
    rs = roots(p, tol=tol)
    pairs = [(1.0 / b.conjugate(), m) for b, m in rs.entries if abs(b) > ORIGIN_DROP]
    return _expand(pairs, 1.0)

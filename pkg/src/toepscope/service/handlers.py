"""In-process command handlers shared by the HTTP service and the CLI.

Each ``run_*`` function takes a validated request model and returns a
response model; all numerical work happens in the core package.  Errors
propagate as the package exception types and are mapped to transport
codes by the caller (HTTP status in the service, exit code in the CLI).
"""

from __future__ import annotations

import numpy as np

from .. import __version__
from ..errors import InputError, NumericalError, TheoryViolationError
from ..factorization import RationalSymbol, make_symbol
from ..operator_analysis import (
    RationalFun,
    analyze,
    cayley_pullback,
    cokernel_basis,
    pullback_residual,
)
from ..polynomial import Poly, roots
from ..spectral import PortraitGrid, SpectralPart, classify, portrait, winding_number
from ..symmetric import deficiency
from ..verify import (
    apply_residual,
    deficiency_residual,
    kernel_residual,
    orthogonality_residual,
)
from .schemas import (
    AnalyzeRequest,
    AnalyzeResponse,
    CheckDoc,
    CoeffsDoc,
    DeficiencyRequest,
    DeficiencyResponse,
    DegreesDoc,
    HealthResponse,
    PolyDoc,
    PortraitRequest,
    PortraitResponse,
    PullbackRequest,
    PullbackResponse,
    RationalFunDoc,
    RootDoc,
    SpectrumRequest,
    SpectrumResponse,
    SymbolEcho,
    VerifyRequest,
    VerifyResponse,
)

KERNEL_CERT_TOL = 1e-8
DEFICIENCY_CERT_TOL = 1e-6
REALNESS_SAMPLE_TOL = 1e-6
SPLIT_RECON_TOL = 1e-8
PULLBACK_TOL = 1e-8


def _pair(z: complex) -> tuple[float, float]:
    return (float(z.real), float(z.imag))


def _poly_doc(p: Poly) -> PolyDoc:
    if p.is_zero:
        return PolyDoc(coeffs=[], degree=-1, roots=[])
    rs = roots(p)
    return PolyDoc(
        coeffs=[_pair(c) for c in p.coeffs],
        degree=p.degree,
        roots=[RootDoc(value=_pair(b), multiplicity=m) for b, m in rs.entries],
    )


def _fun_doc(f: RationalFun) -> RationalFunDoc:
    return RationalFunDoc(num=_poly_doc(f.num), den=_poly_doc(f.den))


def _echo(sym: RationalSymbol) -> SymbolEcho:
    return SymbolEcho(
        R=CoeffsDoc(coeffs=[_pair(c) for c in sym.R.coeffs]),
        S=CoeffsDoc(coeffs=[_pair(c) for c in sym.S.coeffs]),
        eps_circle=sym.eps_circle,
        delta_coprime=sym.delta_coprime,
    )


def run_health() -> HealthResponse:
    return HealthResponse(version=__version__)


def run_analyze(req: AnalyzeRequest) -> AnalyzeResponse:
    sym = req.symbol.build()
    rep = analyze(sym)
    return AnalyzeResponse(
        symbol=_echo(sym),
        real_on_circle=sym.real_on_circle,
        bounded=sym.is_bounded,
        domain_on_factor=_poly_doc(rep.domain_on_factor),
        kernel_basis=[_fun_doc(u) for u in rep.kernel_basis],
        cokernel_basis=[_fun_doc(v) for v in rep.cokernel_basis],
        dim_ker=rep.dim_ker,
        dim_coker=rep.dim_coker,
        fredholm=rep.fredholm,
        index=rep.index,
        formal_degree_gap=rep.formal_degree_gap,
        range_numerator=_poly_doc(rep.range_numerator),
        range_denominator=_poly_doc(rep.range_denominator),
        ill_conditioned=rep.ill_conditioned,
    )


def run_spectrum(req: SpectrumRequest) -> SpectrumResponse:
    sym = req.symbol.build()
    lam = complex(*req.lam)
    rep = classify(sym, lam)
    return SpectrumResponse(
        symbol=_echo(sym),
        lam=_pair(lam),
        on_curve=rep.on_curve,
        fredholm=rep.fredholm,
        part=rep.part.value,
        regular_value=rep.regular_value,
        dim_ker=rep.dim_ker,
        dim_coker=rep.dim_coker,
        index=rep.index,
        degrees=DegreesDoc(
            s_in=rep.degrees.s_in,
            rl_in=rep.degrees.rl_in,
            rl_in_bar=rep.degrees.rl_in_bar,
        ),
        infinite_dimensional=rep.infinite_dimensional,
        ill_conditioned=rep.ill_conditioned,
    )


def run_deficiency(req: DeficiencyRequest) -> DeficiencyResponse:
    sym = req.symbol.build()
    rep = deficiency(sym)
    return DeficiencyResponse(
        symbol=_echo(sym),
        p=_poly_doc(rep.p),
        q=_poly_doc(rep.q),
        l=rep.l,
        n_plus=rep.n_plus,
        n_minus=rep.n_minus,
        basis_plus=[_fun_doc(v) for v in rep.basis_plus],
        basis_minus=[_fun_doc(v) for v in rep.basis_minus],
        symmetry_class=rep.symmetry_class.value,
        c_scale=_pair(rep.c_scale),
        plus_identity_residual=rep.plus_identity_residual,
    )


def run_pullback(req: PullbackRequest) -> PullbackResponse:
    sym = req.symbol.build()
    pb = cayley_pullback(sym, req.alpha)
    resid = pullback_residual(sym, pb, req.n_points)
    return PullbackResponse(
        symbol=_echo(sym),
        P=_poly_doc(pb.P),
        Q=_poly_doc(pb.Q),
        alpha=pb.alpha,
        n_points=req.n_points,
        residual=resid,
    )


def compute_portrait(req: PortraitRequest) -> tuple[RationalSymbol, PortraitGrid]:
    sym = req.symbol.build()
    g = req.grid
    grid = portrait(sym, g.x0, g.x1, g.y0, g.y1, g.nx, g.ny)
    return sym, grid


def run_portrait(req: PortraitRequest) -> PortraitResponse:
    sym, grid = compute_portrait(req)
    counts = {part.value: 0 for part in SpectralPart}
    ill = 0
    inf_dim = 0
    for cell in grid.cells:
        counts[cell.part.value] += 1
        ill += int(cell.ill_conditioned)
        inf_dim += int(cell.infinite_dimensional)
    return PortraitResponse(
        symbol=_echo(sym),
        grid=req.grid,
        counts=counts,
        ill_conditioned_count=ill,
        infinite_dimensional_count=inf_dim,
    )


def _curve_distance(sym: RationalSymbol, lam: complex, m: int = 512) -> float:
    zs = np.exp(2j * np.pi * np.arange(m) / m)
    return float(np.min(np.abs(sym.eval_array(zs) - lam)))


def run_verify(req: VerifyRequest) -> VerifyResponse:
    """Run the self-consistency check suite on one symbol.

    ``quick`` trims truncation orders and sample counts; ``full`` is the
    default.  A theory violation (a certified structural identity failing
    beyond tolerance) is reported separately from ordinary check failures.
    """
    sym = req.symbol.build()
    full = req.level == "full"
    n_laurent = 64 if full else 16
    n_matrix = 512 if full else 128
    n_orth = 32 if full else 8
    n_lambda = 12 if full else 4
    n_points = 32 if full else 8

    checks: list[CheckDoc] = []
    theory_violation = False

    def add(name: str, passed, residual=None, detail: str = ""):
        checks.append(
            CheckDoc(
                name=name,
                passed=bool(passed),
                residual=None if residual is None else float(residual),
                detail=detail,
            )
        )

    for tag, poly, split in (("R", sym.R, sym.split_R), ("S", sym.S, sym.split_S)):
        diff = poly - split.reconstruct()
        scale = max(abs(c) for c in poly.coeffs)
        resid = 0.0 if diff.is_zero else max(abs(c) for c in diff.coeffs) / scale
        add(f"split_reconstruction_{tag}", resid < SPLIT_RECON_TOL, resid)

    # The realness flag is decided from coefficients; re-check it by
    # sampling the circle away from poles.
    zs = np.exp(2j * np.pi * np.arange(128) / 128)
    dist = np.full(len(zs), np.inf)
    for b, _ in roots(sym.S).entries:
        dist = np.minimum(dist, np.abs(zs - b))
    mask = dist > 1e-3
    if int(mask.sum()) >= 16:
        vals = sym.eval_array(zs[mask])
        imag_max = float(np.max(np.abs(vals.imag)))
        cap = float(np.max(np.abs(vals))) + 1.0
        sampled_real = imag_max < REALNESS_SAMPLE_TOL * cap
        add("realness_consistency", sampled_real == sym.real_on_circle, imag_max)
    else:
        add("realness_consistency", True,
            detail="skipped: too few circle samples clear of poles")

    rep = analyze(sym)

    if rep.kernel_basis:
        for j, u in enumerate(rep.kernel_basis):
            try:
                r = kernel_residual(sym, u, n_laurent)
                add(f"kernel_certificate_{j}", r < KERNEL_CERT_TOL, r)
            except NumericalError as exc:
                add(f"kernel_certificate_{j}", False, detail=f"numerical failure: {exc}")
    else:
        add("kernel_certificates", True, detail="kernel is trivial")

    if sym.is_bounded:
        if rep.kernel_basis:
            for j, u in enumerate(rep.kernel_basis):
                try:
                    r = apply_residual(sym, u, n_matrix)
                    add(f"kernel_matrix_certificate_{j}", r < KERNEL_CERT_TOL, r)
                except NumericalError as exc:
                    add(f"kernel_matrix_certificate_{j}", False,
                        detail=f"numerical failure: {exc}")
        else:
            add("kernel_matrix_certificates", True, detail="kernel is trivial")
    else:
        add("kernel_matrix_certificates", True, detail="skipped: unbounded symbol")

    if rep.cokernel_basis:
        for j, v in enumerate(rep.cokernel_basis):
            try:
                r = orthogonality_residual(sym, v, n_orth)
                add(f"cokernel_certificate_{j}", r < KERNEL_CERT_TOL, r)
            except NumericalError as exc:
                add(f"cokernel_certificate_{j}", False,
                    detail=f"numerical failure: {exc}")
    else:
        add("cokernel_certificates", True, detail="cokernel is trivial")

    if sym.is_bounded:
        rng = np.random.default_rng(req.seed)
        found = 0
        tries = 0
        agree = True
        bad = ""
        while found < n_lambda and tries < 400:
            tries += 1
            lam = complex(rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5))
            if _curve_distance(sym, lam) <= 1e-3:
                continue
            crep = classify(sym, lam)
            if not crep.fredholm or crep.index is None:
                continue
            try:
                w = winding_number(sym, lam, 4096)
            except NumericalError:
                continue
            found += 1
            if crep.index != -w:
                agree = False
                bad = f"mismatch at lambda={lam}"
        add("index_winding_agreement", agree and found > 0,
            detail=bad or f"{found} sample points")
    else:
        add("index_winding_agreement", True, detail="skipped: unbounded symbol")

    try:
        pb = cayley_pullback(sym)
        r = pullback_residual(sym, pb, n_points)
        add("pullback_sampling", r < PULLBACK_TOL, r)
    except NumericalError as exc:
        add("pullback_sampling", False, detail=f"numerical failure: {exc}")

    if sym.real_on_circle:
        try:
            drep = deficiency(sym)
        except TheoryViolationError as exc:
            theory_violation = True
            add("deficiency_structure", False, detail=str(exc))
        else:
            add("plus_identity", drep.plus_identity_residual < DEFICIENCY_CERT_TOL,
                drep.plus_identity_residual)
            if not drep.basis_plus and not drep.basis_minus:
                add("deficiency_certificates", True,
                    detail="both defect spaces are trivial")
            for label, sign, basis in (("plus", "+", drep.basis_plus),
                                       ("minus", "-", drep.basis_minus)):
                for j, v in enumerate(basis):
                    try:
                        r = deficiency_residual(sym, v, sign, n_orth)
                        add(f"deficiency_{label}_certificate_{j}",
                            r < DEFICIENCY_CERT_TOL, r)
                    except NumericalError as exc:
                        add(f"deficiency_{label}_certificate_{j}", False,
                            detail=f"numerical failure: {exc}")
            try:
                cb_plus = cokernel_basis(make_symbol(
                    sym.R - sym.S * 1j, sym.S, sym.eps_circle, sym.delta_coprime))
                cb_minus = cokernel_basis(make_symbol(
                    sym.R + sym.S * 1j, sym.S, sym.eps_circle, sym.delta_coprime))
                ok = (len(cb_plus) == drep.n_plus
                      and len(cb_minus) == drep.n_minus)
                zs7 = np.exp(1j * np.linspace(0.1, 6.0, 7))
                for ours, theirs in (list(zip(drep.basis_plus, cb_plus))
                                     + list(zip(drep.basis_minus, cb_minus))):
                    ok = ok and bool(np.allclose(
                        ours.eval_array(zs7), theirs.eval_array(zs7), atol=1e-8))
                add("deficiency_cokernel_consistency", ok)
            except (InputError, NumericalError) as exc:
                add("deficiency_cokernel_consistency", False,
                    detail=f"could not build shifted cokernels: {exc}")
    else:
        add("deficiency_certificates", True,
            detail="skipped: symbol not real on the circle")

    passed = all(c.passed for c in checks)
    return VerifyResponse(
        symbol=_echo(sym),
        level=req.level,
        seed=req.seed,
        checks=checks,
        passed=passed,
        theory_violation=theory_violation,
    )

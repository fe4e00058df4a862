"""Command-line interface.

Thin client over the service handlers: every subcommand parses its
arguments into the same request models the HTTP service accepts, calls
the handler in process, and prints the response document in canonical
form.  No network access is involved.

Exit codes: 0 success, 1 bad input, 2 numerical failure, 3 violation of
a certified identity.  ``verify`` also exits 2 when any check fails and
3 when a structural identity is broken.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from . import __version__
from .errors import InputError, NumericalError, TheoryViolationError, ToepscopeError
from .render import atomic_write, csv_text, dumps_canonical, ppm_bytes
from .service import handlers
from .service.schemas import (
    AnalyzeRequest,
    DeficiencyRequest,
    GridSpec,
    PortraitRequest,
    PullbackRequest,
    SpectrumRequest,
    SymbolInput,
    VerifyRequest,
)


def parse_complex_literal(text: str) -> complex:
    """Parse ``a+bi`` style literals: ``2``, ``-1.5i``, ``1+2i``, ``i``.

    The imaginary unit is a trailing ``i``; exponents like ``1e-3`` are
    allowed in either part.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise InputError("empty number literal")
    if not s.endswith("i"):
        try:
            return complex(float(s), 0.0)
        except ValueError:
            raise InputError(f"bad number literal: {text!r}") from None
    body = s[:-1]
    cut = -1
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            cut = k
            break
    re_part, im_part = (body[:cut], body[cut:]) if cut > 0 else ("", body)
    try:
        if im_part in ("", "+"):
            im = 1.0
        elif im_part == "-":
            im = -1.0
        else:
            im = float(im_part)
        re = float(re_part) if re_part else 0.0
    except ValueError:
        raise InputError(f"bad number literal: {text!r}") from None
    return complex(re, im)


def _parse_grid(text: str) -> GridSpec:
    parts = text.split(",")
    if len(parts) != 6:
        raise InputError("grid must be 'x0,x1,y0,y1,nx,ny'")
    try:
        x0, x1, y0, y1 = (float(p) for p in parts[:4])
        nx, ny = (int(p) for p in parts[4:])
    except ValueError:
        raise InputError(f"bad grid argument: {text!r}") from None
    return _validated(GridSpec, x0=x0, x1=x1, y0=y0, y1=y1, nx=nx, ny=ny)


def _validated(model_cls, **kwargs):
    try:
        return model_cls(**kwargs)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = ".".join(str(part) for part in first.get("loc", ()))
        msg = first.get("msg", "invalid value")
        raise InputError(f"{loc}: {msg}" if loc else msg) from None


def _load_symbol(args: argparse.Namespace) -> SymbolInput:
    if args.symbol_file == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(args.symbol_file).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {args.symbol_file}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"symbol file is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("symbol document must be a JSON object")
    if getattr(args, "eps_circle", None) is not None:
        data["eps_circle"] = args.eps_circle
    try:
        return SymbolInput.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = ".".join(str(part) for part in first.get("loc", ()))
        msg = first.get("msg", "invalid symbol document")
        raise InputError(f"{loc}: {msg}" if loc else msg) from None


def _emit_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        atomic_write(out, text.encode("utf-8"))


def _emit_bytes(data: bytes, out: str | None) -> None:
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        atomic_write(out, data)


def _emit_doc(model, out: str | None) -> None:
    _emit_text(dumps_canonical(model.model_dump(by_alias=True)), out)


def _cmd_analyze(args: argparse.Namespace) -> int:
    resp = handlers.run_analyze(AnalyzeRequest(symbol=_load_symbol(args)))
    _emit_doc(resp, args.out)
    return 0


def _cmd_spectrum(args: argparse.Namespace) -> int:
    lam = parse_complex_literal(args.lam)
    req = SpectrumRequest(symbol=_load_symbol(args), lam=(lam.real, lam.imag))
    _emit_doc(handlers.run_spectrum(req), args.out)
    return 0


def _cmd_portrait(args: argparse.Namespace) -> int:
    req = PortraitRequest(symbol=_load_symbol(args), grid=_parse_grid(args.grid),
                          format=args.format)
    if args.format == "json":
        _emit_doc(handlers.run_portrait(req), args.out)
    else:
        _, grid = handlers.compute_portrait(req)
        if args.format == "csv":
            _emit_text(csv_text(grid), args.out)
        else:
            _emit_bytes(ppm_bytes(grid), args.out)
    return 0


def _cmd_deficiency(args: argparse.Namespace) -> int:
    resp = handlers.run_deficiency(DeficiencyRequest(symbol=_load_symbol(args)))
    _emit_doc(resp, args.out)
    return 0


def _cmd_pullback(args: argparse.Namespace) -> int:
    req = _validated(PullbackRequest, symbol=_load_symbol(args),
                     alpha=args.alpha, n_points=args.points)
    _emit_doc(handlers.run_pullback(req), args.out)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    req = VerifyRequest(symbol=_load_symbol(args), level=args.level, seed=args.seed)
    resp = handlers.run_verify(req)
    _emit_doc(resp, args.out)
    if resp.theory_violation:
        return 3
    return 0 if resp.passed else 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toepscope",
        description="Analyze Toeplitz operators with rational symbols R/S "
                    "on the Hardy space of the disk.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("symbol_file",
                        help="JSON symbol document, or '-' for stdin")
        sp.add_argument("--eps-circle", type=float, default=None,
                        help="override the circle-classification tolerance")
        sp.add_argument("--out", default=None, metavar="PATH",
                        help="write output atomically to PATH instead of stdout")

    sp = sub.add_parser("analyze",
                        help="domain factor, kernel, cokernel, Fredholm data")
    common(sp)
    sp.set_defaults(func=_cmd_analyze)

    sp = sub.add_parser("spectrum",
                        help="classify one spectral point lambda")
    common(sp)
    sp.add_argument("--lambda", dest="lam", required=True, metavar="A+BI",
                    help="complex number, e.g. '0.5', '-2i', '1+2i'")
    sp.set_defaults(func=_cmd_spectrum)

    sp = sub.add_parser("portrait",
                        help="classify a rectangular grid of lambda values")
    common(sp)
    sp.add_argument("--grid", required=True, metavar="X0,X1,Y0,Y1,NX,NY",
                    help="grid bounds and node counts, endpoints inclusive")
    sp.add_argument("--format", choices=("json", "csv", "ppm"), default="json",
                    help="json summary, csv per-node table, or ppm image")
    sp.set_defaults(func=_cmd_portrait)

    sp = sub.add_parser("deficiency",
                        help="deficiency indices and defect-space bases "
                             "(symbols real on the circle)")
    common(sp)
    sp.set_defaults(func=_cmd_deficiency)

    sp = sub.add_parser("pullback",
                        help="polynomial data of the half-plane pullback")
    common(sp)
    sp.add_argument("--alpha", type=float, default=0.0,
                    help="requested rotation angle (adjusted if degenerate)")
    sp.add_argument("--points", type=int, default=32,
                    help="sample count for the residual check")
    sp.set_defaults(func=_cmd_pullback)

    sp = sub.add_parser("verify",
                        help="run the self-consistency check suite")
    common(sp)
    sp.add_argument("--level", choices=("quick", "full"), default="full")
    sp.add_argument("--seed", type=int, default=0,
                    help="seed for randomized checks")
    sp.set_defaults(func=_cmd_verify)

    return parser


def _exit_code(exc: ToepscopeError) -> int:
    if isinstance(exc, InputError):
        return 1
    if isinstance(exc, TheoryViolationError):
        return 3
    if isinstance(exc, NumericalError):
        return 2
    return 2


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1
    try:
        return args.func(args)
    except ToepscopeError as exc:
        code = _exit_code(exc)
        doc = {"error": {"type": type(exc).__name__, "message": str(exc),
                         "exit_code": code}}
        sys.stderr.write(json.dumps(doc) + "\n")
        return code


if __name__ == "__main__":
    sys.exit(main())

"""Deterministic output rendering: canonical JSON text, portrait CSV and PPM,
and atomic file writes.

Identical documents must produce byte-identical output, so floats are
rendered with a fixed 17-significant-digit format (negative zero collapses
to "0") instead of whatever repr the runtime ships.
"""

from __future__ import annotations

import json
import math
import os
import tempfile

from .errors import InputError
from .spectral import PortraitGrid, SpectralPart

PPM_PALETTE = {
    SpectralPart.RESOLVENT: (255, 255, 255),
    SpectralPart.POINT: (220, 50, 47),
    SpectralPart.CONTINUOUS: (38, 139, 210),
    SpectralPart.RESIDUAL: (133, 153, 0),
}
PPM_ILL_CONDITIONED = (128, 128, 128)

CSV_HEADER = "x,y,part,fredholm,dim_ker,dim_coker,index"


def fmt_float(x: float) -> str:
    """17-significant-digit rendering; 0 and -0.0 both map to \"0\"."""
    if not math.isfinite(x):
        raise InputError(f"non-finite number in output: {x!r}")
    if x == 0.0:
        return "0"
    return format(float(x), ".17g")


def _render(obj, level: int) -> str:
    pad = "  " * level
    pad_in = "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = [f"{pad_in}{json.dumps(str(k))}: {_render(v, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(parts) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        parts = [f"{pad_in}{_render(v, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(parts) + f"\n{pad}]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    raise InputError(f"cannot render {type(obj).__name__} into a document")


def dumps_canonical(doc: dict) -> str:
    """Canonical JSON text of a document (dict tree), newline-terminated."""
    return _render(doc, 0) + "\n"


def csv_text(grid: PortraitGrid) -> str:
    """Portrait rows, y ascending then x ascending; infinite kernels print inf."""
    lines = [CSV_HEADER]
    for iy, y in enumerate(grid.ys):
        for ix, x in enumerate(grid.xs):
            rep = grid.at(ix, iy)
            dim_ker = "inf" if rep.infinite_dimensional else str(rep.dim_ker)
            index = "" if rep.index is None else str(rep.index)
            lines.append(",".join((
                fmt_float(x), fmt_float(y), rep.part.value,
                "true" if rep.fredholm else "false",
                dim_ker, str(rep.dim_coker), index,
            )))
    return "\n".join(lines) + "\n"


def ppm_bytes(grid: PortraitGrid) -> bytes:
    """Binary P6 image, top row = largest Im(lambda); fixed 4-color palette."""
    nx, ny = len(grid.xs), len(grid.ys)
    buf = bytearray(f"P6\n{nx} {ny}\n255\n".encode("ascii"))
    for iy in range(ny - 1, -1, -1):
        for ix in range(nx):
            rep = grid.at(ix, iy)
            rgb = PPM_ILL_CONDITIONED if rep.ill_conditioned else PPM_PALETTE[rep.part]
            buf.extend(rgb)
    return bytes(buf)


def atomic_write(path: str, data: bytes) -> None:
    """Write via a sibling temp file and rename, so readers never see partial output."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-render-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        # mkstemp opens 0600; widen to the umask-honoring mode of a plain write
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

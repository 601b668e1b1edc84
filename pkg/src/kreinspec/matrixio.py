"""Plain-text matrix files.

Format::

    # comments start with '#'
    dim 4
    1  0  0.2+1i  -0.5i
    ...

Entries are written ``re+imi`` / ``re-imi``; a bare real (``1``) or bare
imaginary (``-2i``) is accepted too. Writing uses ``repr`` of each float so
a written matrix reads back bit for bit.
"""
import math
import re

import numpy as np

from .errors import KreinSpecError


class MatrixFileError(KreinSpecError, ValueError):
    pass


_COMPLEX = re.compile(
    r"""^(?:
        (?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
        (?P<im>[+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)?[ij]
      | (?P<re_only>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-]?(?:inf|nan))
      | (?P<im_only>[+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)[ij]
    )$""",
    re.VERBOSE | re.IGNORECASE,
)


def _coef(text):
    if text in ("", "+"):
        return 1.0
    if text == "-":
        return -1.0
    return float(text)


def parse_complex(text):
    """Parse ``0.5+0.3i``, ``1``, ``-2i``, ``i`` (``j`` also accepted)."""
    s = text.strip()
    m = _COMPLEX.match(s)
    if not m:
        raise MatrixFileError(f"cannot parse complex number {text!r}")
    if m.group("re_only") is not None:
        value = complex(float(m.group("re_only")), 0.0)
    elif m.group("im_only") is not None:
        value = complex(0.0, _coef(m.group("im_only")))
    elif m.group("im") is not None:
        value = complex(float(m.group("re")), _coef(m.group("im")))
    else:
        # "3i" matched as re + suffix
        value = complex(0.0, float(m.group("re")))
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise MatrixFileError(f"non-finite entry {text!r}")
    return value


def format_complex(z):
    z = complex(z)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def parse_matrix(text, source="<string>"):
    rows = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if dim is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim":
                raise MatrixFileError(f"{source}:{lineno}: expected 'dim N', got {line!r}")
            try:
                dim = int(parts[1])
            except ValueError:
                raise MatrixFileError(f"{source}:{lineno}: bad dimension {parts[1]!r}") from None
            if dim <= 0:
                raise MatrixFileError(f"{source}:{lineno}: dimension must be positive")
            continue
        entries = line.split()
        if len(entries) != dim:
            raise MatrixFileError(
                f"{source}:{lineno}: expected {dim} entries, found {len(entries)}"
            )
        try:
            rows.append([parse_complex(e) for e in entries])
        except MatrixFileError as exc:
            raise MatrixFileError(f"{source}:{lineno}: {exc}") from None
    if dim is None:
        raise MatrixFileError(f"{source}: missing 'dim N' header")
    if len(rows) != dim:
        raise MatrixFileError(f"{source}: expected {dim} rows, found {len(rows)}")
    return np.array(rows, dtype=np.complex128)


def read_matrix(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc}") from None
    return parse_matrix(text, str(path))


def format_matrix(m, comment=None):
    m = np.asarray(m, dtype=np.complex128)
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"dim {m.shape[0]}")
    for row in m:
        lines.append("  ".join(format_complex(z) for z in row))
    return "\n".join(lines) + "\n"


def write_matrix(path, m, comment=None):
    with open(path, "w") as fh:
        fh.write(format_matrix(m, comment))

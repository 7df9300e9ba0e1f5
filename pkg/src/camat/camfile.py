"""Reader and writer for the CAM text format.

::

    cam 1 <m> <n> <k> <real|complex>
    <row> <col> v1 ... vk          (one line per entry, 1-based indices)

Values carry 17 significant digits so every finite double roundtrips exactly.
"""

import numpy as np

from . import _fourier
from .linalg import CircMatrix

MAGIC = "cam"
VERSION = 1


def dumps(A):
    m, n = A.shape
    kind = "real" if A.is_real else "complex"
    lines = [f"{MAGIC} {VERSION} {m} {n} {A.k} {kind}"]
    T = A.time
    for i in range(m):
        for j in range(n):
            vals = " ".join(_fourier.format_number(v) for v in T[i, j])
            lines.append(f"{i + 1} {j + 1} {vals}")
    return "\n".join(lines) + "\n"


def loads(text):
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty CAM input")
    head = lines[0].split()
    if len(head) != 6 or head[0] != MAGIC:
        raise ValueError(f"bad CAM header: {lines[0]!r}")
    if int(head[1]) != VERSION:
        raise ValueError(f"unsupported CAM version {head[1]}")
    m, n, k = (int(t) for t in head[2:5])
    kind = head[5]
    if kind not in ("real", "complex"):
        raise ValueError(f"unknown CAM value kind {kind!r}")
    data = np.zeros((m, n, k), dtype=np.float64 if kind == "real" else np.complex128)
    for ln in lines[1:]:
        tok = ln.split()
        if len(tok) != k + 2:
            raise ValueError(f"CAM entry line has {len(tok)} fields, expected {k + 2}: {ln!r}")
        i, j = int(tok[0]) - 1, int(tok[1]) - 1
        if not (0 <= i < m and 0 <= j < n):
            raise ValueError(f"CAM entry ({i + 1}, {j + 1}) outside a {m}x{n} matrix")
        vals = [_fourier.parse_number(t) for t in tok[2:]]
        if kind == "real" and any(isinstance(v, complex) for v in vals):
            raise ValueError("complex value in a real CAM file")
        data[i, j] = vals
    return CircMatrix(data)


def write(path, A):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps(A))


def read(path):
    with open(path, encoding="ascii") as fh:
        return loads(fh.read())

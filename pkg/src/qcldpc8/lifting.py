"""Circulant lifting, GF(2) rank and the alist interchange format."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import IndexOutOfRange, InvalidMatrix, MalformedHeader, WeightMismatch
from .exponent import ExponentMatrix


@dataclass(frozen=True)
class SparseBinaryMatrix:
    """Binary matrix kept as sorted index lists per column and per row.

    ``circulant_size`` is set by :func:`lift` and records that the matrix is an
    array of ``p x p`` circulant permutation blocks.  It is metadata only and
    does not take part in equality.
    """

    n_rows: int
    n_cols: int
    col_rows: tuple[tuple[int, ...], ...]
    row_cols: tuple[tuple[int, ...], ...] = field(default=())
    circulant_size: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        if self.n_rows < 0 or self.n_cols < 0:
            raise InvalidMatrix("negative dimension")
        cols = tuple(tuple(sorted(int(r) for r in c)) for c in self.col_rows)
        if len(cols) != self.n_cols:
            raise InvalidMatrix(f"expected {self.n_cols} column lists, got {len(cols)}")
        rows: list[list[int]] = [[] for _ in range(self.n_rows)]
        for j, c in enumerate(cols):
            if len(set(c)) != len(c):
                raise InvalidMatrix(f"column {j} repeats a row index")
            for r in c:
                if not 0 <= r < self.n_rows:
                    raise InvalidMatrix(f"row index {r} out of range in column {j}")
                rows[r].append(j)
        object.__setattr__(self, "col_rows", cols)
        object.__setattr__(self, "row_cols", tuple(tuple(r) for r in rows))

    @classmethod
    def from_dense(cls, dense, circulant_size: Optional[int] = None) -> SparseBinaryMatrix:
        arr = np.asarray(dense)
        if arr.ndim != 2:
            raise InvalidMatrix("dense matrix must be 2-D")
        cols = tuple(tuple(np.flatnonzero(arr[:, j] % 2).tolist()) for j in range(arr.shape[1]))
        return cls(arr.shape[0], arr.shape[1], cols, circulant_size=circulant_size)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def n_edges(self) -> int:
        return sum(len(c) for c in self.col_rows)

    def col_weights(self) -> list[int]:
        return [len(c) for c in self.col_rows]

    def row_weights(self) -> list[int]:
        return [len(r) for r in self.row_cols]

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        for j, c in enumerate(self.col_rows):
            out[list(c), j] = 1
        return out


def lift(E: ExponentMatrix) -> SparseBinaryMatrix:
    """Expand ``E`` into its ``Jp x Lp`` parity-check matrix.

    Block ``(i, j)`` is the identity with every row shifted ``e[i][j]`` places to
    the left: block-row ``t`` holds its one at block-column ``(t + e) mod p``.
    """
    p = E.p
    cols = []
    for j in range(E.L):
        for s in range(p):
            cols.append(tuple(i * p + (s - E.entries[i][j]) % p for i in range(E.J)))
    return SparseBinaryMatrix(E.J * p, E.L * p, tuple(cols), circulant_size=p)


def is_block_permutation(H: SparseBinaryMatrix, p: int) -> bool:
    """True when every ``p x p`` block holds exactly one 1 per block-row and block-column."""
    if H.n_rows % p or H.n_cols % p:
        return False
    for bj in range(H.n_cols // p):
        for s in range(p):
            blocks = [r // p for r in H.col_rows[bj * p + s]]
            if sorted(blocks) != list(range(H.n_rows // p)):
                return False
    for bi in range(H.n_rows // p):
        for t in range(p):
            blocks = [c // p for c in H.row_cols[bi * p + t]]
            if sorted(blocks) != list(range(H.n_cols // p)):
                return False
    return True


def rank_gf2(H: SparseBinaryMatrix | np.ndarray) -> int:
    """Rank over GF(2); rows are packed into Python ints and reduced against a pivot basis."""
    if isinstance(H, SparseBinaryMatrix):
        rows: Iterable[int] = (sum(1 << c for c in rc) for rc in H.row_cols)
    else:
        arr = np.asarray(H) % 2
        rows = (
            int.from_bytes(np.packbits(row.astype(np.uint8), bitorder="little").tobytes(), "little")
            for row in arr
        )
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            pivot = basis.get(top)
            if pivot is None:
                basis[top] = r
                break
            r ^= pivot
    return len(basis)


def write_alist(H: SparseBinaryMatrix) -> str:
    cw, rw = H.col_weights(), H.row_weights()
    lines = [
        f"{H.n_cols} {H.n_rows}",
        f"{max(cw, default=0)} {max(rw, default=0)}",
        " ".join(map(str, cw)),
        " ".join(map(str, rw)),
    ]
    lines += [" ".join(str(r + 1) for r in c) for c in H.col_rows]
    lines += [" ".join(str(c + 1) for c in r) for r in H.row_cols]
    return "\n".join(lines) + "\n"


def _ints(line: str, what: str) -> list[int]:
    try:
        return [int(x) for x in line.split()]
    except ValueError:
        raise MalformedHeader(f"non-integer token in {what}: {line!r}") from None


def read_alist(text: str) -> SparseBinaryMatrix:
    """Parse alist text; trailing zero padding in the index lists is ignored."""
    lines = text.splitlines()
    if len(lines) < 4:
        raise MalformedHeader("alist needs at least four header lines")
    dims = _ints(lines[0], "dimensions")
    maxw = _ints(lines[1], "max weights")
    if len(dims) != 2 or len(maxw) != 2:
        raise MalformedHeader("first two lines must hold two integers each")
    n, m = dims
    cw = _ints(lines[2], "column weights")
    rw = _ints(lines[3], "row weights")
    if len(cw) != n or len(rw) != m:
        raise MalformedHeader(f"expected {n} column weights and {m} row weights")
    if max(cw, default=0) != maxw[0] or max(rw, default=0) != maxw[1]:
        raise WeightMismatch("max weights disagree with the weight lists")
    body = lines[4:]
    if len(body) < n + m or any(ln.strip() for ln in body[n + m :]):
        raise MalformedHeader(f"expected exactly {n + m} index lines")

    def indices(line: str, weight: int, bound: int, what: str) -> list[int]:
        vals = [v for v in _ints(line, what) if v != 0]
        if len(vals) != weight:
            raise WeightMismatch(f"{what} lists {len(vals)} indices, weight says {weight}")
        for v in vals:
            if not 1 <= v <= bound:
                raise IndexOutOfRange(f"{what} index {v} not in [1, {bound}]")
        return [v - 1 for v in vals]

    cols = [indices(body[j], cw[j], m, f"column {j + 1}") for j in range(n)]
    rows = [indices(body[n + i], rw[i], n, f"row {i + 1}") for i in range(m)]
    H = SparseBinaryMatrix(m, n, tuple(tuple(c) for c in cols))
    if [sorted(r) for r in rows] != [list(r) for r in H.row_cols]:
        raise WeightMismatch("row lists are not the transpose of the column lists")
    return H


"""Three independent girth checkers.

* :func:`check_m8_validity` decides ``girth >= 8`` for ``J = 3`` from the
  distinctness conditions on the girth-8 matrix.
* :func:`find_cycle` / :func:`girth_exponent` enumerate index chains on the
  exponent matrix and test the circulant cycle condition
  ``sum_i e[m_i][n_i] - e[m_i][n_{i+1}] == 0 (mod p)``.
* :func:`girth_lifted` runs BFS on the Tanner graph of the lifted matrix.

Girth values above 12 are reported as ``math.inf``; a fully connected code
cannot exceed 12, so the searches stop there.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import EmptyMatrix, KTooLarge
from .exponent import ExponentMatrix, Girth8Matrix
from .lifting import SparseBinaryMatrix

MAX_GIRTH = 12
MAX_K = MAX_GIRTH // 2
# column-sequence blocks are generated in chunks of at most this many rows
_CHUNK = 1 << 20


def format_girth(g: float) -> str:
    return str(int(g)) if g <= MAX_GIRTH else f">{MAX_GIRTH}"


@dataclass(frozen=True)
class CycleWitness:
    length: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]  # n_0 .. n_k, closed: cols[-1] == cols[0]
    residual: int

    @property
    def k(self) -> int:
        return len(self.rows)

    def verify(self, E: ExponentMatrix) -> bool:
        k = self.k
        if self.length != 2 * k or len(self.cols) != k + 1 or self.cols[-1] != self.cols[0]:
            return False
        for i in range(k):
            if self.rows[i] == self.rows[(i + 1) % k] or self.cols[i] == self.cols[i + 1]:
                return False
        total = sum(E[self.rows[i], self.cols[i]] - E[self.rows[i], self.cols[i + 1]] for i in range(k))
        return total == self.residual and total % E.p == 0

    def to_dict(self) -> dict:
        return {"length": self.length, "rows": list(self.rows), "cols": list(self.cols)}


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    violated_condition: Optional[str] = None  # diagonal-collision | row-a-collision | col-b-collision
    coordinates: tuple = ()

    def __bool__(self) -> bool:
        return self.valid


def _first_duplicate(values) -> Optional[tuple[int, int]]:
    seen: dict[int, int] = {}
    for j, v in enumerate(values):
        if v in seen:
            return seen[v], j
        seen[v] = j
    return None


def check_m8_validity(M: Girth8Matrix) -> ValidityReport:
    """Header distinctness, then every diagonal value must occur exactly once in the table."""
    dup = _first_duplicate(M.a)
    if dup:
        return ValidityReport(False, "row-a-collision", dup)
    dup = _first_duplicate(M.nb)
    if dup:
        return ValidityReport(False, "col-b-collision", dup)
    table = M.to_array()
    counts = Counter(table.ravel().tolist())
    for i in range(M.L):
        v = int(table[i, i])
        if counts[v] > 1:
            rs, cs = np.nonzero(table == v)
            other = next((int(r), int(c)) for r, c in zip(rs, cs) if (r, c) != (i, i))
            return ValidityReport(False, "diagonal-collision", ((i, i), other))
    return ValidityReport(True)


def _extend(seqs: np.ndarray, n: int, steps: int) -> np.ndarray:
    for _ in range(steps):
        m = seqs.shape[0]
        ext = np.repeat(seqs, n, axis=0)
        ext = np.hstack([ext, np.tile(np.arange(n, dtype=np.int64), m)[:, None]])
        seqs = ext[ext[:, -1] != ext[:, -2]]
    return seqs


def closed_sequences(n: int, k: int) -> np.ndarray:
    """All length-``k`` sequences over ``range(n)`` whose cyclically adjacent terms differ.

    Rows come out in lexicographic order.
    """
    if n < 2:
        return np.zeros((0, k), dtype=np.int64)
    seqs = _extend(np.arange(n, dtype=np.int64)[:, None], n, k - 1)
    return seqs[seqs[:, -1] != seqs[:, 0]]


def _column_chunks(L: int, k: int, prefix: tuple[int, ...] = ()):
    """Yield lexicographic blocks of closed column sequences, splitting on prefixes when large."""
    if not prefix and L * (L - 1) ** (k - 1) <= _CHUNK:
        yield closed_sequences(L, k)
        return
    if prefix and (L - 1) ** (k - len(prefix)) <= _CHUNK:
        seqs = _extend(np.array([prefix], dtype=np.int64), L, k - len(prefix))
        yield seqs[seqs[:, -1] != seqs[:, 0]]
        return
    for c in range(L):
        if not prefix or c != prefix[-1]:
            yield from _column_chunks(L, k, prefix + (c,))


def find_cycle(E: ExponentMatrix, k: int) -> Optional[CycleWitness]:
    """First (rows-then-columns lexicographic) index chain closing a ``2k``-cycle, if any."""
    if k > MAX_K:
        raise KTooLarge(f"k = {k} exceeds {MAX_K}; fully connected girth is at most {MAX_GIRTH}")
    if k < 2:
        raise KTooLarge(f"k must be at least 2, got {k}")
    row_seqs = closed_sequences(E.J, k)
    if row_seqs.shape[0] == 0:
        return None
    e = E.to_array()
    for cols in _column_chunks(E.L, k):
        if cols.shape[0] == 0:
            continue
        nxt = np.roll(cols, -1, axis=1)
        for rows in row_seqs:
            sums = np.zeros(cols.shape[0], dtype=np.int64)
            for i, m in enumerate(rows):
                sums += e[m, cols[:, i]] - e[m, nxt[:, i]]
            hits = np.flatnonzero(sums % E.p == 0)
            if hits.size:
                h = hits[0]
                n = tuple(int(c) for c in cols[h])
                return CycleWitness(2 * k, tuple(int(m) for m in rows), n + (n[0],), int(sums[h]))
    return None


def girth_exponent(E: ExponentMatrix) -> float:
    """Smallest ``2k <= 12`` admitting a cycle, else ``math.inf``."""
    for k in range(2, MAX_K + 1):
        if find_cycle(E, k) is not None:
            return 2 * k
    return math.inf


def _tanner_adjacency(H: SparseBinaryMatrix) -> list[tuple[int, ...]]:
    n = H.n_cols
    adj = [tuple(n + r for r in c) for c in H.col_rows]
    adj += [tuple(rc) for rc in H.row_cols]
    return adj


def _shortest_cycle_from(adj, s: int, best: int) -> int:
    """Length of the shortest closed walk found by BFS from ``s``, or ``best`` if none is shorter."""
    dist = {s: 0}
    parent = {s: -1}
    frontier = [s]
    d = 0
    while frontier and 2 * d < best:
        nxt = []
        for u in frontier:
            pu = parent[u]
            for w in adj[u]:
                if w == pu:
                    continue
                dw = dist.get(w)
                if dw is None:
                    dist[w] = d + 1
                    parent[w] = u
                    nxt.append(w)
                else:
                    cand = d + dw + 1
                    if cand < best:
                        best = cand
        frontier = nxt
        d += 1
    return best


def girth_lifted(H: SparseBinaryMatrix, use_symmetry: bool = True) -> float:
    """Girth of the Tanner graph of ``H`` by BFS, exact up to 12, else ``math.inf``.

    If ``H`` came from :func:`lift` (``circulant_size`` set) and ``use_symmetry``
    is on, BFS starts from one variable node per block column: the cyclic shift
    inside every block is a graph automorphism, so the other starts add nothing.
    """
    if H.n_rows == 0 or H.n_cols == 0:
        raise EmptyMatrix("parity-check matrix has no rows or no columns")
    adj = _tanner_adjacency(H)
    p = H.circulant_size
    if use_symmetry and p and H.n_cols % p == 0:
        starts = range(0, H.n_cols, p)
    else:
        starts = range(H.n_cols)
    best = MAX_GIRTH + 1
    for s in starts:
        best = _shortest_cycle_from(adj, s, best)
        if best == 4:
            break
    return best if best <= MAX_GIRTH else math.inf

"""Exponent matrices, girth-8 matrices and the girth-preserving transforms.

An :class:`ExponentMatrix` together with its lifting degree ``p`` defines a
fully connected QC-LDPC code.  For ``J = 3`` and a normalized matrix

    0    0    ...  0
    0    a_1  ...  a_{L-1}
    0    b_1  ...  b_{L-1}

the :class:`Girth8Matrix` is the L x L table ``a_i + nb_j`` where ``nb_j``
stores ``-b_j``.  Keeping ``-b_j`` rather than ``b_j`` means the
constructions never have to think about signs; conversion happens only in
:func:`m8_from_exponent` and :func:`exponent_from_m8`.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    InvalidMatrix,
    InvalidPermutation,
    ModulusTooSmall,
    NotNormalized,
    WrongRowCount,
)


@dataclass(frozen=True)
class ExponentMatrix:
    """J x L matrix of circulant shifts with lifting degree ``p``."""

    entries: tuple[tuple[int, ...], ...]
    p: int

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if self.p < 2:
            raise InvalidMatrix(f"lifting degree must be >= 2, got {self.p}")
        if not rows:
            raise InvalidMatrix("exponent matrix needs at least one row")
        width = len(rows[0])
        if width < 2:
            raise InvalidMatrix(f"exponent matrix needs L >= 2 columns, got {width}")
        for row in rows:
            if len(row) != width:
                raise InvalidMatrix("exponent matrix rows have unequal length")
            for x in row:
                if not 0 <= x < self.p:
                    raise InvalidMatrix(f"entry {x} outside [0, {self.p - 1}]")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> ExponentMatrix:
        return cls(tuple(tuple(r) for r in rows), p)

    @property
    def J(self) -> int:
        return len(self.entries)

    @property
    def L(self) -> int:
        return len(self.entries[0])

    @property
    def is_normalized(self) -> bool:
        return all(x == 0 for x in self.entries[0]) and all(row[0] == 0 for row in self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def with_lifting_degree(self, p: int) -> ExponentMatrix:
        """Reinterpret the same shifts at another lifting degree (entries must fit)."""
        return ExponentMatrix(self.entries, p)

    def reduced(self, p: int) -> ExponentMatrix:
        """Same shifts taken modulo a new lifting degree ``p``."""
        return ExponentMatrix(tuple(tuple(x % p for x in row) for row in self.entries), p)

    def to_text(self) -> str:
        lines = [f"{self.J} {self.L} {self.p}"]
        lines += [" ".join(str(x) for x in row) for row in self.entries]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> ExponentMatrix:
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not lines or len(lines[0]) != 3:
            raise InvalidMatrix("first line must read 'J L p'")
        try:
            J, L, p = (int(x) for x in lines[0])
            rows = [[int(x) for x in ln] for ln in lines[1:]]
        except ValueError as exc:
            raise InvalidMatrix(f"non-integer token: {exc}") from None
        if len(rows) != J or any(len(r) != L for r in rows):
            raise InvalidMatrix(f"expected {J} rows of {L} entries")
        return cls.from_rows(rows, p)

    def __str__(self) -> str:
        return self.to_text().rstrip("\n")


@dataclass(frozen=True)
class Girth8Matrix:
    """The table ``m[i][j] = a[i] + nb[j]`` with ``nb[j] = -b[j]``.

    ``modulus=None`` is the unbounded mode: entries are exact integers, which is
    how the constructions build a matrix before choosing ``p``.
    """

    a: tuple[int, ...]
    nb: tuple[int, ...]
    modulus: Optional[int] = None

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        nb = tuple(int(x) for x in self.nb)
        if len(a) != len(nb):
            raise InvalidMatrix("row and column headers differ in length")
        if len(a) < 2:
            raise InvalidMatrix("girth-8 matrix needs L >= 2")
        if self.modulus is not None:
            if self.modulus < 2:
                raise InvalidMatrix(f"modulus must be >= 2, got {self.modulus}")
            a = tuple(x % self.modulus for x in a)
            nb = tuple(x % self.modulus for x in nb)
        if a[0] != 0 or nb[0] != 0:
            raise InvalidMatrix("headers must start with a_0 = nb_0 = 0")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "nb", nb)

    @property
    def L(self) -> int:
        return len(self.a)

    @property
    def bounded(self) -> bool:
        return self.modulus is not None

    def entry(self, i: int, j: int) -> int:
        v = self.a[i] + self.nb[j]
        return v % self.modulus if self.modulus is not None else v

    def to_array(self) -> np.ndarray:
        m = np.add.outer(np.array(self.a, dtype=np.int64), np.array(self.nb, dtype=np.int64))
        return m % self.modulus if self.modulus is not None else m

    def max_element(self) -> int:
        return int(self.to_array().max())

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entry(i, i) for i in range(self.L))

    def at_modulus(self, p: Optional[int]) -> Girth8Matrix:
        return Girth8Matrix(self.a, self.nb, p)


def _require_normalized_j3(E: ExponentMatrix) -> None:
    if E.J != 3:
        raise WrongRowCount(f"girth-8 matrix is defined for J = 3, got J = {E.J}")
    if not E.is_normalized:
        raise NotNormalized("first row and first column must be zero")


def m8_from_exponent(E: ExponentMatrix) -> Girth8Matrix:
    _require_normalized_j3(E)
    p = E.p
    nb = tuple((p - b) % p for b in E.entries[2])
    return Girth8Matrix(E.entries[1], nb, p)


def exponent_from_m8(M: Girth8Matrix, p: int) -> ExponentMatrix:
    """Inverse of :func:`m8_from_exponent`.

    An unbounded ``M`` can be realised at any ``p`` larger than its largest
    entry; a bounded one only at its own modulus.
    """
    if M.modulus is None:
        if p <= M.max_element():
            raise ModulusTooSmall(f"p = {p} must exceed the largest entry {M.max_element()}")
    elif p != M.modulus:
        raise ModulusTooSmall(f"matrix is reduced mod {M.modulus}, cannot emit at p = {p}")
    rows = (
        (0,) * M.L,
        tuple(x % p for x in M.a),
        tuple((p - x) % p for x in M.nb),
    )
    return ExponentMatrix(rows, p)


def normalize(E: ExponentMatrix) -> ExponentMatrix:
    """Shift rows then columns so the first row and column are zero (girth-preserving)."""
    p = E.p
    arr = E.to_array()
    arr = (arr - arr[0:1, :]) % p
    arr = (arr - arr[:, 0:1]) % p
    return ExponentMatrix(tuple(map(tuple, arr.tolist())), p)


def permute_columns(E: ExponentMatrix, perm: Sequence[int]) -> ExponentMatrix:
    """Column ``j`` of the result is column ``perm[j]`` of ``E``."""
    perm = [int(x) for x in perm]
    if sorted(perm) != list(range(E.L)):
        raise InvalidPermutation(f"{perm} is not a permutation of 0..{E.L - 1}")
    rows = tuple(tuple(row[k] for k in perm) for row in E.entries)
    return ExponentMatrix(rows, E.p)


def swap_rows(E: ExponentMatrix, i: int = 1, j: int = 2) -> ExponentMatrix:
    if not (0 <= i < E.J and 0 <= j < E.J):
        raise InvalidPermutation(f"row index out of range for J = {E.J}")
    rows = list(E.entries)
    rows[i], rows[j] = rows[j], rows[i]
    return ExponentMatrix(tuple(rows), E.p)

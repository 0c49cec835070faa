"""Deterministic girth-8 constructions with an arithmetic second row.

Both constructions build the girth-8 matrix over the integers (unbounded
mode) and then pick the lifting degree: any ``p`` above the largest table
entry keeps every entry unchanged modulo ``p``, so validity carries over.

Second row ``a_i = i*d``.  For ``d = 1`` the column headers are

    nb_i = (L+1) i                for 1 <= i <= floor((L-1)/2)
    nb_i = (L+2)(L-1-i) + 1       otherwise (i >= 1)

For ``d >= 2`` write ``L = 2qd + r``; the first ``qd`` headers are ``q`` groups,
each a complete residue system mod ``d``, the last ``qd`` mirror them through
``nb_{L-1-i} = nb_i + (i+1)d`` and the ``r`` middle headers depend on ``r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ConstructionInvalid, InfeasibleConstraint, LTooSmall, PTooSmall
from .exponent import ExponentMatrix, Girth8Matrix, exponent_from_m8
from .girth import check_m8_validity

POLICY_IDENTITY = "identity+min-transposition"


@dataclass(frozen=True)
class ConstructionParams:
    L: int
    d: int = 1
    policy: str = POLICY_IDENTITY

    def __post_init__(self):
        if self.d < 1:
            raise InfeasibleConstraint(f"common difference must be >= 1, got {self.d}")
        if self.L < 2:
            raise LTooSmall(f"L must be >= 2, got {self.L}")
        if self.d >= 2 and self.L < 2 * self.d:
            raise LTooSmall(f"d = {self.d} needs L >= {2 * self.d}, got {self.L}")

    @property
    def q(self) -> int:
        return self.L // (2 * self.d)

    @property
    def r(self) -> int:
        return self.L % (2 * self.d)

    @property
    def case(self) -> str:
        if self.d == 1:
            return "d1"
        if self.r == 0:
            return "d2-case-i"
        if self.r <= self.d:
            return "d2-case-ii"
        return "d2-case-iii"


@dataclass(frozen=True)
class ConstructionResult:
    params: ConstructionParams
    M: Girth8Matrix
    p_min: int
    E_min: ExponentMatrix
    notes: tuple[str, ...] = field(default=())

    @property
    def case(self) -> str:
        return self.params.case

    @property
    def L(self) -> int:
        return self.params.L

    def sidecar(self) -> dict:
        return {
            "L": self.params.L,
            "d": self.params.d,
            "q": self.params.q,
            "r": self.params.r,
            "case": self.case,
            "policy": self.params.policy,
            "p_min": self.p_min,
            "a": list(self.M.a),
            "nb": list(self.M.nb),
            "max_element": self.M.max_element(),
            "notes": list(self.notes),
        }


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def p_min(L: int, d: int = 1) -> int:
    """Smallest lifting degree guaranteed by the construction, from its closed form."""
    prm = ConstructionParams(L, d)
    half = Fraction(L * L + L, 2)
    if d == 1:
        return int(half) + (L - 1) // 2
    r = prm.r
    if r == 0:
        val = half + Fraction(L * d, 2) - 2 * d + 2
    elif r <= d:
        val = half + (d - Fraction(r, 2)) * (L - 1)
    else:
        val = half + Fraction((2 * d - r) * (L - 1 - d) + d * L, 2) - r + 2
    return _ceil(val)


def _d1_headers(L: int) -> list[int]:
    h = (L - 1) // 2
    nb = [0] * L
    for i in range(1, L):
        nb[i] = (L + 1) * i if i <= h else (L + 2) * (L - 1 - i) + 1
    return nb


def _place_one(perm: list[int], pos: int) -> list[int]:
    """Swap so that ``perm[pos] == 1`` (identity adjusted by one transposition)."""
    perm = list(perm)
    k = perm.index(1)
    perm[k], perm[pos] = perm[pos], perm[k]
    return perm


def _d2_headers(prm: ConstructionParams) -> tuple[list[int], list[str]]:
    L, d, q, r = prm.L, prm.d, prm.q, prm.r
    notes: list[str] = []
    nb: list[Optional[int]] = [None] * L
    groups = [list(range(d)) for _ in range(q)]
    if r == 0:
        if q == 1:
            notes.append("case i with q = 1: constraint applied inside the first group (nb_{d-1} = 1)")
        groups[q - 1] = _place_one(groups[q - 1], d - 1)
        if q == 1:
            # group 0 must keep nb_0 = 0; the swap above only touches positions >= 1
            assert groups[0][0] == 0
    for j in range(q):
        for k in range(d):
            nb[j * d + k] = groups[j][k] + j * d * (L + 1)
    for i in range(q * d):
        nb[L - 1 - i] = nb[i] + (i + 1) * d
    base = q * d * (L + 1)
    if 1 <= r <= d:
        for k in range(r):
            nb[q * d + k] = k + base
    elif r > d:
        mid = _place_one(list(range(d)), r - d - 1)
        for k in range(d):
            nb[q * d + k] = mid[k] + base
        for t in range(r - d):
            i = q * d + t
            nb[L - 1 - i] = nb[i] + (i + 1) * d
    assert all(x is not None for x in nb)
    return [int(x) for x in nb], notes


def _finish(prm: ConstructionParams, a: list[int], nb: list[int], notes: list[str]) -> ConstructionResult:
    M = Girth8Matrix(a, nb)
    pm = p_min(prm.L, prm.d)
    rep = check_m8_validity(M)
    if not rep.valid:
        raise ConstructionInvalid(f"L={prm.L}, d={prm.d}: unbounded matrix invalid ({rep.violated_condition})")
    if M.max_element() + 1 > pm:
        raise ConstructionInvalid(f"L={prm.L}, d={prm.d}: largest entry {M.max_element()} >= p_min {pm}")
    if not check_m8_validity(M.at_modulus(pm)).valid:
        raise ConstructionInvalid(f"L={prm.L}, d={prm.d}: invalid at p_min = {pm}")
    return ConstructionResult(prm, M, pm, exponent_from_m8(M, pm), tuple(notes))


def construct_d1(L: int) -> ConstructionResult:
    prm = ConstructionParams(L, 1)
    return _finish(prm, list(range(L)), _d1_headers(L), [])


def construct_d2(L: int, d: int) -> ConstructionResult:
    if d == 1:
        raise InfeasibleConstraint("d = 1 is handled by construct_d1")
    prm = ConstructionParams(L, d)
    nb, notes = _d2_headers(prm)
    return _finish(prm, [i * d for i in range(L)], nb, notes)


def construct(L: int, d: int = 1) -> ConstructionResult:
    return construct_d1(L) if d == 1 else construct_d2(L, d)


def emit_for_p(R: ConstructionResult, p: int) -> ExponentMatrix:
    """Exponent matrix at lifting degree ``p``: ``b_i = (p - nb_i) mod p``."""
    if p < R.p_min:
        raise PTooSmall(f"p = {p} is below p_min = {R.p_min}")
    return exponent_from_m8(R.M, p)


def probe_below_p_min(R: ConstructionResult) -> bool:
    """Whether the same headers happen to stay valid at ``p_min - 1`` (informational)."""
    if R.p_min - 1 < 2:
        return False
    return check_m8_validity(R.M.at_modulus(R.p_min - 1)).valid

"""Lower bounds on the lifting degree of girth-8 (3, L) fully connected codes.

All bounds are integers: irrational thresholds are turned into the smallest
admissible integer with exact integer arithmetic, never floating point.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Optional

from .errors import LengthTooSmall, MOutOfRange, SearchSpaceTooLarge, UnsortedLengths
from .exponent import Girth8Matrix

# exhaustive search guard
SEARCH_MAX_L = 5
SEARCH_MAX_P = 16


def bound_classical(J: int, L: int) -> int:
    return (J - 1) * (L - 1) + 1


def bound_lemma2(L: int, m: int) -> int:
    """Bound from an arithmetic progression of length ``m`` in the second row: m^2/2 - 3m/2 + 2L."""
    if not 2 <= m <= L:
        raise MOutOfRange(f"AP length m = {m} must lie in [2, {L}]")
    # m^2 - 3m is always even
    return (m * m - 3 * m) // 2 + 2 * L


def bound_lemma3(L: int, lengths: Sequence[int]) -> int:
    """Bound from disjoint APs of one common difference, lengths sorted non-increasing."""
    lengths = list(lengths)
    if not lengths:
        raise LengthTooSmall("need at least one progression")
    if any(j < 2 for j in lengths):
        raise LengthTooSmall(f"every progression needs length >= 2: {lengths}")
    if any(x < y for x, y in zip(lengths, lengths[1:])):
        raise UnsortedLengths(f"lengths must be non-increasing: {lengths}")
    if sum(lengths) > L:
        raise MOutOfRange(f"progressions cover {sum(lengths)} > L = {L} elements")
    j1 = lengths[0]
    return 2 * L - 1 + (j1 - 1) * (j1 - 2) // 2 + sum(j * (j - 1) // 2 for j in lengths[1:])


def bound_pairs(L: int, m: int) -> int:
    """Bound from ``m`` pairs of second-row entries sharing one difference."""
    return 2 * L + m - 2


def bound_theorem1(L: int) -> int:
    """Smallest integer p with p >= sqrt(5L^2 - 11L + 13/2) + 1/2.

    Equivalent to (2p - 1)^2 >= 20L^2 - 44L + 26 with 2p - 1 > 0.
    """
    rhs = 20 * L * L - 44 * L + 26
    r = math.isqrt(rhs)
    if r * r < rhs:
        r += 1
    if r % 2 == 0:  # 2p - 1 is odd
        r += 1
    return (r + 1) // 2


def bound_construction_cited(L: int) -> int:
    """ceil(3L^2/4), the requirement of the earlier construction with second row 0..L-1."""
    return -(-3 * L * L // 4)


@dataclass(frozen=True)
class DifferenceStructure:
    d: int
    longest: int
    decomposition: tuple[int, ...]  # disjoint maximal progressions, non-increasing
    pair_count: int


def _chains(values: set[int], d: int, p: Optional[int]) -> list[int]:
    """Lengths of the maximal chains x, x+d, x+2d, ... inside ``values``."""
    step = (lambda x: (x + d) % p) if p else (lambda x: x + d)
    back = (lambda x: (x - d) % p) if p else (lambda x: x - d)
    seen: set[int] = set()
    lengths = []
    for x in sorted(values):
        if x in seen:
            continue
        start = x
        # walk back to the head of the chain; a full cycle has no head
        while back(start) in values and back(start) != x:
            start = back(start)
        n, y = 0, start
        while y in values and y not in seen:
            seen.add(y)
            n += 1
            y = step(y)
        lengths.append(n)
    return sorted((n for n in lengths if n >= 2), reverse=True)


def detect_ap_structure(a: Sequence[int], p: Optional[int] = None) -> dict[int, DifferenceStructure]:
    """Arithmetic structure of the second row, keyed by common difference.

    With ``p=None`` differences are plain integers (``a`` sorted ascending).
    With a finite ``p`` they are taken modulo ``p`` and progressions may wrap.
    """
    vals = [x % p for x in a] if p else list(a)
    values = set(vals)
    if p:
        diffs = {(y - x) % p for x in vals for y in vals if x != y}
    else:
        diffs = {y - x for x, y in combinations(sorted(vals), 2)}
    out = {}
    for d in sorted(diffs):
        if p:
            pairs = sum(1 for x in values if (x + d) % p in values)
        else:
            pairs = sum(1 for x in values if x + d in values)
        chains = _chains(values, d, p)
        out[d] = DifferenceStructure(d, chains[0], tuple(chains), pairs)
    return out


@dataclass
class BoundReport:
    L: int
    classical_bound: int
    theorem1_bound: int
    lemma2_bound: Optional[int] = None
    lemma3_bound: Optional[int] = None
    pair_bound: Optional[int] = None
    best: int = 0
    notes: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def populated(self) -> dict[str, int]:
        keys = ("classical_bound", "theorem1_bound", "lemma2_bound", "lemma3_bound", "pair_bound")
        return {k: getattr(self, k) for k in keys if getattr(self, k) is not None}


def best_bound(L: int, a: Optional[Sequence[int]] = None, p: Optional[int] = None) -> BoundReport:
    rep = BoundReport(L, bound_classical(3, L), bound_theorem1(L))
    rep.notes["classical_bound"] = "(J-1)(L-1)+1 with J=3"
    rep.notes["theorem1_bound"] = "ceil of sqrt(5L^2-11L+13/2)+1/2"
    if a is not None:
        for d, s in detect_ap_structure(a, p).items():
            b2 = bound_lemma2(L, s.longest)
            if rep.lemma2_bound is None or b2 > rep.lemma2_bound:
                rep.lemma2_bound = b2
                rep.notes["lemma2_bound"] = f"d={d}, longest progression m={s.longest}"
            b3 = bound_lemma3(L, s.decomposition)
            if rep.lemma3_bound is None or b3 > rep.lemma3_bound:
                rep.lemma3_bound = b3
                rep.notes["lemma3_bound"] = f"d={d}, greedy disjoint lengths {list(s.decomposition)}"
            bp = bound_pairs(L, s.pair_count)
            if rep.pair_bound is None or bp > rep.pair_bound:
                rep.pair_bound = bp
                rep.notes["pair_bound"] = f"d={d}, {s.pair_count} pairs"
    rep.best = max(rep.populated().values())
    return rep


def table1_rows(Ls: Sequence[int]) -> dict[str, list[int]]:
    """Rows of the comparison table for second row 0..L-1."""
    from .constructions import p_min

    return {
        "L": list(Ls),
        "Lemma bound": [bound_lemma2(L, L) for L in Ls],
        "Our construction": [p_min(L, 1) for L in Ls],
        "Cited construction": [bound_construction_cited(L) for L in Ls],
    }


def format_table1(Ls: Sequence[int]) -> str:
    rows = table1_rows(Ls)
    label_w = max(len(k) for k in rows)
    cells = {k: [str(v) for v in vals] for k, vals in rows.items()}
    col_w = max(len(c) for vals in cells.values() for c in vals)
    lines = []
    for k, vals in cells.items():
        lines.append(" | ".join([k.ljust(label_w)] + [c.rjust(col_w) for c in vals]))
    return "\n".join(lines)


def search_girth8(L: int, p: int) -> Optional[Girth8Matrix]:
    """First valid girth-8 matrix at lifting degree ``p``, or None.

    Sorted second rows ``0 = a_0 < a_1 < ... < a_{L-1}`` are enumerated and the
    ``-b`` headers are assigned column by column with incremental pruning: once
    columns ``0..j`` are fixed, each fixed diagonal value must already be unique
    among the entries of those columns.
    """
    from .girth import check_m8_validity

    if L > SEARCH_MAX_L or p > SEARCH_MAX_P:
        raise SearchSpaceTooLarge(f"exhaustive search limited to L <= {SEARCH_MAX_L}, p <= {SEARCH_MAX_P}")
    if L < 2 or p < 2:
        raise MOutOfRange("need L >= 2 and p >= 2")
    for rest in combinations(range(1, p), L - 1):
        a = (0,) + rest
        nb = _assign_columns(a, p)
        if nb is not None:
            M = Girth8Matrix(a, nb, p)
            assert check_m8_validity(M).valid
            return M
    return None


def _assign_columns(a: tuple[int, ...], p: int) -> Optional[tuple[int, ...]]:
    L = len(a)
    nb = [0]
    # counts of residues over the entries of the fixed columns
    counts = [0] * p
    for x in a:
        counts[x] += 1

    def ok() -> bool:
        return all(counts[(a[i] + nb[i]) % p] == 1 for i in range(len(nb)))

    if not ok():
        return None

    def extend() -> bool:
        j = len(nb)
        if j == L:
            return True
        for v in range(1, p):
            if v in nb:
                continue
            col = [(x + v) % p for x in a]
            for c in col:
                counts[c] += 1
            nb.append(v)
            if ok() and extend():
                return True
            nb.pop()
            for c in col:
                counts[c] -= 1
        return False

    return tuple(nb) if extend() else None


def exhaustive_nonexistence(L: int, p: int) -> bool:
    """True iff no (3, L) fully connected exponent matrix has girth >= 8 at lifting degree ``p``."""
    return search_girth8(L, p) is None


"""Monte-Carlo BER/FER estimation: BPSK over AWGN with Min-Sum decoding.

The all-zero codeword is sent as +1 symbols, so no encoder is needed.  Frame
``f`` at SNR index ``s`` draws its noise from a generator seeded with
``(master_seed, s, f)``; batching and worker count therefore never change
the result.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .errors import EmptyMatrix, InvalidConfig, InvalidRate
from .exponent import ExponentMatrix
from .lifting import SparseBinaryMatrix, rank_gf2

CSV_FIELDS = ["code_id", "snr_db", "frames", "bit_errors", "frame_errors", "ber", "fer", "mean_iters", "seed"]

# padding magnitude for check nodes; must dominate any real message
_BIG = 1e30


@dataclass(frozen=True)
class SimConfig:
    snr_points: tuple[float, ...]
    max_iterations: int = 20
    max_frames: int = 10_000_000
    max_frame_errors: int = 100
    master_seed: int = 0
    rate_mode: str = "actual"  # "actual": (n - rank)/n, "design": 1 - m/n
    normalization: float = 1.0
    batch_size: int = 2000
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "snr_points", tuple(float(x) for x in self.snr_points))
        if not self.snr_points:
            raise InvalidConfig("snr_points must not be empty")
        if self.max_iterations < 1:
            raise InvalidConfig("max_iterations must be >= 1")
        if self.max_frames < 1 or self.max_frame_errors < 1:
            raise InvalidConfig("stopping thresholds must be positive")
        if self.rate_mode not in ("actual", "design"):
            raise InvalidConfig(f"unknown rate_mode {self.rate_mode!r}")
        if not self.normalization > 0:
            raise InvalidConfig("normalization factor must be positive")
        if self.batch_size < 1 or self.workers < 1:
            raise InvalidConfig("batch_size and workers must be >= 1")


class MinSumDecoder:
    """Flooding Min-Sum decoder over a padded edge layout, vectorised across frames."""

    def __init__(self, H: SparseBinaryMatrix, max_iterations: int = 20, normalization: float = 1.0):
        if H.n_rows == 0 or H.n_cols == 0:
            raise EmptyMatrix("parity-check matrix has no rows or no columns")
        self.n, self.m = H.n_cols, H.n_rows
        self.max_iterations = max_iterations
        self.alpha = normalization
        edge_var, edge_chk = [], []
        for j, rows in enumerate(H.col_rows):
            for r in rows:
                edge_var.append(j)
                edge_chk.append(r)
        self.n_edges = E = len(edge_var)
        self.edge_var = np.array(edge_var, dtype=np.int64)
        by_chk: list[list[int]] = [[] for _ in range(self.m)]
        by_var: list[list[int]] = [[] for _ in range(self.n)]
        for e, (v, c) in enumerate(zip(edge_var, edge_chk)):
            by_chk[c].append(e)
            by_var[v].append(e)
        dc = max(len(x) for x in by_chk)
        dv = max(len(x) for x in by_var)
        # padded slots point at the dummy edge E
        self.chk_edges = np.full((self.m, dc), E, dtype=np.int64)
        for c, es in enumerate(by_chk):
            self.chk_edges[c, : len(es)] = es
        self.var_edges = np.full((self.n, dv), E, dtype=np.int64)
        for v, es in enumerate(by_var):
            self.var_edges[v, : len(es)] = es
        self.chk_pad = self.chk_edges == E
        # syndrome gathers variables through the same layout; dummy variable n is always 0
        self.chk_vars = np.where(self.chk_pad, self.n, np.append(self.edge_var, self.n)[self.chk_edges])

    def syndrome_ok(self, hard: np.ndarray) -> np.ndarray:
        ext = np.concatenate([hard, np.zeros((hard.shape[0], 1), dtype=hard.dtype)], axis=1)
        return ~np.any(np.bitwise_xor.reduce(ext[:, self.chk_vars], axis=2), axis=1)

    def _check_update(self, v2c: np.ndarray) -> np.ndarray:
        B = v2c.shape[0]
        ext = np.concatenate([v2c, np.full((B, 1), _BIG)], axis=1)
        msgs = ext[:, self.chk_edges]
        neg = msgs < 0
        mag = np.abs(msgs)
        parity = np.bitwise_xor.reduce(neg, axis=2)
        pos = np.argmin(mag, axis=2)
        min1 = np.take_along_axis(mag, pos[..., None], axis=2)
        masked = mag.copy()
        np.put_along_axis(masked, pos[..., None], np.inf, axis=2)
        min2 = masked.min(axis=2, keepdims=True)
        slot = np.arange(mag.shape[2])
        out_mag = np.where(slot == pos[..., None], min2, min1) * self.alpha
        out = np.where(parity[..., None] ^ neg, -out_mag, out_mag)
        c2v = np.zeros((B, self.n_edges + 1))
        # padded slots all land on the dummy column, which is then reset
        c2v[:, self.chk_edges] = out
        c2v[:, self.n_edges] = 0.0
        return c2v

    def decode(self, llr: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Decode a batch of channel LLRs (positive favours bit 0).

        Returns hard decisions, the iteration at which each frame stopped and
        whether its syndrome was zero.
        """
        llr = np.atleast_2d(np.asarray(llr, dtype=np.float64))
        B = llr.shape[0]
        hard_out = (llr < 0).astype(np.uint8)
        iters = np.full(B, self.max_iterations, dtype=np.int64)
        ok = np.zeros(B, dtype=bool)
        active = np.arange(B)
        ch = llr
        v2c = ch[:, self.edge_var]
        for it in range(1, self.max_iterations + 1):
            c2v = self._check_update(v2c)
            total = ch + c2v[:, self.var_edges].sum(axis=2)
            v2c = total[:, self.edge_var] - c2v[:, : self.n_edges]
            hard = (total < 0).astype(np.uint8)
            done = self.syndrome_ok(hard)
            hard_out[active] = hard
            if done.any():
                iters[active[done]] = it
                ok[active[done]] = True
                keep = ~done
                active, ch, v2c = active[keep], ch[keep], v2c[keep]
                if active.size == 0:
                    break
        return hard_out, iters, ok


@dataclass
class SimPoint:
    snr_db: float
    frames: int = 0
    bit_errors: int = 0
    frame_errors: int = 0
    iterations: int = 0
    bit_errors_sq: int = 0  # sum over frames of (bit errors in frame)^2
    n: int = 0

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.frames * self.n) if self.frames else math.nan

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else math.nan

    @property
    def mean_iters(self) -> float:
        return self.iterations / self.frames if self.frames else math.nan

    def ber_stderr(self) -> float:
        """Standard error of the BER, treating frames (not bits) as independent samples."""
        if self.frames < 2:
            return math.inf
        mean = self.bit_errors / self.frames
        var = (self.bit_errors_sq - self.frames * mean * mean) / (self.frames - 1)
        return math.sqrt(max(var, 0.0) / self.frames) / self.n


@dataclass
class SimResult:
    code_id: str
    n: int
    rank: int
    rate: float
    config: SimConfig
    points: list[SimPoint] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def rows(self) -> list[dict]:
        return [
            {
                "code_id": self.code_id,
                "snr_db": pt.snr_db,
                "frames": pt.frames,
                "bit_errors": pt.bit_errors,
                "frame_errors": pt.frame_errors,
                "ber": pt.ber,
                "fer": pt.fer,
                "mean_iters": pt.mean_iters,
                "seed": self.config.master_seed,
            }
            for pt in self.points
        ]


def noise_sigma(snr_db: float, rate: float) -> float:
    return math.sqrt(1.0 / (2.0 * rate * 10.0 ** (snr_db / 10.0)))


def code_rate(H: SparseBinaryMatrix, mode: str = "actual") -> tuple[float, int]:
    rank = rank_gf2(H)
    if mode == "design":
        rate = 1.0 - H.n_rows / H.n_cols
    else:
        rate = (H.n_cols - rank) / H.n_cols
    if rate <= 0:
        raise InvalidRate(f"code has rate {rate} (rank {rank}, n {H.n_cols})")
    return rate, rank


def frame_noise(master_seed: int, snr_index: int, frame: int, n: int) -> np.ndarray:
    return np.random.default_rng([master_seed, snr_index, frame]).standard_normal(n)


# per-process decoder cache for pool workers
_WORKER: dict = {}


def _init_worker(H: SparseBinaryMatrix, max_iterations: int, normalization: float) -> None:
    _WORKER["decoder"] = MinSumDecoder(H, max_iterations, normalization)


def _run_block(args) -> tuple[np.ndarray, np.ndarray]:
    master_seed, s, f0, f1, sigma = args
    dec: MinSumDecoder = _WORKER["decoder"]
    noise = np.stack([frame_noise(master_seed, s, f, dec.n) for f in range(f0, f1)])
    y = 1.0 + sigma * noise
    hard, iters, _ = dec.decode(2.0 * y / sigma**2)
    return hard.sum(axis=1).astype(np.int64), iters


def simulate(H: SparseBinaryMatrix, cfg: SimConfig, code_id: str = "code") -> SimResult:
    rate, rank = code_rate(H, cfg.rate_mode)
    result = SimResult(code_id, H.n_cols, rank, rate, cfg)
    pool = None
    if cfg.workers > 1:
        pool = ProcessPoolExecutor(cfg.workers, initializer=_init_worker,
                                   initargs=(H, cfg.max_iterations, cfg.normalization))
    else:
        _init_worker(H, cfg.max_iterations, cfg.normalization)
    try:
        for s, snr in enumerate(cfg.snr_points):
            result.points.append(_simulate_point(pool, cfg, s, snr, noise_sigma(snr, rate), H.n_cols))
    finally:
        if pool is not None:
            pool.shutdown()
    return result


def _simulate_point(pool, cfg: SimConfig, s: int, snr: float, sigma: float, n: int) -> SimPoint:
    pt = SimPoint(snr, n=n)
    next_frame = 0
    wave = cfg.workers
    while pt.frames < cfg.max_frames and pt.frame_errors < cfg.max_frame_errors:
        jobs = []
        for _ in range(wave):
            f0 = next_frame
            f1 = min(f0 + cfg.batch_size, cfg.max_frames)
            if f0 >= f1:
                break
            jobs.append((cfg.master_seed, s, f0, f1, sigma))
            next_frame = f1
        outs = pool.map(_run_block, jobs) if pool is not None else map(_run_block, jobs)
        for bit_err, iters in outs:
            for be, it in zip(bit_err.tolist(), iters.tolist()):
                if pt.frames >= cfg.max_frames or pt.frame_errors >= cfg.max_frame_errors:
                    break
                pt.frames += 1
                pt.bit_errors += be
                pt.bit_errors_sq += be * be
                pt.frame_errors += be > 0
                pt.iterations += it
    return pt


def random_lifting(J: int, L: int, p: int, seed) -> ExponentMatrix:
    """Normalized exponent matrix with uniform shifts and no girth screening."""
    rng = np.random.default_rng(seed)
    e = rng.integers(0, p, size=(J, L))
    e[0, :] = 0
    e[:, 0] = 0
    return ExponentMatrix(tuple(map(tuple, e.tolist())), p)


def ber_sweep(codes: Mapping[str, SparseBinaryMatrix] | Sequence[SparseBinaryMatrix],
              cfg: SimConfig) -> list[SimResult]:
    if not isinstance(codes, Mapping):
        codes = {f"code{i}": H for i, H in enumerate(codes)}
    if not codes:
        raise InvalidConfig("no codes to simulate")
    return [simulate(H, cfg, code_id) for code_id, H in codes.items()]


def to_csv(results: Sequence[SimResult]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for res in results:
        for row in res.rows():
            w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
    return buf.getvalue()


def to_json(results: Sequence[SimResult], extra: Optional[dict] = None) -> str:
    doc = {
        "config": asdict(results[0].config) if results else None,
        "codes": [
            {"code_id": r.code_id, "n": r.n, "rank": r.rank, "rate": r.rate,
             "metadata": r.metadata, "points": r.rows()}
            for r in results
        ],
    }
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=True)


def ber_difference_z(better: SimPoint, worse: SimPoint) -> float:
    """z-score of ``worse.ber - better.ber`` using frame-level standard errors."""
    se = math.hypot(better.ber_stderr(), worse.ber_stderr())
    if se == 0:
        return math.inf if worse.ber > better.ber else 0.0
    return (worse.ber - better.ber) / se

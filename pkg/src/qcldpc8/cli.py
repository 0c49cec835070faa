"""Command-line entry point: ``qcldpc8 <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bounds, constructions, girth, lifting, sim
from .errors import QCLDPCError
from .exponent import ExponentMatrix, m8_from_exponent

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_INTERNAL = 0, 1, 2, 3
SEED_ENV = "QCLDPC8_SEED"


class UsageError(Exception):
    pass


class InternalInconsistency(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> list[int]:
    """'4..12' -> [4, ..., 12]; a bare integer is a one-element range."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise ValueError
            return list(range(lo_i, hi_i + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected 'a..b'") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _read_exponent(path: str, p: int | None) -> ExponentMatrix:
    E = ExponentMatrix.from_text(Path(path).read_text())
    return E.reduced(p) if p is not None else E


def cmd_construct(args) -> int:
    R = constructions.construct(args.L, args.d)
    p = R.p_min if args.p is None else args.p
    E = constructions.emit_for_p(R, p)
    side = R.sidecar()
    side["p"] = p
    side["bounds"] = bounds.best_bound(args.L, R.M.a).to_dict()
    if args.out:
        Path(args.out + ".txt").write_text(E.to_text())
        Path(args.out + ".json").write_text(json.dumps(side, indent=2, sort_keys=True) + "\n")
        print(f"wrote {args.out}.txt and {args.out}.json (case {R.case}, p_min {R.p_min}, p {p})")
    elif args.format == "json":
        side["exponent_matrix"] = [list(r) for r in E.entries]
        print(json.dumps(side, indent=2, sort_keys=True))
    else:
        sys.stdout.write(E.to_text())
        print(f"# case {R.case}  p_min {R.p_min}  policy {R.params.policy}")
    return EXIT_OK


def girth_report(E: ExponentMatrix) -> dict:
    g_exp = girth.girth_exponent(E)
    g_lift = girth.girth_lifted(lifting.lift(E))
    rep = {
        "J": E.J, "L": E.L, "p": E.p,
        "girth_exponent": girth.format_girth(g_exp),
        "girth_lifted": girth.format_girth(g_lift),
        "agree": g_exp == g_lift,
    }
    if E.J == 3 and E.is_normalized:
        valid = girth.check_m8_validity(m8_from_exponent(E))
        rep["m8_valid"] = valid.valid
        rep["agree"] = rep["agree"] and (valid.valid == (g_exp >= 8))
        if not valid.valid:
            rep["m8_violation"] = valid.violated_condition
    if g_exp <= girth.MAX_GIRTH:
        rep["witness"] = girth.find_cycle(E, int(g_exp) // 2).to_dict()
    rep["girth"] = rep["girth_exponent"]
    return rep


def cmd_girth(args) -> int:
    rep = girth_report(_read_exponent(args.file, args.p))
    if args.format == "json":
        print(json.dumps(rep, sort_keys=True))
    else:
        print(f"girth {rep['girth']}")
        print(f"  exponent-level: {rep['girth_exponent']}  lifted BFS: {rep['girth_lifted']}"
              + (f"  M8 valid: {rep['m8_valid']}" if "m8_valid" in rep else ""))
        if "witness" in rep:
            print(f"  witness: {json.dumps(rep['witness'])}")
    if not rep["agree"]:
        raise InternalInconsistency(f"girth checkers disagree: {rep}")
    return EXIT_OK


def _read_a_row(path: str) -> list[int]:
    text = Path(path).read_text()
    try:
        return list(ExponentMatrix.from_text(text).entries[1])
    except QCLDPCError:
        pass
    try:
        return [int(x) for x in text.split()]
    except ValueError:
        raise UsageError(f"{path}: expected integers or an exponent-matrix file") from None


def cmd_bound(args) -> int:
    if args.table1:
        Ls = parse_range(args.table1)
        if args.format == "json":
            print(json.dumps(bounds.table1_rows(Ls)))
        else:
            print(bounds.format_table1(Ls))
        return EXIT_OK
    if args.L is None:
        raise UsageError("bound needs --L or --table1")
    a = sorted(_read_a_row(args.a_row)) if args.a_row else None
    rep = bounds.best_bound(args.L, a, args.p)
    if args.format == "json":
        print(json.dumps(rep.to_dict(), sort_keys=True))
    else:
        print(f"L = {args.L}")
        for k, v in rep.populated().items():
            note = rep.notes.get(k, "")
            print(f"  {k:<16} {v:>6}   {note}")
        print(f"  {'best':<16} {rep.best:>6}")
        if a is None:
            print(f"  {'lemma2 (AP row)':<16} {bounds.bound_lemma2(args.L, args.L):>6}   if the second row is an AP")
    return EXIT_OK


def cmd_export(args) -> int:
    E = _read_exponent(args.file, args.p)
    H = lifting.lift(E)
    Path(args.out).write_text(lifting.write_alist(H))
    print(f"wrote {args.out}: {H.n_rows} x {H.n_cols}, rank {lifting.rank_gf2(H)}")
    return EXIT_OK


def _load_code(spec: str) -> tuple[str, lifting.SparseBinaryMatrix, dict]:
    code_id, _, path = spec.rpartition("=")
    code_id = code_id or Path(path).stem
    text = Path(path).read_text()
    if path.endswith(".alist"):
        return code_id, lifting.read_alist(text), {"source": path}
    E = ExponentMatrix.from_text(text)
    return code_id, lifting.lift(E), {"source": path, "exponent_matrix": [list(r) for r in E.entries], "p": E.p}


def cmd_simulate(args) -> int:
    opts: dict = {}
    if args.config:
        opts.update(json.loads(Path(args.config).read_text()))
    for key in ("max_iterations", "max_frames", "max_frame_errors", "rate_mode",
                "normalization", "batch_size", "workers"):
        val = getattr(args, key)
        if val is not None:
            opts[key] = val
    if args.snr is not None:
        opts["snr_points"] = [float(x) for x in args.snr.split(",") if x.strip()]
    if args.seed is not None:
        opts["master_seed"] = args.seed
    elif "master_seed" not in opts:
        opts["master_seed"] = int(os.environ.get(SEED_ENV, "0"))
    opts.setdefault("snr_points", [])
    cfg = sim.SimConfig(**opts)
    codes, meta = {}, {}
    for spec in args.codes:
        code_id, H, m = _load_code(spec)
        codes[code_id] = H
        meta[code_id] = m
    for code_id, (L, p, seed) in _parse_random(args.random):
        E = sim.random_lifting(3, L, p, seed)
        codes[code_id] = lifting.lift(E)
        meta[code_id] = {"random_lifting": True, "approximation": "uniform shifts, no girth screening",
                         "exponent_matrix": [list(r) for r in E.entries], "p": p, "seed": seed}
    results = sim.ber_sweep(codes, cfg)
    for r in results:
        r.metadata = meta[r.code_id]
    if args.format == "json":
        text = sim.to_json(results)
    else:
        text = sim.to_csv(results)
        print(json.dumps({"config": cfg.__dict__}, sort_keys=True), file=sys.stderr)
    _emit(text, args.out)
    return EXIT_OK


def _parse_random(specs):
    out = []
    for spec in specs or []:
        try:
            L, p, seed = (int(x) for x in spec.split(","))
        except ValueError:
            raise UsageError(f"--random expects L,p,seed, got {spec!r}") from None
        out.append((f"random_L{L}_p{p}_s{seed}", (L, p, seed)))
    return out


def cmd_search(args) -> int:
    M = bounds.search_girth8(args.L, args.p)
    if M is None:
        print(f"none exists: no (3,{args.L}) girth-8 code at p = {args.p}")
        return EXIT_OK
    from .exponent import exponent_from_m8

    E = exponent_from_m8(M, args.p)
    print(f"exists: witness at p = {args.p}")
    sys.stdout.write(E.to_text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="qcldpc8", description="Girth-8 (3,L) QC-LDPC constructions, bounds and checks.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="build a girth-8 exponent matrix")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--p", type=int)
    p.add_argument("--out", help="path prefix; writes PREFIX.txt and PREFIX.json")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("girth", help="girth of an exponent-matrix file, checked three ways")
    p.add_argument("file")
    p.add_argument("--p", type=int, help="reinterpret at this lifting degree (entries reduced mod p)")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("bound", help="lifting-degree lower bounds")
    p.add_argument("--L", type=int)
    p.add_argument("--a-row", help="file with the second-row entries (or an exponent matrix)")
    p.add_argument("--p", type=int, help="modulus for wrap-around differences")
    p.add_argument("--table1", metavar="A..B", help="comparison table for a range of L")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("export", help="lift and write an alist file")
    p.add_argument("file")
    p.add_argument("--p", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("simulate", help="BER/FER sweep with Min-Sum over BPSK/AWGN")
    p.add_argument("codes", nargs="*", help="[ID=]path to an exponent-matrix or .alist file")
    p.add_argument("--random", action="append", metavar="L,p,seed", help="add a random-lifting baseline")
    p.add_argument("--config", help="JSON file with SimConfig fields")
    p.add_argument("--snr", help="comma-separated Eb/N0 points in dB")
    p.add_argument("--max-iterations", type=int)
    p.add_argument("--max-frames", type=int)
    p.add_argument("--max-frame-errors", type=int)
    p.add_argument("--rate-mode", choices=["actual", "design"])
    p.add_argument("--normalization", type=float)
    p.add_argument("--batch-size", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--seed", type=int, help=f"master seed (default ${SEED_ENV} or 0)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("search", help="exhaustive existence search (L <= 5, p <= 16)")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_search)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QCLDPCError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except InternalInconsistency as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

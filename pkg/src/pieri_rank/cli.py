"""Command-line front end: ``pieri-rank <command> [options]``.

Exit status is 0 on success, 1 when a computed result contradicts a recorded
or predicted value, and 2 on bad usage or invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Callable

from . import __version__
from .bounds import border_rank_bound, generic_rank_probe, table1
from .bwb import bwb
from .cache import ArtifactCache
from .euler import (WeightComplex, dim_poly, euler_poly, example_complex,
                    exceptional_k)
from .exactla import write_matrix_market
from .flatten import flattening_report
from .partitions import (InvalidPartitionError, hook_lengths, parse_partition, schur_dim,
                         ssyt_count)
from .pieri import MultiplicityError, as_ukind, build_pieri_tensor
from .schurmodule import build_schur_module
from .weylkostant import FAMILY_KINDS, RootDatum, family_generator, kostant_weights

log = logging.getLogger("pieri_rank")


class VerificationFailure(Exception):
    """Carries a payload to print before exiting with status 1."""

    def __init__(self, payload):
        super().__init__("verification mismatch")
        self.payload = payload


# -- output -------------------------------------------------------------------------
def _json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def _text_table(rows: list[dict], columns: list[str]) -> str:
    cells = [[str(r.get(c, "")) for c in columns] for r in rows]
    widths = [max(len(c), *(len(x[i]) for x in cells)) if cells else len(c)
              for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def _text_kv(payload: dict) -> str:
    width = max((len(k) for k in payload), default=0)
    out = []
    for k in sorted(payload):
        v = payload[k]
        out.append(f"{k.ljust(width)}  {json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v}")
    return "\n".join(out)


def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({c: (json.dumps(r[c]) if isinstance(r.get(c), (list, dict)) else r.get(c))
                    for c in columns})
    return buf.getvalue().rstrip("\n")


def emit(args, payload, rows: list[dict] | None = None, columns: list[str] | None = None,
         text: Callable[[], str] | None = None) -> None:
    fmt = args.format
    if fmt == "json":
        out = _json(payload)
    elif fmt == "csv":
        if rows is None:
            rows, columns = [payload], sorted(payload) if isinstance(payload, dict) else None
        out = _csv(rows, columns or sorted(rows[0]) if rows else [])
    elif text is not None:
        out = text()
    elif rows is not None:
        out = _text_table(rows, columns or sorted(rows[0]))
    else:
        out = _text_kv(payload) if isinstance(payload, dict) else str(payload)
    print(out)


def _cache(args) -> ArtifactCache | None:
    if getattr(args, "no_cache", False):
        return None
    return ArtifactCache(args.cache)


def _pair(args):
    return parse_partition(args.lam), parse_partition(args.mu), as_ukind(args.u), args.n


# -- commands -----------------------------------------------------------------------
def cmd_dim(args):
    lam = parse_partition(args.lam)
    d = schur_dim(lam, args.n)
    payload = {"lambda": list(lam), "n": args.n, "dim": d}
    if args.check:
        payload["ssyt_count"] = ssyt_count(lam, args.n)
        if payload["ssyt_count"] != d:
            raise VerificationFailure(payload)
    emit(args, payload, text=lambda: str(d) if not args.check else _text_kv(payload))


def cmd_hooks(args):
    lam = parse_partition(args.lam)
    h = hook_lengths(lam)
    emit(args, {"lambda": list(lam), "hooks": h},
         rows=[{"row": i + 1, "hooks": r} for i, r in enumerate(h)], columns=["row", "hooks"],
         text=lambda: "\n".join(" ".join(str(x) for x in r) for r in h))


def cmd_schur_basis(args):
    lam = parse_partition(args.lam)
    m = build_schur_module(lam, args.n)
    rows = [{"index": i, "tableau": [list(r) for r in t], "weight": list(w)}
            for i, (t, w) in enumerate(zip(m.basis, m.weights))]
    payload = {"lambda": list(lam), "n": args.n, "dim": m.dim, "basis": rows}
    if args.export:
        payload["exported"] = sorted(p.name for p in m.export(args.export))
    emit(args, payload, rows=rows, columns=["index", "tableau", "weight"])


def cmd_pieri(args):
    lam, mu, u, n = _pair(args)
    t = build_pieri_tensor(lam, mu, u, n, cache=_cache(args))
    man = t.manifest()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        write_matrix_market(t.f1, out / "f1.mtx")
        write_matrix_market(t.g, out / "g.mtx")
        for i, p in enumerate(t.f1_slices):
            write_matrix_market(p, out / f"slice_{i}.mtx")
        (out / "manifest.json").write_text(_json(man) + "\n")
    emit(args, man)


def cmd_flatten_rank(args):
    lam, mu, u, n = _pair(args)
    rep = flattening_report(lam, mu, u, n, "exact" if args.exact else "modp",
                            seed=args.seed, cache=_cache(args))
    payload = rep.to_dict() | {"seed": args.seed}
    if rep.predicted and not rep.is_isomorphism:
        raise VerificationFailure(payload)
    emit(args, payload)


def cmd_generic_rank(args):
    lam, mu, u, n = _pair(args)
    t = build_pieri_tensor(lam, mu, u, n, cache=_cache(args))
    probe = generic_rank_probe(t, args.trials, args.seed, mode="exact" if args.exact else "modp")
    emit(args, {"lambda": list(lam), "mu": list(mu), "u": u.token, "n": n, "k": t.k, "l": t.l}
         | probe.to_dict())


def cmd_bound(args):
    lam, mu, u, n = _pair(args)
    rep = border_rank_bound(lam, mu, u, n, args.r_source, args.trials, args.seed,
                            "exact" if args.exact else "modp", args.measure_flattening,
                            cache=_cache(args))
    emit(args, rep.to_dict() | {"seed": args.seed})


_T1_COLS = ["row", "u", "lambda", "mu", "n", "printed_dims", "computed_dims", "r",
            "printed_bound", "computed_bound", "match", "status"]


def cmd_table1(args):
    rows_sel = [int(x) for x in args.rows.split(",")] if args.rows else None
    result = table1(args.trials, args.seed, "exact" if args.exact else "modp", rows_sel,
                    cache=_cache(args))
    flat = []
    for r in result:
        rep = r.report
        flat.append({"row": r.row, "u": rep.u, "lambda": list(rep.lam), "mu": list(rep.mu),
                     "n": rep.n, "printed_dims": list(r.printed_dims),
                     "computed_dims": list(r.computed_dims), "r": rep.r,
                     "printed_bound": r.printed_bound, "computed_bound": rep.lower_bound,
                     "match": r.match, "status": rep.constraint.status})
    payload = {"seed": args.seed, "trials": args.trials, "rows": [r.to_dict() for r in result],
               "all_match": all(r.match for r in result)}
    emit(args, payload, rows=flat, columns=_T1_COLS)
    if not payload["all_match"]:
        return 1
    return 0


def cmd_kostant(args):
    # RootDatum counts epsilon coordinates, which exceed the rank by one in type A
    coords = {"E6": 6, "A": (args.rank or 0) + 1}.get(args.type, args.rank)
    datum = RootDatum(args.type, coords)
    node = args.node if args.node is not None else datum.rank
    alpha = [int(x) for x in args.alpha.split(",")] if args.alpha else [0] * len(datum.rho())
    table = kostant_weights(datum, node, alpha, args.max_degree)
    rows = [e.to_dict(datum) for e in table.entries]
    emit(args, table.to_dict(), rows=rows,
         columns=["degree", "word_name", "dotted", "dual", "partition", "twist"])


def cmd_bwb(args):
    lam = [int(x) for x in args.lam.split(",") if x.strip()]
    emit(args, bwb(lam, args.d, args.n).to_dict())


def cmd_euler(args):
    if args.nu is not None:
        p = dim_poly(parse_partition(args.nu), args.n)
        emit(args, {"nu": list(parse_partition(args.nu)), "n": args.n} | p.to_dict())
        return
    g = example_complex() if args.complex is None else WeightComplex.load(args.complex)
    p = euler_poly(g, args.n)
    payload = {"complex": g.to_dict(), "n": args.n, "polynomial": p.to_dict(),
               "integer_form": list(reversed(p.primitive_integer())),
               "term_dims": g.dims(), "euler_characteristic": g.euler_characteristic()}
    if p.is_zero():
        payload["exceptional"] = None
        payload["guarantee"] = "zero polynomial: the lift is inconclusive"
    else:
        ex = exceptional_k(p, args.threshold)
        payload |= ex.to_dict()
    emit(args, payload)


def cmd_families(args):
    alpha = [int(x) for x in args.alpha.split(",")] if args.alpha else []
    emit(args, family_generator(args.kind, alpha, args.n).to_dict())


def cmd_cache(args):
    c = ArtifactCache(args.cache)
    if args.action == "list":
        ents = c.entries()
        rows = [{"key": k, **{f: v for f, v in e.get("meta", {}).items()
                              if f in ("lambda", "mu", "u", "n")}} for k, e in sorted(ents.items())]
        emit(args, {"root": str(c.root), "entries": rows}, rows=rows,
             columns=["key", "lambda", "mu", "u", "n"])
    elif args.action == "verify":
        res = c.verify()
        emit(args, {"root": str(c.root), "valid": res})
        if not all(res.values()):
            return 1
    else:
        emit(args, {"root": str(c.root), "removed": c.clear()})
    return 0


# -- parser -------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cache", default=None, help="artifact cache directory")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    common.add_argument("-v", "--verbose", action="store_true")

    rand = argparse.ArgumentParser(add_help=False)
    rand.add_argument("--seed", type=int, default=0)
    rand.add_argument("--trials", type=int, default=5)
    rand.add_argument("--exact", action="store_true", help="exact rank instead of mod-p")

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("--lambda", dest="lam", required=True)
    pair.add_argument("--mu", required=True)
    pair.add_argument("--u", default="v", help="v, sym2, wedge2, symd:D or wedged:D")
    pair.add_argument("--n", type=int, required=True)

    p = argparse.ArgumentParser(prog="pieri-rank", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dim", parents=[common], help="dimension of S_lambda C^n")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--check", action="store_true", help="compare with a tableau count")
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("hooks", parents=[common], help="hook lengths of a partition")
    s.add_argument("--lambda", dest="lam", required=True)
    s.set_defaults(func=cmd_hooks)

    s = sub.add_parser("schur-basis", parents=[common], help="semistandard basis of S_lambda C^n")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--export", default=None, help="write generator matrices to this directory")
    s.set_defaults(func=cmd_schur_basis)

    s = sub.add_parser("pieri", parents=[common, pair], help="build a Pieri tensor")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_pieri)

    s = sub.add_parser("flatten-rank", parents=[common, pair, rand], help="rank of the flattening")
    s.set_defaults(func=cmd_flatten_rank)

    s = sub.add_parser("generic-rank", parents=[common, pair, rand], help="sampled rank of phi(u)")
    s.set_defaults(func=cmd_generic_rank)

    s = sub.add_parser("bound", parents=[common, pair, rand], help="border rank lower bound")
    s.add_argument("--r-source", choices=("theorem_c", "oracle", "both"), default="both")
    s.add_argument("--measure-flattening", action="store_true")
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("table1", parents=[common, rand], help="recompute the reference table")
    s.add_argument("--rows", default=None, help="comma-separated row numbers")
    s.set_defaults(func=cmd_table1)

    s = sub.add_parser("kostant", parents=[common], help="Kostant weight table")
    s.add_argument("--type", choices=("A", "C", "D", "E6"), required=True)
    s.add_argument("--rank", type=int, default=None)
    s.add_argument("--alpha", default=None)
    s.add_argument("--max-degree", type=int, default=3)
    s.add_argument("--node", type=int, default=None)
    s.set_defaults(func=cmd_kostant)

    s = sub.add_parser("bwb", parents=[common], help="cohomology on the hyperplane Grassmannian")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_bwb)

    s = sub.add_parser("euler", parents=[common], help="Euler polynomial of a weight complex")
    s.add_argument("--complex", default=None, help="complex JSON (default: built-in example)")
    s.add_argument("--nu", default=None, help="dimension polynomial of one partition instead")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--threshold", type=int, default=None)
    s.set_defaults(func=cmd_euler)

    s = sub.add_parser("families", parents=[common], help="partition families from Kostant tables")
    s.add_argument("--kind", choices=FAMILY_KINDS, required=True)
    s.add_argument("--alpha", default=None)
    s.add_argument("--n", type=int, default=6)
    s.set_defaults(func=cmd_families)

    s = sub.add_parser("cache", parents=[common], help="inspect the artifact cache")
    s.add_argument("action", choices=("list", "verify", "clear"))
    s.set_defaults(func=cmd_cache)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "kostant" and args.type != "E6" and args.rank is None:
        parser.error("--rank is required for classical types")
    try:
        status = args.func(args)
    except VerificationFailure as exc:
        emit(args, exc.payload)
        return 1
    except (InvalidPartitionError, MultiplicityError, ValueError, IndexError, KeyError) as exc:
        print(f"pieri-rank {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return status or 0


if __name__ == "__main__":
    sys.exit(main())

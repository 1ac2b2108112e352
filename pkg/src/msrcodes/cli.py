"""Command-line front end.

Exit codes: 0 success, 1 verification or simulation failure, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations
from math import comb
from pathlib import Path

import numpy as np

from .aset import ASSet, ConstructionError, VerificationFailed
from .linalg import is_unit_vector_basis
from .msr import CodeSpec, NodeArray, bandwidth_budget, encode, reconstruct, repair
from .select import UsageError, construct_code
from .verify import full

# Prior constructions, reproduced as static metadata for comparison only.
PRIOR_WORK = [
    {"code": "framework code", "r": 2, "ell": "2^m", "k": "2m", "access": "for m nodes", "q": "even m+1"},
    {"code": "long MDS code", "r": 2, "ell": "2^m", "k": "3m", "access": "for 2m nodes", "q": "2m+1"},
    {"code": "cited access-optimal code", "r": 2, "ell": "2^m", "k": "2m", "access": "yes", "q": "2m+1"},
    {"code": "zigzag code", "r": 2, "ell": "2^m", "k": "m+1", "access": "yes", "q": "3"},
    {"code": "long MDS code", "r": 3, "ell": "3^m", "k": "4m", "access": "for 3m nodes", "q": "m^2 3^(m+1)+1"},
    {"code": "cited access-optimal code", "r": 3, "ell": "3^m", "k": "3m", "access": "yes", "q": "C(3m+3,3) 3^(m+1)"},
    {"code": "zigzag code", "r": 3, "ell": "3^m", "k": "m+1", "access": "yes", "q": "4"},
]


class InputError(ValueError):
    pass


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from e


def _load_spec(path: str) -> ASSet:
    try:
        return ASSet.from_json(_load_json(path))
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed code spec {path}: {e}") from e


def _load_nodes(path: str) -> NodeArray:
    try:
        return NodeArray.from_json(_load_json(path))
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed node file {path}: {e}") from e


def _table(rows: list[dict], cols: list[str]) -> str:
    cells = [[str(r.get(c, "")) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
    fmt = lambda vals: "  ".join(v.ljust(w) for v, w in zip(vals, widths)).rstrip()  # noqa: E731
    lines = [fmt(cols), fmt(["-" * w for w in widths])] + [fmt(row) for row in cells]
    return "\n".join(lines) + "\n"


# ---- commands --------------------------------------------------------------


def cmd_construct(args) -> int:
    aset = construct_code(args.r, args.m, args.variant, args.q, args.parity)
    _write(aset.dumps(), args.out)
    n = aset.k + aset.r
    msg = f"q={aset.q} k={aset.k} ell={aset.ell} n={n} variant={aset.variant}\n"
    (sys.stdout if args.out else sys.stderr).write(msg)
    return 0


def cmd_verify(args) -> int:
    aset = _load_spec(args.spec)
    cert = full(aset)
    _write(cert.dumps(timing=args.timing), args.out)
    status = sys.stdout if args.out else sys.stderr
    if cert.passed:
        status.write(f"PASS: {aset.variant} k={aset.k} ell={aset.ell} q={aset.q}\n")
        return 0
    for line in cert.failures():
        status.write(f"FAIL: {line}\n")
    return 1


def _random_file(spec: CodeSpec, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, spec.q, spec.file_size, dtype=np.int64)


def cmd_encode(args) -> int:
    spec = CodeSpec(_load_spec(args.spec))
    if args.input:
        try:
            data = np.array(Path(args.input).read_text().split(), dtype=np.int64)
        except (OSError, ValueError) as e:
            raise InputError(f"cannot read file symbols: {e}") from e
    else:
        data = _random_file(spec, np.random.default_rng(args.seed))
    _write(encode(spec, data).dumps(), args.out)
    return 0


def cmd_repair(args) -> int:
    spec = CodeSpec(_load_spec(args.spec))
    store = _load_nodes(args.nodes)
    tr = repair(spec, store, args.node)
    doc = tr.to_json()
    doc["exact"] = bool(np.array_equal(tr.recovered, store.columns[args.node]))
    _write(json.dumps(doc, sort_keys=True, indent=1) + "\n", args.out)
    return 0 if doc["exact"] else 1


def cmd_reconstruct(args) -> int:
    spec = CodeSpec(_load_spec(args.spec))
    store = _load_nodes(args.nodes)
    try:
        idx = [int(x) for x in args.use.split(",")]
    except ValueError as e:
        raise InputError(f"bad node list {args.use!r}") from e
    if any(not 0 <= i < store.n for i in idx):
        raise InputError(f"node index out of range 0..{store.n - 1}")
    data = reconstruct(spec, {i: store.columns[i] for i in idx})
    _write(" ".join(str(int(x)) for x in data) + "\n", args.out)
    return 0


def simulate(spec: CodeSpec, trials: int, seed: int) -> dict:
    """Encode random files, repair every systematic node, reconstruct from k-subsets."""
    rng = np.random.default_rng(seed)
    beta, total = bandwidth_budget(spec)
    per_node = {j: {"node": j, "repairs": 0, "exact": 0, "sent": set(), "access": set()} for j in range(spec.k)}
    subsets_checked = subsets_ok = 0
    all_subsets = list(combinations(range(spec.n), spec.k))
    exhaustive = spec.n <= 7
    for _ in range(trials):
        data = _random_file(spec, rng)
        store = encode(spec, data)
        for j in range(spec.k):
            tr = repair(spec, store, j)
            row = per_node[j]
            row["repairs"] += 1
            row["exact"] += int(np.array_equal(tr.recovered, store.columns[j]))
            row["sent"].add(tr.symbols_sent)
            row["access"].update(tr.symbols_accessed.values())
        if exhaustive:
            chosen = all_subsets
        else:
            picks = rng.choice(len(all_subsets), size=min(50, len(all_subsets)), replace=False)
            chosen = [all_subsets[i] for i in sorted(picks)]
        for sub in chosen:
            got = reconstruct(spec, {i: store.columns[i] for i in sub})
            subsets_checked += 1
            subsets_ok += int(np.array_equal(got, data))
    rows = []
    for j, row in per_node.items():
        rows.append({
            "node": j,
            "repairs": row["repairs"],
            "exact": row["exact"],
            "symbols_sent": ",".join(map(str, sorted(row["sent"]))),
            "accessed_per_helper": ",".join(map(str, sorted(row["access"]))),
        })
    passed = all(r["exact"] == r["repairs"] for r in rows) and subsets_ok == subsets_checked
    passed = passed and all(r["symbols_sent"] == str(total) for r in rows)
    return {
        "variant": spec.variant,
        "q": spec.q,
        "k": spec.k,
        "r": spec.r,
        "ell": spec.ell,
        "seed": seed,
        "trials": trials,
        "beta": beta,
        "bandwidth": total,
        "subsets": {"checked": subsets_checked, "ok": subsets_ok, "exhaustive": exhaustive,
                    "total": comb(spec.n, spec.k)},
        "nodes": rows,
        "passed": passed,
    }


def cmd_simulate(args) -> int:
    spec = CodeSpec(_load_spec(args.spec))
    res = simulate(spec, args.trials, args.seed)
    if args.out:
        Path(args.out).write_text(json.dumps(res, sort_keys=True, indent=1) + "\n")
    sys.stdout.write(
        f"{res['variant']} q={res['q']} k={res['k']} ell={res['ell']} "
        f"bandwidth={res['bandwidth']} subsets={res['subsets']['ok']}/{res['subsets']['checked']}\n"
    )
    sys.stdout.write(_table(res["nodes"], ["node", "repairs", "exact", "symbols_sent", "accessed_per_helper"]))
    sys.stdout.write("PASS\n" if res["passed"] else "FAIL\n")
    return 0 if res["passed"] else 1


def report_rows(asets: list[ASSet]) -> list[dict]:
    rows = []
    for a in asets:
        spec = CodeSpec(a)
        rows.append({
            "code": a.variant,
            "r": a.r,
            "m": a.m,
            "ell": a.ell,
            "k": a.k,
            "access": "yes" if spec.access_optimal else f"for {sum(spec_access(a))} nodes",
            "verified": full(a, intersections=False).passed,
            "q": a.q,
        })
    return rows


def spec_access(a: ASSet) -> list[bool]:
    return [is_unit_vector_basis(s) for s in a.subspaces]


def cmd_report(args) -> int:
    asets = [_load_spec(p) for p in args.specs]
    rows = report_rows(asets)
    doc = {"codes": rows, "prior_work": PRIOR_WORK}
    if args.out:
        Path(args.out).write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")
    cols = ["code", "r", "m", "ell", "k", "access", "q", "verified"]
    sys.stdout.write(_table(rows, cols))
    sys.stdout.write("\nprior constructions (metadata)\n")
    sys.stdout.write(_table(PRIOR_WORK, ["code", "r", "ell", "k", "access", "q"]))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="msrcodes", description="Explicit MSR codes over small fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build and certify a code")
    p.add_argument("--r", type=int, required=True, choices=(2, 3))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--variant", default="access-optimal", choices=("access-optimal", "long"))
    p.add_argument("--parity", choices=("odd", "even"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="certify a code spec")
    p.add_argument("spec")
    p.add_argument("--out")
    p.add_argument("--timing", action="store_true", help="include wall time in the certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("encode", help="encode a file into node columns")
    p.add_argument("spec")
    p.add_argument("--input", help="whitespace-separated file symbols; random if omitted")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("repair", help="repair one systematic node")
    p.add_argument("spec")
    p.add_argument("nodes")
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("reconstruct", help="recover the file from k nodes")
    p.add_argument("spec")
    p.add_argument("nodes")
    p.add_argument("--use", required=True, help="comma-separated node indices")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("simulate", help="repair and reconstruct random files")
    p.add_argument("spec")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("report", help="comparison table for one or more specs")
    p.add_argument("specs", nargs="+")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except VerificationFailed as e:
        sys.stderr.write(f"verification failed: {e}\n")
        return 1
    except (UsageError, InputError, ConstructionError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except (ValueError, IndexError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

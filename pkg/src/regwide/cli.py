"""Command-line front end.

Exit status: 0 success, 1 a check failed, 2 input error, 3 resource cap.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, List, Optional

from . import __version__
from .closedsets import ClosedSubset, canonical_mask, closure, enumerate_closed_subsets, is_closed
from .errors import CapExceeded, InputError, RegwideError
from .fflv import enumerate_fflv_basis
from .repmod import adjoint_module, regular_subalgebra
from .rootsys import Weight, build_root_system, to_json as rootsys_json
from .wideness import (
    DEFAULT_MAX_DIM,
    LAMBDA_WIDE,
    classify,
    default_lambda_set,
    is_indecomposable_restriction,
    is_lambda_wide,
    is_wide,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# parsing


def parse_roots(text: str) -> List[List[int]]:
    """``"[1,0];[1,1]"`` -> ``[[1, 0], [1, 1]]``; empty text is the empty set."""
    text = text.strip()
    if not text:
        return []
    if text.startswith("[["):
        chunks = [json.dumps(r) for r in json.loads(text)]
    else:
        chunks = [c for c in text.split(";") if c.strip()]
    out = []
    for c in chunks:
        try:
            vec = json.loads(c)
        except json.JSONDecodeError:
            raise InputError(f"malformed root {c.strip()!r}") from None
        if not isinstance(vec, list) or not all(isinstance(x, int) for x in vec):
            raise InputError(f"malformed root {c.strip()!r}")
        out.append(vec)
    return out


def parse_weight(text: str, rank: Optional[int] = None) -> Weight:
    try:
        w = Weight(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise InputError(f"malformed weight {text!r}") from None
    if rank is not None and len(w) != rank:
        raise InputError(f"weight {text!r} needs {rank} coordinates")
    if not w.is_dominant():
        raise InputError(f"weight {text!r} is not dominant")
    return w


def parse_weight_set(text: str, rank: int) -> List[Weight]:
    return [parse_weight(c, rank) for c in text.split(";") if c.strip()]


def _max_dim(args) -> int:
    env = os.environ.get("REGWIDE_MAX_DIM")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"REGWIDE_MAX_DIM must be an integer, got {env!r}") from None
    return args.max_dim


def _lambda_set(args, rs) -> List[Weight]:
    if args.lambda_set:
        return parse_weight_set(args.lambda_set, rs.rank)
    if getattr(args, "lam", None):
        return [parse_weight(args.lam, rs.rank)]
    return default_lambda_set(rs.rank)


class Timer:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.phases: Dict[str, int] = {}

    @contextmanager
    def phase(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            if self.enabled:
                self.phases[name] = self.phases.get(name, 0) + round((time.perf_counter() - t0) * 1000)


def _report(rs, inputs: dict, timer: Timer) -> dict:
    return {
        "tool_version": __version__,
        "root_system": {"type": rs.type_letter, "rank": rs.rank, "roots": len(rs.roots)},
        "inputs": inputs,
        "verdicts": [],
        "oracle_failures": [],
        "timing": timer.phases,
    }


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _write_out(args, report: dict, extra: Optional[Dict[str, str]] = None) -> None:
    print(_dump(report))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(_dump(report) + "\n", encoding="utf-8")
        for name, text in (extra or {}).items():
            (out / name).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# commands


def _read_T(args, rs) -> ClosedSubset:
    if args.roots_file:
        text = Path(args.roots_file).read_text(encoding="utf-8")
    else:
        text = args.roots or ""
    roots = parse_roots(text)
    for r in roots:
        if len(r) != rs.rank:
            raise InputError(f"root {r} needs {rs.rank} coordinates")
        rs.require_root(r)
    if args.close:
        return closure(rs, roots)
    if not is_closed(rs, roots):
        raise InputError("roots do not form a closed subset (pass --close to use the closure)")
    return ClosedSubset.from_roots(rs, roots)


def _adjoint_record(rs, T: ClosedSubset, verify: bool, max_dim: int, cartan: str) -> dict:
    wide = is_wide(rs, T)
    theta = rs.root_to_weight(rs.highest_root)
    rec = {
        "subalgebra": regular_subalgebra(T, cartan).to_json(),
        "classification": "Wide" if wide else "Narrow",
        "per_lambda": [{"lambda": list(theta),
                        "verdict": LAMBDA_WIDE if is_lambda_wide(rs, T, theta) else "LambdaNarrow"}],
        "oracle_agreement": None,
    }
    failures = []
    if verify:
        summ = is_indecomposable_restriction(adjoint_module(rs), regular_subalgebra(T, "minimal"), max_dim)
        rec["oracle"] = [{"lambda": list(theta), "minimal": summ.to_json()}]
        ok = summ.status != "indeterminate" and summ.indecomposable == wide
        rec["oracle_agreement"] = ok
        if not ok:
            failures.append({"T": T.to_json(), "lambda": list(theta), "cartan": "minimal",
                             "criterion": wide, "oracle": summ.status})
    return {"verdict": rec, "failures": failures}


def _case(type_letter: str, rank: int, mask: int, lambdas: List[List[int]], verify: bool,
          adjoint_only: bool, max_dim: int, cartan: str) -> dict:
    rs = build_root_system(type_letter, rank)
    T = ClosedSubset(rs, mask)
    if adjoint_only:
        return _adjoint_record(rs, T, verify, max_dim, cartan)
    v = classify(rs, T, [Weight(l) for l in lambdas], verify=verify, cartan=cartan, max_dim=max_dim)
    return {"verdict": v.to_json(), "failures": v.failures}


def cmd_rootsys(args) -> int:
    rs = build_root_system(args.type, args.rank)
    print(json.dumps(rootsys_json(rs), sort_keys=True))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    rs = build_root_system(args.type, args.rank)
    for T in enumerate_closed_subsets(rs):
        print(json.dumps(T.to_json()))
    return EXIT_OK


def cmd_classify(args) -> int:
    timer = Timer(args.timing)
    rs = build_root_system(args.type, args.rank)
    with timer.phase("parse"):
        T = _read_T(args, rs)
    adjoint_only = args.adjoint_only or rs.type_letter != "A"
    lambdas = [] if adjoint_only else _lambda_set(args, rs)
    max_dim = _max_dim(args)
    inputs = {"command": "classify", "T": T.to_json(), "cartan": args.cartan, "verify": args.verify,
              "adjoint_only": adjoint_only, "lambda_set": [list(l) for l in lambdas], "max_dim": max_dim}
    report = _report(rs, inputs, timer)
    with timer.phase("classify"):
        res = _case(rs.type_letter, rs.rank, T.mask, [list(l) for l in lambdas], args.verify,
                    adjoint_only, max_dim, args.cartan)
    report["verdicts"].append(res["verdict"])
    report["oracle_failures"] = res["failures"]
    _write_out(args, report)
    return EXIT_FAILED if report["oracle_failures"] else EXIT_OK


def _case_hash(inputs: dict, T: ClosedSubset) -> str:
    key = {k: inputs[k] for k in ("type", "rank", "verify", "adjoint_only", "lambda_set", "cartan")}
    key["T"] = T.to_json()
    return hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()[:16]


def cmd_census(args) -> int:
    timer = Timer(args.timing)
    rs = build_root_system(args.type, args.rank)
    adjoint_only = args.adjoint_only or rs.type_letter != "A"
    lambdas = [] if adjoint_only else _lambda_set(args, rs)
    max_dim = _max_dim(args)
    inputs = {"command": "census", "type": rs.type_letter, "rank": rs.rank, "cartan": args.cartan,
              "verify": args.verify, "adjoint_only": adjoint_only,
              "lambda_set": [list(l) for l in lambdas], "max_dim": max_dim}
    report = _report(rs, inputs, timer)
    with timer.phase("enumerate"):
        subsets = enumerate_closed_subsets(rs)
    with timer.phase("conjugacy"):
        classes: Dict[int, int] = {}
        class_of = []
        for T in subsets:
            c = canonical_mask(rs, T.mask)
            class_of.append(classes.setdefault(c, len(classes)))

    done: Dict[str, dict] = {}
    jsonl = Path(args.out) / "census.jsonl" if args.out else None
    if args.resume and jsonl is not None and jsonl.exists():
        for line in jsonl.read_text(encoding="utf-8").splitlines():
            if line.strip():
                rec = json.loads(line)
                done[rec["hash"]] = rec
    hashes = [_case_hash(inputs, T) for T in subsets]
    todo = [k for k, h in enumerate(hashes) if h not in done]
    lam_lists = [list(l) for l in lambdas]
    job_args = [(rs.type_letter, rs.rank, subsets[k].mask, lam_lists, args.verify, adjoint_only, max_dim, args.cartan)
                for k in todo]
    with timer.phase("classify"):
        if args.jobs > 1 and len(job_args) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_case, *zip(*job_args), chunksize=4))
        else:
            results = [_case(*a) for a in job_args]
    computed = dict(zip(todo, results))

    records = []
    for k, T in enumerate(subsets):
        if k in computed:
            res = computed[k]
            rec = {"hash": hashes[k], "index": k, "T": T.to_json(), "size": len(T),
                   "symmetric_size": len(T.symmetric_part), "special_size": len(T.special_part),
                   "conjugacy_class": class_of[k], "verdict": res["verdict"], "failures": res["failures"]}
        else:
            rec = done[hashes[k]]
        records.append(rec)

    failures = [f for rec in records for f in rec["failures"]]
    dichotomy = []
    if not adjoint_only:
        for rec in records:
            vals = {e["verdict"] for e in rec["verdict"]["per_lambda"] if any(e["lambda"])}
            if len(vals) > 1:
                dichotomy.append({"T": rec["T"], "per_lambda": rec["verdict"]["per_lambda"]})
    report["verdicts"] = [dict(rec["verdict"], T_index=rec["index"], conjugacy_class=rec["conjugacy_class"])
                          for rec in records]
    report["oracle_failures"] = failures
    report["census"] = {
        "closed_subsets": len(records),
        "conjugacy_classes": len(classes),
        "wide": sum(1 for r in records if r["verdict"]["classification"] == "Wide"),
        "narrow": sum(1 for r in records if r["verdict"]["classification"] == "Narrow"),
        "resumed": len(records) - len(todo),
        "dichotomy_exceptions": dichotomy,
    }

    extra = {}
    if args.out:
        extra["census.jsonl"] = "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
        rows = [["index", "size", "conjugacy_class", "T", "classification", "per_lambda", "oracle_agreement"]]
        for r in records:
            v = r["verdict"]
            rows.append([r["index"], r["size"], r["conjugacy_class"], json.dumps(r["T"]), v["classification"],
                         ";".join(f"{','.join(map(str, e['lambda']))}:{e['verdict']}" for e in v["per_lambda"]),
                         v["oracle_agreement"]])
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        extra["summary.csv"] = buf.getvalue()
    _write_out(args, report, extra)
    return EXIT_FAILED if failures or dichotomy else EXIT_OK


def cmd_fflv(args) -> int:
    timer = Timer(args.timing)
    lam = parse_weight(args.lam, args.rank)
    rs = build_root_system("A", args.rank)
    report = _report(rs, {"command": "fflv", "lambda": list(lam)}, timer)
    with timer.phase("enumerate"):
        basis = enumerate_fflv_basis(lam)
    dim = rs.weyl_dimension(lam)
    ok = len(basis) == dim
    report["fflv"] = {"size": len(basis), "weyl_dimension": dim, "check": "PASS" if ok else "FAIL",
                      "basis": [s.to_json() for s in basis]}
    extra = {"fflv.jsonl": "".join(json.dumps(s.to_json(), sort_keys=True) + "\n" for s in basis)}
    _write_out(args, report, extra)
    return EXIT_OK if ok else EXIT_FAILED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="regwide", description="Classify regular subalgebras as wide or narrow.")
    ap.add_argument("--version", action="version", version=f"regwide {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def rs_flags(p, need_type=True):
        if need_type:
            p.add_argument("--type", required=True, help="type letter A, B, C, D, F or G")
        p.add_argument("--rank", type=int, required=True)

    def common(p):
        p.add_argument("--out", metavar="DIR", help="also write report files to DIR")
        p.add_argument("--timing", action="store_true", help="record per-phase milliseconds in the report")

    def wide_flags(p):
        p.add_argument("--lambda", dest="lam", help='single highest weight, e.g. "1,0"')
        p.add_argument("--lambda-set", help='weights separated by ";", e.g. "1,0;0,1"')
        p.add_argument("--cartan", choices=["minimal", "full"], default="minimal")
        p.add_argument("--verify", action="store_true", help="run the commutant oracle")
        p.add_argument("--adjoint-only", action="store_true")
        p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)

    p = sub.add_parser("rootsys", help="print a root system as canonical JSON")
    rs_flags(p)
    p.set_defaults(func=cmd_rootsys)

    p = sub.add_parser("enumerate", help="list closed subsets as JSON lines")
    rs_flags(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="classify one regular subalgebra")
    rs_flags(p)
    p.add_argument("--roots", default=None, help='roots in simple-root coordinates, e.g. "[1,0];[1,1]"')
    p.add_argument("--roots-file")
    p.add_argument("--close", action="store_true", help="replace the roots by their closure")
    wide_flags(p)
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("census", help="classify every closed subset")
    rs_flags(p)
    wide_flags(p)
    common(p)
    p.add_argument("--resume", action="store_true", help="reuse cases already in DIR/census.jsonl")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("fflv", help="enumerate the FFLV index set S(lambda) for sl_{n+1}")
    rs_flags(p, need_type=False)
    p.add_argument("--lambda", dest="lam", required=True)
    common(p)
    p.set_defaults(func=cmd_fflv)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"regwide: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"regwide: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except RegwideError as exc:  # pragma: no cover
        print(f"regwide: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"regwide: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line interface: branching, monoid certification, and table replay.

Subcommands:

* ``branch``  decompose one restricted irreducible module;
* ``gamma``   enumerate a restricted branching monoid and certify it;
* ``verify``  replay catalog cases against the engine.

Structured output (``--json``) is a single object with ``schema_version``,
``command``, ``inputs``, ``results``, ``checks`` and is byte-for-byte
deterministic for fixed inputs and package version; ``timing`` is null unless
``--timing`` is passed (which breaks determinism and is meant for humans).

Exit codes: 0 success / verdict delivered, 1 verification failure, 2 usage
error, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

from . import __version__
from .chars import dimension
from .embed import (
    CatalogError,
    EmbeddingDescriptor,
    embedding_from_case,
    load_embedding_catalog,
)
from .rootsys import GroupShape, SimpleLieType
from .branching import branch
from .monoid import certify
from .tables import TablesError, get_record, instantiate, list_cases

USAGE_ERROR = 2
INTERNAL_ERROR = 3

_LAMBDA_GRAMMAR = """\
weight syntax (--lambda):
  coords   comma-separated fundamental coefficients, e.g. "3" or "1,0,2"
  terms    sum of fundamental weights:  term ("+" term)*
           term = [INT] "pi" INDEX      e.g. "pi1", "2pi3", "pi1+pi3"
"""


class UsageError(Exception):
    pass


def parse_lambda(spec: str, d: EmbeddingDescriptor):
    rank = d.g_shape.factors[0].rank
    spec = spec.strip()
    coords = [0] * d.g_shape.dim
    if re.fullmatch(r"-?\d+(,-?\d+)*", spec):
        vals = [int(x) for x in spec.split(",")]
        if len(vals) > rank:
            raise UsageError(f"{len(vals)} coefficients for rank {rank}")
        for k, v in enumerate(vals):
            coords[k] = v
    else:
        for term in spec.split("+"):
            m = re.fullmatch(r"\s*(\d*)\s*pi(\d+)\s*", term)
            if not m:
                raise UsageError(f"cannot parse weight term {term!r}")
            mult = int(m.group(1)) if m.group(1) else 1
            idx = int(m.group(2))
            if not 1 <= idx <= rank:
                raise UsageError(f"pi{idx} out of range 1..{rank}")
            coords[idx - 1] += mult
    lam = tuple(coords)
    if not d.g_shape.is_dominant(lam):
        raise UsageError(f"weight {spec!r} is not dominant")
    return lam


def parse_params(spec: str | None) -> dict:
    if not spec:
        return {}
    out = {}
    for item in spec.split(","):
        if "=" not in item:
            raise UsageError(f"bad parameter {item!r}, expected k=v")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = int(v)
        except ValueError:
            raise UsageError(f"parameter {k!r} must be an integer") from None
    return out


def parse_I(spec: str):
    try:
        return sorted({int(x) for x in spec.split(",")})
    except ValueError:
        raise UsageError(f"bad node set {spec!r}") from None


def load_matrix_file(path: str) -> EmbeddingDescriptor:
    with open(path) as f:
        data = json.load(f)
    g = GroupShape(tuple(SimpleLieType.parse(s) for s in data["g"]["factors"]),
                   int(data["g"].get("torus", 0)))
    h = GroupShape(tuple(SimpleLieType.parse(s) for s in data["h"]["factors"]),
                   int(data["h"].get("torus", 0)))
    matrix = tuple(tuple(int(x) for x in row) for row in data["matrix"])
    return EmbeddingDescriptor(
        case_id=data.get("case_id", "custom"), g_shape=g, h_shape=h, matrix=matrix
    )


def build_embedding(args) -> EmbeddingDescriptor:
    if getattr(args, "matrix_file", None):
        return load_matrix_file(args.matrix_file)
    if not args.case:
        raise UsageError("--case or --matrix-file required")
    params = parse_params(args.params)
    blocks = getattr(args, "blocks", None)
    if blocks:
        params["blocks"] = _parse_blocks(blocks)
    try:
        return embedding_from_case(args.case, **params)
    except CatalogError as e:
        raise UsageError(str(e)) from None


def _parse_blocks(spec: str):
    # "Sp4+SL1" or "2+2" (plain sizes = Levi blocks)
    out = []
    plain = True
    for item in spec.split("+"):
        m = re.fullmatch(r"(Sp|SL)?(\d+)", item.strip())
        if not m:
            raise UsageError(f"bad block {item!r}")
        if m.group(1):
            plain = False
            out.append((m.group(1), int(m.group(2))))
        else:
            out.append(int(m.group(2)))
    if not plain and any(isinstance(b, int) for b in out):
        raise UsageError("mix of typed and plain blocks")
    return out


# ---------------------------------------------------------------------------
# weight pretty-printing

_PRIMES = ["", "'", "''", "'''"]


def format_h_weight(d: EmbeddingDescriptor, mu) -> str:
    terms = []
    for bi, blk in enumerate(d.blocks):
        prime = _PRIMES[min(bi, 3)]
        for k, ci in enumerate(blk.coords):
            c = mu[ci]
            if c:
                mult = "" if c == 1 else f"{c}"
                terms.append(f"{mult}pi{prime}{k + 1}")
    named = {blk.chi for blk in d.blocks if blk.chi is not None}
    for bi, blk in enumerate(d.blocks):
        if blk.chi is not None and mu[blk.chi]:
            c = mu[blk.chi]
            mult = "" if c == 1 else f"{c}"
            terms.append(f"{mult}chi{bi + 1}")
    for t in range(d.h_shape.ss_dim, d.h_shape.dim):
        if t not in named and mu[t]:
            c = mu[t]
            mult = "" if c == 1 else f"{c}"
            terms.append(f"{mult}chi[{t - d.h_shape.ss_dim + 1}]")
    return "+".join(terms) if terms else "0"


def format_g_weight(d: EmbeddingDescriptor, lam) -> str:
    rank = d.g_shape.factors[0].rank
    terms = []
    for k in range(rank):
        if lam[k]:
            mult = "" if lam[k] == 1 else f"{lam[k]}"
            terms.append(f"{mult}pi{k + 1}")
    if d.g_shape.torus_rank and lam[-1]:
        terms.append(f"{lam[-1]}det")
    return "+".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# reports


def emit(report: dict, args, human_lines):
    if args.json:
        print(json.dumps(report, sort_keys=True, separators=(",", ":")))
    else:
        for line in human_lines:
            print(line)


def _report_skeleton(command: str, inputs: dict, args) -> dict:
    return {
        "schema_version": 1,
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "results": {},
        "checks": [],
        "timing": None,
    }


def cmd_branch(args) -> int:
    t0 = time.time()
    d = build_embedding(args)
    lam = parse_lambda(args.lam, d)
    res = branch(d, lam)
    conserved = res.dimension_check()
    total = dimension(d.g_shape, lam)
    report = _report_skeleton(
        "branch",
        {"case": d.case_id, "params": dict(d.params), "lambda": list(lam)},
        args,
    )
    rows = []
    lines = [f"branch {d.describe()}", f"lambda = {format_g_weight(d, lam)}  (dim {total})"]
    for mu, m in res.sorted_items():
        dim = dimension(d.h_shape, mu)
        rows.append({"weight": list(mu), "multiplicity": m, "dimension": dim})
        lines.append(f"  {format_h_weight(d, mu):<40} x{m}  (dim {dim})")
    report["results"] = {"constituents": rows, "dimension": total}
    report["checks"].append({"name": "dimension_conservation", "pass": conserved})
    lines.append(f"dimension conservation: {'PASS' if conserved else 'FAIL'}")
    if args.timing:
        report["timing"] = round(time.time() - t0, 3)
    if not args.json:
        lines.append(f"[{time.time() - t0:.2f}s]")
    emit(report, args, lines)
    return 0 if conserved else INTERNAL_ERROR


def cmd_gamma(args) -> int:
    t0 = time.time()
    d = build_embedding(args)
    I = parse_I(args.I)
    cert = certify(d, I, args.bound)
    report = _report_skeleton(
        "gamma",
        {"case": d.case_id, "params": dict(d.params), "I": I, "bound": args.bound},
        args,
    )
    cd = cert.to_dict()
    report["results"] = cd
    report["checks"].append({"name": "multiplicity_free", "pass": cert.multiplicity_free})
    if cert.multiplicity_free:
        report["checks"].append({"name": "free", "pass": cert.free})
    lines = [
        f"gamma {d.describe()}  I={I} bound={args.bound}",
        f"elements: {len(cert.elements)}",
        f"multiplicity free: {'yes' if cert.multiplicity_free else 'NO'}",
    ]
    if cert.witness:
        wl, wm, m = cert.witness
        lines.append(
            f"witness: ({format_g_weight(d, wl)}; {format_h_weight(d, wm)}) multiplicity {m}"
        )
    if cert.multiplicity_free:
        lines.append(f"free: {'yes' if cert.free else 'NO'}")
        lines.append(f"generators ({len(cert.generators)}):")
        for l, m in sorted(cert.generators, key=lambda e: (sum(e[0]), e[0], e[1])):
            lines.append(f"  ({format_g_weight(d, l)}; {format_h_weight(d, m)})")
    if args.timing:
        report["timing"] = round(time.time() - t0, 3)
    if not args.json:
        lines.append(f"[{time.time() - t0:.2f}s]")
    emit(report, args, lines)
    return 0


def _verify_one(payload):
    case_id, params, bound = payload
    inst = instantiate(case_id, params)
    d = inst.descriptor
    if bound is None:
        bound = 2 * max(sum(l) for l, _ in inst.generators)
    cert = certify(d, inst.I, bound, expected_generators=inst.generators,
                   expected_rank=inst.rank)
    out = cert.to_dict()
    out["case_id"] = case_id  # record id, not the underlying embedding id
    out["params"] = dict(inst.params)
    out["provenance"] = inst.record.provenance
    return out


def cmd_verify(args) -> int:
    t0 = time.time()
    bound = None if args.quick else args.bound
    if args.all:
        jobs = [(r.case_id, r.smallest, bound) for r in list_cases()]
    else:
        if not args.case:
            raise UsageError("verify needs --case or --all")
        rec = get_record(args.case)
        params = parse_params(args.params) or rec.smallest
        jobs = [(rec.case_id, params, bound)]
    if args.jobs > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_verify_one, jobs))
    else:
        results = [_verify_one(j) for j in jobs]
    report = _report_skeleton(
        "verify",
        {"all": bool(args.all), "case": args.case, "quick": bool(args.quick)},
        args,
    )
    report["results"] = {"cases": results}
    lines = []
    ok = True
    for r in results:
        status = "PASS" if r["pass"] else "FAIL"
        ok = ok and r["pass"]
        ps = ",".join(f"{k}={v}" for k, v in sorted(r["params"].items()))
        cov = " [relabeled]" if r.get("covariance_used") else ""
        lines.append(
            f"{status} {r['case_id']}({ps}) rank {r['rank']}"
            + (f"/{r['rank_expected']}" if "rank_expected" in r else "")
            + cov
            + (f"  -- {r['failure']}" if r.get("failure") else "")
        )
    report["checks"].append({"name": "all_cases", "pass": ok})
    lines.append(f"{'all PASS' if ok else 'FAILURES PRESENT'} ({len(results)} cases)")
    if args.timing:
        report["timing"] = round(time.time() - t0, 3)
    if not args.json:
        lines.append(f"[{time.time() - t0:.2f}s]")
    emit(report, args, lines)
    return 0 if ok else 1


def list_known_cases() -> str:
    emb = [r["case_id"] for r in load_embedding_catalog()["records"]]
    tab = [r.case_id for r in list_cases()]
    return (
        "embeddings (branch/gamma --case): "
        + ", ".join(emb)
        + ", identity:<TYPE>\n"
        + "table records (verify --case): "
        + ", ".join(tab)
    )


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="branchmon",
        description="Branching rules and restricted branching monoid certification.",
        epilog=_LAMBDA_GRAMMAR + "\n" + list_known_cases(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--timing", action="store_true",
                       help="include timing in JSON (breaks byte determinism)")

    pb = sub.add_parser("branch", help="decompose a restricted irreducible module")
    pb.add_argument("--case", help="embedding case id, e.g. e6_f4, sl_sp, identity:A1")
    pb.add_argument("--params", help="embedding parameters, e.g. n=3 or p=2,q=1")
    pb.add_argument("--blocks", help="block spec for levi/blocks cases, e.g. Sp4+SL1 or 2+2")
    pb.add_argument("--matrix-file", help="JSON file with shapes and restriction matrix")
    pb.add_argument("--lambda", dest="lam", required=True, help="highest weight")
    common(pb)
    pb.set_defaults(fn=cmd_branch)

    pg = sub.add_parser("gamma", help="enumerate and certify a restricted branching monoid")
    pg.add_argument("--case", help="embedding case id")
    pg.add_argument("--params", help="embedding parameters")
    pg.add_argument("--blocks", help="block spec for levi/blocks cases")
    pg.add_argument("--matrix-file", help="JSON file with shapes and restriction matrix")
    pg.add_argument("--I", required=True, help="node set, e.g. 1,2")
    pg.add_argument("--bound", type=int, default=4, help="lambda coefficient-sum bound")
    common(pg)
    pg.set_defaults(fn=cmd_gamma)

    pv = sub.add_parser("verify", help="replay catalog cases against the engine")
    pv.add_argument("--all", action="store_true", help="every record at smallest parameters")
    pv.add_argument("--case", help="table record id, e.g. sl_spsp_12")
    pv.add_argument("--params", help="record parameters, e.g. p=2,q=2")
    pv.add_argument("--bound", type=int, default=4)
    pv.add_argument("--quick", action="store_true",
                    help="use the smallest bound certifying the expected generators")
    pv.add_argument("--jobs", type=int, default=1, help="parallel workers")
    common(pv)
    pv.set_defaults(fn=cmd_verify)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except TablesError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except CatalogError as e:
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())

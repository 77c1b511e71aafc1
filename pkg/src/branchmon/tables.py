"""Machine-readable catalog of the published branching-monoid case tables.

Each record describes one parameterized case family: which embedding to
build, the node set I, the expected rank, and the expected indecomposable
generators as small arithmetic expressions over the parameters.  Records live
in ``data/cases_v1.json``; parsing and re-serializing that file is
byte-stable.

Expression language (evaluated by a restricted ast walk, no eval):

* integers: parameter names, literals, ``+ - * // %``, ``min`` ``max``,
  ``d(a, b)`` (Kronecker delta);
* conditions: comparisons and ``and``/``or`` over integer expressions;
* weights: sums of terms with integer multipliers over the atoms
  ``G(i)`` (i-th fundamental weight of G), ``P1(k)``/``P2(k)``/``P3(k)``
  (k-th fundamental weight of the first/second/third conceptual factor of H,
  with ``P(0) = 0`` and ``P(m) = 0`` for an SL_m factor), ``X(b)`` (block
  character chi_b), ``V1()``/``V2()``/``V3()`` (tautological-module highest
  weight of a factor, which differs from P(1) for the small orthogonal
  groups), and the literal ``0``.

Generator entries either stand alone, optionally guarded by a presence
condition, or expand a loop over an index range.  Instantiating a record
checks its constraints, evaluates everything, and verifies the sanity
invariants (distinct generators, generator count equal to the rank value).
"""

from __future__ import annotations

import ast
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .embed import EmbeddingDescriptor, embedding_from_case

__all__ = [
    "CaseRecord",
    "InstantiatedCase",
    "TablesError",
    "load_case_catalog",
    "list_cases",
    "get_record",
    "instantiate",
    "serialize_catalog",
]


class TablesError(ValueError):
    """Raised for malformed records, failed constraints, or bad expressions."""


# ---------------------------------------------------------------------------
# expression evaluation

_INT_FUNCS = {
    "min": min,
    "max": max,
    "d": lambda a, b: 1 if a == b else 0,
}

_WEIGHT_ATOMS = ("G", "P1", "P2", "P3", "X", "V1", "V2", "V3")


def _parse(expr: str):
    try:
        return ast.parse(expr, mode="eval").body
    except SyntaxError as e:
        raise TablesError(f"bad expression {expr!r}: {e}") from None


def eval_int(expr: str, env: dict) -> int:
    return _eval_int_node(_parse(expr), env, expr)


def _eval_int_node(node, env, src):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int):
            return node.value
        raise TablesError(f"non-integer constant in {src!r}")
    if isinstance(node, ast.Name):
        if node.id in env:
            return env[node.id]
        raise TablesError(f"unknown name {node.id!r} in {src!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_eval_int_node(node.operand, env, src)
    if isinstance(node, ast.BinOp):
        a = _eval_int_node(node.left, env, src)
        b = _eval_int_node(node.right, env, src)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.FloorDiv):
            return a // b
        if isinstance(node.op, ast.Mod):
            return a % b
        raise TablesError(f"operator not allowed in {src!r}")
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        fn = _INT_FUNCS.get(node.func.id)
        if fn is None:
            raise TablesError(f"function {node.func.id!r} not allowed in {src!r}")
        return fn(*(_eval_int_node(a, env, src) for a in node.args))
    raise TablesError(f"unsupported syntax in {src!r}")


def eval_cond(expr: str, env: dict) -> bool:
    return _eval_cond_node(_parse(expr), env, expr)


def _eval_cond_node(node, env, src):
    if isinstance(node, ast.BoolOp):
        vals = (_eval_cond_node(v, env, src) for v in node.values)
        return all(vals) if isinstance(node.op, ast.And) else any(vals)
    if isinstance(node, ast.Compare):
        left = _eval_int_node(node.left, env, src)
        for op, comp in zip(node.ops, node.comparators):
            right = _eval_int_node(comp, env, src)
            ok = {
                ast.Lt: left < right,
                ast.LtE: left <= right,
                ast.Gt: left > right,
                ast.GtE: left >= right,
                ast.Eq: left == right,
                ast.NotEq: left != right,
            }.get(type(op))
            if ok is None:
                raise TablesError(f"comparison not allowed in {src!r}")
            if not ok:
                return False
            left = right
        return True
    raise TablesError(f"condition expected in {src!r}")


def eval_weight(expr: str, env: dict, d: EmbeddingDescriptor, side: str):
    """Evaluate a weight expression to a coordinate tuple on the given side."""
    dim = d.g_shape.dim if side == "g" else d.h_shape.dim
    val = _eval_weight_node(_parse(expr), env, d, side, dim, expr)
    if isinstance(val, int):
        if val != 0:
            raise TablesError(f"integer {val} is not a weight in {expr!r}")
        return tuple([0] * dim)
    return tuple(val)


def _weight_atom(name, args, env, d, side, dim, src):
    vals = [_eval_int_node(a, env, src) for a in args]
    if name == "G":
        if side != "g":
            raise TablesError(f"G() only valid on the G side in {src!r}")
        return list(d.g_fundamental(vals[0]))
    if side != "h":
        raise TablesError(f"{name}() only valid on the H side in {src!r}")
    if name == "X":
        return list(d.chi(vals[0]))
    idx = int(name[1]) - 1
    if idx >= len(d.blocks):
        raise TablesError(f"no conceptual factor {name[1]} in case {d.case_id}")
    blk = d.blocks[idx]
    if name.startswith("P"):
        return list(blk.fundamental(vals[0], dim))
    return list(blk.vector_weight(dim))


def _eval_weight_node(node, env, d, side, dim, src):
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _WEIGHT_ATOMS:
        return _weight_atom(node.func.id, node.args, env, d, side, dim, src)
    if isinstance(node, ast.BinOp):
        a = _eval_weight_node(node.left, env, d, side, dim, src)
        b = _eval_weight_node(node.right, env, d, side, dim, src)
        if isinstance(node.op, (ast.Add, ast.Sub)):
            sign = 1 if isinstance(node.op, ast.Add) else -1
            if isinstance(a, int) and isinstance(b, int):
                return a + sign * b
            if isinstance(a, int):
                a = [0] * dim if a == 0 else None
            if isinstance(b, int):
                b = [0] * dim if b == 0 else None
            if a is None or b is None:
                raise TablesError(f"mixing weights and nonzero integers in {src!r}")
            return [x + sign * y for x, y in zip(a, b)]
        if isinstance(node.op, ast.Mult):
            if isinstance(a, int) and isinstance(b, list):
                return [a * y for y in b]
            if isinstance(b, int) and isinstance(a, list):
                return [b * y for y in a]
            if isinstance(a, int) and isinstance(b, int):
                return a * b
            raise TablesError(f"cannot multiply two weights in {src!r}")
    # anything else must be plain integer arithmetic
    return _eval_int_node(node, env, src)


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class CaseRecord:
    raw: dict

    @property
    def case_id(self) -> str:
        return self.raw["case_id"]

    @property
    def table(self) -> str:
        return self.raw["table"]

    @property
    def family(self) -> str:
        return self.raw.get("family", self.case_id)

    @property
    def params(self):
        return list(self.raw.get("params", []))

    @property
    def assignments(self):
        return [dict(a) for a in self.raw.get("assignments", [])]

    @property
    def smallest(self) -> dict:
        a = self.assignments
        return a[0] if a else {}

    @property
    def provenance(self) -> str:
        return self.raw.get("provenance", "")

    @property
    def reconstructed(self) -> bool:
        return bool(self.raw.get("reconstructed", False))

    def env_for(self, params: dict) -> dict:
        missing = [p for p in self.params if p not in params]
        if missing:
            raise TablesError(f"{self.case_id}: missing parameters {missing}")
        env = {k: int(params[k]) for k in self.params}
        for name, expr in self.raw.get("derived", {}).items():
            env[name] = eval_int(expr, env)
        return env

    def check_constraints(self, env: dict):
        for c in self.raw.get("constraints", []):
            if not eval_cond(c, env):
                raise TablesError(f"{self.case_id}: constraint violated: {c}")


@dataclass(frozen=True)
class InstantiatedCase:
    record: CaseRecord
    params: dict
    descriptor: EmbeddingDescriptor
    I: tuple
    rank: int
    generators: tuple  # of (lam, mu) coordinate-tuple pairs

    @property
    def case_id(self) -> str:
        return self.record.case_id


@lru_cache(maxsize=None)
def load_case_catalog() -> tuple:
    text = resources.files("branchmon.data").joinpath("cases_v1.json").read_text()
    data = json.loads(text)
    if data.get("schema_version") != 1:
        raise TablesError("unsupported case catalog schema version")
    return tuple(CaseRecord(r) for r in data["records"])


def serialize_catalog(records=None) -> str:
    """Canonical serialization; parsing then serializing the data file is byte-stable."""
    records = load_case_catalog() if records is None else records
    data = {"schema_version": 1, "records": [r.raw for r in records]}
    return json.dumps(data, indent=2, ensure_ascii=False, sort_keys=True) + "\n"


def list_cases(table: str | None = None, family: str | None = None):
    """All records in stable (file) order, optionally filtered."""
    out = []
    for r in load_case_catalog():
        if table is not None and r.table != table:
            continue
        if family is not None and r.family != family:
            continue
        out.append(r)
    return out


def get_record(case_id: str) -> CaseRecord:
    for r in load_case_catalog():
        if r.case_id == case_id:
            return r
    raise TablesError(f"unknown case id {case_id!r}")


def _build_descriptor(rec: CaseRecord, env: dict) -> EmbeddingDescriptor:
    spec = rec.raw["embedding"]
    args = {}
    for k, v in spec.get("args", {}).items():
        if k == "blocks":
            if v == "ones":
                args[k] = [1] * env["n"]
            elif all(isinstance(b, str) for b in v):
                args[k] = [eval_int(b, env) for b in v]
            else:
                args[k] = [(kind, eval_int(size, env)) for kind, size in v]
        else:
            args[k] = eval_int(v, env)
    return embedding_from_case(spec["case"], **args)


def _node_set(rec: CaseRecord, env: dict):
    spec = rec.raw["I"]
    if isinstance(spec, dict):
        lo = eval_int(spec["from"], env)
        hi = eval_int(spec["to"], env)
        return tuple(range(lo, hi + 1))
    return tuple(sorted(eval_int(e, env) for e in spec))


def instantiate(case_id: str, params: dict | None = None) -> InstantiatedCase:
    """Concrete expected data for one case at one parameter assignment.

    Uses the record's smallest shipped assignment when params is None.
    Verifies that the evaluated generators are pairwise distinct and that
    their count equals the rank value (free-monoid consistency).
    """
    rec = get_record(case_id)
    if params is None:
        params = rec.smallest
    env = rec.env_for(params)
    rec.check_constraints(env)
    d = _build_descriptor(rec, env)
    I = _node_set(rec, env)
    rank = eval_int(rec.raw["rank"], env)
    gens = []
    for g in rec.raw["generators"]:
        if "cond" in g and not eval_cond(g["cond"], env):
            continue
        if "loop" in g:
            loop = g["loop"]
            var = loop["var"]
            lo = eval_int(loop["lo"], env)
            hi = eval_int(loop["hi"], env)
            for k in range(lo, hi + 1):
                env2 = dict(env)
                env2[var] = k
                if "loop_cond" in g and not eval_cond(g["loop_cond"], env2):
                    continue
                gens.append(
                    (
                        eval_weight(g["lam"], env2, d, "g"),
                        eval_weight(g["mu"], env2, d, "h"),
                    )
                )
        else:
            gens.append(
                (eval_weight(g["lam"], env, d, "g"), eval_weight(g["mu"], env, d, "h"))
            )
    if len(set(gens)) != len(gens):
        dupes = [g for g in gens if gens.count(g) > 1]
        raise TablesError(f"{case_id} at {params}: duplicate generators {dupes[:2]}")
    if len(gens) != rank:
        raise TablesError(
            f"{case_id} at {params}: {len(gens)} generators but rank value {rank}"
        )
    return InstantiatedCase(rec, dict(params), d, I, rank, tuple(gens))

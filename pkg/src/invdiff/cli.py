"""Command-line front end.

    invdiff audit       --space f4
    invdiff verify      --space quat --n 2,3,4 --format json
    invdiff discover    --space quat --n 3 --deg 3 --lhs "[D1,D4]"
    invdiff interpolate --space quat --n 2,3,4 --lhs "[D1,D9]"
    invdiff properties  --space quat --n 2 --seed 7

Exit codes: 0 success, 1 a check or relation failed, 2 usage or
configuration error, 3 degree cap exceeded (``ENGINE_DEGREE_CAP``).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .generators import build_generators
from .liealg import build_algebra, jobs_default, resolve_space, structure_audit
from .octonion import (
    CheckReport,
    MultiplicationTable,
    jordan_identity_check,
    oct_identities_check,
    triality_check,
)
from .reduction import coset_independence_check
from .relations import (
    Evaluator,
    RelationSyntaxError,
    UnknownGenerator,
    discover,
    interpolate_n,
    parse_expr,
    report_json,
    shipped_relations,
    to_text,
    verify_suite,
    SCHEMA_VERSION,
)
from .uea import (
    DegreeCapExceeded,
    associativity_check,
    commutator_identities_check,
    confluence_check,
    degree_cap,
)

__all__ = ["RunConfig", "main", "build_parser", "EXIT_OK", "EXIT_FAIL", "EXIT_USAGE", "EXIT_LIMIT"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
COMMANDS = ("audit", "verify", "discover", "interpolate", "properties")
DEFAULT_DEG = 4


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    space: str
    ns: list
    deg: int
    lhs: str | None
    format: str
    table_path: str | None
    jobs: int
    seed: int

    @property
    def n(self) -> int:
        if len(self.ns) != 1:
            raise UsageError(f"{self.command} takes a single --n value")
        return self.ns[0]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="invdiff",
        description="Invariant differential operators on unit sphere bundles: audits, "
                    "relation verification, interpolation in n and discovery.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--space", required=True,
                   help="sphere, complex_proj, quat_proj, octonion_proj (alias f4), "
                        "real-hyp, complex-hyp, quat-hyp, oct-hyp")
    p.add_argument("--n", default=None,
                   help="rank, or comma list for verify/interpolate (default 3; 2 for the octonionic family)")
    p.add_argument("--deg", type=int, default=DEFAULT_DEG, help=f"discovery degree bound (default {DEFAULT_DEG})")
    p.add_argument("--lhs", default=None, help="discover: expression; interpolate: shipped relation id")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--table", default=None, help="octonion multiplication table file (dumps format)")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: available cores)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized property suites")
    return p


def _parse_ns(raw: str | None, family: str, command: str) -> list:
    if family == "oct":
        if raw not in (None, "2"):
            raise UsageError("the octonionic family exists only for n = 2")
        return [2]
    if raw is None:
        if command == "interpolate":
            return [3, 4, 5] if family == "real" else [2, 3, 4]
        return [3]
    try:
        ns = [int(tok) for tok in raw.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"--n must be an integer or comma list, got {raw!r}") from None
    if not ns or any(k < 2 for k in ns):
        raise UsageError("--n values must be >= 2")
    return ns


def make_config(argv=None) -> RunConfig:
    args = build_parser().parse_args(argv)
    try:
        spec = resolve_space(args.space)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ns = _parse_ns(args.n, spec.family, args.command)
    if args.deg < 0:
        raise UsageError("--deg must be >= 0")
    if args.command in ("discover", "interpolate") and not args.lhs:
        raise UsageError(f"{args.command} needs --lhs")
    if args.table and spec.family != "oct":
        raise UsageError("--table only applies to the octonionic family")
    jobs = args.jobs if args.jobs is not None else jobs_default()
    if jobs < 1:
        raise UsageError("--jobs must be >= 1")
    degree_cap()  # validates ENGINE_DEGREE_CAP early
    return RunConfig(args.command, args.space, ns, args.deg, args.lhs, args.format, args.table, jobs, args.seed)


def _load_table(cfg: RunConfig, validate: bool = True):
    if not cfg.table_path:
        return None
    try:
        return MultiplicationTable.load(cfg.table_path, validate=validate)
    except OSError as exc:
        raise UsageError(f"cannot read table: {exc}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    if cfg.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_audit(cfg: RunConfig) -> int:
    table = _load_table(cfg, validate=False)
    spec = resolve_space(cfg.space)
    pre = CheckReport("octonion table")
    if table is not None:
        for problem in table.validate():
            pre.fail(problem)
        pre.checked += 1
    try:
        g = build_algebra(cfg.space, cfg.n, table)
        rep = structure_audit(g)
    except (ValueError, ArithmeticError, KeyError) as exc:
        if table is None:
            raise
        pre.fail(f"structure constants could not be built: {exc}")
        payload = {"schema_version": SCHEMA_VERSION, "algebra": spec.name, "passed": False,
                   "checks": [{"name": pre.name, "passed": False, "failures": [str(f) for f in pre.failures]}]}
        _emit(cfg, payload, f"{spec.name}: FAIL\n  {pre.summary()}")
        return EXIT_FAIL
    if table is not None:
        rep.checks.insert(0, pre)
    payload = {"schema_version": SCHEMA_VERSION, **rep.to_dict()}
    _emit(cfg, payload, rep.summary())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify(cfg: RunConfig) -> int:
    table = _load_table(cfg)
    rep = verify_suite(cfg.space, cfg.ns, table, jobs=cfg.jobs)
    lines = []
    for r in rep.reports:
        mark = "ok  " if r.status == "verified" else "FAIL"
        lines.append(f"{mark} n={r.n} {r.id}" + (f"  [{r.error}]" if r.error else ""))
        if r.status != "verified" and r.residual:
            lines.extend("       " + ln for ln in r.residual.splitlines()[:6])
    s = rep.summary()
    lines.append(f"{rep.space} n={','.join(map(str, rep.ns))}: {s['verified']}/{s['total']} verified")
    _emit(cfg, rep.to_dict(), "\n".join(lines))
    if any(r.error and r.error.startswith("degree cap") for r in rep.reports):
        return EXIT_LIMIT
    return EXIT_OK if rep.failed == 0 else EXIT_FAIL


def _shipped_match(space: str, n: int, lhs_node):
    name = resolve_space(space).name
    for rel in shipped_relations():
        if rel.space == name and rel.holds_for(n) and rel.lhs == lhs_node:
            return rel
    return None


def cmd_discover(cfg: RunConfig) -> int:
    table = _load_table(cfg)
    n = cfg.n
    node = parse_expr(cfg.lhs)
    res = discover(node, cfg.space, n, cfg.deg, table)
    expr = res.expression()
    payload = {
        "schema_version": SCHEMA_VERSION, "space": resolve_space(cfg.space).name, "n": n,
        "lhs": to_text(node), "deg": cfg.deg, "consistent": res.consistent, "expression": expr,
        "rank": res.rank, "nullity": res.nullity, "ansatz_size": res.ansatz_size,
    }
    lines = [f"{to_text(node)} = {expr}",
             f"  ansatz {res.ansatz_size} products, rank {res.rank}, nullity {res.nullity}"]
    shipped = _shipped_match(cfg.space, n, node)
    if shipped is not None and res.consistent:
        ev = Evaluator(build_generators(cfg.space, n, table), twist=shipped.twist)
        agrees = ev.value(parse_expr(expr)) == ev.value(shipped.rhs)
        payload["shipped"] = {"id": shipped.id, "rhs": to_text(shipped.rhs), "coset_equal": agrees}
        lines.append(f"  shipped: {to_text(shipped.rhs)}  ({'agrees' if agrees else 'DIFFERS'})")
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if res.consistent else EXIT_FAIL


def cmd_interpolate(cfg: RunConfig) -> int:
    table = _load_table(cfg)
    res = interpolate_n(cfg.lhs, cfg.space, cfg.ns, table)
    rows = [{"term": t, "fitted": str(f), "shipped": str(s), "match": f == s} for t, f, s in res.terms]
    payload = {"schema_version": SCHEMA_VERSION, "id": res.id, "space": res.space,
               "samples": res.samples, "terms": rows, "matches": res.matches}
    lines = [f"{res.id} on {res.space}, samples n={','.join(map(str, res.samples))}"]
    for r in rows:
        lines.append(f"  {'ok  ' if r['match'] else 'FAIL'} {r['term']}: {r['fitted']}  (shipped {r['shipped']})")
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if res.matches else EXIT_FAIL


def cmd_properties(cfg: RunConfig) -> int:
    table = _load_table(cfg)
    gs = build_generators(cfg.space, cfg.n, table)
    seed = cfg.seed
    reps = [
        confluence_check(gs.U, 200, seed),
        associativity_check(gs.U, 200, seed),
        commutator_identities_check(gs.U, 100, seed),
        coset_independence_check(gs.Q, [gs[k] for k in gs.order], 100, seed),
    ]
    if gs.family == "oct":
        tbl = table or None
        reps += [oct_identities_check(1000, tbl, seed), triality_check(tbl), jordan_identity_check(200, tbl, seed)]
    ok = all(r.passed for r in reps)
    payload = {"schema_version": SCHEMA_VERSION, "space": gs.space, "n": gs.n, "seed": seed, "passed": ok,
               "checks": [{"name": r.name, "passed": r.passed, "checked": r.checked} for r in reps]}
    _emit(cfg, payload, "\n".join(r.summary() for r in reps))
    return EXIT_OK if ok else EXIT_FAIL


_DISPATCH = {
    "audit": cmd_audit,
    "verify": cmd_verify,
    "discover": cmd_discover,
    "interpolate": cmd_interpolate,
    "properties": cmd_properties,
}


def main(argv=None) -> int:
    try:
        cfg = make_config(argv)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_USAGE if exc.code else EXIT_OK
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _DISPATCH[cfg.command](cfg)
    except DegreeCapExceeded as exc:
        print(f"error: degree cap exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (UsageError, RelationSyntaxError, UnknownGenerator, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

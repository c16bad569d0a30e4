"""Verification sweeps and table/report emission.

One binary with subcommands.  A sweep executes the enabled checks over a
grid of root systems and writes a deterministic JSON report: identical
config and seed give byte-identical output, and every failed check
carries a replayable witness.  Exit codes: 0 all-pass, 1 verdict
failure, 2 usage or config errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import affine, chevalley, fixer, tits, weyl
from .rootsys import root_system, rootsys_to_json

REPORT_SCHEMA_VERSION = 1

DEFAULT_CONFIG = {
    "seed": 20240901,
    "budget": 10_000,       # exhaustive element enumeration cap on |W|
    "pair_budget": 10_000,  # exhaustive pair sweeps cap on |W|^2
    "samples": 2000,        # sampled pairs/elements beyond the budgets
    "lambda_samples": 20,
    "qs": [5, 7, 13],
    "lattices": "all",
    "systems": [{"type": "A", "rank": 1}, {"type": "A", "rank": 2},
                {"type": "A", "rank": 3}],
    "checks": {
        "first_difference": True,
        "cocycle": True,
        "second_difference": True,
        "fibers": True,
        "characters": True,
        "fixer": True,
    },
    "tables": [],
    "constants_fixture": None,
}


class ConfigError(ValueError):
    pass


def load_config(path: str | None, overrides: dict | None = None) -> dict:
    cfg = json.loads(json.dumps(DEFAULT_CONFIG))
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                user = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(user, dict):
            raise ConfigError("config must be a JSON object")
        for key, val in user.items():
            if key == "checks":
                cfg["checks"].update(val)
            elif key in cfg:
                cfg[key] = val
            else:
                raise ConfigError(f"unknown config key {key!r}")
    if overrides:
        for key, val in overrides.items():
            if val is not None:
                cfg[key] = val
    for sysdef in cfg["systems"]:
        if "type" not in sysdef or "rank" not in sysdef:
            raise ConfigError("each system needs a type and a rank")
    return cfg


def _sysname(sysdef) -> str:
    return f"{sysdef['type']}{sysdef['rank']}"


def _check(report, name, system, mode, count, passed, counterexample=None):
    report["checks"].append({
        "name": name,
        "system": system,
        "mode": mode,
        "count": count,
        "passed": bool(passed),
        "counterexample": counterexample,
    })


def _elements(rs, budget, samples, rng):
    order = weyl.group_order(rs)
    if order <= budget:
        return weyl.enumerate_group(rs), "exhaustive"
    return [weyl.random_element(rs, rng) for _ in range(samples)], "sampled"


def _sweep_first_difference(report, rs, name, cfg, rng):
    elements, mode = _elements(rs, cfg["budget"], cfg["samples"], rng)
    count = 0
    for w in elements:
        for a in range(rs.nroots):
            count += 1
            if not weyl.check_first_difference(w, a):
                _check(report, "first_difference", name, mode, count, False,
                       {"word": list(w.word), "root": list(rs.roots[a])})
                return
        if not weyl.check_flip_symmetry(w):
            _check(report, "first_difference", name, mode, count, False,
                   {"word": list(w.word), "failure": "flip symmetry"})
            return
    _check(report, "first_difference", name, mode, count, True)


def _sweep_cocycle(report, rs, name, cfg, rng):
    order = weyl.group_order(rs)
    if order * order <= cfg["pair_budget"]:
        mode = "exhaustive"
        group = weyl.enumerate_group(rs)
        pairs = ((u, v) for u in group for v in group)
        total = order * order
    else:
        mode = "sampled"
        pool = [weyl.random_element(rs, rng) for _ in range(max(64, min(1024, cfg["samples"])))]
        pairs = ((rng.choice(pool), rng.choice(pool))
                 for _ in range(cfg["samples"]))
        total = cfg["samples"]
    count = 0
    for u, v in pairs:
        count += 1
        if not tits.check_cocycle_formula(u, v):
            _check(report, "cocycle", name, mode, count, False,
                   {"u_word": list(u.word), "v_word": list(v.word)})
            return
    if count != total:
        raise AssertionError("pair sweep drifted from its plan")
    _check(report, "cocycle", name, mode, count, True)


def _eligible_omegas(rs, min_order):
    try:
        group = affine.omega_group(rs, affine.adjoint_lattice(rs))
    except Exception:
        return []
    return [om for om in group if om.order() >= min_order]


def _sweep_second_difference(report, rs, name):
    count = 0
    for om in _eligible_omegas(rs, 2):
        if not affine.check_flip_sum_even(rs, om.sigma):
            _check(report, "second_difference", name, "exhaustive", count, False,
                   {"class_node": om.class_node, "failure": "parity"})
            return
        count += 1
        if om.order() >= 3:
            datum = affine.sigma_rs(rs, om.sigma)
            for a in range(rs.nroots):
                count += 1
                if not affine.check_second_difference(datum, a):
                    _check(report, "second_difference", name, "exhaustive",
                           count, False,
                           {"class_node": om.class_node, "root": list(rs.roots[a])})
                    return
    _check(report, "second_difference", name, "exhaustive", count, True)


def _sweep_fibers(report, rs, name):
    count = 0
    for om in _eligible_omegas(rs, 3):
        try:
            datum = affine.sigma_rs(rs, om.sigma)  # asserts constant fibers
        except AssertionError as exc:
            _check(report, "fibers", name, "exhaustive", count, False,
                   {"class_node": om.class_node, "failure": str(exc)})
            return
        a, b, c = datum.fiber_sizes
        count += 1
        if a != c or a + b + c != rs.coxeter_number:
            _check(report, "fibers", name, "exhaustive", count, False,
                   {"class_node": om.class_node, "fiber_sizes": [a, b, c]})
            return
    _check(report, "fibers", name, "exhaustive", count, True)


def _sweep_characters(report, rs, name, cfg):
    if cfg.get("constants_fixture"):
        try:
            with open(cfg["constants_fixture"], "r", encoding="utf-8") as fh:
                table = chevalley.table_from_json(rs, json.load(fh))
        except (OSError, json.JSONDecodeError, ValueError) as exc:
            raise ConfigError(f"bad constants fixture: {exc}") from exc
        bad = chevalley.validate_jacobi(table)
        if bad is not None:
            _check(report, "characters", name, "exhaustive", 1, False,
                   {"failure": "jacobi",
                    "triple": [rs.root_name(k) for k in bad]})
            return
    else:
        table = chevalley.build_constants(rs)
    scalars = chevalley.scalar_table(table)
    rel = chevalley.highest_root_relation(rs)
    count = 0
    for om in _eligible_omegas(rs, 1):
        count += 1
        if chevalley.evaluate_character(scalars, rel, om.sigma) != 1:
            _check(report, "characters", name, "exhaustive", count, False,
                   {"class_node": om.class_node})
            return
    _check(report, "characters", name, "exhaustive", count, True)


def _select_lattices(rs, cfg):
    lats = affine.all_lattices(rs)
    wanted = cfg.get("lattices", "all")
    if wanted == "all":
        return lats
    chosen = [lat for lat in lats if lat.name in wanted]
    if not chosen:
        raise ConfigError(f"no lattice of {_sysname_rs(rs)} matches {wanted}; "
                          f"available: {[lat.name for lat in lats]}")
    return chosen


def _sysname_rs(rs) -> str:
    return f"{rs.datum.type_label}{rs.rank}"


def _sweep_fixer(report, rs, name, cfg, rng):
    table = chevalley.build_constants(rs)
    scalars = chevalley.scalar_table(table)
    count = 0
    for lat in _select_lattices(rs, cfg):
        for om in affine.omega_group(rs, lat):
            for q in cfg["qs"]:
                units = fixer.UnitGroup(q - 1)
                for _ in range(cfg["lambda_samples"]):
                    lam = fixer.random_functional(rng, units, rs.rank)
                    system = fixer.build_system(rs, lat, om, lam, scalars, units)
                    count += 1
                    if fixer.solve(system) is None:
                        _check(report, "fixer", name, "sampled", count, False,
                               {"lattice": lat.name, "class_node": om.class_node,
                                "q": q, "lambda": list(lam.values)})
                        return
    _check(report, "fixer", name, "sampled", count, True)


def run_sweep(cfg: dict) -> dict:
    report = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "seed": cfg["seed"],
        "config": {k: v for k, v in sorted(cfg.items()) if k != "out"},
        "checks": [],
        "tables": {},
    }
    rng = random.Random(cfg["seed"])
    for sysdef in cfg["systems"]:
        rs = root_system(sysdef["type"], sysdef["rank"])
        name = _sysname(sysdef)
        checks = cfg["checks"]
        if checks.get("first_difference"):
            _sweep_first_difference(report, rs, name, cfg, rng)
        if checks.get("cocycle"):
            _sweep_cocycle(report, rs, name, cfg, rng)
        if checks.get("second_difference"):
            _sweep_second_difference(report, rs, name)
        if checks.get("fibers"):
            _sweep_fibers(report, rs, name)
        if checks.get("characters"):
            _sweep_characters(report, rs, name, cfg)
        if checks.get("fixer"):
            _sweep_fixer(report, rs, name, cfg, rng)
    for tabdef in cfg["tables"]:
        rs = root_system(tabdef["type"], tabdef["rank"])
        doc = emit_table_doc(rs, tabdef.get("node"))
        report["tables"][_sysname(tabdef)] = doc
    report["status"] = "pass" if all(c["passed"] for c in report["checks"]) \
        else "fail"
    return report


def validate_report(report: dict) -> None:
    """Minimal structural validation of the report schema."""
    if report.get("schema_version") != REPORT_SCHEMA_VERSION:
        raise ValueError("unknown report schema version")
    for key in ("seed", "config", "checks", "tables", "status"):
        if key not in report:
            raise ValueError(f"report missing {key!r}")
    for c in report["checks"]:
        for key in ("name", "system", "mode", "count", "passed", "counterexample"):
            if key not in c:
                raise ValueError(f"check entry missing {key!r}")
        if not c["passed"] and c["counterexample"] is None:
            raise ValueError("failed check lacks a witness")


# -- tables -------------------------------------------------------------


def cocycle_table_doc(rs, budget: int) -> dict:
    """Full (u, v) -> torus-bits table for a small group, words as keys."""
    order = weyl.group_order(rs)
    if order * order > budget:
        raise ConfigError(f"|W|^2 = {order * order} exceeds budget {budget}; "
                          f"dump only supports exhaustive groups")
    group = weyl.enumerate_group(rs)
    entries = []
    for u in group:
        for v in group:
            bits = tits.cocycle(u, v)
            if any(bits):
                entries.append([list(u.word), list(v.word), list(bits)])
    return {
        "system": f"{rs.datum.type_label}{rs.rank}",
        "group_order": order,
        "nontrivial": sorted(entries),
        "trivial_pairs": order * order - len(entries),
    }


def emit_table_doc(rs, node=None) -> dict:
    """The additive-triple table: rows are the (1,0) part, columns the
    (0,1) part, cells the sums landing in the (1,1) part."""
    group = affine.omega_group(rs, affine.adjoint_lattice(rs))
    cands = [om for om in group if om.order() >= 3 and
             (node is None or om.class_node == node)]
    if not cands:
        raise ConfigError(
            f"{rs.datum.type_label}{rs.rank}: no stabilizer projection of "
            f"order >= 3" + (f" with node {node}" if node else ""))
    om = cands[0]
    datum = affine.sigma_rs(rs, om.sigma)
    rows = sorted(datum.parts[2])
    cols = sorted(datum.parts[1])
    bysum = {(b, a): g for a, b, g in datum.triples}
    cells = [[rs.root_name(bysum[(r, c)]) if (r, c) in bysum else None
              for c in cols] for r in rows]
    return {
        "system": f"{rs.datum.type_label}{rs.rank}",
        "class_node": om.class_node,
        "r_root": rs.root_name(datum.r_root),
        "s_root": rs.root_name(datum.s_root),
        "rows": [rs.root_name(k) for k in rows],
        "cols": [rs.root_name(k) for k in cols],
        "cells": cells,
        "fiber_sizes": list(datum.fiber_sizes),
        "coxeter_number": rs.coxeter_number,
    }


def format_table_text(doc: dict) -> str:
    width = max(len(doc["cols"][0]), 6) + 2
    out = [f"{doc['system']}: triples within the coefficient partition "
           f"(class node {doc['class_node']})"]
    header = " " * width + "".join(c.ljust(width) for c in doc["cols"])
    out.append(header)
    for rname, row in zip(doc["rows"], doc["cells"]):
        cells = "".join((c if c else "-").ljust(width) for c in row)
        out.append(rname.ljust(width) + cells)
    a, b, c = doc["fiber_sizes"]
    out.append(f"fiber sizes: ({a}, {b}, {c}); sum {a + b + c} = Coxeter "
               f"number {doc['coxeter_number']}")
    return "\n".join(out) + "\n"


# -- entry points -------------------------------------------------------


def _emit(payload: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _report_text(report: dict) -> str:
    lines = [f"seed {report['seed']}  status {report['status'].upper()}"]
    for c in report["checks"]:
        verdict = "pass" if c["passed"] else "FAIL"
        lines.append(f"  {c['system']:>4}  {c['name']:<18} {c['mode']:<10} "
                     f"n={c['count']:<8} {verdict}")
        if not c["passed"]:
            lines.append(f"        witness: {json.dumps(c['counterexample'], sort_keys=True)}")
    for name, doc in report["tables"].items():
        lines.append("")
        lines.append(format_table_text(doc).rstrip("\n"))
    return "\n".join(lines) + "\n"


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="weylrep",
        description="verification sweeps for Weyl-group representative combinatorics")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run the configured checks")
    p_sweep.add_argument("--config", help="JSON config file")
    p_sweep.add_argument("--type", dest="type_label")
    p_sweep.add_argument("--rank", type=int)
    p_sweep.add_argument("--seed", type=int)
    p_sweep.add_argument("--budget", type=int)
    p_sweep.add_argument("--format", choices=("json", "text"), default="json")
    p_sweep.add_argument("--out")

    p_table = sub.add_parser("table", help="emit an additive-triple table")
    p_table.add_argument("--type", dest="type_label", required=True)
    p_table.add_argument("--rank", type=int, required=True)
    p_table.add_argument("--node", type=int)
    p_table.add_argument("--format", choices=("json", "text"), default="text")
    p_table.add_argument("--out")

    p_coc = sub.add_parser("cocycle", help="cocycle-formula sweep for one system")
    p_coc.add_argument("--type", dest="type_label", required=True)
    p_coc.add_argument("--rank", type=int, required=True)
    p_coc.add_argument("--seed", type=int, default=DEFAULT_CONFIG["seed"])
    p_coc.add_argument("--samples", type=int, default=DEFAULT_CONFIG["samples"])
    p_coc.add_argument("--budget", type=int, default=DEFAULT_CONFIG["pair_budget"])
    p_coc.add_argument("--dump", action="store_true",
                       help="emit the full (u, v) -> bits table instead of a sweep")
    p_coc.add_argument("--format", choices=("json", "text"), default="json")
    p_coc.add_argument("--out")

    p_fix = sub.add_parser("fixer", help="solvability sweep for one system")
    p_fix.add_argument("--type", dest="type_label", required=True)
    p_fix.add_argument("--rank", type=int, required=True)
    p_fix.add_argument("--lattice", help="restrict to one lattice by name")
    p_fix.add_argument("--q", type=int, action="append")
    p_fix.add_argument("--seed", type=int, default=DEFAULT_CONFIG["seed"])
    p_fix.add_argument("--samples", type=int, default=DEFAULT_CONFIG["lambda_samples"])
    p_fix.add_argument("--format", choices=("json", "text"), default="json")
    p_fix.add_argument("--out")

    p_dump = sub.add_parser("dump-rootsys", help="canonical root-system document")
    p_dump.add_argument("--type", dest="type_label", required=True)
    p_dump.add_argument("--rank", type=int, required=True)
    p_dump.add_argument("--out")

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "sweep":
        overrides = {"seed": args.seed, "budget": args.budget}
        cfg = load_config(args.config, overrides)
        if args.type_label:
            if args.rank is None:
                raise ConfigError("--type requires --rank")
            cfg["systems"] = [{"type": args.type_label, "rank": args.rank}]
        report = run_sweep(cfg)
        validate_report(report)
        payload = _json_dumps(report) if args.format == "json" \
            else _report_text(report)
        _emit(payload, args.out)
        return 0 if report["status"] == "pass" else 1

    if args.command == "table":
        rs = root_system(args.type_label, args.rank)
        doc = emit_table_doc(rs, args.node)
        payload = _json_dumps(doc) if args.format == "json" \
            else format_table_text(doc)
        _emit(payload, args.out)
        return 0

    if args.command == "cocycle":
        if args.dump:
            _emit(_json_dumps(cocycle_table_doc(
                root_system(args.type_label, args.rank), args.budget)),
                args.out)
            return 0
        cfg = load_config(None, {"seed": args.seed, "samples": args.samples,
                                 "pair_budget": args.budget})
        cfg["systems"] = [{"type": args.type_label, "rank": args.rank}]
        cfg["checks"] = {"cocycle": True}
        report = run_sweep(cfg)
        validate_report(report)
        payload = _json_dumps(report) if args.format == "json" \
            else _report_text(report)
        _emit(payload, args.out)
        return 0 if report["status"] == "pass" else 1

    if args.command == "fixer":
        cfg = load_config(None, {"seed": args.seed})
        cfg["systems"] = [{"type": args.type_label, "rank": args.rank}]
        cfg["checks"] = {"fixer": True}
        cfg["lambda_samples"] = args.samples
        if args.lattice:
            cfg["lattices"] = [args.lattice]
        if args.q:
            cfg["qs"] = args.q
        report = run_sweep(cfg)
        validate_report(report)
        payload = _json_dumps(report) if args.format == "json" \
            else _report_text(report)
        _emit(payload, args.out)
        return 0 if report["status"] == "pass" else 1

    if args.command == "dump-rootsys":
        rs = root_system(args.type_label, args.rank)
        _emit(_json_dumps(rootsys_to_json(rs)), args.out)
        return 0

    raise ConfigError(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())

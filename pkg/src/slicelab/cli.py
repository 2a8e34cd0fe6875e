"""``slicelab`` command line: verification suites, rasters and reports."""

from __future__ import annotations

import argparse
import logging
import math
import sys
from datetime import datetime, timezone
from typing import Optional, Sequence

import numpy as np

from . import _config
from .counterexample import (
    WITNESS_PATH,
    BranchFunction,
    classical_residual,
    counterexample_report,
    omega_phi_tilde,
    psi_s_eval,
    branch_closed_forms,
)
from .errors import ConfigParse, IoFailure, OutOfDomain, PremiseFailed
from .geometry import PhiConstant, PhiDistance
from .io import (
    RunConfig,
    dump_json,
    grid_rows,
    load_config,
    parse_extension,
    parse_function,
    parse_path,
    parse_phi,
    parse_slice_set,
    parse_unit,
    write_extend_csv,
    write_grid_csv,
    _num,
)
from .pathslice import lifting_witness_search, path_repformula, path_slice_consistency
from .quaternion import J_UNIT, ImaginaryUnit, orthogonal_unit, random_unit
from .suites import Check, psi_path_battery, run_suites, suite_names

log = logging.getLogger("slicelab")

COMMANDS = ("verify", "grid", "counterexample", "extend", "paths")


def _report(cfg: RunConfig, checks: Sequence[Check], **body) -> dict:
    return {
        "schema": 1,
        "command": cfg.command,
        "seed": cfg.seed,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        **body,
        "checks": [c.record() for c in checks],
        "passed": all(c.passed for c in checks),
    }


# ---------------------------------------------------------------------------
# commands


def cmd_verify(cfg: RunConfig, suite: Optional[str]) -> dict:
    name = suite if suite is not None else cfg.inputs.get("suite")
    names = suite_names(name)
    results = run_suites(names, cfg.seed)
    checks = [c for n in names for c in results[n]]
    rep = _report(cfg, checks, suites={n: [c.record() for c in results[n]] for n in names})
    rep.pop("checks")
    rep["passed"] = all(c.passed for c in checks)
    return rep


def _grid_axis(g: dict, axis: str) -> np.ndarray:
    lo, hi = g.get(axis, [-1.5, 1.5] if axis == "x" else [0.0, 1.5])
    n = g.get(f"n{axis}")
    if n is None:
        raise ConfigParse(f"grid.n{axis}: missing resolution")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ConfigParse(f"grid.n{axis}: expected a positive integer, got {n!r}")
    return np.linspace(_num(lo, f"grid.{axis}[0]"), _num(hi, f"grid.{axis}[1]"), n)


def _units(cfg: RunConfig, rng: np.random.Generator, default_n: int) -> list[ImaginaryUnit]:
    if "units" in cfg.inputs:
        us = cfg.inputs["units"]
        if not isinstance(us, list) or not us:
            raise ConfigParse("units: expected a non-empty list of [ux, uy, uz]")
        return [parse_unit(u, f"units[{k}]") for k, u in enumerate(us)]
    n = cfg.inputs.get("n_units", default_n)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ConfigParse(f"n_units: expected a positive integer, got {n!r}")
    return [random_unit(rng) for _ in range(n)]


def cmd_grid(cfg: RunConfig) -> int:
    if "set" not in cfg.inputs:
        raise ConfigParse("set: missing slice-set descriptor")
    S = parse_slice_set(cfg.inputs["set"], "set")
    g = cfg.inputs.get("grid")
    if not isinstance(g, dict):
        raise ConfigParse("grid: missing grid bounds and resolution")
    xs, ys = _grid_axis(g, "x"), _grid_axis(g, "y")
    units = _units(cfg, np.random.default_rng(cfg.seed), 16)
    return write_grid_csv(cfg.out, grid_rows(S, units, xs, ys))


def _witness_pair(J: ImaginaryUnit) -> tuple[ImaginaryUnit, ImaginaryUnit]:
    """J and a unit K' at distance 0.1 from it."""
    P = orthogonal_unit(J)
    c, s = math.cos(0.1), math.sin(0.1)
    return J, ImaginaryUnit.normalized(c * J.x + s * P.x, c * J.y + s * P.y, c * J.z + s * P.z)


def cmd_counterexample(cfg: RunConfig) -> dict:
    J = parse_unit(cfg.inputs["J"], "J") if "J" in cfg.inputs else J_UNIT
    phi = parse_phi(cfg.inputs.get("phi", {"kind": "distance"}), J, "phi")
    n_units = cfg.inputs.get("n_units", 16)
    n_paths = cfg.inputs.get("n_paths", 10)
    for k, v in (("n_units", n_units), ("n_paths", n_paths)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise ConfigParse(f"{k}: expected a positive integer, got {v!r}")
    path = parse_path(cfg.inputs["path"], "path") if "path" in cfg.inputs else WITNESS_PATH
    rng = np.random.default_rng(cfg.seed)
    distance = isinstance(phi, PhiDistance)

    branch = []
    for s in (0.0, 0.25, 0.75, 1.0):
        B = BranchFunction(J, s)
        for label, z in (("-J", -J), ("J", J), ("J/2+1", J * 0.5 + 1.0)):
            v = psi_s_eval(B, z)
            err = float((v - branch_closed_forms(J, s)[label]).norm())
            branch.append({"s": s, "z": label, "value": v, "error": err})

    units = [orthogonal_unit(J)]
    while len(units) < n_units:
        u = random_unit(rng)
        if not distance or 1.0 < float((u - J).norm()) < 2.0 - 1e-6:
            units.append(u)
    table = []
    for I in units:
        row = {"unit": list(I.vec()), "phi": phi(I), "residual_norm": classical_residual(phi, J, I)}
        if distance:
            rec = counterexample_report(J, [I], phi)[0]
            row["closed_form_agreement"] = rec.agreement
            row["one_minus_IJ"] = float((1.0 - I * J).norm())
        table.append(row)

    paths = psi_path_battery(rng, J, n_paths, phi)

    Jw, Kw = _witness_pair(J)
    S = omega_phi_tilde(phi, J)
    witness = None
    premise = None
    try:
        w = lifting_witness_search(S, path, Jw, Kw, seed=cfg.seed)
        if w is not None:
            witness = {"path": [list(v) for v in path.vertices], "J": list(Jw.vec()), "K": list(Kw.vec()), "I": list(w.unit.vec()), "exit_t": w.exit_t}
    except PremiseFailed as e:
        premise = {"unit": list(e.unit.vec()), "t": e.t}

    checks = [
        Check("branch_values", max(r["error"] for r in branch), 1e-12, "closed-form branch values"),
        Check("path_formula", max((r["residual"] for r in paths), default=math.inf), 1e-9, "path representation formula"),
        Check("path_configs", len(paths), n_paths, "contained path configurations", ">="),
    ]
    if isinstance(phi, PhiConstant):
        checks += [
            Check("classical_residual_max", max(r["residual_norm"] for r in table), 1e-9, "constant phi satisfies the classical formula"),
            Check("witness_count", float(witness is not None), 0, "symmetric branch choice satisfies lifting", "=="),
        ]
    else:
        checks.append(Check("witness_count", float(witness is not None), 1, "lifting property fails", "=="))
        if distance:
            checks += [
                Check("orthogonal_residual", abs(table[0]["residual_norm"] - math.sqrt(2.0)), 1e-12, "residual norm for I orthogonal to J"),
                Check("closed_form_agreement", max(r["closed_form_agreement"] for r in table), 1e-12, "residual = (1 - IJ) Psi_phi(I)(J)"),
            ]
    return _report(
        cfg,
        checks,
        J=list(J.vec()),
        phi=phi.to_json(),
        branch_values=branch,
        classical_residuals=table,
        path_formula=paths,
        witness=witness,
        premise_failure=premise,
    )


def _extend_points(cfg: RunConfig, E) -> list[tuple[ImaginaryUnit, float, float]]:
    pts = cfg.inputs.get("points")
    if pts is not None:
        if not isinstance(pts, list):
            raise ConfigParse("points: expected a list of {unit, x, y}")
        out = []
        for k, p in enumerate(pts):
            w = f"points[{k}]"
            if not isinstance(p, dict) or not {"unit", "x", "y"} <= p.keys():
                raise ConfigParse(f"{w}: expected fields unit, x, y")
            out.append((parse_unit(p["unit"], f"{w}.unit"), _num(p["x"], f"{w}.x"), _num(p["y"], f"{w}.y")))
        return out
    rng = np.random.default_rng(cfg.seed)
    n = cfg.inputs.get("n_points", 100)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ConfigParse(f"n_points: expected a positive integer, got {n!r}")
    out = []
    tries = 0
    while len(out) < n and tries < 1000 * n:
        tries += 1
        u = random_unit(rng)
        x, y = rng.uniform(-2, 2), rng.uniform(0, 2)
        if E.member(u, x, y):
            out.append((u, float(x), float(y)))
    return out


def cmd_extend(cfg: RunConfig) -> int:
    if "data" not in cfg.inputs:
        raise ConfigParse("data: missing holomorphic slice data")
    E = parse_extension(cfg.inputs, "config")
    rows = []
    skipped = 0
    for u, x, y in _extend_points(cfg, E):
        try:
            rows.append((x, y, u, E.at(u, x, y)))
        except OutOfDomain:
            skipped += 1
    if skipped:
        log.warning("%d points outside the extension domain were skipped", skipped)
    return write_extend_csv(cfg.out, rows)


def cmd_paths(cfg: RunConfig) -> dict:
    for k in ("function", "path", "units"):
        if k not in cfg.inputs:
            raise ConfigParse(f"{k}: missing field")
    f = parse_function(cfg.inputs["function"], "function")
    gamma = parse_path(cfg.inputs["path"], "path", allow_lower=True)
    units = _units(cfg, np.random.default_rng(cfg.seed), 0)
    if len(units) < 3:
        raise ConfigParse("units: need at least three units")
    n_path = cfg.inputs.get("n_path", 1024)
    tol = _config.tolerances().check
    cons = path_slice_consistency(f, gamma, units, n_path, tol)
    checks = [Check("consistency_defect", cons.max_defect, tol, "slice regular implies path-slice")]
    body = {
        "function": f.name,
        "path": [list(v) for v in gamma.vertices],
        "units": [list(u.vec()) for u in units],
        "q_gamma": list(cons.q_gamma),
        "defects": list(cons.defects),
    }
    if all(y >= 0 for _, y in gamma.vertices):
        pr = path_repformula(f, gamma, units[2], units[0], units[1], n_path)
        body["path_formula_residual"] = pr.residual
        checks.append(Check("path_formula", pr.residual, tol, "path representation formula"))
    return _report(cfg, checks, **body)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slicelab", description="Slice regular function verification toolkit.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="JSON config file")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--out", help="output path (stdout when omitted)")
        if name == "verify":
            sp.add_argument("--suite", default=None, help="suite name, comma list or 'all'")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="slicelab: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.command, args.seed, args.out)
        with _config.override(**cfg.tolerances):
            if args.command == "verify":
                suite = args.suite
                if suite is None and "suite" not in cfg.inputs:
                    suite = "all"
                rep = cmd_verify(cfg, suite)
            elif args.command == "counterexample":
                rep = cmd_counterexample(cfg)
            elif args.command == "paths":
                rep = cmd_paths(cfg)
            elif args.command == "grid":
                n = cmd_grid(cfg)
                log.info("wrote %d rows", n)
                return 0
            else:
                cmd_extend(cfg)
                return 0
        dump_json(rep, cfg.out)
    except (ConfigParse, IoFailure) as e:
        print(f"slicelab: error: {e}", file=sys.stderr)
        return 2
    return 0 if rep["passed"] else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command line front end.

    moulds run --suite paj --max-length 4
    moulds grt-solve --degree 3
    moulds export paj --max-length 3 --out paj.json
    moulds import paj.json

Exit codes: 0 when every check passes, 1 when any fails, 2 on usage errors.
"""
from __future__ import annotations

import json
import sys
import time
import traceback
from concurrent.futures import ProcessPoolExecutor

import click

from .config import GRT_DEGREE_CAP, SUITE_NAMES, ConfigError, RunConfig

SCHEMA = "moulds-report/1"


def _run_one(config: RunConfig, suite: str, name: str) -> dict:
    from .checks import Context, REGISTRY
    chk = next(c for c in REGISTRY[suite] if c.name == name)
    t0 = time.perf_counter()
    try:
        ok, witness = chk.fn(Context(config, suite, name))
        status = "pass" if ok else "fail"
    except Exception as e:  # a crashing check is a failing check
        status, witness = "fail", {"error": f"{type(e).__name__}: {e}",
                                   "trace": traceback.format_exc(limit=3).splitlines()[-3:]}
    entry = {"suite": suite, "name": name, "anchor": chk.anchor, "status": status,
             "witness": witness if status == "fail" else None}
    entry["wall_time"] = round(time.perf_counter() - t0, 3) if config.timing else None
    return entry


def run(config: RunConfig) -> dict:
    """Execute the configured suites and assemble the report."""
    from .checks import checks_for
    todo = [(c.suite, c.name) for c in checks_for(config.suites)]
    if config.workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as ex:
            futs = [ex.submit(_run_one, config, s, n) for s, n in todo]
            results = [f.result() for f in futs]
    else:
        results = [_run_one(config, s, n) for s, n in todo]
    results.sort(key=lambda r: (r["suite"], r["name"]))
    counts = {k: sum(r["status"] == k for r in results) for k in ("pass", "fail", "skipped")}
    return {"schema": SCHEMA, "config": config.to_json(), "checks": results, "summary": counts,
            "ok": counts["fail"] == 0}


def render_text(report: dict) -> str:
    lines = [f"# {report['schema']} seed={report['config']['seed']} "
             f"L={report['config']['max_length']} N={report['config']['max_degree']} "
             f"gamma={report['config']['gamma']}"]
    for r in report["checks"]:
        t = "" if r["wall_time"] is None else f"  ({r['wall_time']:.2f}s)"
        lines.append(f"{r['status'].upper():5} {r['suite']}/{r['name']}{t}")
        if r["status"] == "fail":
            lines.append(f"      {json.dumps(r['witness'], ensure_ascii=False, sort_keys=True)}")
    s = report["summary"]
    lines.append(f"{s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped")
    return "\n".join(lines) + "\n"


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _config(**kw) -> RunConfig:
    try:
        return RunConfig(**kw)
    except ConfigError as e:
        raise click.UsageError(str(e)) from None


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact verification of mould identities, pentagon and balance conditions."""


@main.command("run")
@click.option("--max-length", "-L", type=int, default=4, show_default=True)
@click.option("--max-degree", "-N", type=int, default=6, show_default=True)
@click.option("--gamma", default="trivial", show_default=True, help="trivial, z2, z3, ...")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--suite", "suites", multiple=True, type=click.Choice(SUITE_NAMES), default=("all",),
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json", show_default=True)
@click.option("--strict", is_flag=True, help="treat skipped checks as failures")
@click.option("--timing", is_flag=True, help="record wall times (reports are then not byte-stable)")
def run_cmd(max_length, max_degree, gamma, seed, suites, out, fmt, strict, timing):
    """Run verification suites and write a report."""
    cfg = _config(max_length=max_length, max_degree=max_degree, gamma=gamma, seed=seed,
                  suites=tuple(suites), output=out, format=fmt, strict=strict, timing=timing)
    report = run(cfg)
    _emit(render_json(report) if fmt == "json" else render_text(report), out)
    failed = report["summary"]["fail"] + (report["summary"]["skipped"] if strict else 0)
    sys.exit(1 if failed else 0)


@main.command("grt-solve")
@click.option("--degree", "-d", type=int, default=3, show_default=True)
@click.option("--cap", type=int, default=GRT_DEGREE_CAP, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--cross-check/--no-cross-check", default=True, show_default=True,
              help="feed the representative to the dmr and bal checks")
def grt_solve_cmd(degree, cap, out, cross_check):
    """Solve the linearised pentagon degree by degree up to DEGREE."""
    from .bal import solve_balancing_constant
    from .braid import grt_solve
    from .ncseries import NCSeries, iota0, is_dmr, is_dmr0, ma
    if degree < 0:
        raise click.UsageError("--degree must be non-negative")
    if degree > min(cap, GRT_DEGREE_CAP):
        raise click.UsageError(f"degree {degree} exceeds the cap {min(cap, GRT_DEGREE_CAP)}")
    rows, ok = [], True
    for d in range(1, degree + 1):
        sol = grt_solve(d)
        row = {"degree": d, "dimension": sol.dim, "consistent": sol.consistent,
               "representative": None}
        if sol.dim:
            sigma = sol.kernel[0]
            row["representative"] = sigma.to_json()
            if cross_check:
                phi = NCSeries.one(sigma.gamma, d) + sigma
                row["dmr_iota0"] = is_dmr(iota0(phi))
                row["dmr0_iota0"] = is_dmr0(iota0(phi))
                row["balanced"] = solve_balancing_constant(ma(phi)).ok
                # DMR0 also asks <phi|f1 f0> = 0, which the degree-2 direction breaks
                normalized = sigma.coeff((1, 0)) == 0
                ok = ok and row["dmr_iota0"] and row["dmr0_iota0"] == normalized and row["balanced"]
        rows.append(row)
    report = {"schema": SCHEMA, "command": "grt-solve", "degrees": rows, "ok": ok}
    _emit(render_json(report), out)
    sys.exit(0 if ok else 1)


_EXPORTABLE = ("paj", "pic", "minus-paj", "grt")


@main.command("export")
@click.argument("what", type=click.Choice(_EXPORTABLE))
@click.option("--max-length", "-L", type=int, default=3, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def export_cmd(what, max_length, out):
    """Write a named mould (or the degree-3 pentagon solution) as JSON."""
    from .mould import minus, paj, pic
    if what == "grt":
        from .braid import grt_representative
        obj = {"kind": "ncseries", **grt_representative(3, max(3, max_length)).to_json()}
    else:
        M = {"paj": paj, "pic": pic, "minus-paj": lambda L: minus(paj(L))}[what](max_length)
        obj = {"kind": "mould", **M.to_json()}
    _emit(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n", out)


def load(obj: dict, strict: bool = False):
    """Mould, PolyMould or NCSeries from its JSON encoding."""
    from .mould import Mould, PolyMould
    from .ncseries import NCSeries
    kind = obj.get("kind")
    if kind == "ncseries" or (kind is None and "terms" in obj and "max_degree" in obj):
        return NCSeries.from_json(obj)
    if kind == "polymould" or "gammas" in obj:
        return PolyMould.from_json(obj, strict=strict)
    return Mould.from_json(obj, strict=strict)


@main.command("import")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--strict", is_flag=True, help="reject unreduced rationals")
def import_cmd(path, strict):
    """Validate a JSON mould or series file and print its canonical form."""
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
        value = load(obj, strict=strict)
    except (ValueError, KeyError, TypeError, ArithmeticError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    enc = value.to_json()
    if "kind" in obj:
        enc = {"kind": obj["kind"], **enc}
    click.echo(json.dumps(enc, indent=2, sort_keys=True, ensure_ascii=False))


if __name__ == "__main__":
    main()

"""Command-line front end.

    python3 -m obstruct <command> [flags]

Every command builds a job (``{"command", "ctx", "inputs", "seed", "budgets"}``),
runs it and prints a JSON report ``{"schema_version", "status", "certificate",
"diagnostics", "replay"}``.  A job file given with ``--json`` replaces the
flags.  Exit codes: 0 ok, 1 invalid (a mathematical failure), 2 usage or
resource error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import certs
from .arith import LocalCtx, RingCtx
from .errors import (BudgetExhausted, MathError, ObstructError,
                     PolySyntaxError, ResourceBudgetExceeded, UnknownSuite, UnknownVariable)
from .groebner import Budget, Ideal, budget_scope

SCHEMA_VERSION = certs.SCHEMA_VERSION
EXIT = {"ok": 0, "invalid": 1, "error": 2}
ORIENT_ACTIONS = ("validate", "lift", "star", "sum", "diff", "move", "combine")


class UsageError(ObstructError):
    pass


def _report(status, certificate=None, diagnostics=None, replay=None) -> dict:
    return {"schema_version": SCHEMA_VERSION, "status": status, "certificate": certificate,
            "diagnostics": diagnostics or [], "replay": replay}


def _point(inputs, key, ctx, variant=None):
    d = inputs[key]
    from .quadric import QuadricPoint, check_point

    if isinstance(d, dict):
        coords = [d["s"], *d["f"], *d["g"]]
        variant = d.get("variant", variant or "Q")
    else:
        coords = list(d)
        variant = inputs.get("variant", variant or "Q")
    n = (len(coords) - 1) // 2
    return check_point([str(c) for c in coords], variant, n, ctx)


def _orientation(d, ctx):
    from .orientation import orientation_from_json

    return orientation_from_json(d, ctx)


# command handlers: (ctx, inputs, seed) -> (certificate, diagnostics) ------------


def _cmd_check_point(ctx, inputs, seed):
    v = _point(inputs, "point", ctx)
    return certs.point_to_cert(v), [f"point {v} lies on {v.variant}"]


def _cmd_reduce(ctx, inputs, seed):
    from .reduction import reduce_to_base

    u = _point(inputs, "point", ctx, "Qprime")
    lctx = None
    if "local_point" in inputs:
        lctx = LocalCtx(ctx, tuple(ctx.coerce(x) for x in inputs["local_point"]))
    rc = reduce_to_base(u, lctx)
    return certs.reduction_to_cert(rc), [f"word length {len(rc.word)}", *rc.steps]


def _cmd_gamma(ctx, inputs, seed):
    from .quadric import gamma

    v = gamma(_point(inputs, "point", ctx))
    return certs.point_to_cert(v), [f"Gamma(v) = {v}"]


def _chain_ctx(ctx):
    from .homotopy import homotopy_ctx

    return homotopy_ctx(ctx, ctx.homotopy_var or "T")


def _cmd_chain(ctx, inputs, seed):
    from .homotopy import base_point_chain
    from .quadric import one_point, zero_point

    n = int(inputs.get("n", 2))
    c = base_point_chain(n, ctx)
    return _verified_chain(c, zero_point(n, c.ctx), one_point(n, c.ctx))


def _verified_chain(c, start, end):
    from .homotopy import verify_chain

    cert = verify_chain(c, start, end)
    return certs.chain_to_cert(c, start, end), [f"{len(c)} homotopies, {len(cert.junctions)} junctions"]


def _cmd_chain_verify(ctx, inputs, seed):
    from .homotopy import Chain, Homotopy

    if "base_point_chain" in inputs:
        return _cmd_chain(ctx, {"n": inputs["base_point_chain"]}, seed)
    ctxT = _chain_ctx(ctx)
    variant = inputs.get("variant", "Q")
    hs = [Homotopy(_point({"p": h}, "p", ctxT, variant)) for h in inputs["homotopies"]]
    start = _point(inputs, "start", ctxT, variant)
    end = _point(inputs, "end", ctxT, variant)
    return _verified_chain(Chain(hs), start, end)


def _cmd_translate(ctx, inputs, seed):
    from .homotopy import TranslationFamily, verify_translation
    from .orthogonal import word_from_json

    ctxT = _chain_ctx(ctx)
    u = _point(inputs, "point", ctxT, "Qprime")
    word = word_from_json(inputs["word"], u.n, ctxT)
    fam = TranslationFamily(word, u.n, ctxT)
    H, _ = verify_translation(fam, u)
    return certs.translation_to_cert([fam], u, H), [f"H(T) = {H}"]


def _cmd_orient(ctx, inputs, seed, action):
    from . import orientation as ori

    if action == "validate":
        o = _orientation(inputs["orientation"], ctx)
        return certs.orientation_to_cert(o), [f"valid orientation {o}"]
    if action == "lift":
        w = ori.lift_orientation(_orientation(inputs["orientation"], ctx))
        return certs.lift_to_cert(w), [f"lift {w.point}"]
    if action in ("star", "sum"):
        a, b = _orientation(inputs["left"], ctx), _orientation(inputs["right"], ctx)
        sr = ori.star_product(a, b) if action == "star" else ori.pseudo_sum(a, b)
        return certs.sumrep_to_cert(sr), [f"row {', '.join(map(str, sr.f))}"]
    if action == "diff":
        a, b = _orientation(inputs["left"], ctx), _orientation(inputs["right"], ctx)
        sr = ori.pseudo_difference(a, b, seed=seed)
        return certs.sumrep_to_cert(sr), [f"moved witness {sr.provenance['witness']}",
                                          f"row {', '.join(map(str, sr.f))}"]
    if action == "move":
        o = _orientation(inputs["orientation"], ctx)
        K = Ideal([ctx.parse(g) for g in inputs["K"]], ctx)
        mv = ori.move_orientation(o, K, seed=seed)
        return certs.lift_to_cert(mv.witness), [f"attempt {mv.attempt}", f"height(J) = {mv.height}",
                                               f"witness {mv.witness.point}"]
    if action == "combine":
        from .homotopy import Homotopy, base_ctx

        ctxT = _chain_ctx(ctx)
        base = base_ctx(ctxT)
        H = Homotopy(_point(inputs, "homotopy", ctxT, "Q"))
        J = Ideal([base.parse(g) for g in inputs["J"]], base)
        wJ = _orientation(inputs["wJ"], base)
        lams = [ctxT.parse(str(x)) for x in inputs.get("lambdas", ["0"] * H.n)]
        res = ori.combine_homotopy(H, J, wJ, lams)
        return certs.combine_to_cert(H, J, wJ, res), [
            f"combined homotopy on {res.homotopy.point.variant}, "
            f"{len(res.endpoints)} endpoints matched to star products"]
    raise UsageError(f"unknown orient action {action!r}")


HANDLERS = {
    "check-point": _cmd_check_point,
    "reduce": _cmd_reduce,
    "gamma": _cmd_gamma,
    "chain": _cmd_chain,
    "chain-verify": _cmd_chain_verify,
    "translate": _cmd_translate,
}


def _resolve_seed(job):
    seed = job.get("seed")
    if seed is None:
        seed = random.SystemRandom().randrange(2 ** 31)
    return int(seed)


def run_job(job: dict) -> dict:
    """Run one job and return a report; never raises for mathematical failures."""
    job = dict(job)
    command = job.get("command")
    try:
        seed = _resolve_seed(job)
        replay = dict(job, seed=seed)
        budgets = job.get("budgets") or {}
        budget = Budget(int(budgets.get("pairs", Budget.max_pairs)),
                        int(budgets.get("degree", Budget.max_degree)))
        inputs = job.get("inputs") or {}
        if command == "suite":
            return _run_suite_job(inputs, seed, replay)
        if command == "verify":
            return _verify_job(inputs, replay)
        ctx = RingCtx.from_json(job.get("ctx") or {})
        with budget_scope(budget):
            if command == "orient":
                action = job.get("action") or inputs.get("action")
                if action not in ORIENT_ACTIONS:
                    raise UsageError(f"orient needs an action among {ORIENT_ACTIONS}")
                cert, diag = _cmd_orient(ctx, inputs, seed, action)
            elif command in HANDLERS:
                cert, diag = HANDLERS[command](ctx, inputs, seed)
            else:
                raise UsageError(f"unknown command {command!r}")
        ok, why = certs.check(cert)
        if not ok:
            return _report("invalid", cert, [f"independent check failed: {why}"], replay)
        return _report("ok", cert, diag, replay)
    except (UsageError, PolySyntaxError, UnknownVariable, UnknownSuite, ResourceBudgetExceeded,
            BudgetExhausted, KeyError, OSError) as exc:
        return _report("error", None, [f"{type(exc).__name__}: {exc}"], job)
    except (MathError, ValueError) as exc:
        return _report("invalid", None, [f"{type(exc).__name__}: {exc}"], job)
    except ObstructError as exc:
        return _report("invalid", None, [f"{type(exc).__name__}: {exc}"], job)


def _run_suite_job(inputs, seed, replay):
    from .suites import SUITES, run_suite

    name = inputs.get("name")
    names = list(SUITES) if name == "all" else [name]
    results = [run_suite(nm, seed) for nm in names]
    summary = {"suites": [r.to_json() for r in results],
               "passed": sum(r.passed for r in results), "total": len(results)}
    status = "ok" if all(r.passed for r in results) else "invalid"
    return _report(status, summary, [r.line() for r in results], replay)


def _verify_job(inputs, replay):
    cert = inputs.get("certificate")
    if cert is None:
        raise UsageError("verify needs a certificate")
    ok, why = certs.check(cert)
    if ok:
        return _report("ok", cert, [f"{cert.get('kind')} certificate verified"], replay)
    return _report("invalid", cert, [f"first failing check: {why}"], replay)


# argument parsing ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q or fp:<p>")
    common.add_argument("--vars", default="", help="comma separated variable names")
    common.add_argument("--order", default="degrevlex")
    common.add_argument("--seed", type=int)
    common.add_argument("--budget-pairs", type=int)
    common.add_argument("--budget-degree", type=int)
    common.add_argument("--json", dest="job_file", help="job file (replaces the other flags)")
    common.add_argument("--out", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="obstruct", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def point_args(sp, what="point"):
        sp.add_argument(f"--{what}", help="coordinates 's; f1,..; g1,..' or comma separated")

    sp = sub.add_parser("check-point", parents=[common])
    point_args(sp)
    sp.add_argument("--variant", default="Q", choices=["Q", "Qprime"])
    sp = sub.add_parser("reduce", parents=[common])
    point_args(sp)
    sp.add_argument("--local-point", help="comma separated point to localize at")
    sp = sub.add_parser("gamma", parents=[common])
    point_args(sp)
    sp = sub.add_parser("chain", parents=[common])
    sp.add_argument("-n", type=int, default=2)
    sub.add_parser("chain-verify", parents=[common])
    sp = sub.add_parser("translate", parents=[common])
    point_args(sp)
    sp = sub.add_parser("orient", parents=[common])
    sp.add_argument("action", choices=ORIENT_ACTIONS)
    sp.add_argument("--ideal", help="generators of I (comma separated)")
    sp.add_argument("--row", help="row f (comma separated)")
    sp.add_argument("--K", dest="K", help="generators of K for move (comma separated)")
    sp.add_argument("--left", help="'ideal | row' of the left orientation for star/sum/diff")
    sp.add_argument("--right", help="'ideal | row' of the right orientation")
    sp = sub.add_parser("suite", parents=[common])
    sp.add_argument("name")
    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("certificate", nargs="?", help="certificate or report JSON file")
    return p


def _split(text):
    return [t.strip() for t in text.replace(";", ",").split(",") if t.strip()]


def job_from_args(args) -> dict:
    if args.job_file:
        with open(args.job_file, encoding="utf-8") as fh:
            job = json.load(fh)
        if args.command == "verify" and "command" not in job:
            job = {"command": "verify", "inputs": {"certificate": job.get("certificate", job)}}
        return job
    job = {"command": args.command,
           "ctx": {"field": args.field, "vars": _split(args.vars), "order": args.order},
           "inputs": {}}
    if args.seed is not None:
        job["seed"] = args.seed
    budgets = {}
    if args.budget_pairs is not None:
        budgets["pairs"] = args.budget_pairs
    if args.budget_degree is not None:
        budgets["degree"] = args.budget_degree
    if budgets:
        job["budgets"] = budgets
    inputs = job["inputs"]
    if getattr(args, "point", None):
        inputs["point"] = _split(args.point)
    if args.command == "check-point":
        inputs["variant"] = args.variant
    if args.command == "reduce" and args.local_point:
        inputs["local_point"] = _split(args.local_point)
    if args.command == "chain":
        inputs["n"] = args.n
    if args.command == "orient":
        job["action"] = args.action
        if args.ideal and args.row:
            inputs["orientation"] = {"ideal": _split(args.ideal), "row": _split(args.row)}
        if args.K:
            inputs["K"] = _split(args.K)
        for side in ("left", "right"):
            text = getattr(args, side)
            if text:
                ideal, _, row = text.partition("|")
                inputs[side] = {"ideal": _split(ideal), "row": _split(row)}
    if args.command == "suite":
        inputs["name"] = args.name
    if args.command == "verify":
        if not args.certificate:
            raise UsageError("verify needs a certificate file")
        with open(args.certificate, encoding="utf-8") as fh:
            data = json.load(fh)
        inputs["certificate"] = data.get("certificate", data) if "status" in data else data
    return job


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        job = job_from_args(args)
    except (UsageError, OSError, json.JSONDecodeError) as exc:
        report = _report("error", None, [f"{type(exc).__name__}: {exc}"], None)
    else:
        report = run_job(job)
    text = certs.dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT[report["status"]]


if __name__ == "__main__":
    sys.exit(main())

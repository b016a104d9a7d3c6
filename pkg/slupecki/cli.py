"""
Command-line front end.

Exit codes: 0 result computed, 2 inconclusive (budget), 1 usage or input error.
"""

import argparse
import csv
import io
import logging
import os
import sys

import numpy as np

from . import __app_name__, __version__
from .budget import Budget
from .config import load_config, resolve_threads
from .errors import BudgetExhausted, SlupeckiError
from .families import build_family, poset_suspension, suspension
from .fileio import (read_digraph, read_op, write_digraph, write_hom_sidecar, write_op)
from .gadgets import GadgetSpec, builtin_gadget, direct_theta_check, verify_uniform_gadget
from .hom import enumerate_homs, hom_digraph, identity_status, validate_pins
from .logging_setup import cleanup_old_logs, log_callback_for, setup_logger
from .operations import Relation, classify, is_polymorphism, preserves_relation, slupecki_relation
from .ordinal import (OrdinalSumPoset, binary_witness, bmk, bmk_table, check_witness_claims,
                      claims_pass, ternary_witness)
from .polymorphisms import embedding_condition, k_idempotent_trivial, k_slupecki
from .report import Report
from .topology import is_intransitive, simplices, triangulates_1_sphere

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """Raise instead of exiting so that usage errors map to exit code 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


class Context:
    """Settings shared by every subcommand"""

    def __init__(self, args, argv):
        self.args = args
        self.argv = argv
        self.config, self.config_path = load_config(path=args.config)
        if args.seed is not None:
            self.config["seed"] = args.seed
        if args.threads is not None:
            self.config["threads"] = args.threads
        level = (args.log_level or self.config["log_level"]).upper()
        to_file = self.config["log_to_file"] and not args.no_log_file
        self.logger = setup_logger("slupecki", prefix="slupecki", level=level, to_file=to_file)
        if to_file:
            cleanup_old_logs(days_to_keep=self.config["log_days_to_keep"])
        self.log_callback = log_callback_for(self.logger)
        self.threads = resolve_threads(self.config)
        self.canonical = bool(self.config["deterministic"]) and self.threads == 1
        if args.budget_nodes is not None:
            self.config["budget_nodes"] = args.budget_nodes
        if args.timeout is not None:
            self.config["timeout_s"] = args.timeout
        self.budget = Budget.from_config(self.config)
        self.rng = np.random.default_rng(self.config["seed"])

    def preservation(self, f, relation):
        """preserves_relation with the configured sampling settings"""
        result = preserves_relation(f, relation, self.budget,
                                    exhaustive_limit=self.config["theta_exhaustive_limit"],
                                    samples=self.config["theta_samples"], rng=self.rng,
                                    log_callback=self.log_callback)
        columns = result.counterexample
        return {"holds": result.holds, "mode": result.mode,
                "counterexample": [list(c) for c in columns] if columns else None}

    def emit(self, report):
        print(report.to_json() if self.args.json else report.to_text())

    def report(self, payload, inputs=(), stats=None):
        report = Report.for_inputs(self.argv, payload, inputs, stats=stats,
                                   deterministic=self.canonical)
        self.emit(report)
        return report


def _digraph_payload(g):
    return {"n": g.n, "arc_count": g.arc_count, "arcs": [list(a) for a in g.arcs() if a[0] != a[1]]}


def cmd_family(ctx):
    args = ctx.args
    if args.name in ("suspension", "poset-suspension"):
        if not args.input:
            raise UsageError(f"{args.name} needs -i <digraph.dg>")
        base = read_digraph(args.input)
        g = suspension(base) if args.name == "suspension" else poset_suspension(base)
    else:
        g = build_family(args.name, args.params)
    if args.output:
        write_digraph(g, args.output)
        ctx.logger.info(f"[IO] wrote {args.output}")
    ctx.report({"family": args.name, "params": args.params, **_digraph_payload(g)}, [args.input])
    return EXIT_OK


def cmd_check(ctx):
    args = ctx.args
    g = read_digraph(args.input)
    decide = k_slupecki if args.property == "slupecki" else k_idempotent_trivial
    verdict = decide(g, args.k, ctx.budget, threads=ctx.threads, canonical=ctx.canonical,
                     log_callback=ctx.log_callback)
    payload = verdict.to_dict()
    if verdict.witness is not None:
        if args.witness_out:
            write_op(verdict.witness, args.witness_out)
            ctx.logger.info(f"[IO] witness written to {args.witness_out}")
        if args.embedding and verdict.witness.is_surjective():
            condition = embedding_condition(g, verdict.witness, ctx.budget)
            payload["embedding"] = list(condition.embedding) if condition.embedding else None
            payload["embedding_holds"] = condition.holds
    ctx.report(payload, [args.input], verdict.stats.to_dict())
    return EXIT_OK if verdict.holds is not None else EXIT_INCONCLUSIVE


def _parse_pins(pairs):
    pins = {}
    for pair in pairs or []:
        try:
            v, w = pair.split("=")
            pins[int(v)] = int(w)
        except ValueError:
            raise UsageError(f"bad pin {pair!r}; expected v=w")
    return pins


def cmd_hom(ctx):
    args = ctx.args
    source = read_digraph(args.input)
    target = read_digraph(args.target) if args.target else source
    inputs = [args.input, args.target]
    if args.action == "identity":
        status = identity_status(source, ctx.budget, ctx.log_callback)
        ctx.report(status.to_dict(), inputs)
        return EXIT_OK
    if args.action == "graph":
        hd = hom_digraph(source, target, ctx.budget, ctx.log_callback)
        payload = {"homs": len(hd.homs), "arc_count": hd.digraph.arc_count}
        if args.output:
            write_digraph(hd.digraph, args.output)
            payload["sidecar"] = write_hom_sidecar(hd, args.output)
        ctx.report(payload, inputs)
        return EXIT_OK
    pins = validate_pins(_parse_pins(args.pin), source, target)
    tables = []

    def visit(table):
        if args.action == "list":
            tables.append(list(table))
            if args.limit and len(tables) >= args.limit:
                return False
        return True

    stats = enumerate_homs(source, target, pins, visit, ctx.budget,
                           deterministic=True, log_callback=ctx.log_callback)
    payload = {"count": stats.solutions, "complete": stats.complete and not stats.stopped_early}
    if args.action == "list":
        payload["homs"] = tables
    ctx.report(payload, inputs, stats.to_dict())
    return EXIT_OK if stats.complete else EXIT_INCONCLUSIVE


def _gadget_from_args(ctx):
    args = ctx.args
    g = read_digraph(args.input)
    if args.action == "builtin":
        gadget = builtin_gadget(args.family, args.param, g=g, budget=ctx.budget)
        return g, gadget, [args.input]
    if not (args.gadget and args.pins is not None and args.u is not None):
        raise UsageError("gadget verify needs --gadget, --pins and --u")
    k = read_digraph(args.gadget)
    pins = tuple(int(p) for p in args.pins.split(",") if p.strip())
    return g, GadgetSpec(k, pins, args.u, os.path.basename(args.gadget)), [args.input, args.gadget]


def cmd_gadget(ctx):
    args = ctx.args
    g, gadget, inputs = _gadget_from_args(ctx)
    cert = verify_uniform_gadget(g, gadget, ctx.budget, os.path.basename(args.input),
                                 ctx.log_callback)
    payload = cert.to_dict()
    if args.direct:
        payload["direct_theta_check"] = direct_theta_check(g, gadget, ctx.budget)
    ctx.report(payload, inputs, cert.stats.to_dict())
    return EXIT_OK if cert.complete else EXIT_INCONCLUSIVE


def cmd_bmk(ctx):
    args = ctx.args
    if args.table:
        rows = bmk_table(*args.table)
        if args.csv:
            out = io.StringIO()
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(["m", "k", "B"])
            writer.writerows(rows)
            sys.stdout.write(out.getvalue())
            return EXIT_OK
        ctx.report({"table": rows})
        return EXIT_OK
    if args.m is None or args.k is None:
        raise UsageError("bmk needs <m> <k> or --table M K")
    result = bmk(args.m, args.k)
    if not args.json and not args.argmax:
        print(result.value)
        return EXIT_OK
    payload = result.to_dict()
    if not args.argmax:
        payload.pop("argmax")
    ctx.report(payload)
    return EXIT_OK


def cmd_witness(ctx):
    args = ctx.args
    build = ternary_witness if args.kind == "ternary" else binary_witness
    f = build(args.m, args.n, args.k)
    p = OrdinalSumPoset(args.m, args.n, args.k)
    payload = {"kind": args.kind, "m": args.m, "n": args.n, "k": args.k,
               "classification": classify(f).to_dict()}
    if args.output:
        write_op(f, args.output)
        ctx.logger.info(f"[IO] witness written to {args.output}")
    if args.verify:
        payload["polymorphism"] = is_polymorphism(p.digraph, f)
        if f.k == 2:
            claims = check_witness_claims(p, f)
            payload["claims"] = {name: r.to_dict() for name, r in claims.items()}
            payload["claims_pass"] = claims_pass(claims)
    ctx.report(payload)
    return EXIT_OK


def cmd_topo(ctx):
    args = ctx.args
    g = read_digraph(args.input)
    complex_ = simplices(g, args.max_dim)
    payload = complex_.to_dict()
    payload["intransitive"] = is_intransitive(g)
    payload["triangulates_1_sphere"] = triangulates_1_sphere(g)
    ctx.logger.debug(f"[TOPO] {payload['counts']}")
    ctx.report(payload, [args.input])
    return EXIT_OK


def cmd_verify(ctx):
    args = ctx.args
    g = read_digraph(args.input)
    f = read_op(args.op)
    payload = classify(f).to_dict()
    payload["polymorphism"] = is_polymorphism(g, f)
    relations = {"theta": lambda: slupecki_relation(f.n),
                 "arcs": lambda: Relation(g.n, 2, frozenset(g.arcs()))}
    inconclusive = False
    for name in args.relation or []:
        result = ctx.preservation(f, relations[name]())
        payload[f"preserves_{name}"] = result
        inconclusive = inconclusive or result["holds"] is None
    ctx.report(payload, [args.input, args.op])
    return EXIT_INCONCLUSIVE if inconclusive else EXIT_OK


def build_parser():
    common = ArgumentParser(add_help=False)
    common.add_argument("--config", help="config file (default: ~/Slupecki/config.json)")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    common.add_argument("--no-log-file", action="store_true", help="log to stderr only")
    common.add_argument("--threads", type=int, help="worker processes; 0 = one per core")
    common.add_argument("--seed", type=int)
    common.add_argument("--budget-nodes", type=int)
    common.add_argument("--timeout", type=float, help="seconds")
    common.add_argument("--json", action="store_true", help="print the JSON report")

    parser = ArgumentParser(prog="slupecki", description=f"{__app_name__} {__version__}")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    p = sub.add_parser("family", parents=[common], help="build a named digraph")
    p.add_argument("name")
    p.add_argument("params", nargs="*")
    p.add_argument("-i", "--input")
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_family)

    p = sub.add_parser("check", parents=[common], help="decide k-Slupecki / k-idempotent-trivial")
    p.add_argument("property", choices=["slupecki", "idtrivial"])
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--witness-out")
    p.add_argument("--embedding", action="store_true", help="also test the embedding condition")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("hom", parents=[common], help="homomorphisms and the Hom-digraph")
    p.add_argument("action", choices=["count", "list", "graph", "identity"])
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--target")
    p.add_argument("--pin", action="append", help="v=w, repeatable")
    p.add_argument("--limit", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_hom)

    p = sub.add_parser("gadget", parents=[common], help="verify a uniform gadget")
    p.add_argument("action", choices=["verify", "builtin"])
    p.add_argument("family", nargs="?")
    p.add_argument("param", nargs="?")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--gadget")
    p.add_argument("--pins")
    p.add_argument("--u", type=int)
    p.add_argument("--direct", action="store_true", help="also run the direct theta check")
    p.set_defaults(handler=cmd_gadget)

    p = sub.add_parser("bmk", parents=[common], help="the bound B(m,k)")
    p.add_argument("m", type=int, nargs="?")
    p.add_argument("k", type=int, nargs="?")
    p.add_argument("--argmax", action="store_true")
    p.add_argument("--table", type=int, nargs=2, metavar=("M_MAX", "K_MAX"))
    p.add_argument("--csv", action="store_true")
    p.set_defaults(handler=cmd_bmk)

    p = sub.add_parser("witness", parents=[common], help="counterexample polymorphisms of m⊕n⊕k")
    p.add_argument("kind", choices=["ternary", "binary"])
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("-o", "--output")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(handler=cmd_witness)

    p = sub.add_parser("topo", parents=[common], help="simplicial complex summary")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--max-dim", type=int)
    p.set_defaults(handler=cmd_topo)

    p = sub.add_parser("verify", parents=[common], help="classify an operation table")
    p.add_argument("what", choices=["op"])
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--op", required=True)
    p.add_argument("--relation", action="append", choices=["theta", "arcs"],
                   help="also check that the table preserves this relation, repeatable")
    p.set_defaults(handler=cmd_verify)

    return parser


def run(argv=None):
    """Parse argv, dispatch, and return the exit code"""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "gadget" and args.action == "builtin" and not args.family:
            raise UsageError("gadget builtin needs a family name")
        ctx = Context(args, argv)
        return args.handler(ctx)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_OK
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_ERROR
    except BudgetExhausted as e:
        print(f"[!] inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (SlupeckiError, OSError) as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        logging.getLogger("slupecki").debug("command failed", exc_info=True)
        return EXIT_ERROR

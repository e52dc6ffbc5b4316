"""Command-line entry point: analyze, gen, find, verify and lemma.

Exit codes: 0 success, 1 not found or invalid certificate, 2 hypothesis
not met, 3 usage error, 4 budget exhausted.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from .certify import (SubdivisionCertificate, brute_force_induced, parse_certificate,
                      verify_induced_subdivision, verify_subdivision)
from .connectivity import connected_good, vertex_connectivity
from .errors import (AttemptsExhausted, BudgetExhausted, EarlySuccess, HypothesisNotMet,
                     IndsubError, InvalidInput, NotFound, ParseError, RoundsExhausted,
                     TrialsExhausted)
from .generators import gen_named, gen_planted, gen_regular_high_girth
from .graph import Graph, degeneracy_ordering, dump_graph, girth, load_graph
from .pipeline import (PipelineReport, lemma_largesub, lemma_maxdegree, lemma_unbalanced,
                       theorem_main)
from .probabilistic import RandomSource
from .profile import ConstantsProfile
from .subdivision import find_subdivision

OK, NOT_FOUND, HYPOTHESIS, USAGE, BUDGET = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


# --------------------------------------------------------------------------
# inputs


def read_graph(spec: str) -> Graph:
    """A graph file, or a named graph when no such file exists."""
    if os.path.exists(spec):
        with open(spec) as fh:
            return load_graph(fh.read())
    try:
        return gen_named(spec)
    except InvalidInput:
        raise UsageError(f"{spec!r} is neither a readable file nor a known graph name") from None


def read_roles(path: Optional[str]) -> dict[str, set[int]]:
    roles = {}
    if not path:
        return roles
    with open(path) as fh:
        for line in fh:
            if line.startswith("role "):
                head, _, body = line[5:].partition(":")
                roles[head.strip()] = {int(t) for t in body.split()}
    return roles


def parse_set(text: Optional[str], roles: dict, flag: str) -> set[int]:
    """Comma-separated ids, or ``role:NAME`` looked up in the roles file."""
    if text is None:
        raise UsageError(f"{flag} is required for this lemma")
    if text.startswith("role:"):
        name = text[5:]
        if name not in roles:
            raise UsageError(f"role {name!r} not found (pass --roles FILE)")
        return set(roles[name])
    try:
        return {int(t) for t in text.split(",") if t.strip()}
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated ids or role:NAME") from None


def parse_params(items) -> dict:
    out = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"expected key=value, got {item!r}")
        for cast in (int, float):
            try:
                val = cast(val)
                break
            except ValueError:
                continue
        if val in ("true", "false"):
            val = val == "true"
        out[key] = val
    return out


def make_profile(args) -> ConstantsProfile:
    if args.profile == "paper":
        prof = ConstantsProfile.paper()
    else:
        prof = ConstantsProfile.relaxed(scale=args.scale) if args.scale else ConstantsProfile.relaxed()
    over = parse_params(args.set)
    return prof.with_overrides(**over) if over else prof


def need_seed(args) -> int:
    if args.seed is None:
        raise UsageError("--seed is required for randomized commands")
    return args.seed


def header(args) -> str:
    """Comment block echoing the run configuration."""
    keys = [k for k in sorted(vars(args)) if k not in ("func",)]
    return "".join(f"# {k}={getattr(args, k)}\n" for k in keys)


def write_artifact(path: str, body: str, args) -> None:
    with open(path, "w") as fh:
        fh.write(header(args))
        fh.write(body)
    _log(f"wrote {path}")


def emit_certificate(cert: SubdivisionCertificate, args) -> None:
    if args.out:
        write_artifact(args.out, cert.to_text(), args)
    else:
        sys.stdout.write(cert.to_text())


def emit_report(report: PipelineReport, args) -> None:
    if getattr(args, "report", None):
        write_artifact(args.report, report.to_text(), args)
    else:
        for line in report.lines:
            _log(line)


# --------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    g = read_graph(args.graph)
    gi = girth(g)
    kappa = vertex_connectivity(g) if g.n else 0
    print(f"n={g.n} m={g.m} girth={'inf' if gi is None else gi} "
          f"degeneracy={degeneracy_ordering(g).degeneracy} connectivity={kappa}")
    return OK


def cmd_gen(args) -> int:
    fam = args.family
    params = parse_params(args.param)
    roles, manifest = {}, ""
    if fam.startswith("named:"):
        g = gen_named(fam[6:])
    elif fam == "regular":
        rng = RandomSource(need_seed(args))
        try:
            g = gen_regular_high_girth(int(params["n"]), int(params["d"]), int(params.get("girth", 3)),
                                       rng, max_attempts=int(params.get("attempts", 50)))
        except KeyError as exc:
            raise UsageError(f"regular family needs --param {exc.args[0]}=...") from None
    elif fam.startswith("planted:"):
        rng = RandomSource(need_seed(args))
        inst = gen_planted(fam[8:], params, rng, make_profile(args))
        g, roles, manifest = inst.graph, inst.roles, inst.manifest_text()
    else:
        raise UsageError("family must be named:NAME, regular or planted:KIND")
    body = dump_graph(g)
    if args.out:
        write_artifact(args.out, body, args)
        if manifest or roles:
            path = args.manifest or args.out + ".manifest"
            text = manifest + "".join(f"role {k}: {' '.join(map(str, sorted(v)))}\n"
                                      for k, v in sorted(roles.items()))
            write_artifact(path, text, args)
    else:
        sys.stdout.write(body)
    _log(f"n={g.n} m={g.m}")
    return OK


def cmd_find(args) -> int:
    g = read_graph(args.graph)
    seed = need_seed(args)
    k = args.target
    if k < 3:
        raise UsageError("--target must be at least 3")
    if args.mode == "plain":
        cert = find_subdivision(g, k - 1, budget=args.budget)
    elif g.n <= args.brute_limit:
        cert = brute_force_induced(g, k, budget=args.budget)
        if cert is None:
            raise NotFound(f"no induced subdivision of K{k} (exhaustive)", stage="find")
    else:
        report = PipelineReport()
        try:
            cert = theorem_main(g, k - 1, make_profile(args), RandomSource(seed),
                                max_trials=args.trials, report=report)
        finally:
            emit_report(report, args)
    emit_certificate(cert, args)
    return OK


def cmd_verify(args) -> int:
    g = read_graph(args.graph)
    with open(args.certificate) as fh:
        try:
            cert = parse_certificate(fh.read())
        except ParseError as exc:
            _log(f"invalid certificate: {exc}")
            print("induced: no (unparseable certificate)")
            return NOT_FOUND
    rep = verify_induced_subdivision(g, cert)
    print(rep.summary())
    for v in rep.violations[:20]:
        _log(f"violation: {v}")
    ok = rep.valid_induced or (args.plain and verify_subdivision(g, cert).valid_plain)
    return OK if ok else NOT_FOUND


def cmd_lemma(args) -> int:
    g = read_graph(args.graph)
    rng = RandomSource(need_seed(args))
    prof = make_profile(args)
    roles = read_roles(args.roles)
    d = args.d
    report = PipelineReport()
    try:
        if args.name == "unbalanced":
            cert = lemma_unbalanced(g, parse_set(args.a, roles, "--a"), parse_set(args.b, roles, "--b"),
                                    d, prof, rng, max_trials=args.trials, report=report)
        elif args.name == "largesub":
            try:
                res = lemma_largesub(g, parse_set(args.x, roles, "--x"), d, prof, rng,
                                     max_trials=args.trials, report=report)
            except EarlySuccess as early:
                report.stage("cli.early_success")
                cert = early.certificate
            else:
                text = (f"role x_prime: {' '.join(map(str, sorted(res.x_prime)))}\n"
                        f"role y: {' '.join(map(str, sorted(res.y)))}\n")
                if args.out:
                    write_artifact(args.out, text, args)
                else:
                    sys.stdout.write(text)
                return OK
        elif args.name == "connectedgood":
            res = connected_good(g, parse_set(args.b, roles, "--b"), prof, d)
            text = (f"role h: {' '.join(map(str, sorted(res.h)))}\n"
                    f"role preserved: {' '.join(map(str, sorted(res.preserved)))}\n"
                    f"role boundary: {' '.join(map(str, sorted(res.boundary)))}\n"
                    + res.trace.to_text())
            if args.out:
                write_artifact(args.out, text, args)
            else:
                sys.stdout.write(text)
            return OK
        elif args.name == "maxdegree":
            cert = lemma_maxdegree(g, parse_set(args.u, roles, "--u"), d, prof, rng,
                                   max_rounds=args.rounds, report=report)
        elif args.name == "theorem":
            cert = theorem_main(g, d, prof, rng, max_trials=args.trials, report=report)
        else:
            raise UsageError(f"unknown lemma {args.name!r}")
    finally:
        emit_report(report, args)
    emit_certificate(cert, args)
    return OK


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="indsub", description="Induced clique subdivisions with checkable certificates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, profile=True):
        sp.add_argument("--seed", type=int, help="seed for every random choice")
        sp.add_argument("--out", help="output file for the artifact")
        if profile:
            sp.add_argument("--profile", choices=["relaxed", "paper"], default="relaxed")
            sp.add_argument("--scale", type=float, help="exponent scale of the relaxed profile")
            sp.add_argument("--set", action="append", metavar="KNOB=VALUE",
                            help="override a profile knob (repeatable)")

    sp = sub.add_parser("analyze", help="basic invariants of a graph")
    sp.add_argument("graph", help="edge-list file or named graph")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("gen", help="generate a graph")
    sp.add_argument("--family", required=True, help="named:NAME, regular or planted:KIND")
    sp.add_argument("--param", action="append", metavar="KEY=VALUE")
    sp.add_argument("--manifest", help="manifest path for planted instances")
    common(sp)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("find", help="search for a (induced) clique subdivision")
    sp.add_argument("graph")
    sp.add_argument("--target", type=int, required=True, help="clique size K")
    sp.add_argument("--mode", choices=["plain", "induced"], default="induced")
    sp.add_argument("--budget", type=int, default=2_000_000, help="search node budget")
    sp.add_argument("--brute-limit", type=int, default=40,
                    help="graphs with at most this many vertices are searched exhaustively")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--report", help="pipeline report file")
    common(sp)
    sp.set_defaults(func=cmd_find)

    sp = sub.add_parser("verify", help="check a certificate")
    sp.add_argument("graph")
    sp.add_argument("certificate")
    sp.add_argument("--plain", action="store_true", help="accept non-induced subdivisions")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("lemma", help="run one pipeline stage")
    sp.add_argument("name", choices=["unbalanced", "largesub", "connectedgood", "maxdegree", "theorem"])
    sp.add_argument("graph")
    sp.add_argument("--d", type=int, default=3)
    sp.add_argument("--roles", help="roles file written by gen (for role:NAME sets)")
    for flag in ("a", "b", "x", "u"):
        sp.add_argument(f"--{flag}", help="vertex set: comma-separated ids or role:NAME")
    sp.add_argument("--trials", type=int, default=10_000)
    sp.add_argument("--rounds", type=int, default=100_000)
    sp.add_argument("--report", help="pipeline report file")
    common(sp)
    sp.set_defaults(func=cmd_lemma)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _log(f"usage error: {exc}")
        return USAGE
    except (BudgetExhausted, TrialsExhausted, RoundsExhausted, AttemptsExhausted) as exc:
        _log(f"budget exhausted: {exc}")
        return BUDGET
    except HypothesisNotMet as exc:
        _log(f"hypothesis not met: {exc}")
        return HYPOTHESIS
    except (ParseError, InvalidInput, OSError) as exc:
        _log(f"usage error: {exc}")
        return USAGE
    except NotFound as exc:
        _log(f"not found: {exc}")
        return NOT_FOUND
    except IndsubError as exc:
        _log(f"failed: {type(exc).__name__}: {exc}")
        return NOT_FOUND


if __name__ == "__main__":
    sys.exit(main())

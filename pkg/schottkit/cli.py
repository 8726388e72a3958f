#!/usr/bin/env python

"""
Command line interface: one JSON report per invocation.

Exit codes: 0 success, 1 parse error, 2 precondition violation,
3 internal invariant breach.

Example
-------
$ schottkit h1 --group F:3 --rep trivial1.json
$ schottkit schottkyize --torus t.json --rep rho.json --out sigma.json
"""

from typing import Callable, Dict, List, Optional, Sequence
import argparse
import sys

from loguru import logger

from schottkit.algebra.numerics import Tolerance, get_backend
from schottkit.algebra.linalg import Matrix
from schottkit.algebra.polynomial import coefficients
from schottkit.groups.presentations import (
    GroupKind, GroupSpec, alpha_surface, alpha_torus, parse_group,
)
from schottkit.reps.representation import (
    Representation, adjoint_rep, evaluate, hom_rep, pullback, validate,
)
from schottkit.reps.kolchin import ad_unipotent_check, peel, unipotence_flag
from schottkit.reps.intertwiners import intertwiners, is_isomorphic
from schottkit.reps.jordan import jordan_decompose
from schottkit.cohomology.cocycles import (
    Cocycle, dimension_table, ext1, h0, h1,
)
from schottkit.cohomology.extensions import build_extension, extract_class
from schottkit.torus import (
    TorusData, ad_schottky_check, is_principal_schottky, is_schottky_module,
    verify_gauge,
)
from schottkit.io import codec
from schottkit.io.report import Report
from schottkit.utils.logger_setup import set_loglevel
from schottkit.utils.utils import (
    InvariantBreach, ParseError, PreconditionError, SchottkitError,
)


EXIT_CODES = {ParseError: 1, PreconditionError: 2, InvariantBreach: 3}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors are ParseErrors (exit 1)."""
    def error(self, message):
        raise ParseError(message)


# ----------------------------------------------------------------
# input loading
# ----------------------------------------------------------------

class Job:
    """Parsed arguments plus loaders honoring --backend and --eps."""
    def __init__(self, args: argparse.Namespace, report: Report):
        self.args = args
        self.report = report
        self.backend = get_backend(args.backend)
        self.tol = Tolerance(args.eps) if args.eps is not None else None

    def _load(self, flag: str, decoder: Callable):
        path = getattr(self.args, flag)
        if path is None:
            raise ParseError(f"--{flag.replace('_', '-')} is required")
        self.report.echo(flag, path)
        try:
            return decoder(codec.load_json(path), self.backend)
        except (KeyError, TypeError, ValueError, IndexError) as inst:
            raise ParseError(f"malformed {flag} file {path}: {inst}") from inst

    def rep(self, flag: str = "rep") -> Representation:
        return self._load(flag, codec.decode_rep)

    def torus(self) -> TorusData:
        return self._load("torus", codec.decode_torus)

    def matrix(self, flag: str = "matrix") -> Matrix:
        return self._load(flag, lambda data, backend: codec.decode_matrix(
            data.get("matrix", data) if isinstance(data, dict) else data, backend))

    def group(self, default: GroupSpec) -> GroupSpec:
        text = getattr(self.args, "group", None)
        if text is None:
            return default
        self.report.echo("group", text)
        return parse_group(text, self._period_loader)

    def _period_loader(self, path: str) -> Matrix:
        data = codec.load_json(path)
        if isinstance(data, dict):
            data = data.get("Z", data.get("period"))
        return codec.decode_matrix(data, self.backend)

    def alpha(self, rep: Representation):
        """The canonical morphism whose source or target rep lives on."""
        group = rep.group
        if group.kind is GroupKind.LATTICE:
            return alpha_torus(group.g, group.period)
        if group.kind is GroupKind.SURFACE:
            return alpha_surface(group.g)
        if group.kind is GroupKind.ABELIAN:
            period = self.torus().period if getattr(self.args, "torus", None) else None
            return alpha_torus(group.g, period)
        return alpha_surface(group.g)


# ----------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------

def cmd_validate(job: Job):
    rep = validate(job.rep(), job.tol)
    job.report.set("valid", True)
    job.report.set("rank", rep.rank)
    job.report.set("group", str(rep.group))


def cmd_evaluate(job: Job):
    rep = job.rep()
    if job.args.word is None:
        raise ParseError("--word is required")
    word = codec.decode_word(job.args.word, rep.group)
    job.report.echo("word", job.args.word)
    job.report.set("value", evaluate(rep, word, job.tol))


def cmd_kolchin(job: Job):
    cert = unipotence_flag(validate(job.rep(), job.tol), job.tol)
    job.report.set("unipotent", bool(cert))
    if cert:
        job.report.certify("triangularizer", cert.triangularizer)
        job.report.certify("flag", list(cert.flag))
        job.report.certify("stages", list(cert.stages))
    else:
        job.report.set("stage", cert.stage)
        job.report.set("level", cert.level)
        job.report.set("quotient_images", list(cert.quotient_images))


def cmd_peel(job: Job):
    rep = validate(job.rep(), job.tol)
    result = peel(rep, job.tol)
    job.report.set("quotient", codec.encode_rep(result.quotient))
    job.report.set("inclusion", result.inclusion)
    job.report.set("projection", result.projection)
    job.report.certify("exact", result.check_exact(rep, job.tol))


def cmd_pullback(job: Job):
    rep = job.rep()
    morphism = job.alpha(rep)
    job.report.set("rep", codec.encode_rep(pullback(rep, morphism, job.tol)))
    job.report.set("morphism", morphism.name)


def cmd_intertwiners(job: Job):
    basis = intertwiners(job.rep("rep1"), job.rep("rep2"), job.tol)
    job.report.set("dim", len(basis))
    job.report.set("basis", basis)


def cmd_iso(job: Job):
    witness = is_isomorphic(job.rep("rep1"), job.rep("rep2"), job.tol)
    job.report.set("isomorphic", witness is not None)
    job.report.set("witness", witness)


def cmd_h0(job: Job):
    rep = job.rep()
    basis = h0(job.group(rep.group), rep, job.tol)
    job.report.set("dim", len(basis))
    job.report.set("basis", [codec.encode_vector(v) for v in basis])


def _h1_report(job: Job, result):
    job.report.set("dim", result.dim)
    job.report.set("cocycles", [codec.encode_vector(v) for v in result.cocycles])
    job.report.set("coboundaries", [codec.encode_vector(v) for v in result.coboundaries])


def cmd_h1(job: Job):
    rep = job.rep()
    _h1_report(job, h1(job.group(rep.group), rep, job.tol))


def cmd_ext1(job: Job):
    _h1_report(job, ext1(job.rep("rep1"), job.rep("rep2"), job.tol))


def cmd_ext_build(job: Job):
    first, second = job.rep("rep1"), job.rep("rep2")
    data = job._load("cocycle", lambda data, backend: data)
    if isinstance(data, dict) and "coefficients" not in data:
        coefficients = hom_rep(first, second, job.tol)
        values = [codec.decode_vector(v, coefficients.backend) for v in data.get("values", [])]
        cocycle = Cocycle(first.group, coefficients, tuple(values))
    else:
        cocycle = codec.decode_cocycle(data, job.backend)
    result = build_extension(first, second, cocycle, job.tol)
    job.report.set("extension", codec.encode_extension(
        result.extension, result.inclusion, result.projection))


def cmd_ext_extract(job: Job):
    rep, inclusion, projection = job._load("extension", codec.decode_extension)
    cls = extract_class(rep, inclusion, projection, job.tol)
    job.report.set("cocycle", codec.encode_cocycle(cls.cocycle))
    job.report.set("representative", [codec.encode_vector(v) for v in cls.representative.values])
    job.report.set("zero", cls.is_zero(job.tol))


def cmd_schottkyize(job: Job):
    torus = job.torus()
    if job.args.components:
        result = torus.schottkyize(job._load("components", codec.decode_components), job.tol)
        job.report.set("kind", "flat_sum")
        job.report.set("rep", codec.encode_rep(result.rep))
    else:
        rep = job.rep()
        result = torus.schottkyize(rep, job.tol)
        job.report.set("kind", "character" if result.gauge.backend == "approx" else "unipotent")
    job.report.set("sigma", codec.encode_rep(result.sigma))
    job.report.set("gauge", codec.encode_gauge(result.gauge))
    job.report.certify("gauge", list(result.certificate.checks))
    job.report.residual("gauge", result.certificate.max_residual)


def cmd_verify_gauge(job: Job):
    torus = job.torus()
    rep = job.rep()
    sigma = job.rep("sigma")
    gauge = job._load("gauge", codec.decode_gauge)
    check = verify_gauge(torus, rep, sigma, gauge, job.tol)
    job.report.set("verified", bool(check))
    if check:
        job.report.certify("checks", list(check.checks))
        job.report.residual("max", check.max_residual)
    else:
        job.report.set("failed_check", check.check)
        job.report.set("index", check.index)
        job.report.set("message", check.message)
        job.report.set("residual", check.residual)


def _predicate(func: Callable, name: str):
    def command(job: Job):
        rep = validate(job.rep(), job.tol)
        job.report.set(name, func(rep, job.alpha(rep), job.tol))
    return command


def cmd_adjoint(job: Job):
    job.report.set("rep", codec.encode_rep(adjoint_rep(job.rep(), job.tol)))


def cmd_ad_unipotent(job: Job):
    job.report.set("ad_unipotent", ad_unipotent_check(validate(job.rep(), job.tol), job.tol))


def cmd_jordan(job: Job):
    pair = jordan_decompose(job.matrix())
    job.report.set("s", pair.s)
    job.report.set("u", pair.u)
    job.report.certify("radical", [str(c) for c in coefficients(pair.radical)])


def cmd_ext_table(job: Job):
    table = dimension_table(job.args.max_g)
    job.report.echo("max_g", job.args.max_g)
    job.report.set("table", table.to_dict(orient="records"))


COMMANDS: Dict[str, Callable] = {
    "validate": cmd_validate,
    "evaluate": cmd_evaluate,
    "kolchin": cmd_kolchin,
    "peel": cmd_peel,
    "pullback": cmd_pullback,
    "intertwiners": cmd_intertwiners,
    "iso": cmd_iso,
    "h0": cmd_h0,
    "h1": cmd_h1,
    "ext1": cmd_ext1,
    "ext-build": cmd_ext_build,
    "ext-extract": cmd_ext_extract,
    "schottkyize": cmd_schottkyize,
    "verify-gauge": cmd_verify_gauge,
    "is-schottky": _predicate(is_schottky_module, "schottky"),
    "is-principal-schottky": _predicate(is_principal_schottky, "principal_schottky"),
    "ad-schottky": _predicate(ad_schottky_check, "ad_schottky"),
    "adjoint": cmd_adjoint,
    "ad-unipotent": cmd_ad_unipotent,
    "jordan": cmd_jordan,
    "ext-table": cmd_ext_table,
}

FLAG_HELP = {
    "group": "group shorthand F:g, Z:g, Surface:g or Lattice:<file>",
    "word": "word text, e.g. B1^2*B2^-1 or [2,-1]",
}

# input flags per subcommand
FLAGS: Dict[str, Sequence[str]] = {
    "validate": ["rep"],
    "evaluate": ["rep", "word"],
    "kolchin": ["rep"],
    "peel": ["rep"],
    "pullback": ["rep", "torus"],
    "intertwiners": ["rep1", "rep2"],
    "iso": ["rep1", "rep2"],
    "h0": ["group", "rep"],
    "h1": ["group", "rep"],
    "ext1": ["rep1", "rep2"],
    "ext-build": ["rep1", "rep2", "cocycle"],
    "ext-extract": ["extension"],
    "schottkyize": ["torus", "rep", "components"],
    "verify-gauge": ["torus", "rep", "sigma", "gauge"],
    "is-schottky": ["rep"],
    "is-principal-schottky": ["rep"],
    "ad-schottky": ["rep"],
    "adjoint": ["rep"],
    "ad-unipotent": ["rep"],
    "jordan": ["matrix"],
    "ext-table": [],
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", default="exact", choices=["exact", "approx"],
                        help="scalar backend for inputs without a 'backend' field")
    common.add_argument("--eps", type=float, default=None,
                        help="tolerance for the approximate backend (default 1e-9)")
    common.add_argument("--out", default=None, help="write the JSON report here")
    common.add_argument("--log-level", default="WARNING", help="loguru level")
    common.add_argument("--no-color", action="store_true", help="plain stderr log lines")

    parser = _Parser(prog="schottkit", description="Schottky representations of tori and free groups")
    subs = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        sub = subs.add_parser(name, parents=[common])
        for flag in FLAGS[name]:
            sub.add_argument(f"--{flag}", default=None, help=FLAG_HELP.get(flag, f"{flag} JSON file"))
        if name == "ext-table":
            sub.add_argument("--max-g", type=int, default=4)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand, print its report, return the exit code."""
    argv = sys.argv[1:] if argv is None else list(argv)
    report = Report("unknown")
    out = None
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise ParseError(f"a subcommand is required: {', '.join(COMMANDS)}")
        set_loglevel(args.log_level, color=False if args.no_color else None)
        out = args.out
        report = Report(args.command, args.backend, args.eps)
        logger.info(f"running {args.command}")
        COMMANDS[args.command](Job(args, report))
        code = 0
    except SchottkitError as inst:
        report.fail(inst)
        code = next((c for cls, c in EXIT_CODES.items() if isinstance(inst, cls)), 3)
        logger.error(f"{type(inst).__name__}: {inst}")
    print(report.write(out))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

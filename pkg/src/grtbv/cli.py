"""Command-line front end.

Every subcommand fronts one library operation and prints its result in the
matching text format.  Exit codes: 0 success, 1 mathematical failure (QME
violated, lift obstructed, resource guard tripped), 2 usage error.
Polynomial inputs are re-truncated to the run configuration's hbar order
and polynomial degree, so results depend only on the configuration.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .bv import NotAMasterFunction, flow
from .complex import (
    basis,
    block_of,
    cohomology_dims,
    format_graph_vector,
    format_hbar_vector,
    matrix_of,
    parse_graph_vectors,
    parse_hbar_vector,
)
from .config import FIELDS, ConfigError, RunConfig, parse_config
from .graphs import BasisSpec, GraphError, ResourceGuardError, format_graph
from .lift import LiftObstruction, NotACocycleError, find_degree0_cocycles, lift
from .linalg import format_matrix
from .selftest import run_battery
from .superpoly import Truncation, format_polynomial, format_terms, parse_polynomial, qme_residual


class UsageError(Exception):
    pass


class MathFailure(Exception):
    pass


@dataclass
class Result:
    text: str
    code: int = 0


def _guard(cfg: RunConfig, n: int, l: int) -> None:
    if n > cfg.max_vertices or l > cfg.max_edges:
        raise ResourceGuardError(
            f"block (n={n}, l={l}) exceeds max_vertices={cfg.max_vertices}, max_edges={cfg.max_edges}"
        )


def _spec(n: int, l: int, all_graphs: bool, loops: bool) -> BasisSpec:
    if all_graphs:
        return BasisSpec(n, l, allow_loops=loops)
    return BasisSpec(n, l, connected=True, min_valence=3, allow_loops=loops)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def cmd_basis(cfg: RunConfig, spec: BasisSpec) -> Result:
    _guard(cfg, spec.n, spec.l)
    return Result("".join(format_graph(g) + "\n" for g in basis(spec)))


def cmd_dmat(cfg: RunConfig, op: str, spec: BasisSpec) -> Result:
    _guard(cfg, spec.n + 1, spec.l + 1)
    return Result(format_matrix(matrix_of(op, spec)))


def cmd_cohomology(cfg: RunConfig, degree: int, loop_order: int) -> Result:
    n, l = block_of(degree, loop_order)
    _guard(cfg, n + 1, l + 1)
    return Result(f"dim H = {cohomology_dims(degree, loop_order)[2]}\n")


def cmd_cocycles(cfg: RunConfig, loop_order: int) -> Result:
    n, l = block_of(0, loop_order)
    _guard(cfg, n + 1, l + 1)
    vecs = find_degree0_cocycles(loop_order)
    if not vecs:
        return Result("# no degree-0 cocycles\n")
    return Result("\n".join(format_graph_vector(v) for v in vecs))


def cmd_lift(cfg: RunConfig, vector_file: str) -> Result:
    vecs = parse_graph_vectors(_read(vector_file))
    if len(vecs) != 1:
        raise UsageError(f"{vector_file} must hold exactly one graph vector, found {len(vecs)}")
    for g in vecs[0].graphs():
        _guard(cfg, g.n, g.l + cfg.hbar_order)
    return Result(format_hbar_vector(lift(vecs[0], cfg.hbar_order)))


def _polynomial(path: str, trunc: Truncation):
    try:
        return parse_polynomial(_read(path), trunc)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"cannot parse {path}: {exc}") from None


def cmd_qme_check(cfg: RunConfig, poly_file: str, trunc: Truncation) -> Result:
    res = qme_residual(_polynomial(poly_file, trunc))
    return Result(f"residual = {format_terms(res)}\n", 1 if res else 0)


def cmd_act(cfg: RunConfig, poly_file: str, hbar_vector_file: str, trunc: Truncation) -> Result:
    s = _polynomial(poly_file, trunc)
    try:
        gammah = parse_hbar_vector(_read(hbar_vector_file))
    except (ValueError, GraphError) as exc:
        raise UsageError(f"cannot parse {hbar_vector_file}: {exc}") from None
    try:
        su = flow(s, gammah, cfg.u_order)
    except NotAMasterFunction as exc:
        raise MathFailure(f"QME violated: {exc}") from None
    return Result(format_polynomial(su))


def cmd_selftest(cfg: RunConfig) -> Result:
    ok, lines = run_battery(cfg)
    return Result("\n".join(lines) + "\n", 0 if ok else 1)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("run configuration")
    g.add_argument("--config", help="file of 'key = value' lines")
    g.add_argument("--max-vertices", type=int)
    g.add_argument("--max-edges", type=int)
    g.add_argument("--hbar-order", type=int)
    g.add_argument("--u-order", type=int)
    g.add_argument("--poly-degree", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--space", help="comma-separated x-degrees of the Darboux space")
    g.add_argument("--out", help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="grtbv", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"grtbv {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def block_args(sp):
        sp.add_argument("n", type=int, help="vertex count")
        sp.add_argument("l", type=int, help="edge count")
        sp.add_argument("--all-graphs", action="store_true", help="drop the connected/trivalent flags")
        sp.add_argument("--loops", action="store_true", help="allow tadpoles")

    block_args(sub.add_parser("basis", parents=[common], help="list a block's basis"))
    sp = sub.add_parser("dmat", parents=[common], help="matrix of d or delta on a block")
    sp.add_argument("op", choices=["d", "delta"])
    block_args(sp)
    sp = sub.add_parser("cohomology", parents=[common], help="dimension of H at (degree, loop order)")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--loop-order", type=int, required=True)
    sp = sub.add_parser("cocycles", parents=[common], help="degree-0 cocycle representatives")
    sp.add_argument("--loop-order", type=int, required=True)
    sp = sub.add_parser("lift", parents=[common], help="complete a cocycle to a d_hbar-cocycle")
    sp.add_argument("vector_file")
    sp = sub.add_parser("qme-check", parents=[common], help="quantum master equation residual")
    sp.add_argument("poly_file")
    sp = sub.add_parser("act", parents=[common], help="flow a master function along an hbar-graph vector")
    sp.add_argument("poly_file")
    sp.add_argument("hbar_vector_file")
    sub.add_parser("selftest", parents=[common], help="run the invariant battery")
    return p


def load_config(args: argparse.Namespace) -> RunConfig:
    cfg = parse_config(_read(args.config)) if args.config else RunConfig()
    space = None
    if args.space:
        try:
            space = tuple(int(t) for t in args.space.replace(",", " ").split())
        except ValueError:
            raise ConfigError(f"--space must be integers, got {args.space!r}") from None
    overrides = {f: getattr(args, f, None) for f in FIELDS if f != "space"}
    return cfg.updated(space=space, **overrides)


def dispatch(args: argparse.Namespace, cfg: RunConfig) -> Result:
    c = args.command
    if c in ("basis", "dmat"):
        spec = _spec(args.n, args.l, args.all_graphs, args.loops)
        return cmd_basis(cfg, spec) if c == "basis" else cmd_dmat(cfg, args.op, spec)
    if c == "cohomology":
        return cmd_cohomology(cfg, args.degree, args.loop_order)
    if c == "cocycles":
        return cmd_cocycles(cfg, args.loop_order)
    if c == "lift":
        return cmd_lift(cfg, args.vector_file)
    if c == "qme-check":
        return cmd_qme_check(cfg, args.poly_file, Truncation(cfg.hbar_order, None, cfg.poly_degree))
    if c == "act":
        return cmd_act(cfg, args.poly_file, args.hbar_vector_file, Truncation(cfg.hbar_order, None, cfg.poly_degree))
    return cmd_selftest(cfg)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        result = dispatch(args, cfg)
    except (UsageError, ConfigError, GraphError) as exc:
        print(f"grtbv: error: {exc}", file=sys.stderr)
        return 2
    except (MathFailure, ResourceGuardError, LiftObstruction, NotACocycleError) as exc:
        print(f"grtbv: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_text(result.text)
    else:
        sys.stdout.write(result.text)
    return result.code


if __name__ == "__main__":
    sys.exit(main())

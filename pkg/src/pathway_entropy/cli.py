"""Batch command-line front end emitting CSV or JSON for every module.

Output contract: CSV has a one-line comma-separated header and values
printed with 17 significant digits, which float() re-parses exactly;
`read_csv` is the bundled reader.  JSON mirrors the same records
structurally.  Exit codes: 0 success, 2 usage errors, 3 domain errors,
4 numerical failures; failures print a one-line JSON error record to
stderr.  Sweeps use start:stop:step grammar, endpoints inclusive within
half a step.  PATHWAY_ENTROPY_SEED supplies the default sampling seed
(0 when unset).

Family sweeps with `--family all` skip (family, alpha) pairs outside a
family's order domain; naming a single family makes the same pair a hard
error instead.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence

import numpy as np

from .divergence import InaccuracyInput, kerridge_inaccuracy
from .entropy_discrete import (
    AlphaOrder,
    DiscreteDistribution,
    EntropyFamily,
    FamilyTag,
    ZeroPolicy,
    composition_residual_bivariate,
    composition_residual_trivariate,
    entropy,
    validate_order,
)
from .errors import (
    DomainError,
    InvalidOrder,
    NumericalError,
    UsageError,
)
from .maxent import MaxEntProblem, MaxEntVariant, MomentConstraint
from .maxent import solve as maxent_solve
from .maxent import solve_escort
from .ode_check import OdeCase, OdeReduction, residual_sweep
from .pathway import (
    PathwayParams,
    cdf,
    density,
    normalizing_constant,
    normalizing_constant_quadrature,
    sample,
    special_case,
)
from .ppp import independent_event_triples, scan

__all__ = ["Subcommand", "RunConfig", "run", "main", "read_csv", "parse_sweep"]

_FMT = "%.17g"


class Subcommand(Enum):
    ENTROPY = "entropy"
    COMPOSE = "compose"
    PATHWAY = "pathway"
    MAXENT = "maxent"
    ODE = "ode"
    PPP = "ppp"
    INACCURACY = "inaccuracy"


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: subcommand, its parameter bindings, and routing."""

    subcommand: Subcommand
    bindings: dict
    output_format: str
    output_path: str | None


class _Parser(argparse.ArgumentParser):
    # argparse prints and exits on bad flags; route through the error tree
    # instead so run() owns the exit code.
    def error(self, message: str):
        raise UsageError(message)


def _fmt(value) -> str:
    return _FMT % float(value)


def parse_sweep(text: str) -> list[float]:
    """A bare float, or start:stop:step inclusive within half a step."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) == 3:
            start, stop, step = (float(p) for p in parts)
        else:
            raise ValueError
    except ValueError:
        raise UsageError(f"expected a number or start:stop:step, got {text!r}")
    if not (math.isfinite(start) and math.isfinite(stop) and math.isfinite(step)):
        raise UsageError("sweep bounds must be finite")
    if step <= 0.0:
        raise UsageError("sweep step must be positive")
    if stop < start:
        raise UsageError("sweep stop must not precede start")
    values = []
    k = 0
    while True:
        value = start + k * step
        if value > stop + step / 2.0:
            break
        values.append(value)
        k += 1
    return values


def _parse_probs(text: str) -> DiscreteDistribution:
    try:
        values = [float(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated probabilities, got {text!r}")
    return DiscreteDistribution(np.array(values), ZeroPolicy.ZERO_INDIFFERENT)


_FAMILY_TAGS = {
    "shannon": FamilyTag.SHANNON,
    "renyi": FamilyTag.RENYI,
    "havrda_charvat": FamilyTag.HAVRDA_CHARVAT,
    "tsallis": FamilyTag.TSALLIS,
    "mathai_m": FamilyTag.MATHAI_M,
    "mathai_m_star": FamilyTag.MATHAI_M_STAR,
}


def _families(name: str, constant: float) -> list[tuple[str, EntropyFamily]]:
    def build(key: str) -> EntropyFamily:
        tag = _FAMILY_TAGS[key]
        if tag is FamilyTag.SHANNON:
            return EntropyFamily(tag, constant)
        return EntropyFamily(tag)

    if name == "all":
        return [(key, build(key)) for key in _FAMILY_TAGS]
    return [(name, build(name))]


def _family_value_rows(bindings: dict, evaluate) -> list[list]:
    lenient = bindings["family"] == "all"
    rows = []
    for name, family in _families(bindings["family"], bindings["constant"]):
        for alpha in parse_sweep(bindings["alpha"]):
            order = AlphaOrder(alpha)
            if lenient:
                try:
                    validate_order(family, order)
                except InvalidOrder:
                    continue
            rows.append([name, alpha, evaluate(family, order)])
    return rows


def _cmd_entropy(config: RunConfig):
    b = config.bindings
    dist = _parse_probs(b["probs"])
    rows = _family_value_rows(b, lambda fam, order: entropy(dist, fam, order))
    payload = {"rows": [{"family": r[0], "alpha": r[1], "value": r[2]}
                        for r in rows]}
    return ["family", "alpha", "value"], rows, payload


def _cmd_compose(config: RunConfig):
    b = config.bindings
    p = _parse_probs(b["probs"])
    q = _parse_probs(b["probs2"])
    r = _parse_probs(b["probs3"]) if b["probs3"] is not None else None

    def residual(family, order):
        if r is None:
            return composition_residual_bivariate(p, q, family, order)
        return composition_residual_trivariate(p, q, r, family, order)

    rows = _family_value_rows(b, residual)
    payload = {"law": "bivariate" if r is None else "trivariate",
               "rows": [{"family": row[0], "alpha": row[1], "residual": row[2]}
                        for row in rows]}
    return ["family", "alpha", "residual"], rows, payload


_SPECIAL_FLAGS = ("alpha", "gamma", "delta", "s", "q", "beta_scale", "shape")


def _pathway_params(b: dict) -> PathwayParams:
    if b["special"] is not None:
        if b["beta"] is not None:
            raise UsageError("special cases fix the outer exponent; drop --beta")
        kwargs = {key: b[key] for key in _SPECIAL_FLAGS if b[key] is not None}
        return special_case(b["special"], **kwargs)
    for key in ("q", "beta_scale", "shape"):
        if b[key] is not None:
            raise UsageError(f"--{key.replace('_', '-')} applies only with --special")
    if b["alpha"] is None:
        raise UsageError("either --special or --alpha is required")
    return PathwayParams(
        alpha=b["alpha"],
        gamma=b["gamma"] if b["gamma"] is not None else 1.0,
        delta=b["delta"] if b["delta"] is not None else 1.0,
        s=b["s"] if b["s"] is not None else 1.0,
        beta_exp=b["beta"] if b["beta"] is not None else 1.0,
    )


def _params_record(params: PathwayParams) -> dict:
    return {"alpha": params.alpha, "gamma": params.gamma, "delta": params.delta,
            "s": params.s, "beta_exp": params.beta_exp}


def _default_seed(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    raw = os.environ.get("PATHWAY_ENTROPY_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"PATHWAY_ENTROPY_SEED must be an integer, got {raw!r}")


def _cmd_pathway(config: RunConfig):
    b = config.bindings
    params = _pathway_params(b)
    reflect = b["reflect"]
    if reflect and b["special"] != "gaussian_half":
        raise UsageError("--reflect mirrors the gaussian_half special case only")
    modes = [m for m in ("table", "sample_n", "constant") if b[m]]
    if len(modes) != 1:
        raise UsageError("choose exactly one of --table, --sample, --constant")

    if b["table"]:
        xs = np.array(parse_sweep(b["table"]))
        if reflect:
            dens = 0.5 * density(params, np.abs(xs))
        else:
            if np.any(xs < 0.0):
                raise UsageError("table points must be nonnegative without --reflect")
            dens = density(params, xs)
        header = ["x", "density"]
        columns = [xs, dens]
        if b["with_cdf"]:
            if reflect:
                cum = np.array([0.5 * (1.0 + math.copysign(1.0, x)
                                       * cdf(params, abs(x))) if x != 0.0 else 0.5
                                for x in xs])
            else:
                cum = np.array([cdf(params, x) for x in xs])
            header.append("cdf")
            columns.append(cum)
        rows = [list(row) for row in zip(*columns)]
        payload = {"params": _params_record(params), "reflect": reflect,
                   "table": [dict(zip(header, row)) for row in rows]}
        return header, rows, payload

    if b["sample_n"]:
        seed = _default_seed(b["seed"])
        draws = sample(params, b["sample_n"], seed)
        rows = [[i, v] for i, v in enumerate(draws)]
        payload = {"params": _params_record(params), "seed": seed,
                   "sample": [float(v) for v in draws]}
        return ["index", "value"], rows, payload

    closed = normalizing_constant(params)
    quad = normalizing_constant_quadrature(params)
    payload = {"params": _params_record(params), "closed": closed,
               "quadrature": quad}
    return ["closed", "quadrature"], [[closed, quad]], payload


def _parse_moment(text: str) -> MomentConstraint:
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError(f"expected exponent:target, got {text!r}")
    try:
        exponent, target = float(parts[0]), float(parts[1])
    except ValueError:
        raise UsageError(f"expected exponent:target, got {text!r}")
    return MomentConstraint(exponent, target)


def _cmd_maxent(config: RunConfig):
    b = config.bindings
    grid = np.array(parse_sweep(b["grid"]))
    constraints = tuple(_parse_moment(m) for m in b["moment"] or ())
    variant = MaxEntVariant.ESCORT if b["escort"] else MaxEntVariant.PLAIN
    problem = MaxEntProblem(grid, AlphaOrder(b["alpha"]), constraints, variant)
    if b["escort"]:
        solution = solve_escort(problem, b["escort_delta"], lambda3=b["lambda3"])
    else:
        if b["lambda3"] is not None:
            raise UsageError("--lambda3 applies only with --escort")
        solution = maxent_solve(problem)

    rows = [["density", i, x, v]
            for i, (x, v) in enumerate(zip(grid, solution.density_values))]
    rows += [["multiplier", j, math.nan, m]
             for j, m in enumerate(solution.multipliers)]
    rows.append(["objective", 0, math.nan, solution.objective])
    rows.append(["euler_residual", 0, math.nan, solution.euler_residual])
    payload = {
        "variant": variant.value,
        "grid": [float(x) for x in grid],
        "density": [float(v) for v in solution.density_values],
        "multipliers": [float(m) for m in solution.multipliers],
        "objective": solution.objective,
        "euler_residual": solution.euler_residual,
    }
    return ["record", "index", "x", "value"], rows, payload


def _cmd_ode(config: RunConfig):
    b = config.bindings
    params = PathwayParams(alpha=b["alpha"], gamma=b["gamma"], delta=b["delta"],
                           s=b["s"], beta_exp=b["beta"])
    case = OdeCase(params, OdeReduction(b["reduction"]))
    report = residual_sweep(case, b["points"], b["h"])
    row = [b["reduction"], params.alpha, params.gamma, params.delta, params.s,
           params.beta_exp, case.eta, report.n_points, report.h,
           report.max_residual, report.argmax]
    header = ["reduction", "alpha", "gamma", "delta", "s", "beta", "eta",
              "n_points", "h", "max_residual", "argmax"]
    payload = dict(zip(header, row))
    return header, [row], payload


def _cmd_ppp(config: RunConfig):
    b = config.bindings
    if (b["scan_max"] is None) == (b["n"] is None):
        raise UsageError("choose exactly one of --scan or --n")
    if b["scan_max"] is not None:
        table = scan(b["scan_max"])
        rows = [[n, count] for n, count in table]
        payload = {"scan": [{"n": n, "count": count} for n, count in table]}
        return ["n", "count"], rows, payload
    found = independent_event_triples(b["n"])
    rows = [[found.n, x, y, z] for x, y, z in found.triples]
    payload = {"n": found.n, "triples": [list(t) for t in found.triples]}
    return ["n", "x", "y", "z"], rows, payload


def _cmd_inaccuracy(config: RunConfig):
    b = config.bindings
    true_dist = _parse_probs(b["true"])
    assigned = _parse_probs(b["assigned"])
    rows = []
    for alpha in parse_sweep(b["alpha"]):
        value = kerridge_inaccuracy(
            InaccuracyInput(true_dist, assigned, AlphaOrder(alpha)))
        rows.append([alpha, value])
    payload = {"rows": [{"alpha": r[0], "value": r[1]} for r in rows]}
    return ["alpha", "value"], rows, payload


_HANDLERS = {
    Subcommand.ENTROPY: _cmd_entropy,
    Subcommand.COMPOSE: _cmd_compose,
    Subcommand.PATHWAY: _cmd_pathway,
    Subcommand.MAXENT: _cmd_maxent,
    Subcommand.ODE: _cmd_ode,
    Subcommand.PPP: _cmd_ppp,
    Subcommand.INACCURACY: _cmd_inaccuracy,
}


def _render(config: RunConfig, header: list[str], rows: list[list],
            payload) -> str:
    if config.output_format == "json":
        return json.dumps(payload, indent=2) + "\n"
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(cell if isinstance(cell, str) else _fmt(cell)
                              for cell in row))
    return "\n".join(lines) + "\n"


def read_csv(source) -> tuple[list[str], list[list]]:
    """Bundled reader for emitted CSV: numeric cells come back as floats,
    everything else as strings; re-rendering with the writer's format is
    byte-identical."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text()
    lines = text.splitlines()
    if not lines:
        raise UsageError("empty CSV input")
    header = lines[0].split(",")
    rows = []
    for line in lines[1:]:
        cells = []
        for cell in line.split(","):
            try:
                cells.append(float(cell))
            except ValueError:
                cells.append(cell)
        rows.append(cells)
    return header, rows


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--output", default=None, metavar="PATH")


def _build_parser() -> _Parser:
    parser = _Parser(prog="pathway-entropy", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    names = tuple(_FAMILY_TAGS) + ("all",)

    p = sub.add_parser("entropy", help="entropy values, optionally swept in alpha")
    p.add_argument("--family", choices=names, required=True)
    p.add_argument("--alpha", default="1", help="order, or start:stop:step")
    p.add_argument("--constant", type=float, default=1.0,
                   help="scale constant for the shannon family")
    p.add_argument("--probs", required=True, help="comma-separated probabilities")
    _add_common(p)

    p = sub.add_parser("compose", help="product-composition law residuals")
    p.add_argument("--family", choices=names, required=True)
    p.add_argument("--alpha", default="1", help="order, or start:stop:step")
    p.add_argument("--constant", type=float, default=1.0)
    p.add_argument("--probs", required=True)
    p.add_argument("--probs2", required=True)
    p.add_argument("--probs3", default=None,
                   help="third factor switches to the trivariate law")
    _add_common(p)

    p = sub.add_parser("pathway", help="density tables, samples, constants")
    p.add_argument("--special", default=None,
                   help="named parameter point (see pathway.SPECIAL_CASE_NAMES)")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--beta", type=float, default=None, help="outer exponent")
    p.add_argument("--q", type=float, default=None, help="wigner order")
    p.add_argument("--beta-scale", dest="beta_scale", type=float, default=None)
    p.add_argument("--shape", type=float, default=None, help="weibull shape")
    p.add_argument("--table", default=None, metavar="START:STOP:STEP")
    p.add_argument("--with-cdf", dest="with_cdf", action="store_true")
    p.add_argument("--reflect", action="store_true",
                   help="mirror gaussian_half onto the whole line")
    p.add_argument("--sample", dest="sample_n", type=int, default=None)
    p.add_argument("--seed", type=int, default=None,
                   help="overrides PATHWAY_ENTROPY_SEED (default 0)")
    p.add_argument("--constant", action="store_true",
                   help="emit closed-form and quadrature normalizing constants")
    _add_common(p)

    p = sub.add_parser("maxent", help="constrained maximum-entropy solve")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--grid", required=True, metavar="START:STOP:STEP")
    p.add_argument("--moment", action="append", metavar="EXPONENT:TARGET",
                   help="repeatable moment constraint")
    p.add_argument("--escort", action="store_true")
    p.add_argument("--escort-delta", dest="escort_delta", type=float, default=1.0)
    p.add_argument("--lambda3", type=float, default=None,
                   help="freeze the escort bracket coefficient")
    _add_common(p)

    p = sub.add_parser("ode", help="derivative-identity residual sweep")
    p.add_argument("--reduction", default="general",
                   choices=[r.value for r in OdeReduction])
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--points", type=int, default=9)
    p.add_argument("--h", type=float, default=None,
                   help="stencil step (default: per-point scaling)")
    _add_common(p)

    p = sub.add_parser("ppp", help="integer triples realizing exact independence")
    p.add_argument("--scan", dest="scan_max", type=int, default=None,
                   metavar="N_MAX")
    p.add_argument("--n", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("inaccuracy", help="expected assignment penalty")
    p.add_argument("--true", required=True, help="true distribution")
    p.add_argument("--assigned", required=True)
    p.add_argument("--alpha", default="2", help="order, or start:stop:step")
    _add_common(p)

    return parser


def _error_record(exc: Exception) -> None:
    record = {"error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(record), file=sys.stderr)


def run(argv: Sequence[str] | None = None) -> int:
    """Dispatch an argument vector; returns the process exit code."""
    parser = _build_parser()
    try:
        try:
            namespace = parser.parse_args(argv)
        except SystemExit as exc:  # --help
            return int(exc.code or 0)
        bindings = {key: value for key, value in vars(namespace).items()
                    if key not in ("subcommand", "format", "output")}
        config = RunConfig(
            subcommand=Subcommand(namespace.subcommand),
            bindings=bindings,
            output_format=namespace.format,
            output_path=namespace.output,
        )
        header, rows, payload = _HANDLERS[config.subcommand](config)
        text = _render(config, header, rows, payload)
    except UsageError as exc:
        _error_record(exc)
        return 2
    except DomainError as exc:
        _error_record(exc)
        return 3
    except NumericalError as exc:
        _error_record(exc)
        return 4
    if config.output_path is not None:
        Path(config.output_path).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()

"""Command-line front end.

Subcommands
-----------
sample          draw copula observations and write them as CSV
scatter         bivariate sample preset (n=5000) for scatter plots
stdf-eval       evaluate the stable tail dependence function / copula cdf
levy-roundtrip  max round-trip errors of the Levy-measure bijection
bench           dimension-scaling benchmark of the two samplers

The model is a JSON array of margin specs, inline or @file:

    evcop sample --model '[{"family":"uniform_half"},{"family":"uniform_half"}]' \
                 --n 1000 --seed 7 --method definetti --out sample.csv

Seeds resolve as --seed, then the EVCOP_SEED environment variable,
then 0; identical configuration and seed gives byte-identical output.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from . import levy
from .distributions import make_distribution
from .errors import EvcopError
from .frailty import sample_definetti
from .pickands import sample_pickands
from .statlab import bench_scaling
from .stdf import (
    CopulaModel,
    copula_cdf,
    stdf_closed_form,
    stdf_inclusion_exclusion,
    stdf_monte_carlo,
)

FIGURE_MODEL = '[{"family":"frechet","theta":0.1},{"family":"weibull_galambos","theta":0.3}]'


def _parse_model(text) -> CopulaModel:
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            text = fh.read()
    specs = json.loads(text)
    if isinstance(specs, dict):
        specs = [specs]
    return CopulaModel(tuple(make_distribution(s) for s in specs))


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("EVCOP_SEED")
    if env is not None:
        return int(env)
    return 0


def _parse_vector(text):
    return np.array([float(v) for v in text.split(",")])


def _pick_sampler(model, method):
    if method == "auto":
        bounded_continuous = all(
            m.is_continuous and np.isfinite(m.upper_support) for m in model.margins
        )
        method = "definetti" if bounded_continuous else "pickands"
    if method == "definetti":
        return sample_definetti, method
    if method == "pickands":
        return sample_pickands, method
    raise EvcopError(f"unknown sampling method {method!r}")


def _write_csv(values, out_path):
    d = values.shape[1]
    lines = ["u" + ",u".join(str(j + 1) for j in range(d))]
    for row in values:
        lines.append(",".join(format(v, ".17g") for v in row))
    text = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _cmd_sample(args):
    model = _parse_model(args.model)
    seed = _resolve_seed(args)
    sampler, method = _pick_sampler(model, args.method)
    batch = sampler(
        model, args.n, seed=seed, engine=args.engine, threads=args.threads
    )
    _write_csv(batch.values, args.out)
    return 0


def _cmd_stdf_eval(args):
    model = _parse_model(args.model)
    if args.t is None and args.u is None:
        raise EvcopError("stdf-eval needs --t and/or --u")

    def evaluate(t):
        if args.method == "closed_form":
            return stdf_closed_form(model, t)
        if args.method == "inclusion_exclusion":
            return stdf_inclusion_exclusion(model, t)
        if args.method == "monte_carlo":
            return stdf_monte_carlo(model, t, n=args.n, seed=_resolve_seed(args))
        if model.closed_form_family():
            return stdf_closed_form(model, t)
        return stdf_inclusion_exclusion(model, t)

    if args.t is not None:
        value = evaluate(_parse_vector(args.t))
        print(f"stdf {value.value:.12g} stderr {value.estimator_stderr:.3g}")
    if args.u is not None:
        u = _parse_vector(args.u)
        if np.any(u == 0.0):
            print("copula 0")
        elif np.all(u == 1.0):
            print("copula 1")
        else:
            value = evaluate(-np.log(u))
            print(f"copula {math.exp(-value.value):.12g} "
                  f"stderr {value.estimator_stderr:.3g}")
    return 0


_ROUNDTRIP_SPECS = (
    {"family": "uniform_half"},
    {"family": "frechet", "theta": 0.5},
    {"family": "weibull_galambos", "theta": 0.7},
    {"family": "bounded_exp", "theta": 0.5},
)


def _cmd_levy_roundtrip(args):
    for spec in _ROUNDTRIP_SPECS:
        dist = make_distribution(spec)
        nu = levy.levy_from_distribution(dist)
        back = levy.distribution_from_levy(nu, is_continuous=True)
        hi = dist.quantile(1.0 - 1e-9) if np.isinf(dist.upper_support) else dist.upper_support
        grid = np.linspace(1e-9, hi, 200)
        err = float(np.max(np.abs(back.cdf(grid) - dist.cdf(grid))))
        name = spec["family"] + (f"({spec['theta']})" if "theta" in spec else "")
        print(f"{name:<22} distribution->measure->distribution max error {err:.3e}")
    # atomic measure, rebuilt from its survival function alone
    theta = 0.5
    atom = levy.LevyMeasure.from_atom(1.0 / theta, -math.log(1.0 - theta))
    dist = levy.distribution_from_levy(atom)
    nu_back = levy.levy_from_distribution(dist)
    grid = np.linspace(1e-6, 3.0, 200)
    err = float(
        np.max(np.abs(np.asarray(nu_back.survival(grid)) - np.asarray(atom.survival(grid))))
    )
    print(f"{'atomic(two_point 0.5)':<22} measure->distribution->measure max error {err:.3e}")
    return 0


def _cmd_bench(args):
    dims = tuple(int(v) for v in args.dims.split(","))
    report = bench_scaling(
        dims, n=args.n, seed=_resolve_seed(args),
        repetitions=args.repetitions, engine=args.engine,
    )
    print(report.format_table())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evcop",
        description="extreme-value copulas from expected scaled maxima",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, model_default=None, n_default=None):
        p.add_argument("--model", default=model_default,
                       required=model_default is None,
                       help="JSON array of margin specs, inline or @file")
        p.add_argument("--seed", type=int, default=None,
                       help="RNG seed (default: EVCOP_SEED env var, then 0)")
        if n_default is not None:
            p.add_argument("--n", type=int, default=n_default)

    p = sub.add_parser("sample", help="draw copula observations as CSV")
    add_common(p, n_default=1000)
    p.add_argument("--method", choices=("definetti", "pickands", "auto"),
                   default="auto")
    p.add_argument("--engine", choices=("batch", "rows"), default="batch")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("scatter", help="bivariate scatter preset (n=5000)")
    add_common(p, model_default=FIGURE_MODEL, n_default=5000)
    p.add_argument("--method", choices=("definetti", "pickands", "auto"),
                   default="auto")
    p.add_argument("--engine", choices=("batch", "rows"), default="batch")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("stdf-eval", help="evaluate stdf and copula cdf")
    add_common(p, n_default=10**6)
    p.add_argument("--t", default=None, help="comma-separated weights")
    p.add_argument("--u", default=None, help="comma-separated point in [0,1]^d")
    p.add_argument("--method",
                   choices=("auto", "closed_form", "inclusion_exclusion",
                            "monte_carlo"),
                   default="auto")
    p.set_defaults(func=_cmd_stdf_eval)

    p = sub.add_parser("levy-roundtrip",
                       help="max bijection round-trip error per family")
    p.set_defaults(func=_cmd_levy_roundtrip)

    p = sub.add_parser("bench", help="sampler scaling benchmark")
    p.add_argument("--dims", default="2,5,10,25,50,100")
    p.add_argument("--n", type=int, default=5000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--repetitions", type=int, default=3)
    p.add_argument("--engine", choices=("rows", "batch"), default="rows")
    p.add_argument("--out", default=None, help="also write a JSON report here")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (EvcopError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

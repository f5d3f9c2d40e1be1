"""
Interface de linha de comando para o phasecrit.
"""

import argparse
import csv
import io
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from pathlib import Path
from typing import Callable, List, Optional

import numpy as np

from phasecrit import __version__
from phasecrit.exact_oracle import (
    bimodality_report,
    gadget_conditional_Z,
    glauber_run,
    partition_function,
    z_alpha_beta_table,
)
from phasecrit.models import GadgetGraph, Regime, RunConfig, SpinModel
from phasecrit.moment_analysis import (
    asymptotic_prefactors,
    classify_phi1_critical_points,
    exact_first_moment,
    gadget_first_moment_ratio,
    gadget_second_moment_ratio,
    moment_ratio_limit,
    phi1,
    round_fractions,
    verify_phi2_maximum,
)
from phasecrit.poly_verify import ising_bias_checks, numeric_cross_check, verify_hardcore_case
from phasecrit.random_graphs import (
    RNG_NAME,
    count_cycles,
    read_graph,
    sample_bipartite_regular,
    sample_gadget,
    write_graph,
)
from phasecrit.smallgraph_conditioning import conditioned_cycle_moment_mc, conditioning_data
from phasecrit.tree_criticality import (
    check_nonuniqueness_inequality,
    classify_uniqueness,
    solve_tree_fixed_points,
)
from phasecrit.utils.config import (
    get_boundary_tol,
    get_default_seed,
    get_fixed_point_tol,
    get_log_level,
    get_scaling_tol,
    get_threads,
)
from phasecrit.utils.serialization import serialize

logger = logging.getLogger(__name__)

SCHEMA = "phasecrit/1"

SWEEP_COLUMNS = [
    "parameter",
    "value",
    "delta",
    "b1",
    "b2",
    "lambda",
    "regime",
    "omega",
    "omega_star",
    "p_plus",
    "p_minus",
    "phi1",
    "ratio_limit",
    "error",
]

PRESETS = {
    "ising-delta3": ("b", lambda v: SpinModel.ising(v, 3), "0.05:0.30:0.01"),
    "hardcore-delta3": ("lambda", lambda v: SpinModel.hard_core(v, 3), "1:10:0.5"),
    "hardcore-delta4": ("lambda", lambda v: SpinModel.hard_core(v, 4), "0.5:5:0.25"),
    "hardcore-delta5": ("lambda", lambda v: SpinModel.hard_core(v, 5), "0.5:3:0.125"),
}


def parse_grid(text: str) -> np.ndarray:
    """
    Converte "a:b:passo" em valores de a até b inclusive.

    Raises:
        ValueError: Se o formato for inválido ou o passo não for positivo
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"Grade deve ter o formato a:b:passo: {text!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0 or stop < start:
        raise ValueError(f"Grade inválida: {text!r}")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), 12)


def parse_eta(text: str) -> List[int]:
    """Converte "η₁⁻,η₁⁺,η₂⁻,η₂⁺" em lista de inteiros."""
    values = [int(v) for v in text.split(",")]
    if len(values) != 4:
        raise ValueError(f"eta deve ter quatro inteiros separados por vírgula: {text!r}")
    return values


def _model_from_args(args: argparse.Namespace, delta: Optional[int] = None) -> SpinModel:
    if args.b1 is None:
        raise ValueError("--b1 é obrigatório para este subcomando")
    return SpinModel(b1=args.b1, b2=args.b2, lam=args.lam, delta=delta or args.delta)


def run_tree(args: argparse.Namespace) -> dict:
    model = _model_from_args(args)
    data = solve_tree_fixed_points(model)
    result = {"model": model, "phase": data, "uniqueness": classify_uniqueness(model)}
    if data.regime in (Regime.NON_UNIQUENESS, Regime.BOUNDARY):
        result["inequality"] = check_nonuniqueness_inequality(model)
    return result


def run_moments(args: argparse.Namespace) -> dict:
    model = _model_from_args(args)
    data = solve_tree_fixed_points(model)
    result = {"model": model, "phase": data}
    point = phi1(model, data.p_plus, data.p_minus)
    result["phi1"] = point.phi1
    result["optimizer"] = point.X

    if args.mode == "exact":
        if args.n is None:
            raise ValueError("--exact exige --n")
        alpha, beta = round_fractions(args.n, data.p_plus, data.p_minus)
        log_moment = exact_first_moment(model, args.n, alpha, beta)
        result["exact"] = {
            "n": args.n,
            "alpha": alpha,
            "beta": beta,
            "log_first_moment": log_moment,
            "laplace_scaled": float(np.exp(log_moment - args.n * phi1(model, alpha, beta).phi1) * args.n),
        }
    elif args.mode == "ratio":
        result["ratio_limit"] = moment_ratio_limit(model, data)
        result["phi2_maximum"] = verify_phi2_maximum(model, data=data, grid=args.grid)
    else:
        result["critical_points"] = classify_phi1_critical_points(model, data)
        if data.regime == Regime.NON_UNIQUENESS:
            constants = asymptotic_prefactors(model, data)
            result["constants"] = constants
            result["ratio_limit"] = constants.ratio_limit
    return result


def run_sample(args: argparse.Namespace) -> dict:
    graph = sample_bipartite_regular(args.n, args.delta, seed=args.seed)
    result = {"kind": "bipartite_regular", "n": args.n, "delta": args.delta, "seed": graph.seed}
    if args.cycles:
        result["cycles"] = count_cycles(graph, args.cycles)
    if args.out:
        result["path"] = str(write_graph(graph, args.out))
    return result


def run_gadget(args: argparse.Namespace) -> dict:
    gadget = sample_gadget(args.n, args.delta, args.theta, args.psi, seed=args.seed)
    result = {
        "n": gadget.n,
        "delta": gadget.delta,
        "k": gadget.k,
        "ell": gadget.ell,
        "m_prime": gadget.m_prime,
        "num_vertices": gadget.num_vertices,
        "label_sizes": {name: len(vertices) for name, vertices in gadget.labels.items()},
        "asymptotic_warning": gadget.asymptotic_warning,
        "seed": gadget.seed,
    }
    if args.b1 is not None:
        model = _model_from_args(args)
        eta = parse_eta(args.eta)
        data = solve_tree_fixed_points(model)
        result["first_moment_ratio"] = gadget_first_moment_ratio(
            model, data.p_plus, data.p_minus, eta, data
        )
        result["second_moment_ratio"] = gadget_second_moment_ratio(model, eta, data)
    if args.out:
        result["path"] = str(write_graph(gadget, args.out))
    return result


def _write_table_csv(table: np.ndarray, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["a", "b", "log_z"])
        for (a, b), value in np.ndenumerate(table):
            writer.writerow([a, b, serialize(float(value))])


def run_oracle(args: argparse.Namespace) -> dict:
    graph = read_graph(args.graph)
    model = _model_from_args(args, delta=graph.delta)
    if isinstance(graph, GadgetGraph):
        if not args.eta:
            raise ValueError("Gadgets exigem --eta")
        summary = gadget_conditional_Z(graph, model, parse_eta(args.eta))
        if args.csv:
            _write_table_csv(summary.log_z_table, args.csv)
        return {"model": model, "gadget_conditional": summary}

    result = {"model": model}
    if args.mode == "table":
        summary = z_alpha_beta_table(graph, model)
        result["table"] = summary
        if args.csv:
            _write_table_csv(summary.log_z_table, args.csv)
    elif args.mode == "bimodality":
        result["bimodality"] = bimodality_report(graph, model, rho=args.rho)
    elif args.mode == "glauber":
        run = glauber_run(graph, model, args.steps, seed=args.seed)
        run.pop("signs")
        result["glauber"] = run
    else:
        result["logZ"] = partition_function(graph, model)
    return result


def run_smallgraph(args: argparse.Namespace) -> dict:
    model = _model_from_args(args)
    result = {"model": model, "conditioning": conditioning_data(model, max_len=args.max_len)}
    if args.mc:
        result["monte_carlo"] = conditioned_cycle_moment_mc(
            model,
            args.n,
            args.cycle,
            args.trials,
            seed=args.seed,
            workers=args.workers or get_threads(),
        )
    return result


def _verify_one(d: int, cross_check: int, seed: Optional[int]) -> dict:
    report = verify_hardcore_case(d)
    if cross_check:
        report["cross_check"] = numeric_cross_check(d, samples=cross_check, seed=seed)
    return report


def run_appendix_verify(args: argparse.Namespace) -> dict:
    ds = sorted(set(args.d))
    workers = min(len(ds), get_threads())
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_verify_one, ds, [args.cross_check] * len(ds), [args.seed] * len(ds)))
    else:
        reports = [_verify_one(d, args.cross_check, args.seed) for d in ds]

    result = {"cases": reports, "passed": all(r["passed"] for r in reports)}
    if args.ising_bias_grid:
        result["ising_bias"] = ising_bias_checks(parse_grid(args.ising_bias_grid))
    if args.dump_certificate:
        payload = {str(r["d"]): serialize(r["certificate"]) for r in reports}
        Path(args.dump_certificate).write_text(
            json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=True), encoding="utf-8"
        )
    return result


def sweep_row(parameter: str, factory: Callable[[float], SpinModel], value: float) -> dict:
    """
    Uma linha da varredura; falhas viram a coluna error.
    """
    row = {column: "" for column in SWEEP_COLUMNS}
    row.update({"parameter": parameter, "value": value})
    try:
        model = factory(value)
        row.update({"delta": model.delta, "b1": model.b1, "b2": model.b2, "lambda": model.lam})
        data = solve_tree_fixed_points(model)
        row.update(
            {
                "regime": data.regime.value,
                "omega": data.omega,
                "omega_star": data.omega_star,
                "p_plus": data.p_plus,
                "p_minus": data.p_minus,
                "phi1": phi1(model, data.p_plus, data.p_minus).phi1,
            }
        )
        if data.regime == Regime.NON_UNIQUENESS:
            row["ratio_limit"] = moment_ratio_limit(model, data)
    except Exception as e:
        logger.warning("Varredura falhou em %s=%s: %s", parameter, value, e)
        row["error"] = f"{type(e).__name__}: {e}"
    return row


def run_sweep(args: argparse.Namespace) -> dict:
    parameter, factory, default_grid = PRESETS[args.preset]
    grid_text = args.b_grid if parameter == "b" else args.lambda_grid
    if (parameter == "b" and args.lambda_grid) or (parameter == "lambda" and args.b_grid):
        raise ValueError(f"O preset {args.preset} varre {parameter}; use a grade correspondente")
    values = parse_grid(grid_text or default_grid)
    logger.info("Varredura %s com %d pontos", args.preset, len(values))
    with ThreadPoolExecutor(max_workers=min(get_threads(), len(values))) as pool:
        rows = list(pool.map(lambda v: sweep_row(parameter, factory, float(v)), values))
    return {"preset": args.preset, "rows": rows}


def rows_to_csv(rows: List[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: serialize(value) for key, value in row.items()})
    return buffer.getvalue()


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="Semente (padrão: PHASECRIT_SEED).")
    parser.add_argument("--report", help="Grava o relatório JSON neste arquivo.")
    parser.add_argument("--json", action="store_true", help="Emite o relatório em JSON (padrão).")
    parser.add_argument("-v", "--verbose", action="store_true", help="Ativa logging em nível INFO.")


def _add_model(parser: argparse.ArgumentParser, delta: bool = True) -> None:
    if delta:
        parser.add_argument("--delta", type=int, required=True, help="Grau Δ.")
    parser.add_argument("--b1", type=float, default=None, help="Atividade B₁ das arestas (−,−).")
    parser.add_argument("--b2", type=float, default=1.0, help="Atividade B₂ das arestas (+,+).")
    parser.add_argument("--lambda", dest="lam", type=float, default=1.0, help="Fugacidade λ do spin −1.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasecrit",
        description="Análise de segundo momento de sistemas de 2 spins antiferromagnéticos.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    tree = sub.add_parser("tree", help="Pontos fixos e regime de unicidade na árvore.")
    _add_model(tree)
    tree.set_defaults(handler=run_tree)

    moments = sub.add_parser("moments", help="Expoentes, constantes e razão dos momentos.")
    _add_model(moments)
    moments.add_argument("--n", type=int, default=None, help="Tamanho de cada lado (modo exato).")
    mode = moments.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--asymptotic", dest="mode", action="store_const", const="asymptotic")
    mode.add_argument("--ratio", dest="mode", action="store_const", const="ratio")
    moments.add_argument("--grid", type=int, default=41, help="Pontos por eixo na busca de φ₂.")
    moments.set_defaults(handler=run_moments, mode="asymptotic")

    sample = sub.add_parser("sample", help="Amostra G(n, Δ).")
    sample.add_argument("--n", type=int, required=True)
    sample.add_argument("--delta", type=int, required=True)
    sample.add_argument("--out", help="Arquivo JSON do grafo.")
    sample.add_argument("--cycles", type=int, default=0, help="Conta ciclos até este comprimento.")
    sample.set_defaults(handler=run_sample)

    gadget = sub.add_parser("gadget", help="Amostra o gadget H.")
    _add_model(gadget)
    gadget.add_argument("--n", type=int, required=True)
    gadget.add_argument("--theta", type=float, required=True)
    gadget.add_argument("--psi", type=float, required=True)
    gadget.add_argument("--eta", default="1,0,0,1", help="η₁⁻,η₁⁺,η₂⁻,η₂⁺ para as razões.")
    gadget.add_argument("--out", help="Arquivo JSON do gadget.")
    gadget.set_defaults(handler=run_gadget)

    oracle = sub.add_parser("oracle", help="Oráculo exato em grafos pequenos.")
    _add_model(oracle, delta=False)
    oracle.add_argument("--graph", required=True, help="Grafo gravado por sample ou gadget.")
    oracle_mode = oracle.add_mutually_exclusive_group()
    oracle_mode.add_argument("--table", dest="mode", action="store_const", const="table")
    oracle_mode.add_argument("--bimodality", dest="mode", action="store_const", const="bimodality")
    oracle_mode.add_argument("--glauber", dest="mode", action="store_const", const="glauber")
    oracle.add_argument("--rho", type=float, default=None)
    oracle.add_argument("--steps", type=int, default=100000)
    oracle.add_argument("--eta", default=None, help="η para gadgets.")
    oracle.add_argument("--csv", help="Exporta a tabela log Z^{α,β} em CSV.")
    oracle.set_defaults(handler=run_oracle, mode="partition")

    small = sub.add_parser("smallgraph", help="λᵢ, δᵢ e condicionamento em ciclos.")
    _add_model(small)
    small.add_argument("--max-len", type=int, default=20)
    small.add_argument("--mc", action="store_true", help="Estimativa Monte Carlo condicionada.")
    small.add_argument("--n", type=int, default=12)
    small.add_argument("--cycle", type=int, default=4, help="Comprimento do ciclo no Monte Carlo.")
    small.add_argument("--trials", type=int, default=10000)
    small.add_argument("--workers", type=int, default=None)
    small.set_defaults(handler=run_smallgraph)

    appendix = sub.add_parser("appendix-verify", help="Certificados polinomiais do caso hard-core.")
    appendix.add_argument("--d", type=int, nargs="+", choices=(2, 3, 4), required=True)
    appendix.add_argument("--dump-certificate", help="Grava os certificados em JSON.")
    appendix.add_argument("--cross-check", type=int, default=0, help="Amostras da checagem numérica.")
    appendix.add_argument("--ising-bias-grid", default=None, help="Grade a:b:passo de B para o Ising Δ=3.")
    appendix.set_defaults(handler=run_appendix_verify)

    sweep = sub.add_parser("sweep", help="Varredura de parâmetros com saída CSV.")
    sweep.add_argument("--preset", choices=sorted(PRESETS), required=True)
    sweep.add_argument("--b-grid", default=None)
    sweep.add_argument("--lambda-grid", default=None)
    sweep.add_argument("--csv", help="Arquivo CSV (padrão: saída padrão).")
    sweep.set_defaults(handler=run_sweep)

    for subparser in sub.choices.values():
        _add_common(subparser)
    return parser


def _configure_logging(verbose: bool) -> None:
    level = logging.INFO if verbose else getattr(logging, get_log_level(), logging.WARNING)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _run_config(args: argparse.Namespace) -> RunConfig:
    params = {
        key: value
        for key, value in vars(args).items()
        if key not in ("handler", "command", "seed", "report", "verbose", "json")
    }
    return RunConfig(
        command=args.command,
        params=params,
        seed=get_default_seed() if args.seed is None else args.seed,
        output=args.report,
        fmt="csv" if args.command == "sweep" else "json",
        tolerances={
            "scaling": get_scaling_tol(),
            "fixed_point": get_fixed_point_tol(),
            "boundary": get_boundary_tol(),
        },
    )


def main(argv: Optional[List[str]] = None) -> int:
    """
    Executa um subcomando e emite o relatório.

    Returns:
        0 em sucesso, 1 em falha de cálculo (erros de uso saem com 2 pelo argparse)
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    start = time.perf_counter()
    try:
        results = args.handler(args)
        report = {
            "schema": SCHEMA,
            "version": __version__,
            "rng": RNG_NAME,
            "config": _run_config(args),
            "results": results,
            "wall_time": time.perf_counter() - start,
        }
        text = json.dumps(serialize(report), indent=2, ensure_ascii=False, sort_keys=True)

        if args.command == "sweep":
            table = rows_to_csv(results["rows"])
            if args.csv:
                Path(args.csv).write_text(table, encoding="utf-8")
            else:
                sys.stdout.write(table)
        if args.report:
            Path(args.report).write_text(text, encoding="utf-8")
        elif args.command != "sweep" or args.csv:
            print(text)
        return 0

    except Exception as e:
        logger.error("Falha em %s: %s", args.command, e)
        error = {"schema": SCHEMA, "error": {"type": type(e).__name__, "message": str(e)}}
        print(json.dumps(error, ensure_ascii=False), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

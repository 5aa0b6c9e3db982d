"""Argument parser for the randlab command line."""
import argparse
from pathlib import Path

from services.mltests import BATTERIES, FINITE_TESTS, SEQUENTIAL_TESTS
from services.refmachine import CODEC_IDS

PREDICTORS = ["constant0", "constant1", "copy_last", "majority", "markov1", "markov2", "markov3"]
MONTE_CARLO = ["ones", "blocks", "chernoff", "runs", "all_blocks"]


def _add_source_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("bit source")
    kind = group.add_mutually_exclusive_group()
    kind.add_argument("--champernowne", action="store_true", help="Champernowne sequence (see --base)")
    kind.add_argument("--prng", action="store_true", help="seeded PCG64 stream (see --seed)")
    kind.add_argument("--constant", choices=["0", "1"], help="constant stream")
    kind.add_argument("--periodic", metavar="PATTERN", help="PATTERN repeated (see --pre-period)")
    group.add_argument("--base", type=int, default=2)
    group.add_argument("--pre-period", default="", metavar="BITS")
    group.add_argument("--seed", type=int, default=None)


def _add_input_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--bits", help="bitstring given inline")
    parser.add_argument("--in", "--input", dest="input", type=Path, help="bitstring file (ascii or packed)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="randlab", description="Desk-scale algorithmic randomness lab")
    parser.add_argument("--config", type=Path, help="flat key=value config file")
    parser.add_argument("--out", type=Path, help="JSON-lines report path (default stdout)")
    parser.add_argument("--deterministic", action="store_true", help="omit the timestamp from reports")
    parser.add_argument("--workers", type=int)
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--artifact", type=Path, help="also write the produced bitstring here")
    parser.add_argument("--format", dest="bit_format", choices=["ascii", "packed"])
    parser.add_argument("--max-len", type=int)
    parser.add_argument("--budget", dest="step_budget", type=int)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a bit sequence")
    _add_source_options(gen)
    gen.add_argument("--count", type=int, required=True)

    test = sub.add_parser("test", help="run Martin-Lof tests and statistics")
    _add_input_options(test)
    test.add_argument("--battery", choices=sorted(BATTERIES))
    test.add_argument("--axiom", choices=sorted(FINITE_TESTS) + ["universal"], help="exhaustive counting check")
    test.add_argument("--sequential", choices=sorted(SEQUENTIAL_TESTS))
    test.add_argument("--horizon", type=int, default=64)
    test.add_argument("--integral", metavar="MEASURE", help="lambda | bernoulli:P | point:B")
    test.add_argument("--monte-carlo", choices=MONTE_CARLO)
    test.add_argument("--n", type=int, default=1 << 16)
    test.add_argument("--block", default="01")
    test.add_argument("--trials", type=int)
    test.add_argument("--seed", type=int)

    complexity = sub.add_parser("complexity", help="certified upper bounds on C and K")
    _add_input_options(complexity)
    complexity.add_argument("--condition", default="")
    complexity.add_argument("--kind", choices=["C", "K"], default="C")
    complexity.add_argument("--codec", choices=sorted(CODEC_IDS))
    complexity.add_argument("--oscillation", action="store_true", help="deficiency of every prefix")

    omega = sub.add_parser("omega", help="dovetail the halting probability")
    omega.add_argument("--max-len", dest="omega_max_len", type=int, default=12)
    omega.add_argument("--phases", type=int, default=10_000)
    omega.add_argument("--halting", type=int, metavar="N", help="decide halting for programs up to N bits")
    omega.add_argument("--probe", type=int, metavar="N", help="C upper bound of the first N bits")

    select = sub.add_parser("select", help="place selection")
    _add_input_options(select)
    _add_source_options(select)
    select.add_argument("--rule", default="select_all", help="library rule name or rule expression")
    select.add_argument("--reverse", type=int, metavar="N", help="KL rule reading N, N-1, ..., 1")
    select.add_argument("--kl", action="store_true", help="run the rule through the KL engine")
    select.add_argument("--limit", type=int, default=1000)
    select.add_argument("--profile", type=int, metavar="HORIZON", help="frequency stability report")
    select.add_argument("--p", type=float, default=0.5)
    select.add_argument("--eps", type=float, default=0.05)

    tourney = sub.add_parser("tourney", help="tournament incompressibility")
    tourney.add_argument("--n", type=int, required=True)
    tourney.add_argument("--bits", help="E(T) of a tournament to analyse")
    tourney.add_argument("--trials", type=int)
    tourney.add_argument("--seed", type=int)

    chaos = sub.add_parser("chaos", help="doubling-map orbits and predictors")
    _add_source_options(chaos)
    chaos.add_argument("--steps", type=int, default=1000)
    chaos.add_argument("--predictor", action="append", choices=PREDICTORS)

    predict = sub.add_parser("predict", help="mixture prediction")
    predict.add_argument("--models", default="lambda,bernoulli:3/4", help="comma-separated measures")
    predict.add_argument("--truth", type=int, default=1, help="index of the true measure in --models")
    predict.add_argument("--prefix", help="report mixture_next and posteriors after this prefix")
    predict.add_argument("--horizon", type=int, default=1000)
    predict.add_argument("--trials", type=int)
    predict.add_argument("--seed", type=int)
    predict.add_argument("--universal", action="store_true", help="also report the enumerated universal mass")
    return parser

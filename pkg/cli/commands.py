"""Subcommand handlers. Each one writes its records through the report writer it is given."""
import argparse
import logging
from typing import Callable, Dict, Optional

from core.config import RunConfig
from models import ComplexityKind
from repositories import ReportWriter, bitstrings_repo
from services import chaos_service, omega_service, predictor_service, seqstats_service, tourney_service
from services.bitcore import validate_bits
from services.measures import parse_measure
from services.mltests import (
    FINITE_TESTS,
    SEQUENTIAL_TESTS,
    check_axiom,
    integral_test_lower,
    run_battery,
    run_sequential,
    universal_finite_test,
)
from services.refmachine import complexity_upper, compressor_bound, oscillation_profile
from services.selection import (
    RULE_LIBRARY,
    frequency_profile,
    lift_mwc,
    parse_rule,
    reverse_window,
    select_kl,
    select_mwc,
    stability_report,
)
from services.sources_service import BitSource, champernowne, open_source

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace, RunConfig, ReportWriter], None]


def _seed(args: argparse.Namespace, config: RunConfig) -> int:
    return config.seed if getattr(args, "seed", None) is None else args.seed


def _load_bits(args: argparse.Namespace, config: RunConfig) -> str:
    if getattr(args, "bits", None) is not None:
        return validate_bits(args.bits)
    path = getattr(args, "input", None) or config.input_path
    if path is None:
        raise ValueError("no input: pass --bits or --in FILE")
    return bitstrings_repo.read(path)


def _source(args: argparse.Namespace, config: RunConfig) -> Optional[BitSource]:
    if args.champernowne:
        return open_source("champernowne", base=args.base)
    if args.prng:
        return open_source("prng", seed=_seed(args, config))
    if args.constant is not None:
        return open_source("constant", bit=args.constant)
    if args.periodic is not None:
        return open_source("periodic", pattern=args.periodic, prefix=args.pre_period)
    return None


def _write_artifact(bits: str, config: RunConfig) -> None:
    if config.artifact_path is not None:
        bitstrings_repo.write(config.artifact_path, bits, config.bit_format)


def run_gen(args: argparse.Namespace, config: RunConfig, writer: ReportWriter) -> None:
    source = _source(args, config)
    if source is None:
        raise ValueError("gen needs a source: --champernowne, --prng, --constant or --periodic")
    if args.champernowne and args.base != 2:
        # --count counts native digits; the bit stream spends source.width bits on each
        bits = source.prefix(args.count * source.width)
        record = {**source.describe(), "count": args.count, "digits": champernowne(args.base, args.count)}
    else:
        bits = source.prefix(args.count)
        record = {**source.describe(), "count": args.count}
    record.update(ones=bits.count("1"), bits=bits)
    writer.write(record, kind="sequence")
    _write_artifact(bits, config)


def run_test(args: argparse.Namespace, config: RunConfig, writer: ReportWriter) -> None:
    trials = args.trials or config.trials
    seed = _seed(args, config)
    if args.monte_carlo is not None:
        n = args.n
        if args.monte_carlo == "ones":
            records = seqstats_service.monte_carlo_ones(n, trials, seed)
        elif args.monte_carlo == "blocks":
            records = seqstats_service.monte_carlo_blocks(
                n, args.block, trials, seed, budget=config.step_budget, max_len=config.max_len
            )
        elif args.monte_carlo == "chernoff":
            records = seqstats_service.chernoff_empirical(n, 0.5, [n**0.5 * k / 4 for k in range(9)], seed=seed)
        elif args.monte_carlo == "runs":
            records = seqstats_service.longest_run_trials(n, trials, seed)
        else:
            records = seqstats_service.all_blocks_trials(n, trials, seed)
        writer.write_all(records, kind="monte_carlo")
        return

    if args.axiom is not None:
        if args.axiom == "universal":
            test = universal_finite_test(budget=config.step_budget, max_len=config.max_len)
        else:
            test = FINITE_TESTS[args.axiom]
        rows = check_axiom(test, config.axiom_max_n)
        writer.write_all(rows, kind="axiom")
        failures = [row for row in rows if not row.ok]
        if failures:
            logger.warning(f"{test.name}: {len(failures)} counting rows exceed 2^(n-m)")
        return

    bits = _load_bits(args, config)
    if args.sequential is not None:
        writer.write(run_sequential(SEQUENTIAL_TESTS[args.sequential], bits, args.horizon), kind="sequential")
        return
    if args.integral is not None:
        score = integral_test_lower(
            bits, parse_measure(args.integral), budget=config.step_budget, max_len=config.max_len
        )
        writer.write({"measure": args.integral, "n": len(bits), "score_lower": score}, kind="integral")
        return
    records = run_battery(
        bits, args.battery or config.battery, budget=config.step_budget, max_len=config.max_len
    )
    writer.write_all(records, kind="test")


def run_complexity(args: argparse.Namespace, config: RunConfig, writer: ReportWriter) -> None:
    bits = _load_bits(args, config)
    if args.oscillation:
        points = oscillation_profile(bits, budget=config.step_budget, max_len=config.max_len)
        writer.write_all(points, kind="oscillation")
        return
    estimate = complexity_upper(
        bits,
        args.condition,
        budget=config.step_budget,
        max_len=config.max_len,
        kind=ComplexityKind(args.kind),
    )
    writer.write(estimate, kind="complexity")
    if args.codec is not None:
        writer.write(compressor_bound(bits, args.codec), kind="compressor")


def run_omega(args: argparse.Namespace, config: RunConfig, writer: ReportWriter) -> None:
    approx = omega_service.dovetail_omega(args.omega_max_len, args.phases)
    writer.write_all(approx.trace, kind="omega_trace")
    writer.write(
        {
            "max_len": approx.max_len,
            "phases": approx.phases,
            "numerator_hex": approx.value.numerator_hex,
            "exponent": approx.value.exponent,
            "halted": len(approx.contributing),
            "exhausted": approx.exhausted,
        },
        kind="omega",
    )
    if args.halting is not None:
        halting = omega_service.halting_set_from_omega(approx, args.halting)
        writer.write({"n": args.halting, "halting": halting}, kind="halting_set")
    if args.probe is not None:
        writer.write(omega_service.probe_omega_compressibility(approx, args.probe), kind="omega_probe")


def run_select(args: argparse.Namespace, config: RunConfig, writer: ReportWriter) -> None:
    stream = _source(args, config) or _load_bits(args, config)
    if args.profile is not None:
        profile = frequency_profile(stream, args.profile)
        writer.write(stability_report(profile, args.p, args.eps), kind="stability")
        return
    if args.reverse is not None:
        writer.write(select_kl(reverse_window(args.reverse), stream, args.limit), kind="kl_selection")
        return
    rule = RULE_LIBRARY.get(args.rule) or parse_rule(args.rule)
    if args.kl:
        selection = select_kl(lift_mwc(rule), stream, args.limit)
        writer.write(selection, kind="kl_selection")
        _write_artifact(selection.bits, config)
    else:
        selection = select_mwc(rule, stream, args.limit)
        writer.write({"rule": rule.name, **selection.model_dump()}, kind="mwc_selection")
        _write_artifact(selection.bits, config)


def run_tourney(args: argparse.Namespace, config: RunConfig, writer: ReportWriter) -> None:
    if args.bits is not None:
        tournament = tourney_service.decode(args.bits, args.n)
        witness = tourney_service.largest_transitive(tournament)
        compressed = tourney_service.compress_with_witness(tournament, witness)
        writer.write(witness, kind="witness")
        writer.write(
            {**compressed.model_dump(), "savings": tourney_service.savings(args.n, witness.size)},
            kind="compressed",
        )
        return
    trials = args.trials or config.trials
    writer.write(tourney_service.sample_and_check(args.n, trials, _seed(args, config)), kind="sample_check")


def run_chaos(args: argparse.Namespace, config: RunConfig, writer: ReportWriter) -> None:
    source = _source(args, config) or open_source("prng", seed=_seed(args, config))
    state = chaos_service.MicroState(source)
    orbit = chaos_service.orbit_observables(state, args.steps)
    writer.write({**source.describe(), "steps": args.steps, "ones": orbit.count("1")}, kind="orbit")
    for name in args.predictor or ["majority"]:
        predictor = chaos_service.make_predictor(name)
        writer.write(chaos_service.predictor_report(predictor, state, args.steps), kind="predictor")
    _write_artifact(orbit, config)


def run_predict(args: argparse.Namespace, config: RunConfig, writer: ReportWriter) -> None:
    measures = [parse_measure(text) for text in args.models.split(",")]
    if not 0 <= args.truth < len(measures):
        raise ValueError(f"--truth must index one of the {len(measures)} models")
    model_class = predictor_service.ModelClass.uniform(*measures)
    if args.prefix is not None:
        prefix = validate_bits(args.prefix)
        next_zero = predictor_service.mixture_next(model_class, prefix)
        posteriors = predictor_service.posterior_weights(model_class, prefix)
        writer.write(
            {
                "prefix": prefix,
                "next_zero": str(next_zero),
                "posterior": {measure.name: str(weight) for measure, weight in zip(measures, posteriors)},
            },
            kind="mixture",
        )
    if args.universal and args.prefix is not None:
        mass = predictor_service.universal_mass_lower(args.prefix, config.step_budget, config.max_len)
        writer.write({"prefix": args.prefix, "mass_lower": str(mass)}, kind="universal_mass")
    truth = measures[args.truth]
    seed = _seed(args, config)
    for trial in range(args.trials or 1):
        trace = predictor_service.squared_error_trace(model_class, truth, seed + trial, args.horizon)
        writer.write(
            {"seed": trace.seed, "horizon": trace.horizon, "final": trace.final, "reference": trace.reference},
            kind="squared_error",
        )


COMMANDS: Dict[str, Handler] = {
    "gen": run_gen,
    "test": run_test,
    "complexity": run_complexity,
    "omega": run_omega,
    "select": run_select,
    "tourney": run_tourney,
    "chaos": run_chaos,
    "predict": run_predict,
}

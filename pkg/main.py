"""randlab command-line entry point: ``python main.py <command> [options]``."""
import logging
import sys
from typing import List, Optional

from cli import COMMANDS, build_parser
from clients import lifespan
from core.config import load_run_config
from core.errors import InvariantViolation
from repositories import reports_repo

logger = logging.getLogger("randlab")


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand; exit 0 on success, 2 on bad input, 3 on a broken invariant."""
    args = build_parser().parse_args(argv)
    try:
        config = load_run_config(
            args.config,
            output_path=args.out,
            deterministic=True if args.deterministic else None,
            workers=args.workers,
            log_level=args.log_level,
            artifact_path=args.artifact,
            bit_format=args.bit_format,
            max_len=args.max_len,
            step_budget=args.step_budget,
        )
    except ValueError as exc:
        print(f"randlab: {exc}", file=sys.stderr)
        return 2

    # Reports own stdout; logs go to stderr
    logging.basicConfig(
        level=config.log_level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )
    try:
        with lifespan(config.workers):
            with reports_repo.open(args.command, config, config.output_path) as writer:
                COMMANDS[args.command](args, config, writer)
    except InvariantViolation as exc:
        logger.error(f"❌ Invariant violated: {exc}")
        return 3
    except ValueError as exc:
        logger.error(f"❌ {exc}")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

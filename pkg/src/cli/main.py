import asyncio
import logging
import sys
import traceback
from typing import List, Optional

from ..commands import CLIContext, command_registry, register_builtin_commands
from ..config.args import parse_args
from ..config.loader import load_settings
from ..exceptions import HadamardFlowError
from ..logging import init_logger, shutdown_logger
from ..utils import OutputFormatter, OutputLevel
from .exceptions import describe, exit_code_for


def _configure_output(args) -> None:
    if args.verbose:
        OutputFormatter.set_level(OutputLevel.VERBOSE)
        logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    elif args.quiet:
        OutputFormatter.set_level(OutputLevel.QUIET)
        logging.basicConfig(level=logging.ERROR)
    else:
        OutputFormatter.set_level(OutputLevel.NORMAL)
        logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")


async def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI application entry point; returns the process exit code"""
    try:
        args = parse_args(argv)
    except HadamardFlowError as e:
        OutputFormatter.error(describe(e))
        return exit_code_for(e)

    _configure_output(args)

    try:
        settings = load_settings(args.config)
        logging_config = settings.get("logging", {})
        run_logger = init_logger(
            log_dir=logging_config["log_dir"],
            enabled=logging_config["enabled"],
            force_reinit=True,
            **{k: logging_config[k] for k in ("queue_size", "batch_size", "batch_timeout") if k in logging_config},
        )
        register_builtin_commands()
        context = CLIContext(settings, run_logger)
        return await command_registry.execute(args.command, args, context)
    except HadamardFlowError as e:
        OutputFormatter.error(describe(e))
        return exit_code_for(e)
    except OSError as e:
        OutputFormatter.error(f"I/O error: {e}")
        return exit_code_for(e)
    finally:
        shutdown_logger()


def cli():
    """CLI entry point"""
    try:
        code = asyncio.run(main())
    except KeyboardInterrupt:
        code = 1
    except Exception as e:
        OutputFormatter.error(f"internal error: {e}")
        OutputFormatter.debug(traceback.format_exc())
        code = 1
    sys.exit(int(code))

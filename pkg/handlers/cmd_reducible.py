# handlers/cmd_reducible.py

import asyncio
import logging
from argparse import Namespace

from config import DEFAULT_SEED
from services.catalog import CatalogError, get
from services.reducibility import ModeError, verify_reducible
from utils.catalog_file import catalog_for
from utils.report import RunReport

logger = logging.getLogger(__name__)


async def reducible_command(args: Namespace) -> RunReport:
    """reducible <name> [--mode exhaustive|sample|nullstellensatz] [--n N] [--seed S]"""
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    inputs = {"name": args.name, "mode": args.mode, "n": args.n, "jobs": args.jobs}
    try:
        config = get(args.name, catalog_for(args))
        mode = args.mode or config.default_mode
        inputs["mode"] = mode
        report = await asyncio.to_thread(
            verify_reducible,
            config,
            mode,
            args.n,
            seed if mode == "sample" else None,
            args.jobs,
        )
    except (CatalogError, ModeError) as e:
        logger.info("reducible %s: %s", args.name, e)
        return RunReport.error("reducible", inputs, str(e))

    return RunReport(
        command="reducible",
        inputs=inputs,
        verdict=report.result,
        details=report.to_dict(),
        wall_time_ms=report.wall_time_ms,
        seed=report.seed,
        witness=report.counterexample,
    )

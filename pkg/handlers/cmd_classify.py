# handlers/cmd_classify.py

import asyncio
import logging
from argparse import Namespace

from services.boundary import BoundaryError, classify_boundaries
from services.catalog import CatalogError
from utils.catalog_file import catalog_for
from utils.report import RunReport, Verdict
from utils.utils import Stopwatch

logger = logging.getLogger(__name__)


async def classify_command(args: Namespace) -> RunReport:
    """classify {9,10}: экстремальные границы против H1–H4 / F1–F12."""
    inputs = {"d": args.d}
    if args.d not in (9, 10):
        return RunReport.error("classify", inputs, f"классификация определена для d = 9 или 10, получено {args.d}")
    try:
        catalog = catalog_for(args)
        with Stopwatch() as sw:
            result = await asyncio.to_thread(classify_boundaries, args.d, catalog)
    except (BoundaryError, CatalogError) as e:
        return RunReport.error("classify", inputs, str(e))

    logger.info("classify %d: %d классов, %s", args.d, len(result.boundaries), result.verdict.value)
    witness = None
    if result.verdict is Verdict.FAIL:
        witness = {"unmatched": result.unmatched, "missing": result.missing}
    return RunReport(
        command="classify",
        inputs=inputs,
        verdict=result.verdict,
        details=result.to_dict(),
        wall_time_ms=sw.ms,
        witness=witness,
    )

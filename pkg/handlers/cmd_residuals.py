# handlers/cmd_residuals.py

import asyncio
import logging
from argparse import Namespace

from services.catalog import CatalogError, check_figure_profiles, get, residual_profile
from utils.catalog_file import catalog_for
from utils.report import RunReport, Verdict
from utils.utils import Stopwatch

logger = logging.getLogger(__name__)


async def residuals_command(args: Namespace) -> RunReport:
    """residuals [--name X]: вычисленные остаточные профили против записанных в каталоге."""
    inputs = {"name": args.name}
    try:
        catalog = catalog_for(args)
        if args.name:
            return _single(get(args.name, catalog), inputs)
        with Stopwatch() as sw:
            result = await asyncio.to_thread(check_figure_profiles, catalog)
    except CatalogError as e:
        return RunReport.error("residuals", inputs, str(e))

    witness = None
    if result.verdict is Verdict.FAIL:
        witness = {"mismatches": result.mismatches, "structure": result.structure}
    return RunReport(
        command="residuals",
        inputs=inputs,
        verdict=result.verdict,
        details=result.to_dict(),
        wall_time_ms=sw.ms,
        witness=witness,
    )


def _single(config, inputs) -> RunReport:
    with Stopwatch() as sw:
        derived = residual_profile(config)
    labels = config.recolored_labels
    rows = [
        {"vertex": lab, "figure": want, "derived": got}
        for lab, want, got in zip(labels, config.figure_profile, derived)
    ]
    mismatches = [r for r in rows if r["figure"] != r["derived"]]
    skipped = config.profile_source == "lemma"
    details = {"config": config.name, "profile_source": config.profile_source, "vertices": rows}
    if skipped or not mismatches:
        return RunReport("residuals", inputs, Verdict.PASS, details, wall_time_ms=sw.ms)
    logger.warning("residuals %s: %d расхождений", config.name, len(mismatches))
    return RunReport("residuals", inputs, Verdict.FAIL, details, wall_time_ms=sw.ms, witness=mismatches)

# handlers/cmd_boundary.py

import asyncio
import logging
import math
from argparse import Namespace

from services.boundary import (
    BoundaryError,
    bound_holds,
    canonical_key,
    describe_boundary,
    enumerate_boundaries,
    project,
)
from services.catalog import CatalogError
from utils.catalog_file import catalog_for
from utils.report import RunReport, Verdict
from utils.utils import Stopwatch

logger = logging.getLogger(__name__)


async def boundary_command(args: Namespace) -> RunReport:
    if args.action == "check-bound":
        return check_bound_command(args)
    return await enumerate_command(args)


async def enumerate_command(args: Namespace) -> RunReport:
    """boundary enumerate --d D [--t T] [--no-t-filter]"""
    t_filter = not args.no_t_filter
    inputs = {"d": args.d, "t": args.t, "t_filter": t_filter}
    try:
        catalog = catalog_for(args)
        with Stopwatch() as sw:
            found = await asyncio.to_thread(enumerate_boundaries, args.d, args.t, t_filter, catalog)
        # имена из каталога для совпадающих отпечатков (все циклические конфигурации)
        prints = {canonical_key(project(c)): c.name for c in catalog if c.cyclic}
        rows = [describe_boundary(b, prints.get(canonical_key(b))) for b in found]
    except (BoundaryError, CatalogError) as e:
        return RunReport.error("boundary", inputs, str(e))

    logger.info("boundary enumerate d=%d t=%s: %d классов", args.d, args.t, len(rows))
    return RunReport(
        command="boundary",
        inputs=inputs,
        verdict=Verdict.PASS,
        details={
            "count": len(rows),
            "boundaries": rows,
            "matched": sorted(r["name"] for r in rows if r.get("name")),
        },
        wall_time_ms=sw.ms,
    )


def check_bound_command(args: Namespace) -> RunReport:
    """boundary check-bound --d D --t T: t ≤ d - ⌈d/2⌉ и следствие t ≤ d - 6 при d ≥ 11."""
    inputs = {"d": args.d, "t": args.t}
    if args.t is None:
        return RunReport.error("boundary", inputs, "для check-bound нужен --t")
    if args.d < 9:
        return RunReport.error("boundary", inputs, f"оценка формулируется для d ≥ 9, получено {args.d}")
    limit = args.d - math.ceil(args.d / 2)
    holds = bound_holds(args.d, args.t)
    details = {
        "limit": limit,
        "holds": holds,
        "implies_t_le_d_minus_6": limit <= args.d - 6,
    }
    return RunReport(
        command="boundary",
        inputs=inputs,
        verdict=Verdict.PASS if holds else Verdict.FAIL,
        details=details,
        witness=None if holds else {"d": args.d, "t": args.t, "limit": limit},
    )

# handlers/cmd_discharge.py

import asyncio
import logging
from argparse import Namespace

from services.discharge import audit
from services.graph import EmbeddingError, GraphError
from utils.graph_io import GraphFormatError, read_graph_file
from utils.report import RunReport, Verdict
from utils.utils import Stopwatch

logger = logging.getLogger(__name__)


async def discharge_command(args: Namespace) -> RunReport:
    """discharge [audit] <graphfile>: заряды, правило (R) и аудит итоговых зарядов."""
    paths = list(args.paths)
    if paths and paths[0] == "audit":
        paths = paths[1:]
    inputs = {"file": paths[0] if paths else None}
    if len(paths) != 1:
        return RunReport.error("discharge", inputs, "ожидался ровно один файл графа")

    try:
        _, plane = read_graph_file(paths[0])
        if plane is None:
            return RunReport.error("discharge", inputs, f"{paths[0]}: нет блока rotation, укладка не задана")
        with Stopwatch() as sw:
            result = await asyncio.to_thread(audit, plane)
    except (GraphFormatError, GraphError, EmbeddingError, OSError) as e:
        logger.info("discharge %s: %s", paths[0], e)
        return RunReport.error("discharge", inputs, str(e))

    witness = None
    if result.verdict is Verdict.FAIL:
        witness = {"negatives": result.negatives, "t_mismatches": result.t_mismatches}
    return RunReport(
        command="discharge",
        inputs=inputs,
        verdict=result.verdict,
        details=result.to_dict(),
        wall_time_ms=sw.ms,
        witness=witness,
    )

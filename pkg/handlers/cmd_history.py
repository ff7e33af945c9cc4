# handlers/cmd_history.py

import logging
from argparse import Namespace

import aiosqlite

from config import DB_PATH
from services.db import RunLedger
from utils.report import RunReport, Verdict

logger = logging.getLogger(__name__)


async def history_command(args: Namespace) -> RunReport:
    """history [--limit N] [--command NAME]: последние прогоны из журнала, новые первыми."""
    inputs = {"limit": args.limit, "command": args.command_filter}
    if args.limit < 1:
        return RunReport.error("history", inputs, "--limit должен быть ≥ 1")
    try:
        async with RunLedger(getattr(args, "db_path", None) or DB_PATH) as ledger:
            runs = await ledger.recent(args.limit, args.command_filter)
    except aiosqlite.Error as e:
        logger.exception("Ошибка чтения журнала прогонов")
        return RunReport.error("history", inputs, f"журнал недоступен: {e}")
    return RunReport("history", inputs, Verdict.PASS, {"runs": runs, "count": len(runs)})

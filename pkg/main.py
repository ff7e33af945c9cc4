# main.py

import sys
import os

# Складируем __pycache__ в папку проекта
sys.pycache_prefix = os.path.join(os.path.dirname(__file__), "pycache")

import argparse
import asyncio
import logging
from logging.handlers import TimedRotatingFileHandler
from typing import Awaitable, Callable, Dict, List, Optional

from dotenv import load_dotenv
load_dotenv()

import aiosqlite

from config import DB_PATH, DEFAULT_JOBS, LOG_FILE, LOG_LEVEL
from handlers.cmd_boundary import boundary_command
from handlers.cmd_catalog import catalog_command
from handlers.cmd_check_all import STAGES, check_all_command
from handlers.cmd_classify import classify_command
from handlers.cmd_coefficient import coefficient_command
from handlers.cmd_discharge import discharge_command
from handlers.cmd_history import history_command
from handlers.cmd_reducible import reducible_command
from handlers.cmd_residuals import residuals_command
from handlers.cmd_verify_lemma import LEMMA_NAMES, verify_lemma_command
from services.catalog import MODES
from services.db import RunLedger
from utils.report import RunReport

logger = logging.getLogger(__name__)

_LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def setup_logging(level: str = LOG_LEVEL) -> logging.Logger:
    """Файл с почасовой ротацией и stderr; stdout остаётся только для JSON."""
    root = logging.getLogger()
    root.setLevel(level)
    if any(getattr(h, "_chroma", False) for h in root.handlers):
        return root

    fmt = logging.Formatter(_LOG_FORMAT)

    fh = TimedRotatingFileHandler(LOG_FILE, when="H", interval=1, backupCount=24, encoding="utf-8")
    fh.setFormatter(fmt)
    fh._chroma = True
    root.addHandler(fh)

    ch = logging.StreamHandler(sys.stderr)
    ch.setFormatter(fmt)
    ch._chroma = True
    root.addHandler(ch)

    logging.getLogger("aiosqlite").setLevel(logging.WARNING)
    return root


class UsageError(Exception):
    """Ошибка разбора аргументов командной строки."""


class CliParser(argparse.ArgumentParser):
    """argparse, который вместо sys.exit(2) поднимает UsageError; подпарсеры наследуют класс."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(
        prog="chroma-check",
        description="Проверка списковой раскраски квадратов субкубических планарных графов",
    )
    parser.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help="число процессов перебора")
    parser.add_argument("--no-record", action="store_true", help="не записывать прогон в журнал")
    parser.add_argument("--catalog", default=None, help="JSON-каталог вместо встроенного")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-lemma", help="исчерпывающая проверка леммы")
    p.add_argument("name", help=" | ".join(LEMMA_NAMES))
    p.add_argument("--profile", default=None, help="размеры списков вместо профиля леммы, например 1,1,1,1")

    p = sub.add_parser("coefficient", help="коэффициент монома в многочлене графа")
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--graph", default=None, help="файл графа вместо конфигурации каталога")
    p.add_argument("--target", default=None, help="показатели монома, например 2,3,2")
    p.add_argument("--reorder", action="store_true", help="жадный порядок множителей")

    p = sub.add_parser("classify", help="экстремальные границы 9- и 10-циклов")
    p.add_argument("d", type=int)

    p = sub.add_parser("boundary", help="перебор границ циклов и оценка t(C)")
    p.add_argument("action", choices=("enumerate", "check-bound"))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--no-t-filter", action="store_true", help="не исключать проекции T1–T3")

    p = sub.add_parser("residuals", help="остаточные профили против записанных в каталоге")
    p.add_argument("--name", default=None)

    p = sub.add_parser("reducible", help="сводимость конфигурации каталога")
    p.add_argument("name")
    p.add_argument("--mode", choices=MODES, default=None)
    p.add_argument("--n", type=int, default=None, help="число случайных назначений (sample)")
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("discharge", help="аудит разгрузки на укладке из файла")
    p.add_argument("paths", nargs="+", metavar="[audit] FILE")

    p = sub.add_parser("catalog", help="просмотр и экспорт каталога")
    p.add_argument("action", choices=("list", "dump", "export"))
    p.add_argument("target", nargs="?", default=None, help="имя (dump) или путь (export)")

    p = sub.add_parser("check-all", help="весь конвейер проверок")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n", type=int, default=None, help="число случайных назначений на конфигурацию")
    p.add_argument("--only", nargs="+", choices=STAGES, default=None)

    p = sub.add_parser("history", help="последние прогоны из журнала")
    p.add_argument("--limit", type=int, default=20)
    p.add_argument("--command", dest="command_filter", default=None)
    return parser


COMMANDS: Dict[str, Callable[[argparse.Namespace], Awaitable[RunReport]]] = {
    "verify-lemma": verify_lemma_command,
    "coefficient": coefficient_command,
    "classify": classify_command,
    "boundary": boundary_command,
    "residuals": residuals_command,
    "reducible": reducible_command,
    "discharge": discharge_command,
    "catalog": catalog_command,
    "check-all": check_all_command,
    "history": history_command,
}


async def dispatch(args: argparse.Namespace) -> RunReport:
    handler = COMMANDS[args.command]
    try:
        report = await handler(args)
    except Exception as e:
        logger.exception("Необработанное исключение в команде %s", args.command)
        report = RunReport.error(args.command, {}, f"{type(e).__name__}: {e}")

    if not args.no_record and args.command != "history":
        try:
            async with RunLedger(getattr(args, "db_path", None) or DB_PATH) as ledger:
                await ledger.record(report)
        except (aiosqlite.Error, OSError):
            logger.warning("Не удалось записать прогон в журнал", exc_info=True)
    return report


def run(argv: Optional[List[str]] = None) -> int:
    """Точка входа без sys.exit: разбирает аргументы, печатает JSON, возвращает код выхода."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        argv = list(sys.argv[1:] if argv is None else argv)
        report = RunReport.error("usage", {"argv": argv}, str(e))
        print(report.to_json())
        return report.exit_code
    except SystemExit as e:
        # --help
        return 0 if e.code == 0 else 2
    if args.jobs < 1:
        args.jobs = 1

    setup_logging()
    report = asyncio.run(dispatch(args))
    if report.seed is not None:
        logger.info("seed = %d", report.seed)
    print(report.to_json())
    logger.info("%s: %s (код %d)", report.command, report.verdict.value, report.exit_code)
    return report.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
